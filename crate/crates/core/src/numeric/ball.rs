//! Balls in `Re(L)` that keep away from finitely many affine hyperplanes.

use serde::Serialize;

use crate::error::{PowError, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BallSpec {
    pub center: Vec<f64>,
    pub radius: f64,
}

impl BallSpec {
    pub fn new(center: Vec<f64>, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) || center.iter().any(|c| !c.is_finite()) {
            return Err(PowError::InvalidInput(format!("ball needs a positive finite radius, got {radius}")));
        }
        Ok(BallSpec { center, radius })
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }

    /// `other ⊆ self`, allowing a relative slack for rounding.
    pub fn contains_ball(&self, other: &BallSpec) -> bool {
        let d = dist(&self.center, &other.center);
        d + other.radius <= self.radius * (1.0 + 1e-12)
    }
}

/// `{x : normal·x = offset}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Hyperplane {
    pub normal: Vec<f64>,
    pub offset: f64,
}

impl Hyperplane {
    pub fn new(normal: Vec<f64>, offset: f64) -> Result<Self> {
        let norm = normal.iter().map(|v| v * v).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) || !offset.is_finite() {
            return Err(PowError::InvalidInput("hyperplane needs a nonzero finite normal".into()));
        }
        Ok(Hyperplane { normal, offset })
    }

    fn norm(&self) -> f64 {
        self.normal.iter().map(|v| v * v).sum::<f64>().sqrt()
    }

    /// Signed distance, positive on the side the normal points to.
    pub fn signed_distance(&self, x: &[f64]) -> f64 {
        let dot: f64 = self.normal.iter().zip(x).map(|(a, b)| a * b).sum();
        (dot - self.offset) / self.norm()
    }

    pub fn distance(&self, x: &[f64]) -> f64 {
        self.signed_distance(x).abs()
    }
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// A radius `R` ball inside `outer` (radius `2^m R`) whose center is at
/// distance at least `R + margin` from each of the `m` hyperplanes.
///
/// Step `k` shrinks the radius to `2^(m-k) R`. The center is pushed that far
/// away from the `k`-th hyperplane, unless it is already far enough for the
/// remaining steps. The center then ends at distance `d_k + R` or more, where
/// `d_k` is its distance when the hyperplane is treated. A hyperplane
/// through the treated center therefore only gets distance `R`, and any
/// positive margin can fail.
pub fn ball_avoiding_hyperplanes(
    outer: &BallSpec,
    hyperplanes: &[Hyperplane],
    r: f64,
    margin: f64,
) -> Result<BallSpec> {
    let m = hyperplanes.len();
    let dim = outer.dim();
    if !(r > 0.0 && r.is_finite()) || !(margin >= 0.0) {
        return Err(PowError::InvalidInput(format!("radius {r} and margin {margin} must be positive")));
    }
    if let Some(h) = hyperplanes.iter().find(|h| h.normal.len() != dim) {
        return Err(PowError::DimensionMismatch { expected: dim, found: h.normal.len() });
    }
    let expected = r * 2f64.powi(m as i32);
    if (outer.radius - expected).abs() > 1e-12 * expected {
        return Err(PowError::InvalidInput(format!(
            "outer radius {} is not 2^{m} times {r}",
            outer.radius
        )));
    }
    let mut center = outer.center.clone();
    for (k, h) in hyperplanes.iter().enumerate() {
        let step = r * 2f64.powi((m - k - 1) as i32);
        let sd = h.signed_distance(&center);
        if sd.abs() >= step + margin {
            continue;
        }
        let side = if sd < 0.0 { -1.0 } else { 1.0 };
        let scale = side * step / h.norm();
        for (c, v) in center.iter_mut().zip(&h.normal) {
            *c += scale * v;
        }
    }
    let ball = BallSpec { center, radius: r };
    // rounding slack of a few ulps of R
    let need = r + margin - 1e-12 * r;
    if hyperplanes.iter().any(|h| h.distance(&ball.center) < need) {
        return Err(PowError::MarginInfeasible { margin, radius: r });
    }
    Ok(ball)
}
