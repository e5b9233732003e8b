//! Damped Newton iteration for exponential-sum systems, generic over the
//! machine float type.

use std::sync::atomic::{AtomicBool, Ordering};

use num_complex::Complex;
use num_traits::Float;
use serde::Serialize;

use super::system::NumSystem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AttemptStatus {
    Converged,
    /// Iteration cap reached or no damped step reduced the residual.
    Diverged,
    SingularJacobian,
    /// Some `exp(r·u)` left the representable range.
    EscapedToSingularity,
    Cancelled,
    /// Converged inside an excluded subspace.
    Excluded,
    /// Converged in machine precision but failed the multiprecision check.
    Uncertified,
}

#[derive(Clone, Debug, PartialEq)]
pub struct NewtonResult<T> {
    pub status: AttemptStatus,
    pub u: Vec<Complex<T>>,
    /// Sup norm of the residual at `u`.
    pub residual: T,
    pub iterations: usize,
}

fn sup_norm<T: Float>(v: &[Complex<T>]) -> T {
    v.iter().map(|z| z.norm()).fold(T::zero(), |m, x| if x.is_nan() || x > m { x } else { m })
}

fn two_norm<T: Float>(v: &[Complex<T>]) -> T {
    v.iter().map(|z| z.norm_sqr()).fold(T::zero(), |a, x| a + x).sqrt()
}

/// Solves a square system by elimination with partial pivoting. `None`
/// when the smallest pivot is negligible against the largest.
fn solve_square<T: Float>(mut a: Vec<Vec<Complex<T>>>, mut b: Vec<Complex<T>>) -> Option<Vec<Complex<T>>> {
    let n = b.len();
    let cutoff = T::epsilon() * T::from(64.0)?;
    let mut max_pivot = T::zero();
    for col in 0..n {
        let piv = (col..n).max_by(|&i, &j| a[i][col].norm().partial_cmp(&a[j][col].norm()).unwrap_or(std::cmp::Ordering::Equal))?;
        let p = a[piv][col].norm();
        if !p.is_finite() {
            return None;
        }
        max_pivot = max_pivot.max(p);
        if p <= cutoff * max_pivot || p == T::zero() {
            return None;
        }
        a.swap(col, piv);
        b.swap(col, piv);
        for i in col + 1..n {
            let f = a[i][col] / a[col][col];
            if f == Complex::new(T::zero(), T::zero()) {
                continue;
            }
            for k in col..n {
                let t = a[col][k];
                a[i][k] = a[i][k] - f * t;
            }
            let t = b[col];
            b[i] = b[i] - f * t;
        }
    }
    let mut x = vec![Complex::new(T::zero(), T::zero()); n];
    for i in (0..n).rev() {
        let s = (i + 1..n).fold(b[i], |acc, k| acc - a[i][k] * x[k]);
        x[i] = s / a[i][i];
    }
    Some(x)
}

/// Newton step `J δ = -F`: exact when square, least squares when
/// overdetermined, minimum norm when underdetermined.
fn newton_step<T: Float>(j: &[Vec<Complex<T>>], f: &[Complex<T>]) -> Option<Vec<Complex<T>>> {
    let (m, d) = (f.len(), j.first().map_or(0, |r| r.len()));
    let neg: Vec<Complex<T>> = f.iter().map(|z| -z).collect();
    let zero = Complex::new(T::zero(), T::zero());
    if m == d {
        return solve_square(j.to_vec(), neg);
    }
    if m > d {
        let mut a = vec![vec![zero; d]; d];
        let mut b = vec![zero; d];
        for r in 0..m {
            for p in 0..d {
                let c = j[r][p].conj();
                b[p] = b[p] + c * neg[r];
                for q in 0..d {
                    a[p][q] = a[p][q] + c * j[r][q];
                }
            }
        }
        return solve_square(a, b);
    }
    let mut a = vec![vec![zero; m]; m];
    for p in 0..m {
        for q in 0..m {
            a[p][q] = (0..d).fold(zero, |acc, k| acc + j[p][k] * j[q][k].conj());
        }
    }
    let y = solve_square(a, neg)?;
    Some((0..d).map(|k| (0..m).fold(zero, |acc, p| acc + j[p][k].conj() * y[p])).collect())
}

pub fn newton_solve<T: Float>(sys: &NumSystem<T>, start: &[Complex<T>], tol: T, max_iter: usize) -> NewtonResult<T> {
    newton_solve_cancellable(sys, start, tol, max_iter, None)
}

/// Damped Newton: the step is halved until the residual decreases.
/// Cancellation is checked once per iteration.
pub fn newton_solve_cancellable<T: Float>(
    sys: &NumSystem<T>,
    start: &[Complex<T>],
    tol: T,
    max_iter: usize,
    cancel: Option<&AtomicBool>,
) -> NewtonResult<T> {
    let limit = NumSystem::<T>::exponent_limit();
    let mut u = start.to_vec();
    let mut f = sys.eval(&u);
    let finish = |status, u: Vec<Complex<T>>, f: &[Complex<T>], iterations| NewtonResult {
        status,
        residual: sup_norm(f),
        u,
        iterations,
    };
    for it in 0..=max_iter {
        if sys.max_real_exponent(&u) > limit || f.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return finish(AttemptStatus::EscapedToSingularity, u, &f, it);
        }
        if sup_norm(&f) < tol {
            return finish(AttemptStatus::Converged, u, &f, it);
        }
        if it == max_iter {
            break;
        }
        if cancel.is_some_and(|c| c.load(Ordering::Relaxed)) {
            return finish(AttemptStatus::Cancelled, u, &f, it);
        }
        let Some(delta) = newton_step(&sys.jacobian(&u), &f) else {
            return finish(AttemptStatus::SingularJacobian, u, &f, it);
        };
        let current = two_norm(&f);
        let mut t = T::one();
        let mut hit_wall = false;
        let accepted = loop {
            let trial: Vec<Complex<T>> = u.iter().zip(&delta).map(|(a, d)| a + d * t).collect();
            if sys.max_real_exponent(&trial) > limit {
                hit_wall = true;
            } else {
                let ft = sys.eval(&trial);
                if two_norm(&ft) < current {
                    break Some((trial, ft));
                }
            }
            t = t / T::from(2.0).unwrap_or_else(T::one);
            if t < T::epsilon() {
                break None;
            }
        };
        match accepted {
            Some((nu, nf)) => {
                u = nu;
                f = nf;
            }
            None if hit_wall => return finish(AttemptStatus::EscapedToSingularity, u, &f, it + 1),
            None => return finish(AttemptStatus::Diverged, u, &f, it + 1),
        }
    }
    finish(AttemptStatus::Diverged, u, &f, max_iter)
}
