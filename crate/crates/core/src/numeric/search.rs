//! Multi-start search for points of `L(a) ∩ ln W(exp a)` with real part in
//! a ball that avoids given hyperplanes.

use std::sync::atomic::AtomicBool;

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use super::ball::{ball_avoiding_hyperplanes, BallSpec, Hyperplane};
use super::newton::{newton_solve_cancellable, AttemptStatus};
use super::system::{compile_system, ExpSumSystem, NumSystem};
use crate::error::{PowError, Result};
use crate::exponent_field::EmbeddingSpec;
use crate::predimension::Configuration;

#[derive(Clone, Debug, PartialEq)]
pub struct SearchOptions {
    /// Total number of Newton attempts.
    pub budget: usize,
    pub seed: u64,
    /// Sup-norm residual accepted by Newton.
    pub tol: f64,
    pub max_iter: usize,
    /// Number of times the region radius may double when nothing is found.
    pub max_doublings: u32,
    /// Margin of the avoiding sub-ball, relative to its radius.
    pub margin: f64,
    /// Solutions closer than this to an avoided hyperplane are dropped.
    pub avoid_threshold: f64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: 200,
            seed: 0,
            tol: 1e-10,
            max_iter: 100,
            max_doublings: 3,
            margin: 1e-6,
            avoid_threshold: 1e-6,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct AttemptRecord {
    pub index: usize,
    pub round: u32,
    pub status: AttemptStatus,
    pub iterations: usize,
    pub residual: f64,
    /// Final iterate of attempts that escaped; their real parts indicate
    /// the hyperplanes the path ran along.
    pub endpoint: Option<Vec<Complex<f64>>>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Solution {
    pub attempt: usize,
    /// Free coordinates on `L(a)`.
    pub u: Vec<Complex<f64>>,
    /// The point of `V^n`.
    pub z: Vec<Complex<f64>>,
    pub residual: f64,
    /// Residual at twice the working precision.
    pub certified_residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SolveReport {
    pub seed: u64,
    pub precision_bits: usize,
    pub tolerance: f64,
    pub budget: usize,
    pub dim_domain: usize,
    /// The sampling ball of the last round.
    pub ball: BallSpec,
    pub rounds: u32,
    pub attempts: Vec<AttemptRecord>,
    pub solutions: Vec<Solution>,
}

fn sample_ball(rng: &mut ChaCha8Rng, ball: &BallSpec) -> Vec<f64> {
    let d = ball.dim();
    if d == 0 {
        return Vec::new();
    }
    let g: Vec<f64> = (0..d).map(|_| rng.sample::<f64, _>(StandardNormal)).collect();
    let norm = g.iter().map(|x| x * x).sum::<f64>().sqrt().max(f64::MIN_POSITIVE);
    let s = ball.radius * rng.gen::<f64>().powf(1.0 / d as f64) / norm;
    ball.center.iter().zip(&g).map(|(c, x)| c + s * x).collect()
}

fn complex_distance(h: &Hyperplane, u: &[Complex<f64>]) -> f64 {
    let dot = h.normal.iter().zip(u).fold(Complex::new(-h.offset, 0.0), |acc, (n, z)| acc + z * n);
    dot.norm() / h.normal.iter().map(|v| v * v).sum::<f64>().sqrt()
}

fn same_point(a: &[Complex<f64>], b: &[Complex<f64>]) -> bool {
    a.iter().zip(b).all(|(x, y)| (x - y).norm() <= 1e-8 * (1.0 + x.norm()))
}

pub fn ec_search(
    config: &Configuration,
    emb: &EmbeddingSpec,
    region: &BallSpec,
    avoid: &[Hyperplane],
    opts: &SearchOptions,
) -> Result<SolveReport> {
    ec_search_cancellable(config, emb, region, avoid, opts, &AtomicBool::new(false))
}

/// As [`ec_search`]; attempts stop between Newton iterations once `cancel`
/// is set.
///
/// Each round samples starts `Re u ∈ B`, `Im u ∈ B` with `B` the avoiding
/// sub-ball of the region, runs the attempts in parallel with one random
/// stream per attempt index, and certifies converged points at twice the
/// precision. When a round yields nothing the region radius doubles.
pub fn ec_search_cancellable(
    config: &Configuration,
    emb: &EmbeddingSpec,
    region: &BallSpec,
    avoid: &[Hyperplane],
    opts: &SearchOptions,
    cancel: &AtomicBool,
) -> Result<SolveReport> {
    let sys = compile_system(config, emb)?;
    if region.dim() != sys.dim_domain {
        return Err(PowError::DimensionMismatch { expected: sys.dim_domain, found: region.dim() });
    }
    if let Some(h) = avoid.iter().find(|h| h.normal.len() != sys.dim_domain) {
        return Err(PowError::DimensionMismatch { expected: sys.dim_domain, found: h.normal.len() });
    }
    let cert_emb = EmbeddingSpec { precision_bits: 2 * emb.precision_bits, ..emb.clone() };
    let cert = compile_system(config, &cert_emb)?;
    let num: NumSystem<f64> = sys.to_num();

    let per_round = opts.budget.div_ceil(opts.max_doublings as usize + 1).max(1);
    let mut attempts = Vec::new();
    let mut solutions: Vec<Solution> = Vec::new();
    let mut ball = region.clone();
    let mut rounds = 0;
    while attempts.len() < opts.budget && rounds <= opts.max_doublings {
        let outer = BallSpec { center: region.center.clone(), radius: region.radius * 2f64.powi(rounds as i32) };
        let r = outer.radius / 2f64.powi(avoid.len() as i32);
        ball = ball_avoiding_hyperplanes(&outer, avoid, r, opts.margin * r)
            .or_else(|_| ball_avoiding_hyperplanes(&outer, avoid, r, 0.0))?;
        let first = attempts.len();
        let count = per_round.min(opts.budget - first);
        let results: Vec<_> = (first..first + count)
            .into_par_iter()
            .map(|index| {
                let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
                rng.set_stream(index as u64);
                let re = sample_ball(&mut rng, &ball);
                let im = sample_ball(&mut rng, &ball);
                let start: Vec<Complex<f64>> = re.iter().zip(&im).map(|(&a, &b)| Complex::new(a, b)).collect();
                (index, newton_solve_cancellable(&num, &start, opts.tol, opts.max_iter, Some(cancel)))
            })
            .collect();
        for (index, res) in results {
            let mut status = res.status;
            let mut endpoint = None;
            match status {
                AttemptStatus::Converged => {
                    if avoid.iter().any(|h| complex_distance(h, &res.u) < opts.avoid_threshold) {
                        status = AttemptStatus::Excluded;
                    } else if !solutions.iter().any(|s| same_point(&s.u, &res.u)) {
                        let certified = cert.residual_mp(&res.u);
                        if certified < 4.0 * opts.tol {
                            solutions.push(solution(&sys, index, &res.u, res.residual, certified));
                        } else {
                            status = AttemptStatus::Uncertified;
                        }
                    }
                }
                AttemptStatus::EscapedToSingularity => endpoint = Some(res.u.clone()),
                _ => {}
            }
            attempts.push(AttemptRecord {
                index,
                round: rounds,
                status,
                iterations: res.iterations,
                residual: res.residual,
                endpoint,
            });
        }
        rounds += 1;
        if !solutions.is_empty() {
            break;
        }
    }
    Ok(SolveReport {
        seed: opts.seed,
        precision_bits: emb.precision_bits,
        tolerance: opts.tol,
        budget: opts.budget,
        dim_domain: sys.dim_domain,
        ball,
        rounds,
        attempts,
        solutions,
    })
}

fn solution(sys: &ExpSumSystem, attempt: usize, u: &[Complex<f64>], residual: f64, certified: f64) -> Solution {
    Solution { attempt, u: u.to_vec(), z: sys.coordinates(u), residual, certified_residual: certified }
}
