//! Detecting cosets `{z : m·z ≡ b mod 2πi}` shared by several solutions.

use num_complex::Complex;
use serde::Serialize;

use crate::error::{PowError, Result};
use crate::predimension::KernelSpec;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Coset {
    pub m: Vec<i64>,
    /// `b`, with imaginary part in `(-π, π]` for `ω = 2πi`.
    pub shift: Complex<f64>,
    pub members: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CosetReport {
    pub height: u32,
    pub tolerance: f64,
    pub cosets: Vec<Coset>,
    pub uncovered: Vec<usize>,
}

/// Distance of `v` to `ω Z`, for `ω` purely imaginary.
pub fn distance_mod_kernel(v: Complex<f64>, period: f64) -> f64 {
    let k = (v.im / period).round();
    Complex::new(v.re, v.im - k * period).norm()
}

fn reduce(v: Complex<f64>, period: f64) -> Complex<f64> {
    let k = (v.im / period).round();
    Complex::new(v.re, v.im - k * period)
}

/// Nonzero integer rows with positive leading entry and entries in
/// `[-h, h]`, by increasing height. Rows need not be primitive: `2z1 ≡ b`
/// and `z1 ≡ b/2` differ modulo the kernel.
fn rows_up_to_height(n: usize, h: i64) -> Vec<Vec<i64>> {
    let mut rows: Vec<Vec<i64>> = vec![vec![]];
    for _ in 0..n {
        rows = rows
            .into_iter()
            .flat_map(|r| {
                (-h..=h).map(move |x| {
                    let mut r = r.clone();
                    r.push(x);
                    r
                })
            })
            .collect();
    }
    rows.retain(|r| r.iter().find(|&&x| x != 0).is_some_and(|&x| x > 0));
    rows.sort_by_key(|r| r.iter().map(|v| v.abs()).max().unwrap_or(0));
    rows
}

fn dot(m: &[i64], z: &[Complex<f64>]) -> Complex<f64> {
    m.iter().zip(z).fold(Complex::new(0.0, 0.0), |acc, (&a, b)| acc + b * a as f64)
}

/// Greedy cover of the solutions by cosets with integer rows of height at
/// most `height`. For each row, solutions are grouped (in input order)
/// with the first earlier representative within `tol` modulo the kernel.
/// Groups of at least two uncovered solutions compete; the largest wins,
/// ties going to the lower-height row and then to the earlier group.
pub fn confinement_detect(
    solutions: &[Vec<Complex<f64>>],
    kernel: &KernelSpec,
    height: u32,
    tol: f64,
) -> Result<CosetReport> {
    let omega = kernel
        .omega()
        .ok_or_else(|| PowError::InvalidInput("confinement needs a numeric kernel".into()))?
        .to_f64();
    let period = omega.im;
    let n = solutions.first().ok_or_else(|| PowError::InvalidInput("no solutions".into()))?.len();
    if let Some(s) = solutions.iter().find(|s| s.len() != n) {
        return Err(PowError::DimensionMismatch { expected: n, found: s.len() });
    }
    if height == 0 {
        return Err(PowError::InvalidInput("height bound must be at least 1".into()));
    }
    let rows = rows_up_to_height(n, height as i64);

    // (row index, representative value, members)
    let mut groups: Vec<(usize, Complex<f64>, Vec<usize>)> = Vec::new();
    for (ri, m) in rows.iter().enumerate() {
        let mut local: Vec<(Complex<f64>, Vec<usize>)> = Vec::new();
        for (s, z) in solutions.iter().enumerate() {
            let v = dot(m, z);
            match local.iter_mut().find(|(rep, _)| distance_mod_kernel(v - rep, period) < tol) {
                Some((_, members)) => members.push(s),
                None => local.push((v, vec![s])),
            }
        }
        groups.extend(local.into_iter().filter(|(_, g)| g.len() >= 2).map(|(rep, g)| (ri, rep, g)));
    }

    let mut covered = vec![false; solutions.len()];
    let mut cosets = Vec::new();
    loop {
        let best = groups
            .iter()
            .enumerate()
            .map(|(i, (_, _, g))| (i, g.iter().filter(|&&s| !covered[s]).count()))
            .filter(|&(_, c)| c >= 2)
            .fold(None, |best: Option<(usize, usize)>, (i, c)| match best {
                Some((_, bc)) if bc >= c => best,
                _ => Some((i, c)),
            });
        let Some((i, _)) = best else { break };
        let (ri, rep, members) = &groups[i];
        for &s in members {
            covered[s] = true;
        }
        cosets.push(Coset { m: rows[*ri].clone(), shift: reduce(*rep, period), members: members.clone() });
    }
    let uncovered = (0..solutions.len()).filter(|&s| !covered[s]).collect();
    Ok(CosetReport { height, tolerance: tol, cosets, uncovered })
}
