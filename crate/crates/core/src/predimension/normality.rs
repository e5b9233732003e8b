//! Bounded search for quotients violating
//! `dim(L/M) + dim(W/exp M) ≥ n - dim M`.

use std::collections::HashSet;

use num_bigint::BigInt;
use num_integer::Integer;
use serde::Serialize;

use super::ClassifyOptions;
use crate::error::Result;
use crate::linalg::integer::IntRow;
use crate::subspace::{quotient_subspace, KLinearSubspace, QLinearSubspace};
use crate::toric::{dim_variety, quotient_by_subtorus, LaurentIdeal};

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum NormalVerdict {
    /// No violation among integer-defined `M` of height at most `height`.
    /// `complete` is false when the search stopped at the subspace cap.
    NormalUpToHeight { height: u32, examined: usize, complete: bool },
    ViolatedBy { witness: QLinearSubspace, lhs: usize, rhs: usize },
}

impl NormalVerdict {
    pub fn is_violated(&self) -> bool {
        matches!(self, NormalVerdict::ViolatedBy { .. })
    }
}

/// Primitive integer vectors of height at most `h` with positive leading entry.
fn primitive_vectors(n: usize, h: u32) -> Vec<IntRow> {
    let h = h as i64;
    let mut out = Vec::new();
    let mut cur = vec![-h; n];
    loop {
        let lead = cur.iter().find(|&&v| v != 0);
        if lead.is_some_and(|&v| v > 0) && cur.iter().fold(0i64, |g, &v| g.gcd(&v)) == 1 {
            out.push(cur.iter().map(|&v| BigInt::from(v)).collect());
        }
        let mut i = n;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if cur[i] < h {
                cur[i] += 1;
                break;
            }
            cur[i] = -h;
        }
    }
}

/// Distinct proper nonzero subspaces `M ⊆ V^n` cut out by primitive
/// integer rows of height at most `h`, by increasing number of equations.
/// Stops after `cap` subspaces; the flag reports whether the list is complete.
pub fn enumerate_rational_subspaces(n: usize, h: u32, cap: usize) -> (Vec<QLinearSubspace>, bool) {
    let vecs = primitive_vectors(n, h);
    let mut seen: HashSet<Vec<IntRow>> = HashSet::new();
    let mut out = Vec::new();
    for codim in 1..n {
        let mut idx: Vec<usize> = (0..codim).collect();
        if codim > vecs.len() {
            break;
        }
        loop {
            let rows: Vec<IntRow> = idx.iter().map(|&i| vecs[i].clone()).collect();
            let m = QLinearSubspace::from_integer_rows(n, &rows).expect("rows have length n");
            if m.rank() == codim && seen.insert(m.integer_rows()) {
                if out.len() == cap {
                    return (out, false);
                }
                out.push(m);
            }
            if !next_combination(&mut idx, vecs.len()) {
                break;
            }
        }
    }
    (out, true)
}

fn next_combination(idx: &mut [usize], n: usize) -> bool {
    let k = idx.len();
    for i in (0..k).rev() {
        if idx[i] < n - k + i {
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

pub(super) fn check_normality(
    l0: &KLinearSubspace,
    w: &LaurentIdeal,
    height: u32,
    opts: &ClassifyOptions,
) -> Result<NormalVerdict> {
    let n = l0.n();
    let dim_w = dim_variety(w, opts.budget)?.require()?;
    let (candidates, complete) = enumerate_rational_subspaces(n, height, opts.subspace_cap);
    for m in &candidates {
        let dm = m.dim();
        let rhs = n - dm;
        let dim_lm = quotient_subspace(l0, m)?.dim();
        // fibers of W have dimension at most dim M
        if dim_lm + dim_w.saturating_sub(dm) >= rhs {
            continue;
        }
        let dim_wm = dim_variety(&quotient_by_subtorus(w, m, opts.budget)?, opts.budget)?.require()?;
        if dim_lm + dim_wm < rhs {
            return Ok(NormalVerdict::ViolatedBy { witness: m.clone(), lhs: dim_lm + dim_wm, rhs });
        }
    }
    Ok(NormalVerdict::NormalUpToHeight { height, examined: candidates.len(), complete })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_in_the_plane() {
        // lines through the origin with slopes p/q, |p|, |q| <= 1: x, y, x+y, x-y
        let (ms, complete) = enumerate_rational_subspaces(2, 1, 100);
        assert!(complete);
        assert_eq!(ms.len(), 4);
        assert!(ms.iter().all(|m| m.dim() == 1));
        let (ms, complete) = enumerate_rational_subspaces(2, 1, 3);
        assert!(!complete);
        assert_eq!(ms.len(), 3);
    }

    #[test]
    fn three_space_has_lines_and_planes() {
        let (ms, _) = enumerate_rational_subspaces(3, 1, 10_000);
        let planes = ms.iter().filter(|m| m.dim() == 2).count();
        let lines = ms.iter().filter(|m| m.dim() == 1).count();
        // 13 primitive normals; lines are spanned by the same 13 directions
        assert_eq!(planes, 13);
        assert!(lines >= 13);
    }
}
