//! Integer lattices: Hermite normal form, integer kernels, saturation.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub type IntRow = Vec<BigInt>;

/// Row-style Hermite normal form with its unimodular transform.
#[derive(Clone, Debug)]
pub struct RowHermite {
    /// `U * A` in echelon form; zero rows at the bottom.
    pub h: Vec<IntRow>,
    pub u: Vec<IntRow>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

fn sub_mul(a: &mut IntRow, b: &IntRow, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for (x, y) in a.iter_mut().zip(b) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

fn negate(a: &mut IntRow) {
    for x in a.iter_mut() {
        *x = -&*x;
    }
}

/// Computes `U A = H` with `U` unimodular and `H` in reduced Hermite form:
/// pivots positive, entries above a pivot in `[0, pivot)`.
pub fn row_hermite(rows: &[IntRow], cols: usize) -> RowHermite {
    let m = rows.len();
    let mut h: Vec<IntRow> = rows.to_vec();
    let mut u: Vec<IntRow> = (0..m)
        .map(|i| (0..m).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect())
        .collect();
    let mut r = 0;
    let mut pivots = Vec::new();
    for c in 0..cols {
        if r == m {
            break;
        }
        loop {
            let best = (r..m)
                .filter(|&i| !h[i][c].is_zero())
                .min_by(|&a, &b| h[a][c].abs().cmp(&h[b][c].abs()).then(a.cmp(&b)));
            let Some(p) = best else { break };
            h.swap(r, p);
            u.swap(r, p);
            let mut done = true;
            for i in r + 1..m {
                if h[i][c].is_zero() {
                    continue;
                }
                let q = h[i][c].div_floor(&h[r][c]);
                let (hr, ur) = (h[r].clone(), u[r].clone());
                sub_mul(&mut h[i], &hr, &q);
                sub_mul(&mut u[i], &ur, &q);
                if !h[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if h[r][c].is_zero() {
            continue;
        }
        if h[r][c].is_negative() {
            negate(&mut h[r]);
            negate(&mut u[r]);
        }
        let (hr, ur) = (h[r].clone(), u[r].clone());
        for i in 0..r {
            let q = h[i][c].div_floor(&hr[c]);
            sub_mul(&mut h[i], &hr, &q);
            sub_mul(&mut u[i], &ur, &q);
        }
        pivots.push(c);
        r += 1;
    }
    RowHermite { h, u, rank: r, pivots }
}

/// Canonical basis (nonzero Hermite rows) of the lattice spanned by `rows`.
pub fn lattice_hnf(rows: &[IntRow], cols: usize) -> Vec<IntRow> {
    let mut h = row_hermite(rows, cols);
    h.h.truncate(h.rank);
    h.h
}

fn transpose(rows: &[IntRow], cols: usize) -> Vec<IntRow> {
    (0..cols).map(|j| rows.iter().map(|r| r[j].clone()).collect()).collect()
}

/// Z-basis of `{v in Z^cols : A v = 0}`, in Hermite form.
pub fn integer_kernel(rows: &[IntRow], cols: usize) -> Vec<IntRow> {
    let t = transpose(rows, cols);
    let herm = row_hermite(&t, rows.len());
    let kernel: Vec<IntRow> = herm.u[herm.rank..].to_vec();
    lattice_hnf(&kernel, cols)
}

/// Basis of `span_Q(rows) ∩ Z^cols`.
pub fn saturate(rows: &[IntRow], cols: usize) -> Vec<IntRow> {
    let k = integer_kernel(rows, cols);
    integer_kernel(&k, cols)
}

/// Integer solution of `A e = b`, if one exists.
pub fn integer_solve(rows: &[IntRow], cols: usize, b: &[BigInt]) -> Option<IntRow> {
    let c = rows.len();
    assert_eq!(b.len(), c, "right-hand side length differs from row count");
    let t = transpose(rows, cols);
    // U A^T = H, so e^T = z U with z H = b^T
    let herm = row_hermite(&t, c);
    let mut z: Vec<BigInt> = vec![BigInt::zero(); cols];
    let mut residual: Vec<BigInt> = b.to_vec();
    for (i, &p) in herm.pivots.iter().enumerate() {
        let (q, rem) = residual[p].div_rem(&herm.h[i][p]);
        if !rem.is_zero() {
            return None;
        }
        for j in p..c {
            residual[j] -= &q * &herm.h[i][j];
        }
        z[i] = q;
    }
    if residual.iter().any(|v| !v.is_zero()) {
        return None;
    }
    let mut e = vec![BigInt::zero(); cols];
    for (i, zi) in z.iter().enumerate().take(herm.rank) {
        if zi.is_zero() {
            continue;
        }
        for j in 0..cols {
            e[j] += zi * &herm.u[i][j];
        }
    }
    Some(e)
}

/// `max |entry|`.
pub fn height(rows: &[IntRow]) -> BigInt {
    rows.iter().flatten().map(|v| v.abs()).max().unwrap_or_else(BigInt::zero)
}

/// Divides out the content and makes the leading entry positive.
pub fn primitive(row: &IntRow) -> IntRow {
    let g = row.iter().fold(BigInt::zero(), |a, b| a.gcd(b));
    if g.is_zero() {
        return row.clone();
    }
    let sign = row.iter().find(|v| !v.is_zero()).map(|v| v.is_negative()).unwrap_or(false);
    row.iter()
        .map(|v| {
            let q = v / &g;
            if sign {
                -q
            } else {
                q
            }
        })
        .collect()
}

pub fn int_rows(v: &[&[i64]]) -> Vec<IntRow> {
    v.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
}
