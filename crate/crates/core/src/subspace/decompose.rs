use num_rational::BigRational;
use num_traits::Zero;

use super::{unit_row, KLinearSubspace, QLinearSubspace, Subspace};
use crate::error::{PowError, Result};
use crate::exponent_field::{qbasis_decompose, ExponentScalar};
use crate::linalg::{KMatrix, Matrix, QMatrix};

/// `L(a) = L(0) + r a` for `a` in the parameter projection.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineDecomposition {
    /// `L(0)`, a subspace of `V^n`.
    pub l0: KLinearSubspace,
    /// `n x l` matrix of the section `r`.
    pub r: KMatrix,
    /// Projection of `L` onto the parameter coordinates, inside `V^l`.
    pub projection: KLinearSubspace,
}

/// Splits the rows of `L`'s reduced matrix into those with an `x` pivot
/// and those living purely on the parameters.
pub fn affine_decompose(l: &KLinearSubspace) -> AffineDecomposition {
    let (n, p) = (l.n(), l.l());
    let a = l.defining_matrix();
    let mut r = KMatrix::zeros(n, p);
    let mut proj_rows = Vec::new();
    for i in 0..a.rows() {
        let row = a.row(i);
        match row.iter().position(|v| !v.is_zero()) {
            Some(piv) if piv < n => {
                for k in 0..p {
                    let c = &row[n + k];
                    if !c.is_zero() {
                        r.set(piv, k, -c.clone());
                    }
                }
            }
            _ => proj_rows.push(row[n..].to_vec()),
        }
    }
    AffineDecomposition {
        l0: l.at_zero(),
        r,
        projection: Subspace::from_rows(p, 0, proj_rows).expect("row length is l"),
    }
}

/// Expands every entry over a common `Q`-basis; returns for each input row
/// the rational rows `v_j` with `row = sum_j b_j v_j`.
fn expand_rows(rows: &KMatrix) -> Vec<Vec<BigRational>> {
    let cols = rows.cols();
    let qb = qbasis_decompose(rows.entries());
    let mut out = Vec::new();
    for i in 0..rows.rows() {
        for j in 0..qb.dim() {
            let v: Vec<BigRational> = (0..cols).map(|c| qb.coords.get(i * cols + c, j).clone()).collect();
            if v.iter().any(|x| !x.is_zero()) {
                out.push(v);
            }
        }
    }
    out
}

/// `N_L`: the largest `Q`-linear subspace contained in `L`.
pub fn maximal_q_subspace(l: &KLinearSubspace) -> QLinearSubspace {
    let rows = expand_rows(l.defining_matrix());
    Subspace::from_rows(l.n(), l.l(), rows).expect("expanded rows keep their length")
}

/// The smallest `Q`-linear subspace containing `L`.
pub fn minimal_q_envelope(l: &KLinearSubspace) -> QLinearSubspace {
    let vectors = expand_rows(&l.basis());
    Subspace::spanned_by(l.n(), l.l(), &Matrix::from_rows(l.ambient(), vectors))
}

/// A rational `n x l` matrix `q` with `q a ∈ L(a)` for every `a` in the
/// parameter projection, or `None` when no such `q` exists.
///
/// The conditions `(A_x q + A_a) p = 0` for a basis `p` of the projection
/// are linear in the entries of `q` with coefficients in `K`; they are
/// expanded over a `Q`-basis and solved over `Q`.
pub fn rational_section(l: &KLinearSubspace) -> Option<QMatrix> {
    let (n, p) = (l.n(), l.l());
    if p == 0 {
        return Some(QMatrix::zeros(n, 0));
    }
    let dec = affine_decompose(l);
    let proj_basis = dec.projection.basis();
    let a = l.defining_matrix();
    let unknowns = n * p;
    // one K-equation per (row of A, basis vector of the projection):
    // coefficient columns for q[c][k] followed by the constant term
    let mut eqs: Vec<Vec<ExponentScalar>> = Vec::new();
    for i in 0..a.rows() {
        for j in 0..proj_basis.rows() {
            let pj = proj_basis.row(j);
            let mut eq = vec![ExponentScalar::zero(); unknowns + 1];
            for c in 0..n {
                let ax = a.get(i, c);
                if ax.is_zero() {
                    continue;
                }
                for k in 0..p {
                    if !pj[k].is_zero() {
                        eq[c * p + k] = ax * &pj[k];
                    }
                }
            }
            let mut constant = ExponentScalar::zero();
            for k in 0..p {
                let aa = a.get(i, n + k);
                if !aa.is_zero() && !pj[k].is_zero() {
                    constant = &constant + &(aa * &pj[k]);
                }
            }
            eq[unknowns] = constant;
            if eq.iter().any(|v| !v.is_zero()) {
                eqs.push(eq);
            }
        }
    }
    if eqs.is_empty() {
        return Some(QMatrix::zeros(n, p));
    }
    let rational = expand_rows(&KMatrix::from_rows(unknowns + 1, eqs));
    let lhs = QMatrix::from_rows(unknowns, rational.iter().map(|r| r[..unknowns].to_vec()).collect());
    let rhs: Vec<BigRational> = rational.iter().map(|r| -r[unknowns].clone()).collect();
    let sol = lhs.solve(&rhs)?;
    Some(QMatrix::new(n, p, sol))
}

/// A complement `M⊥` with `V = M ⊕ M⊥`: `M`'s defining rows are extended
/// greedily by unit vectors to a basis, and the added unit rows define
/// the complement.
pub fn orth_complement(m: &QLinearSubspace) -> QLinearSubspace {
    let dim = m.ambient();
    let mut stack = m.defining_matrix().clone();
    let mut rank = stack.rows();
    let mut added = Vec::new();
    for j in 0..dim {
        if rank == dim {
            break;
        }
        let e: Vec<BigRational> = unit_row(dim, j);
        let candidate = stack.vstack(&QMatrix::from_rows(dim, vec![e.clone()]));
        if candidate.rank() > rank {
            stack = candidate;
            rank += 1;
            added.push(e);
        }
    }
    Subspace::from_rows(m.n(), m.l(), added).expect("unit rows have ambient length")
}

/// `L/M` as a subspace of `V^(c+l)`, in the quotient coordinates
/// `u = m x` given by [`QLinearSubspace::character_rows`].
pub fn quotient_subspace(l: &KLinearSubspace, m: &QLinearSubspace) -> Result<KLinearSubspace> {
    if m.l() != 0 || m.n() != l.n() {
        return Err(PowError::DimensionMismatch { expected: l.n(), found: m.ambient() });
    }
    let chars = m.character_rows();
    let (n, p, c) = (l.n(), l.l(), chars.len());
    let chars_k: Vec<Vec<ExponentScalar>> = chars
        .iter()
        .map(|r| r.iter().map(|v| ExponentScalar::from_rational(&BigRational::from_integer(v.clone()))).collect())
        .collect();
    let basis = l.basis();
    let images: Vec<Vec<ExponentScalar>> = (0..basis.rows())
        .map(|i| {
            let v = basis.row(i);
            let mut img: Vec<ExponentScalar> = chars_k
                .iter()
                .map(|ch| {
                    ch.iter()
                        .zip(&v[..n])
                        .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                        .fold(ExponentScalar::zero(), |acc, (a, b)| &acc + &(a * b))
                })
                .collect();
            img.extend(v[n..].iter().cloned());
            img
        })
        .collect();
    Ok(Subspace::spanned_by(c, p, &KMatrix::from_rows(c + p, images)))
}
