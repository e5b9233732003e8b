//! Linear subspaces of `V^(n+l)` over `K` and over `Q`.
//!
//! A subspace is the solution set of its defining matrix, acting on the
//! coordinates `(x1..xn, a1..al)`. The matrix is kept in reduced row echelon
//! form with every row canonicalized, so equal subspaces compare equal.
//! Containment of solution sets is decided by row-span inclusion, which is
//! valid because `V` is an infinite dimensional `K`-space.

mod decompose;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::error::{PowError, Result};
use crate::exponent_field::ExponentScalar;
use crate::linalg::integer::{saturate, IntRow};
use crate::linalg::{q_to_k, Field, Matrix};
pub use decompose::{
    affine_decompose, maximal_q_subspace, minimal_q_envelope, orth_complement, quotient_subspace,
    rational_section, AffineDecomposition,
};

/// Solution set of a homogeneous linear system.
#[derive(Clone, PartialEq)]
pub struct Subspace<F> {
    n: usize,
    l: usize,
    matrix: Matrix<F>,
}

pub type KLinearSubspace = Subspace<ExponentScalar>;
pub type QLinearSubspace = Subspace<BigRational>;

/// A translate of a linear subspace.
#[derive(Clone, Debug, PartialEq)]
pub struct AffineCoset<F: Field> {
    pub direction: Subspace<F>,
    pub shift: Shift<F>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Shift<F: Field> {
    /// `n x l` matrix; the shift at parameters `a` is `shift * a`.
    Parametric(Matrix<F>),
    Point(Vec<F>),
}

impl<F: Field> AffineCoset<F> {
    /// The translation vector at the given parameter values.
    pub fn shift_at(&self, a: &[F]) -> Vec<F> {
        match &self.shift {
            Shift::Parametric(m) => m.mul_vec(a),
            Shift::Point(p) => p.clone(),
        }
    }

    pub fn contains_point(&self, x: &[F], a: &[F]) -> bool {
        let s = self.shift_at(a);
        let d: Vec<F> = x.iter().zip(&s).map(|(u, v)| u.sub_ref(v)).collect();
        self.direction.contains_vector(&d)
    }
}

/// Lattice operation selector for [`subspace_lattice`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticeOp {
    Intersect,
    Sum,
    Contains,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LatticeValue<F: Field> {
    Subspace(Subspace<F>),
    Bool(bool),
}

impl<F: Field> Subspace<F> {
    /// Subspace cut out by `defining` (columns `n + l`).
    pub fn new(n: usize, l: usize, defining: Matrix<F>) -> Result<Self> {
        if defining.cols() != n + l {
            return Err(PowError::DimensionMismatch { expected: n + l, found: defining.cols() });
        }
        Ok(Self::canonical(n, l, defining))
    }

    fn canonical(n: usize, l: usize, defining: Matrix<F>) -> Self {
        let mut matrix = defining.row_basis();
        matrix.canonicalize_rows();
        Subspace { n, l, matrix }
    }

    pub fn from_rows(n: usize, l: usize, rows: Vec<Vec<F>>) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != n + l) {
            return Err(PowError::DimensionMismatch { expected: n + l, found: r.len() });
        }
        Ok(Self::canonical(n, l, Matrix::from_rows(n + l, rows)))
    }

    pub fn whole(n: usize, l: usize) -> Self {
        Subspace { n, l, matrix: Matrix::zeros(0, n + l) }
    }

    pub fn zero(n: usize, l: usize) -> Self {
        Self::canonical(n, l, Matrix::identity(n + l))
    }

    /// The span of the rows of `vectors`.
    pub fn spanned_by(n: usize, l: usize, vectors: &Matrix<F>) -> Self {
        assert_eq!(vectors.cols(), n + l, "vector length differs from ambient dimension");
        Self::canonical(n, l, vectors.kernel_basis())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn ambient(&self) -> usize {
        self.n + self.l
    }

    pub fn defining_matrix(&self) -> &Matrix<F> {
        &self.matrix
    }

    pub fn rank(&self) -> usize {
        self.matrix.rows()
    }

    /// `n + l - rank`.
    pub fn dim(&self) -> usize {
        self.ambient() - self.rank()
    }

    pub fn is_whole(&self) -> bool {
        self.rank() == 0
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Rows form a basis.
    pub fn basis(&self) -> Matrix<F> {
        self.matrix.kernel_basis()
    }

    pub fn contains_vector(&self, v: &[F]) -> bool {
        self.matrix.mul_vec(v).iter().all(|x| x.is_zero())
    }

    /// `other ⊆ self`.
    pub fn contains(&self, other: &Subspace<F>) -> bool {
        assert_eq!(self.ambient(), other.ambient(), "ambient dimensions differ");
        if self.rank() == 0 {
            return true;
        }
        other.matrix.vstack(&self.matrix).rank() == other.rank()
    }

    pub fn intersect(&self, other: &Subspace<F>) -> Subspace<F> {
        assert_eq!(self.ambient(), other.ambient(), "ambient dimensions differ");
        Self::canonical(self.n, self.l, self.matrix.vstack(&other.matrix))
    }

    pub fn sum(&self, other: &Subspace<F>) -> Subspace<F> {
        assert_eq!(self.ambient(), other.ambient(), "ambient dimensions differ");
        Self::spanned_by(self.n, self.l, &self.basis().vstack(&other.basis()))
    }

    /// The fiber over `a = 0`, a subspace of `V^n`.
    pub fn at_zero(&self) -> Subspace<F> {
        Self::canonical(self.n, 0, self.matrix.col_range(0, self.n))
    }

    /// Image under the coordinate projection onto `keep`, viewed in `V^(n+l)`.
    pub fn project(&self, keep: &[usize], n: usize, l: usize) -> Subspace<F> {
        assert_eq!(keep.len(), n + l, "kept coordinates must match the target ambient");
        Self::spanned_by(n, l, &self.basis().select_cols(keep))
    }

    /// `{(x, 0)}`-embedding of a parameter-free subspace into `V^(n+l)`.
    pub fn with_zero_params(&self, l: usize) -> Subspace<F> {
        assert_eq!(self.l, 0, "already parametrized");
        let mut rows = self.matrix.row_vecs();
        for row in rows.iter_mut() {
            row.extend(std::iter::repeat_n(F::zero(), l));
        }
        for k in 0..l {
            let mut r = vec![F::zero(); self.n + l];
            r[self.n + k] = F::one();
            rows.push(r);
        }
        Self::canonical(self.n, l, Matrix::from_rows(self.n + l, rows))
    }

    /// Equations `sum c_i v_i = 0` with `x1..xn, a1..al` names.
    pub fn equations(&self) -> Vec<String> {
        (0..self.rank()).map(|i| format_equation(self.matrix.row(i), self.n)).collect()
    }
}

impl QLinearSubspace {
    pub fn to_k(&self) -> KLinearSubspace {
        Subspace { n: self.n, l: self.l, matrix: q_to_k(&self.matrix) }
    }

    /// Defining rows as primitive integer vectors.
    pub fn integer_rows(&self) -> Vec<IntRow> {
        self.matrix.to_integer_rows()
    }

    /// `max |entry|` of the defining rows.
    pub fn height(&self) -> BigInt {
        self.matrix.height()
    }

    /// A basis of the integer vectors in the row span. These are the
    /// characters `y^m` of the quotient torus by `exp(self)`, and the same
    /// rows give the quotient coordinates `u = m x` of `V^n / self`.
    pub fn character_rows(&self) -> Vec<IntRow> {
        assert_eq!(self.l, 0, "characters are defined for parameter-free subspaces");
        saturate(&self.integer_rows(), self.n)
    }

    pub fn from_integer_rows(n: usize, rows: &[IntRow]) -> Result<Self> {
        Self::from_rows(
            n,
            0,
            rows.iter().map(|r| r.iter().map(|v| BigRational::from_integer(v.clone())).collect()).collect(),
        )
    }

    /// `{x : N (chars x) = 0}` for a subspace `N` of the quotient coordinates.
    pub fn pull_back(chars: &[IntRow], n: usize, sub: &QLinearSubspace) -> QLinearSubspace {
        let chars_q = Matrix::from_integer_rows(n, chars);
        let rows = if chars.is_empty() {
            Matrix::zeros(0, n)
        } else {
            sub.defining_matrix().mul(&chars_q)
        };
        Self::canonical(n, 0, rows)
    }
}

/// `dim L = n + l - rank`.
pub fn dim_of<F: Field>(l: &Subspace<F>) -> usize {
    l.dim()
}

pub fn subspace_lattice<F: Field>(l1: &Subspace<F>, l2: &Subspace<F>, op: LatticeOp) -> Result<LatticeValue<F>> {
    if l1.ambient() != l2.ambient() || l1.n != l2.n {
        return Err(PowError::DimensionMismatch { expected: l1.ambient(), found: l2.ambient() });
    }
    Ok(match op {
        LatticeOp::Intersect => LatticeValue::Subspace(l1.intersect(l2)),
        LatticeOp::Sum => LatticeValue::Subspace(l1.sum(l2)),
        LatticeOp::Contains => LatticeValue::Bool(l1.contains(l2)),
    })
}

fn var_name(j: usize, n: usize) -> String {
    if j < n {
        format!("x{}", j + 1)
    } else {
        format!("a{}", j - n + 1)
    }
}

fn format_equation<F: Field>(row: &[F], n: usize) -> String {
    let mut out = String::new();
    for (j, c) in row.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let s = c.to_string();
        let (neg, body) = match s.strip_prefix('-') {
            Some(rest) if !rest.contains(['+', '-']) => (true, rest.to_string()),
            _ => (false, s.clone()),
        };
        let body = if body.contains(['+', '-']) { format!("({body})") } else { body };
        let name = var_name(j, n);
        let term = if body == "1" { name } else { format!("{body}*{name}") };
        if out.is_empty() {
            out = if neg { format!("-{term}") } else { term };
        } else if neg {
            out.push_str(&format!(" - {term}"));
        } else {
            out.push_str(&format!(" + {term}"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out.push_str(" = 0");
    out
}

impl<F: Field> fmt::Debug for Subspace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(n={}, l={}, dim={}, {{{}}})", self.n, self.l, self.dim(), self.equations().join("; "))
    }
}

impl<F: Field> fmt::Display for Subspace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rank() == 0 {
            return write!(f, "V^{}", self.ambient());
        }
        write!(f, "{{{}}}", self.equations().join("; "))
    }
}

impl<F: Field> serde::Serialize for Subspace<F> {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Subspace", 4)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("l", &self.l)?;
        st.serialize_field("dim", &self.dim())?;
        st.serialize_field("equations", &self.equations())?;
        st.end()
    }
}

/// Unit vector helper shared by the submodules.
pub(crate) fn unit_row<F: Field>(len: usize, at: usize) -> Vec<F> {
    let mut r = vec![F::zero(); len];
    r[at] = F::one();
    r
}
