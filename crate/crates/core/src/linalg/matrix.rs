use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Serialize, Serializer};

use super::Field;

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq)]
pub struct Matrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<F>,
}

/// Output of [`Matrix::rref`].
#[derive(Clone, PartialEq)]
pub struct Rref<F> {
    pub matrix: Matrix<F>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

impl<F: Field> Matrix<F> {
    pub fn new(rows: usize, cols: usize, data: Vec<F>) -> Self {
        assert_eq!(data.len(), rows * cols, "entry count must be rows * cols");
        Matrix { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![F::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_i64(rows: usize, cols: usize, vals: &[i64]) -> Self {
        Self::new(rows, cols, vals.iter().map(|&v| F::from_int(v)).collect())
    }

    /// Builds from explicit rows; `cols` is needed when `rows` is empty.
    pub fn from_rows(cols: usize, rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            assert_eq!(row.len(), cols, "ragged rows");
            data.extend(row);
        }
        Matrix { rows: r, cols, data }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[F] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [F] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<F>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[F] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.rows, "inner dimensions differ");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).add_ref(&a.mul_ref(b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F]) -> Vec<F> {
        assert_eq!(self.cols, v.len(), "vector length differs from column count");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .filter(|(a, b)| !a.is_zero() && !b.is_zero())
                    .fold(F::zero(), |acc, (a, b)| acc.add_ref(&a.mul_ref(b)))
            })
            .collect()
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn vstack(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.cols, other.cols, "column counts differ");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn hstack(&self, other: &Matrix<F>) -> Matrix<F> {
        assert_eq!(self.rows, other.rows, "row counts differ");
        let rows = (0..self.rows)
            .map(|i| self.row(i).iter().chain(other.row(i)).cloned().collect())
            .collect();
        Self::from_rows(self.cols + other.cols, rows)
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix<F> {
        Self::from_rows(self.cols, idx.iter().map(|&i| self.row(i).to_vec()).collect())
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix<F> {
        let rows = (0..self.rows)
            .map(|i| idx.iter().map(|&j| self.get(i, j).clone()).collect())
            .collect();
        Self::from_rows(idx.len(), rows)
    }

    /// Column range `[start, end)`.
    pub fn col_range(&self, start: usize, end: usize) -> Matrix<F> {
        self.select_cols(&(start..end).collect::<Vec<_>>())
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> Matrix<G> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    /// Reduced row echelon form.
    ///
    /// Forward elimination is fraction free (`r <- p*r - a*pivot_row`) with
    /// [`Field::normalize_row`] after each update. The pivot in a column is
    /// the entry of least [`Field::weight`], ties to the lowest row.
    pub fn rref(&self) -> Rref<F> {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let mut best: Option<(u64, usize)> = None;
            for i in r..m.rows {
                let v = m.get(i, c);
                if !v.is_zero() {
                    let w = v.weight();
                    if best.is_none_or(|(bw, _)| w < bw) {
                        best = Some((w, i));
                    }
                }
            }
            let Some((_, p)) = best else { continue };
            m.swap_rows(r, p);
            let piv = m.get(r, c).clone();
            let piv_row: Vec<F> = m.row(r).to_vec();
            for i in r + 1..m.rows {
                let a = m.get(i, c).clone();
                if a.is_zero() {
                    continue;
                }
                let row = m.row_mut(i);
                for j in c..row.len() {
                    let lhs = piv.mul_ref(&row[j]);
                    row[j] = if piv_row[j].is_zero() { lhs } else { lhs.sub_ref(&a.mul_ref(&piv_row[j])) };
                }
                F::normalize_row(row);
            }
            pivots.push(c);
            r += 1;
        }
        let rank = r;
        for (i, &c) in pivots.iter().enumerate() {
            let p = m.get(i, c).clone();
            if !p.is_one() {
                for v in m.row_mut(i).iter_mut() {
                    if !v.is_zero() {
                        *v = v.div_ref(&p);
                    }
                }
            }
        }
        for (i, &c) in pivots.iter().enumerate().rev() {
            let piv_row: Vec<F> = m.row(i).to_vec();
            for k in 0..i {
                let a = m.get(k, c).clone();
                if a.is_zero() {
                    continue;
                }
                let row = m.row_mut(k);
                for j in c..row.len() {
                    if !piv_row[j].is_zero() {
                        row[j] = row[j].sub_ref(&a.mul_ref(&piv_row[j]));
                    }
                }
            }
        }
        Rref { matrix: m, rank, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// The nonzero rows of the reduced echelon form.
    pub fn row_basis(&self) -> Matrix<F> {
        let red = self.rref();
        red.matrix.select_rows(&(0..red.rank).collect::<Vec<_>>())
    }

    /// Rows form a basis of `{x : A x = 0}`, one per free column.
    pub fn kernel_basis(&self) -> Matrix<F> {
        let red = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !red.pivots.contains(c)).collect();
        let rows = free
            .iter()
            .map(|&f| {
                let mut v = vec![F::zero(); self.cols];
                v[f] = F::one();
                for (i, &p) in red.pivots.iter().enumerate() {
                    let e = red.matrix.get(i, f);
                    if !e.is_zero() {
                        v[p] = -e.clone();
                    }
                }
                v
            })
            .collect();
        Self::from_rows(self.cols, rows)
    }

    /// A particular solution of `A x = b`, or `None` when inconsistent.
    pub fn solve(&self, b: &[F]) -> Option<Vec<F>> {
        assert_eq!(b.len(), self.rows, "right-hand side length differs from row count");
        let col = Matrix::from_rows(1, b.iter().map(|v| vec![v.clone()]).collect());
        let red = self.hstack(&col).rref();
        if red.pivots.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![F::zero(); self.cols];
        for (i, &p) in red.pivots.iter().enumerate() {
            x[p] = red.matrix.get(i, self.cols).clone();
        }
        Some(x)
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Applies [`Field::canonical_row`] to every row.
    pub fn canonicalize_rows(&mut self) {
        for i in 0..self.rows {
            F::canonical_row(self.row_mut(i));
        }
    }
}

impl Matrix<BigRational> {
    /// Integer entries of a matrix known to be integral.
    pub fn to_integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|v| {
                        assert!(v.is_integer(), "non-integer entry {v}");
                        v.to_integer()
                    })
                    .collect()
            })
            .collect()
    }

    pub fn from_integer_rows(cols: usize, rows: &[Vec<BigInt>]) -> Self {
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|v| BigRational::from_integer(v.clone())).collect())
                .collect(),
        )
    }

    /// Largest absolute entry (of integral matrices).
    pub fn height(&self) -> BigInt {
        use num_traits::{Signed, Zero};
        self.data.iter().map(|v| v.numer().abs()).fold(BigInt::zero(), |a, b| a.max(b))
    }
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let parts: Vec<String> = self.row(i).iter().map(|v| v.to_string()).collect();
            write!(f, "{}", parts.join(", "))?;
        }
        write!(f, "]({}x{})", self.rows, self.cols)
    }
}

impl<F: Field> fmt::Debug for Rref<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Rref")
            .field("matrix", &self.matrix)
            .field("rank", &self.rank)
            .field("pivots", &self.pivots)
            .finish()
    }
}

impl<F: Field> fmt::Display for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl<F: Field> Serialize for Matrix<F> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> =
            (0..self.rows).map(|i| self.row(i).iter().map(|v| v.to_string()).collect()).collect();
        rows.serialize(s)
    }
}
