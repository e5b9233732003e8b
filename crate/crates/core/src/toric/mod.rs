//! Varieties of the torus `(F^×)^k` over `Q`: Gröbner bases, dimensions,
//! quotients by subtori, fiber dimensions and bounded torsion cosets.
//!
//! Laurent ideals are handled through an auxiliary variable `t` with the
//! relation `t * y1 * .. * yk = 1`, which realizes the saturation at the
//! coordinate hyperplanes. All rings place `t` first.

pub mod cyclotomic;
pub mod groebner;
pub mod laurent;
pub mod parse;
pub mod point;
pub mod poly;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{PowError, Result};
use crate::linalg::integer::{integer_solve, lattice_hnf, row_hermite, saturate, IntRow};
use crate::subspace::QLinearSubspace;
pub use cyclotomic::{cyclotomic_poly, CycloElem};
pub use groebner::{groebner, normal_form, GroebnerBasis, DEFAULT_PAIR_BUDGET};
pub use laurent::{LaurentIdeal, LaurentPoly};
pub use parse::{parse_laurent, parse_laurent_named, ParseError};
pub use point::{TorusCoord, TorusPoint};
pub use poly::{MonomialOrder, Poly, TermOrder};

type Q = BigRational;

/// Dimension of a variety, or emptiness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Dimension {
    Empty,
    Dim(usize),
}

impl Dimension {
    pub fn value(self) -> Option<usize> {
        match self {
            Dimension::Empty => None,
            Dimension::Dim(d) => Some(d),
        }
    }

    pub fn require(self) -> Result<usize> {
        self.value().ok_or(PowError::EmptyVariety)
    }
}

impl std::fmt::Display for Dimension {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Dimension::Empty => write!(f, "empty"),
            Dimension::Dim(d) => write!(f, "{d}"),
        }
    }
}

/// The connected subtorus `{y : y^m = 1 for every row m}`; rows are a
/// Hermite basis of a saturated lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SubtorusSpec {
    n: usize,
    lattice_rows: Vec<IntRow>,
}

impl SubtorusSpec {
    /// Saturates `rows` and brings them to Hermite form.
    pub fn from_rows(n: usize, rows: &[IntRow]) -> Self {
        SubtorusSpec { n, lattice_rows: saturate(rows, n) }
    }

    /// The trivial subtorus `{1}` of `(F^×)^n`.
    pub fn trivial(n: usize) -> Self {
        let rows: Vec<IntRow> =
            (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect();
        SubtorusSpec { n, lattice_rows: lattice_hnf(&rows, n) }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[IntRow] {
        &self.lattice_rows
    }

    pub fn dim(&self) -> usize {
        self.n - self.lattice_rows.len()
    }

    /// `y^m - 1` for each row.
    pub fn binomials(&self) -> Vec<LaurentPoly> {
        self.lattice_rows.iter().map(|m| LaurentPoly::character_minus(self.n, m, Q::one())).collect()
    }

    /// The Q-linear subspace whose image is this torus.
    pub fn subspace(&self) -> QLinearSubspace {
        QLinearSubspace::from_integer_rows(self.n, &self.lattice_rows).expect("rows have length n")
    }

    pub fn coset_contains(&self, base: &TorusPoint, w: &TorusPoint) -> bool {
        self.lattice_rows.iter().all(|m| base.character(m) == w.character(m))
    }
}

/// `exp(M)` as a binomial system.
pub fn torus_of(m: &QLinearSubspace) -> SubtorusSpec {
    SubtorusSpec { n: m.ambient(), lattice_rows: m.character_rows() }
}

fn torus_relation(total: usize, t: usize, vars: &[usize], order: &TermOrder) -> Poly<Q> {
    let mut e = vec![0u32; total];
    e[t] = 1;
    for &v in vars {
        e[v] = 1;
    }
    Poly::from_terms(total, vec![(e, Q::one()), (vec![0; total], -Q::one())], order)
}

/// Positive and negative parts of `m`, placed at `offset..`.
fn split_exponents(total: usize, offset: usize, m: &[BigInt]) -> (Vec<u32>, Vec<u32>) {
    let mut plus = vec![0u32; total];
    let mut minus = vec![0u32; total];
    for (j, v) in m.iter().enumerate() {
        let k = v.abs().to_u32().expect("exponent fits");
        if v.is_positive() {
            plus[offset + j] = k;
        } else {
            minus[offset + j] = k;
        }
    }
    (plus, minus)
}

/// `y^(m+) - c * z^k * y^(m-)` with `y_j` at `offset + j`.
fn binomial(
    total: usize,
    offset: usize,
    m: &[BigInt],
    coef: Q,
    zpow: Option<(usize, u32)>,
    order: &TermOrder,
) -> Poly<Q> {
    let (plus, mut minus) = split_exponents(total, offset, m);
    if let Some((z, k)) = zpow {
        minus[z] += k;
    }
    Poly::from_terms(total, vec![(plus, Q::one()), (minus, -coef)], order)
}

fn cyclotomic_generator(total: usize, z: usize, order_n: u64, order: &TermOrder) -> Poly<Q> {
    let terms = cyclotomic_poly(order_n)
        .into_iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(k, c)| {
            let mut e = vec![0u32; total];
            e[z] = k as u32;
            (e, Q::from_integer(c))
        })
        .collect();
    Poly::from_terms(total, terms, order)
}

/// Ring `[t, y1..yk]` with the ideal's cleared generators and the torus relation.
fn saturating_system(ideal: &LaurentIdeal, extra: usize, order: &TermOrder) -> Vec<Poly<Q>> {
    let k = ideal.nvars();
    let total = 1 + k + extra;
    let mut polys: Vec<Poly<Q>> = ideal.nonzero_generators().map(|g| g.to_poly(total, 1, order)).collect();
    polys.push(torus_relation(total, 0, &(1..=k).collect::<Vec<_>>(), order));
    polys
}

/// Largest set of variables containing no leading monomial's support.
fn max_independent_set(lms: &[&Vec<u32>], nvars: usize) -> usize {
    let supports: Vec<u64> = lms
        .iter()
        .map(|e| e.iter().enumerate().filter(|(_, &x)| x > 0).fold(0u64, |acc, (i, _)| acc | (1 << i)))
        .collect();
    fn search(i: usize, nvars: usize, chosen: u64, size: usize, supports: &[u64], best: &mut usize) {
        if size + (nvars - i) <= *best {
            return;
        }
        if i == nvars {
            *best = size;
            return;
        }
        let with = chosen | (1 << i);
        if supports.iter().all(|&s| s & !with != 0) {
            search(i + 1, nvars, with, size + 1, supports, best);
        }
        search(i + 1, nvars, chosen, size, supports, best);
    }
    let mut best = 0;
    search(0, nvars, 0, 0, &supports, &mut best);
    best
}

/// Krull dimension of the affine variety of `polys`.
fn dim_of_polys(polys: &[Poly<Q>], total: usize, budget: usize) -> Result<Dimension> {
    assert!(total <= 64, "too many variables for the staircase search");
    let order = TermOrder::grevlex(total);
    let gb = GroebnerBasis::compute(polys, &order, budget)?;
    if gb.is_unit() {
        return Ok(Dimension::Empty);
    }
    Ok(Dimension::Dim(max_independent_set(&gb.leading_monomials(), total)))
}

/// Reduced Gröbner basis of the saturated ideal in `y1..yk`.
pub fn buchberger(ideal: &LaurentIdeal, order: MonomialOrder, budget: usize) -> Result<GroebnerBasis<Q>> {
    let k = ideal.nvars();
    let ring = TermOrder::blocks(vec![(1, MonomialOrder::GrevLex), (k, order)]);
    let gb = groebner(&saturating_system(ideal, 0, &ring), &ring, budget)?;
    let keep: Vec<usize> = (1..=k).collect();
    let target = TermOrder::single(k, order);
    let polys = gb
        .iter()
        .filter(|p| p.terms().iter().all(|(e, _)| e[0] == 0))
        .map(|p| p.restrict_vars(&keep, &target))
        .collect();
    Ok(GroebnerBasis { order: target, polys })
}

/// Dimension of `V(I)` inside the torus.
pub fn dim_variety(ideal: &LaurentIdeal, budget: usize) -> Result<Dimension> {
    let total = 1 + ideal.nvars();
    let order = TermOrder::grevlex(total);
    dim_of_polys(&saturating_system(ideal, 0, &order), total, budget)
}

/// Ideal of the image of `V(W)` under `(y, b) -> (y^{m_1}, .., y^{m_c}, b)`
/// where the `m_i` are the characters of `exp(M)`; parameters pass through.
///
/// A unimodular `U` with `C U^T = [I | 0]` (`C` the character rows) gives
/// coordinates `v = y^{U^{-T}}` in which `y^{m_i} = v_i`, so the quotient is
/// the elimination of `v_{c+1}..v_n`.
pub fn quotient_by_subtorus(w: &LaurentIdeal, m: &QLinearSubspace, budget: usize) -> Result<LaurentIdeal> {
    let n = m.ambient();
    if m.l() != 0 || n > w.nvars() {
        return Err(PowError::DimensionMismatch { expected: w.nvars(), found: n });
    }
    let params = w.nvars() - n;
    let chars = m.character_rows();
    let c = chars.len();
    let cols: Vec<IntRow> = (0..n).map(|j| chars.iter().map(|r| r[j].clone()).collect()).collect();
    let u = row_hermite(&cols, c).u;
    let elim = n - c;
    // y^e = v^{U e}; ring [t, v_{c+1}..v_n | v_1..v_c, b]
    let position = |k: usize| if k < c { elim + k } else { k - c };
    let mut moved = Vec::new();
    for g in w.nonzero_generators() {
        let mut terms = Vec::new();
        for (e, coef) in g.terms() {
            let mut x = vec![0i32; n + params];
            for (k, row) in u.iter().enumerate() {
                let f: BigInt = row.iter().zip(e).map(|(a, &b)| a * BigInt::from(b)).sum();
                x[position(k)] = f.to_i32().ok_or_else(|| PowError::InvalidInput("exponent overflow".into()))?;
            }
            x[n..].copy_from_slice(&e[n..]);
            terms.push((x, coef.clone()));
        }
        moved.push(LaurentPoly::from_terms(n + params, terms));
    }
    let total = 1 + n + params;
    let order = TermOrder::elimination(1 + elim, total);
    let mut polys: Vec<Poly<Q>> = moved.iter().map(|g| g.to_poly(total, 1, &order)).collect();
    polys.push(torus_relation(total, 0, &(1..total).collect::<Vec<_>>(), &order));
    let gb = groebner(&polys, &order, budget)?;
    let gens: Vec<LaurentPoly> = gb
        .iter()
        .filter(|p| p.terms().iter().all(|(e, _)| e[..=elim].iter().all(|&v| v == 0)))
        .map(|p| LaurentPoly::from_poly(p, 1 + elim, c + params))
        .collect();
    LaurentIdeal::new(c + params, gens)
}

/// `d(W, exp M) = dim W - dim(W / exp M)`.
pub fn generic_fiber_dim(w: &LaurentIdeal, m: &QLinearSubspace, budget: usize) -> Result<usize> {
    let dw = dim_variety(w, budget)?.require()?;
    let dq = dim_variety(&quotient_by_subtorus(w, m, budget)?, budget)?.require()?;
    Ok(dw - dq)
}

/// Polynomials of `V(W) ∩ w exp(M)` in the ring `[t, y1..yn, z]`, with `z`
/// a primitive root of unity of the point's order when that order exceeds 2.
fn coset_system(w: &LaurentIdeal, chars: &[IntRow], point: &TorusPoint) -> (Vec<Poly<Q>>, usize) {
    let n = w.nvars();
    let root = point.root_order();
    let with_z = root > 2;
    let total = 1 + n + usize::from(with_z);
    let order = TermOrder::grevlex(total);
    let mut polys = saturating_system(w, usize::from(with_z), &order);
    for m in chars {
        let val = point.character(m);
        let turn = val.turn() * Q::from_integer(root.into());
        let k = turn.to_integer().to_u64().expect("turn index");
        let (coef, zpow) = if with_z {
            (val.modulus().clone(), Some((1 + n, k as u32)))
        } else {
            (val.as_rational().expect("order at most two"), None)
        };
        polys.push(binomial(total, 1, m, coef, zpow, &order));
    }
    if with_z {
        polys.push(cyclotomic_generator(total, 1 + n, root, &order));
    }
    (polys, total)
}

/// `dim(V(W) ∩ w exp(M))`.
pub fn fiber_dim_at(w: &LaurentIdeal, m: &QLinearSubspace, point: &TorusPoint, budget: usize) -> Result<Dimension> {
    if m.ambient() != w.nvars() || point.len() != w.nvars() {
        return Err(PowError::DimensionMismatch { expected: w.nvars(), found: point.len() });
    }
    let (polys, total) = coset_system(w, &m.character_rows(), point);
    dim_of_polys(&polys, total, budget)
}

/// Membership of `point` in the stratum where fibers exceed the generic dimension.
pub fn exceptional_locus_member(
    w: &LaurentIdeal,
    m: &QLinearSubspace,
    point: &TorusPoint,
    budget: usize,
) -> Result<bool> {
    if point.len() != w.nvars() {
        return Err(PowError::DimensionMismatch { expected: w.nvars(), found: point.len() });
    }
    if !w.vanishes_at(point) {
        return Err(PowError::NotOnVariety);
    }
    let generic = generic_fiber_dim(w, m, budget)?;
    let at = fiber_dim_at(w, m, point, budget)?.require()?;
    Ok(at > generic)
}

/// A coset `T ζ` with `ζ` a torsion point of the given order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionCoset {
    pub subtorus: SubtorusSpec,
    pub point: TorusPoint,
    pub order: u64,
    /// `ζ^{m_i} = exp(2πi k_i / order)` for the subtorus rows `m_i`.
    pub character_values: Vec<BigInt>,
}

impl TorsionCoset {
    pub fn contains(&self, w: &TorusPoint) -> bool {
        self.subtorus.coset_contains(&self.point, w)
    }
}

fn coprime_tuples(c: usize, n: u64) -> Vec<Vec<u64>> {
    let mut out = vec![vec![]];
    for _ in 0..c {
        out = out.into_iter().flat_map(|t| (0..n).map(move |k| [t.clone(), vec![k]].concat())).collect();
    }
    out.into_iter().filter(|t| t.iter().fold(n, |g, &k| g.gcd(&k)) == 1).collect()
}

/// All cosets `T ζ ⊆ V(W)` with `T` among the candidates and `ζ` of order
/// at most `order_bound`. Containment is verified by reducing the
/// generators of `W` modulo a Gröbner basis of the coset's ideal.
pub fn torsion_cosets_bounded(
    w: &LaurentIdeal,
    candidates: &[SubtorusSpec],
    order_bound: u64,
    budget: usize,
) -> Result<Vec<TorsionCoset>> {
    if order_bound < 1 {
        return Err(PowError::InvalidInput("torsion order bound must be at least 1".into()));
    }
    let n = w.nvars();
    let mut found = Vec::new();
    for t in candidates {
        if t.n() != n {
            return Err(PowError::DimensionMismatch { expected: n, found: t.n() });
        }
        let rows = t.rows();
        for order_n in 1..=order_bound {
            for ks in coprime_tuples(rows.len(), order_n) {
                let kb: Vec<BigInt> = ks.iter().map(|&k| BigInt::from(k)).collect();
                let e = integer_solve(rows, n, &kb).expect("saturated rows are surjective");
                let nb = BigInt::from(order_n);
                let point = TorusPoint::new(e.iter().map(|ej| TorusCoord::root_of_unity(ej, &nb)).collect());
                let (polys, total) = coset_system(&LaurentIdeal::zero(n), rows, &point);
                let order = TermOrder::grevlex(total);
                let gb = GroebnerBasis::compute(&polys, &order, budget)?;
                let inside = w.nonzero_generators().all(|g| gb.contains(&g.to_poly(total, 1, &order)));
                if inside {
                    found.push(TorsionCoset { subtorus: t.clone(), point, order: order_n, character_values: kb });
                }
            }
        }
    }
    Ok(found)
}

/// `W(s)`: substitutes exact nonzero values for the last `s.len()` variables.
pub fn specialize(w: &LaurentIdeal, s: &[BigRational]) -> Result<LaurentIdeal> {
    if s.len() > w.nvars() {
        return Err(PowError::DimensionMismatch { expected: w.nvars(), found: s.len() });
    }
    if s.iter().any(|v| v.is_zero()) {
        return Err(PowError::InvalidInput("parameter values must be nonzero".into()));
    }
    let gens = w.nonzero_generators().map(|g| g.substitute_tail(s)).collect::<Result<Vec<_>>>()?;
    LaurentIdeal::new(w.nvars() - s.len(), gens)
}

#[cfg(test)]
mod tests;
