//! Laurent polynomials over `Q` and ideals of the torus.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::cyclotomic::CycloElem;
use super::point::TorusPoint;
use super::poly::{Poly, TermOrder};
use crate::error::{PowError, Result};

pub type Q = BigRational;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    nvars: usize,
    terms: BTreeMap<Vec<i32>, Q>,
}

impl LaurentPoly {
    pub fn zero(nvars: usize) -> Self {
        LaurentPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Q) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn from_int(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, Q::from_integer(c.into()))
    }

    /// `y_{i+1}`.
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, Q::one())
    }

    pub fn monomial(exps: Vec<i32>, c: Q) -> Self {
        let nvars = exps.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        LaurentPoly { nvars, terms }
    }

    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<i32>, Q)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(e, c);
        }
        p
    }

    /// `y^m - 1` for an integer row `m`.
    pub fn character_minus(nvars: usize, m: &[BigInt], c: Q) -> Self {
        let e: Vec<i32> = m.iter().map(|v| v.to_i32().expect("exponent fits in i32")).collect();
        let mut p = Self::monomial(e, Q::one());
        p.add_term(vec![0; nvars], -c);
        p
    }

    fn add_term(&mut self, e: Vec<i32>, c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(e.clone()).or_insert_with(Q::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<i32>, &Q)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn add(&self, o: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        for (e, c) in &o.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, o: &LaurentPoly) -> LaurentPoly {
        self.add(&o.scale(&-Q::one()))
    }

    pub fn scale(&self, c: &Q) -> LaurentPoly {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        LaurentPoly { nvars: self.nvars, terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    pub fn mul(&self, o: &LaurentPoly) -> LaurentPoly {
        let mut out = Self::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &o.terms {
                out.add_term(e1.iter().zip(e2).map(|(a, b)| a + b).collect(), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, k: u32) -> LaurentPoly {
        let mut acc = Self::constant(self.nvars, Q::one());
        for _ in 0..k {
            acc = acc.mul(self);
        }
        acc
    }

    /// Polynomial obtained by multiplying with the smallest monomial that
    /// clears negative exponents; variables land at `offset..offset+nvars`
    /// of a ring with `total` variables.
    pub fn to_poly(&self, total: usize, offset: usize, order: &TermOrder) -> Poly<Q> {
        let mins: Vec<i32> =
            (0..self.nvars).map(|j| self.terms.keys().map(|e| e[j]).min().unwrap_or(0).min(0)).collect();
        let terms = self
            .terms
            .iter()
            .map(|(e, c)| {
                let mut x = vec![0u32; total];
                for j in 0..self.nvars {
                    x[offset + j] = (e[j] - mins[j]) as u32;
                }
                (x, c.clone())
            })
            .collect();
        Poly::from_terms(total, terms, order)
    }

    /// Laurent polynomial from a polynomial whose variables `offset..offset+nvars` are kept.
    pub fn from_poly(p: &Poly<Q>, offset: usize, nvars: usize) -> LaurentPoly {
        Self::from_terms(
            nvars,
            p.terms().iter().map(|(e, c)| (e[offset..offset + nvars].iter().map(|&v| v as i32).collect(), c.clone())),
        )
    }

    /// Substitutes the last `values.len()` variables.
    pub fn substitute_tail(&self, values: &[Q]) -> Result<LaurentPoly> {
        let keep = self.nvars - values.len();
        let mut out = Self::zero(keep);
        for (e, c) in &self.terms {
            let mut coef = c.clone();
            for (k, v) in values.iter().enumerate() {
                let x = e[keep + k];
                if x != 0 {
                    if v.is_zero() {
                        return Err(PowError::InvalidInput("parameter values must be nonzero".into()));
                    }
                    coef *= num_traits::Pow::pow(v, x);
                }
            }
            out.add_term(e[..keep].to_vec(), coef);
        }
        Ok(out)
    }

    /// Exact value at a torus point, in `Q(ζ_N)` with `N` the point's root order.
    pub fn eval_exact(&self, w: &TorusPoint) -> CycloElem {
        assert_eq!(w.len(), self.nvars, "point dimension");
        let order = w.root_order();
        let mut acc = CycloElem::zero(order);
        for (e, c) in &self.terms {
            let m: Vec<BigInt> = e.iter().map(|&v| BigInt::from(v)).collect();
            let val = w.character(&m);
            let turn = val.turn() * Q::from_integer(order.into());
            debug_assert!(turn.is_integer());
            let k = turn.to_integer().to_u64().expect("turn index");
            acc = acc.add(&CycloElem::scaled_root(order, k, c * val.modulus()));
        }
        acc
    }

    /// Numeric value at a complex point.
    pub fn eval_complex(&self, z: &[num_complex::Complex<f64>]) -> num_complex::Complex<f64> {
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut v = num_complex::Complex::new(c.to_f64().unwrap_or(f64::NAN), 0.0);
                for (x, &k) in z.iter().zip(e) {
                    if k != 0 {
                        v *= x.powi(k);
                    }
                }
                v
            })
            .sum()
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        // highest total degree first, lexicographic within a degree
        let mut terms: Vec<(&Vec<i32>, &Q)> = self.terms.iter().collect();
        terms.sort_by(|a, b| {
            let da: i32 = a.0.iter().sum();
            let db: i32 = b.0.iter().sum();
            db.cmp(&da).then(b.0.cmp(a.0))
        });
        for (k, (e, c)) in terms.into_iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x != 0)
                .map(|(i, &x)| if x == 1 { names[i].clone() } else { format!("{}^{}", names[i], x) })
                .collect();
            let neg = c.is_negative();
            let mag = c.abs();
            let body = if mono.is_empty() {
                mag.to_string()
            } else if mag.is_one() {
                mono.join("*")
            } else {
                format!("{}*{}", mag, mono.join("*"))
            };
            match (k, neg) {
                (0, true) => out.push('-'),
                (0, false) => {}
                (_, true) => out.push_str(" - "),
                (_, false) => out.push_str(" + "),
            }
            out.push_str(&body);
        }
        out
    }

    pub fn default_names(nvars: usize) -> Vec<String> {
        (1..=nvars).map(|i| format!("y{i}")).collect()
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_with(&Self::default_names(self.nvars)))
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

/// Ideal of the torus `(F^×)^n` given by Laurent generators over `Q`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentIdeal {
    nvars: usize,
    generators: Vec<LaurentPoly>,
}

impl LaurentIdeal {
    pub fn new(nvars: usize, generators: Vec<LaurentPoly>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.nvars() != nvars) {
            return Err(PowError::DimensionMismatch { expected: nvars, found: g.nvars() });
        }
        let mut generators: Vec<LaurentPoly> = generators.into_iter().filter(|g| !g.is_zero()).collect();
        if generators.is_empty() {
            generators.push(LaurentPoly::zero(nvars));
        }
        Ok(LaurentIdeal { nvars, generators })
    }

    /// The whole torus.
    pub fn zero(nvars: usize) -> Self {
        LaurentIdeal { nvars, generators: vec![LaurentPoly::zero(nvars)] }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[LaurentPoly] {
        &self.generators
    }

    /// Nonzero generators.
    pub fn nonzero_generators(&self) -> impl Iterator<Item = &LaurentPoly> {
        self.generators.iter().filter(|g| !g.is_zero())
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.iter().all(|g| g.is_zero())
    }

    pub fn with_generators(&self, extra: impl IntoIterator<Item = LaurentPoly>) -> Result<Self> {
        let mut g: Vec<LaurentPoly> = self.nonzero_generators().cloned().collect();
        g.extend(extra);
        Self::new(self.nvars, g)
    }

    pub fn vanishes_at(&self, w: &TorusPoint) -> bool {
        self.nonzero_generators().all(|g| g.eval_exact(w).is_zero())
    }
}

impl fmt::Display for LaurentIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "<{}>", parts.join(", "))
    }
}

impl fmt::Debug for LaurentIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl serde::Serialize for LaurentIdeal {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let g: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        g.serialize(s)
    }
}
