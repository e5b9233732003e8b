//! Sparse multivariate polynomials over `Z` in the indeterminates `l1..lm`.
//!
//! Exponent vectors are stored with trailing zeros trimmed so polynomials
//! built against different lambda counts interoperate. Terms are kept in a
//! `BTreeMap` keyed by [`Mono`], whose `Ord` is graded lexicographic.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Exponent vector in graded lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Mono(Vec<u32>);

impl Mono {
    pub fn one() -> Self {
        Mono(Vec::new())
    }

    pub fn from_exponents(mut e: Vec<u32>) -> Self {
        while e.last() == Some(&0) {
            e.pop();
        }
        Mono(e)
    }

    /// The monomial `l_{var+1}^power` (variables are zero based here).
    pub fn var(var: usize, power: u32) -> Self {
        let mut e = vec![0; var + 1];
        e[var] = power;
        Mono::from_exponents(e)
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.0.get(var).copied().unwrap_or(0)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn mul(&self, other: &Mono) -> Mono {
        let len = self.0.len().max(other.0.len());
        let e = (0..len).map(|i| self.exponent(i) + other.exponent(i)).collect();
        Mono::from_exponents(e)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Mono) -> Option<Mono> {
        if other.0.len() > self.0.len() {
            if other.0[self.0.len()..].iter().any(|&x| x > 0) {
                return None;
            }
        }
        let mut e = Vec::with_capacity(self.0.len());
        for i in 0..self.0.len() {
            let a = self.0[i];
            let b = other.exponent(i);
            if b > a {
                return None;
            }
            e.push(a - b);
        }
        Some(Mono::from_exponents(e))
    }

    fn without_var(&self, var: usize) -> Mono {
        let mut e = self.0.clone();
        if var < e.len() {
            e[var] = 0;
        }
        Mono::from_exponents(e)
    }
}

impl Ord for Mono {
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let len = self.0.len().max(other.0.len());
        for i in 0..len {
            match self.exponent(i).cmp(&other.exponent(i)) {
                Ordering::Equal => continue,
                ord => return ord,
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Mono {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial in `Z[l1, .., lm]`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LambdaPoly {
    terms: BTreeMap<Mono, BigInt>,
}

impl LambdaPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Mono::one(), c);
        }
        LambdaPoly { terms }
    }

    /// The indeterminate `l_{var+1}`.
    pub fn var(var: usize) -> Self {
        Self::monomial(Mono::var(var, 1), BigInt::one())
    }

    pub fn monomial(m: Mono, c: BigInt) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        LambdaPoly { terms }
    }

    pub fn from_terms<I: IntoIterator<Item = (Mono, BigInt)>>(it: I) -> Self {
        let mut p = LambdaPoly::zero();
        for (m, c) in it {
            p.add_term(m, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Mono::one()).map_or(false, |c| c.is_one())
    }

    pub fn as_constant(&self) -> Option<BigInt> {
        match self.terms.len() {
            0 => Some(BigInt::zero()),
            1 => self.terms.get(&Mono::one()).cloned(),
            _ => None,
        }
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Mono, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Mono::degree).max().unwrap_or(0)
    }

    /// One past the largest variable index that occurs.
    pub fn num_vars(&self) -> usize {
        self.terms.keys().map(Mono::num_vars).max().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<(&Mono, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coefficient(&self) -> BigInt {
        self.leading().map(|(_, c)| c.clone()).unwrap_or_else(BigInt::zero)
    }

    fn add_term(&mut self, m: Mono, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &BigInt) -> LambdaPoly {
        if c.is_zero() {
            return LambdaPoly::zero();
        }
        LambdaPoly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_mono(&self, m: &Mono) -> LambdaPoly {
        LambdaPoly {
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> LambdaPoly {
        let mut acc = LambdaPoly::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Gcd of the integer coefficients, nonnegative.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in self.terms.values() {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    pub fn div_exact_int(&self, c: &BigInt) -> LambdaPoly {
        LambdaPoly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v / c)).collect(),
        }
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exponent(var)).max().unwrap_or(0)
    }

    /// Coefficient of `var^k` as a polynomial in the other variables.
    pub fn coeff_in(&self, var: usize, k: u32) -> LambdaPoly {
        LambdaPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exponent(var) == k)
                .map(|(m, c)| (m.without_var(var), c.clone()))
                .collect(),
        }
    }

    fn coefficients_in(&self, var: usize) -> Vec<LambdaPoly> {
        let d = self.degree_in(var);
        (0..=d).map(|k| self.coeff_in(var, k)).filter(|p| !p.is_zero()).collect()
    }

    /// Largest variable index occurring, if any.
    fn main_var(&self) -> Option<usize> {
        self.terms
            .keys()
            .filter_map(|m| m.exponents().iter().rposition(|&e| e > 0))
            .max()
    }

    /// Exact division; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &LambdaPoly) -> Option<LambdaPoly> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(LambdaPoly::zero());
        }
        let (dm, dc) = d.leading().map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quot = LambdaPoly::zero();
        while let Some((rm, rc)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
            let qm = rm.div(&dm)?;
            let (qc, r) = rc.div_rem(&dc);
            if !r.is_zero() {
                return None;
            }
            let t = LambdaPoly::monomial(qm, qc);
            rem = &rem - &(&t * d);
            quot = &quot + &t;
        }
        Some(quot)
    }

    /// Pseudo remainder of `self` by `b` with respect to `var`.
    fn pseudo_rem(&self, b: &LambdaPoly, var: usize) -> LambdaPoly {
        let db = b.degree_in(var);
        let lb = b.coeff_in(var, db);
        let mut r = self.clone();
        while !r.is_zero() && r.degree_in(var) >= db {
            let dr = r.degree_in(var);
            let lr = r.coeff_in(var, dr);
            let shift = Mono::var(var, dr - db);
            r = &(&r * &lb) - &(&(&lr * b).mul_mono(&shift));
        }
        r
    }

    /// Gcd of a list of polynomials (normalized).
    fn gcd_many(polys: &[LambdaPoly]) -> LambdaPoly {
        let mut g = LambdaPoly::zero();
        for p in polys {
            g = g.gcd(p);
            if g.as_constant().map_or(false, |c| c.is_one()) {
                break;
            }
        }
        g
    }

    /// Primitive part and content with respect to `var`.
    fn primitive_in(&self, var: usize) -> (LambdaPoly, LambdaPoly) {
        let cont = LambdaPoly::gcd_many(&self.coefficients_in(var));
        let pp = self.div_exact(&cont).expect("content divides");
        (cont, pp)
    }

    /// Normalize the sign so the leading coefficient is positive.
    pub fn normalized_sign(self) -> LambdaPoly {
        if self.leading_coefficient().is_negative() {
            -self
        } else {
            self
        }
    }

    /// Greatest common divisor, with positive leading coefficient.
    ///
    /// Recursive primitive PRS: the content with respect to the main
    /// variable is handled by recursion on fewer variables.
    pub fn gcd(&self, other: &LambdaPoly) -> LambdaPoly {
        if self.is_zero() {
            return other.clone().normalized_sign();
        }
        if other.is_zero() {
            return self.clone().normalized_sign();
        }
        if let (Some(a), Some(b)) = (self.as_constant(), other.as_constant()) {
            return LambdaPoly::constant(a.gcd(&b));
        }
        if self == other {
            return self.clone().normalized_sign();
        }
        let var = match (self.main_var(), other.main_var()) {
            (Some(a), Some(b)) => a.max(b),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => unreachable!(),
        };
        let (ca, mut a) = self.primitive_in(var);
        let (cb, mut b) = other.primitive_in(var);
        let content = ca.gcd(&cb);
        if a.degree_in(var) < b.degree_in(var) {
            std::mem::swap(&mut a, &mut b);
        }
        loop {
            if b.degree_in(var) == 0 {
                // b is a unit up to content: primitive gcd is trivial
                b = LambdaPoly::one();
                break;
            }
            let r = a.pseudo_rem(&b, var);
            if r.is_zero() {
                break;
            }
            a = b;
            b = r.primitive_in(var).1;
        }
        let b = b.primitive_in(var).1;
        (&content * &b).normalized_sign()
    }

    /// Evaluate with a caller-supplied ring; used for numeric embedding.
    pub fn eval_with<T, F, G>(&self, zero: T, mut from_int: F, mut power: G) -> T
    where
        T: Clone + Add<Output = T> + Mul<Output = T>,
        F: FnMut(&BigInt) -> T,
        G: FnMut(usize, u32) -> T,
    {
        let mut acc = zero;
        for (m, c) in &self.terms {
            let mut t = from_int(c);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t = t * power(i, e);
                }
            }
            acc = acc + t;
        }
        acc
    }
}

impl fmt::Debug for LambdaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for LambdaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let mut factors = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(format!("l{}", i + 1)),
                    _ => factors.push(format!("l{}^{}", i + 1, e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl<'a> Add<&'a LambdaPoly> for &'a LambdaPoly {
    type Output = LambdaPoly;
    fn add(self, rhs: &LambdaPoly) -> LambdaPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a LambdaPoly> for &'a LambdaPoly {
    type Output = LambdaPoly;
    fn sub(self, rhs: &LambdaPoly) -> LambdaPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c.clone());
        }
        out
    }
}

impl<'a> Mul<&'a LambdaPoly> for &'a LambdaPoly {
    type Output = LambdaPoly;
    fn mul(self, rhs: &LambdaPoly) -> LambdaPoly {
        if self.is_zero() || rhs.is_zero() {
            return LambdaPoly::zero();
        }
        if let Some(c) = self.as_constant() {
            return rhs.scale(&c);
        }
        if let Some(c) = rhs.as_constant() {
            return self.scale(&c);
        }
        let mut out = LambdaPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

impl Neg for LambdaPoly {
    type Output = LambdaPoly;
    fn neg(self) -> LambdaPoly {
        LambdaPoly {
            terms: self.terms.into_iter().map(|(m, c)| (m, -c)).collect(),
        }
    }
}
