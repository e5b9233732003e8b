//! Sparse multivariate polynomials with an explicit term order.

use std::cmp::Ordering;
use std::fmt;

use crate::linalg::Field;

pub type Exps = Vec<u32>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    Lex,
    GrevLex,
}

/// Product of orders on consecutive variable blocks; earlier blocks
/// dominate, which makes the first blocks eliminable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TermOrder {
    blocks: Vec<(usize, MonomialOrder)>,
}

impl TermOrder {
    pub fn single(nvars: usize, order: MonomialOrder) -> Self {
        TermOrder { blocks: vec![(nvars, order)] }
    }

    pub fn grevlex(nvars: usize) -> Self {
        Self::single(nvars, MonomialOrder::GrevLex)
    }

    /// Eliminates the first `k` variables; grevlex inside both blocks.
    pub fn elimination(k: usize, nvars: usize) -> Self {
        Self::blocks(vec![(k, MonomialOrder::GrevLex), (nvars - k, MonomialOrder::GrevLex)])
    }

    pub fn blocks(blocks: Vec<(usize, MonomialOrder)>) -> Self {
        TermOrder { blocks: blocks.into_iter().filter(|b| b.0 > 0).collect() }
    }

    pub fn nvars(&self) -> usize {
        self.blocks.iter().map(|b| b.0).sum()
    }

    pub fn cmp(&self, a: &[u32], b: &[u32]) -> Ordering {
        let mut start = 0;
        for &(len, ord) in &self.blocks {
            let (x, y) = (&a[start..start + len], &b[start..start + len]);
            let c = match ord {
                MonomialOrder::Lex => x.cmp(y),
                MonomialOrder::GrevLex => grevlex(x, y),
            };
            if c != Ordering::Equal {
                return c;
            }
            start += len;
        }
        Ordering::Equal
    }
}

fn grevlex(a: &[u32], b: &[u32]) -> Ordering {
    let (da, db): (u32, u32) = (a.iter().sum(), b.iter().sum());
    if da != db {
        return da.cmp(&db);
    }
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

pub fn divides(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

pub fn lcm(a: &[u32], b: &[u32]) -> Exps {
    a.iter().zip(b).map(|(x, y)| *x.max(y)).collect()
}

pub fn quotient(a: &[u32], b: &[u32]) -> Exps {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn coprime(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| *x == 0 || *y == 0)
}

/// Terms sorted strictly descending in the order the polynomial was built with.
#[derive(Clone, PartialEq)]
pub struct Poly<F> {
    nvars: usize,
    terms: Vec<(Exps, F)>,
}

impl<F: Field> Poly<F> {
    pub fn zero(nvars: usize) -> Self {
        Poly { nvars, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: F) -> Self {
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Poly { nvars, terms: vec![(vec![0; nvars], c)] }
    }

    pub fn monomial(exps: Exps, c: F) -> Self {
        let nvars = exps.len();
        if c.is_zero() {
            return Self::zero(nvars);
        }
        Poly { nvars, terms: vec![(exps, c)] }
    }

    /// Collects like terms and sorts for `order`.
    pub fn from_terms(nvars: usize, terms: Vec<(Exps, F)>, order: &TermOrder) -> Self {
        let mut terms: Vec<(Exps, F)> = terms.into_iter().filter(|t| !t.1.is_zero()).collect();
        for t in &terms {
            assert_eq!(t.0.len(), nvars, "exponent vector length");
        }
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let mut out: Vec<(Exps, F)> = Vec::with_capacity(terms.len());
        for (e, c) in terms {
            match out.last_mut() {
                Some(last) if last.0 == e => last.1 = last.1.add_ref(&c),
                _ => out.push((e, c)),
            }
        }
        out.retain(|t| !t.1.is_zero());
        Poly { nvars, terms: out }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.iter().all(|&e| e == 0)
    }

    pub fn terms(&self) -> &[(Exps, F)] {
        &self.terms
    }

    pub fn leading(&self) -> Option<&(Exps, F)> {
        self.terms.first()
    }

    pub fn lm(&self) -> &Exps {
        &self.terms[0].0
    }

    pub fn lc(&self) -> &F {
        &self.terms[0].1
    }

    pub fn monic(mut self) -> Self {
        if let Some((_, c)) = self.terms.first() {
            if !c.is_one() {
                let inv = F::one().div_ref(c);
                for t in self.terms.iter_mut() {
                    t.1 = t.1.mul_ref(&inv);
                }
            }
        }
        self
    }

    /// Removes and returns the leading term.
    pub fn pop_leading(&mut self) -> Option<(Exps, F)> {
        if self.terms.is_empty() {
            None
        } else {
            Some(self.terms.remove(0))
        }
    }

    /// Re-sorts for another order.
    pub fn reorder(&self, order: &TermOrder) -> Self {
        Self::from_terms(self.nvars, self.terms.clone(), order)
    }

    /// Whether only variables with `keep[i] == true` occur.
    pub fn uses_only(&self, keep: &[bool]) -> bool {
        self.terms.iter().all(|(e, _)| e.iter().zip(keep).all(|(&x, &k)| k || x == 0))
    }

    /// `self - c * x^m * q`; `x^m * q` keeps the order since term orders are multiplicative.
    pub fn sub_scaled(&self, c: &F, m: &[u32], q: &Poly<F>, order: &TermOrder) -> Self {
        let shifted = q.terms.iter().map(|(e, v)| (e.iter().zip(m).map(|(a, b)| a + b).collect::<Exps>(), c.mul_ref(v)));
        let mut out: Vec<(Exps, F)> = Vec::with_capacity(self.terms.len() + q.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = shifted.peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().cloned().expect("peeked")),
                (None, Some(_)) => {
                    let (e, v) = b.next().expect("peeked");
                    out.push((e, -v));
                }
                (Some(x), Some(y)) => match order.cmp(&x.0, &y.0) {
                    Ordering::Greater => out.push(a.next().cloned().expect("peeked")),
                    Ordering::Less => {
                        let (e, v) = b.next().expect("peeked");
                        out.push((e, -v));
                    }
                    Ordering::Equal => {
                        let (e, u) = a.next().cloned().expect("peeked");
                        let (_, v) = b.next().expect("peeked");
                        let s = u.sub_ref(&v);
                        if !s.is_zero() {
                            out.push((e, s));
                        }
                    }
                },
            }
        }
        Poly { nvars: self.nvars, terms: out }
    }

    pub fn add(&self, other: &Poly<F>, order: &TermOrder) -> Self {
        self.sub_scaled(&-F::one(), &vec![0; self.nvars], other, order)
    }

    pub fn mul(&self, other: &Poly<F>, order: &TermOrder) -> Self {
        let mut acc = Poly::zero(self.nvars);
        for (e, c) in &self.terms {
            acc = acc.sub_scaled(&-c.clone(), e, other, order);
        }
        acc
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Poly::zero(self.nvars);
        }
        Poly { nvars: self.nvars, terms: self.terms.iter().map(|(e, v)| (e.clone(), v.mul_ref(c))).collect() }
    }

    /// Pads with zero exponents for `extra` new trailing variables.
    pub fn extend_vars(&self, before: usize, after: usize) -> Self {
        Poly {
            nvars: self.nvars + before + after,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut x = vec![0; before];
                    x.extend(e);
                    x.extend(std::iter::repeat_n(0, after));
                    (x, c.clone())
                })
                .collect(),
        }
    }

    /// Keeps the listed variables (the polynomial must not use the others).
    pub fn restrict_vars(&self, keep: &[usize], order: &TermOrder) -> Self {
        Self::from_terms(
            keep.len(),
            self.terms.iter().map(|(e, c)| (keep.iter().map(|&i| e[i]).collect(), c.clone())).collect(),
            order,
        )
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (k, (e, c)) in self.terms.iter().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &x)| x > 0)
                .map(|(i, &x)| if x == 1 { names[i].clone() } else { format!("{}^{}", names[i], x) })
                .collect();
            let cs = c.to_string();
            let (neg, mag) = match cs.strip_prefix('-') {
                Some(r) => (true, r.to_string()),
                None => (false, cs),
            };
            let body = if mono.is_empty() {
                mag
            } else if mag == "1" {
                mono.join("*")
            } else {
                format!("{}*{}", mag, mono.join("*"))
            };
            if k == 0 {
                out.push_str(if neg { "-" } else { "" });
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        out
    }
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<String> = (0..self.nvars).map(|i| format!("v{}", i + 1)).collect();
        write!(f, "{}", self.fmt_with(&names))
    }
}
