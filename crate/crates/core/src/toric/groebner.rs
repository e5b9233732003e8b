//! Buchberger's algorithm with the product and chain criteria.

use std::collections::BTreeMap;

use super::poly::{coprime, divides, lcm, quotient, Exps, Poly, TermOrder};
use crate::error::{PowError, Result};
use crate::linalg::Field;

/// Cap on the number of S-polynomials reduced by one computation.
pub const DEFAULT_PAIR_BUDGET: usize = 20_000;

/// Reduced Gröbner basis for a fixed term order.
#[derive(Clone, PartialEq)]
pub struct GroebnerBasis<F> {
    pub order: TermOrder,
    pub polys: Vec<Poly<F>>,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn compute(gens: &[Poly<F>], order: &TermOrder, budget: usize) -> Result<Self> {
        Ok(GroebnerBasis { order: order.clone(), polys: groebner(gens, order, budget)? })
    }

    pub fn is_unit(&self) -> bool {
        self.polys.len() == 1 && self.polys[0].is_constant()
    }

    pub fn reduce(&self, p: &Poly<F>) -> Poly<F> {
        normal_form(p, &self.polys, &self.order)
    }

    pub fn contains(&self, p: &Poly<F>) -> bool {
        self.reduce(p).is_zero()
    }

    pub fn leading_monomials(&self) -> Vec<&Exps> {
        self.polys.iter().map(|p| p.lm()).collect()
    }
}

impl<F: Field> std::fmt::Debug for GroebnerBasis<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_list().entries(&self.polys).finish()
    }
}

/// Fully reduces `p` modulo `basis`.
pub fn normal_form<F: Field>(p: &Poly<F>, basis: &[Poly<F>], order: &TermOrder) -> Poly<F> {
    let mut p = p.reorder(order);
    let mut rest: Vec<(Exps, F)> = Vec::new();
    while let Some((e, c)) = p.leading().cloned() {
        match basis.iter().find(|g| !g.is_zero() && divides(g.lm(), &e)) {
            Some(g) => {
                let factor = c.div_ref(g.lc());
                p = p.sub_scaled(&factor, &quotient(&e, g.lm()), g, order);
            }
            None => {
                p.pop_leading();
                rest.push((e, c));
            }
        }
    }
    Poly::from_terms(p.nvars(), rest, order)
}

fn deg(e: &[u32]) -> u32 {
    e.iter().sum()
}

fn s_poly<F: Field>(f: &Poly<F>, g: &Poly<F>, order: &TermOrder) -> Poly<F> {
    let l = lcm(f.lm(), g.lm());
    let a = Poly::monomial(quotient(&l, f.lm()), F::one().div_ref(f.lc()));
    let fa = a.mul(f, order);
    fa.sub_scaled(&F::one().div_ref(g.lc()), &quotient(&l, g.lm()), g, order)
}

/// Reduced Gröbner basis of `gens`, monic and sorted by descending leading
/// monomial. `[1]` signals the unit ideal, `[]` the zero ideal.
pub fn groebner<F: Field>(gens: &[Poly<F>], order: &TermOrder, budget: usize) -> Result<Vec<Poly<F>>> {
    let nvars = order.nvars();
    let mut g: Vec<Poly<F>> = Vec::new();
    for p in gens {
        let p = p.reorder(order);
        if p.is_zero() {
            continue;
        }
        if p.is_constant() {
            return Ok(vec![Poly::constant(nvars, F::one())]);
        }
        g.push(p.monic());
    }
    // sugar degree of each basis element; pairs map to the sugar of their S-polynomial
    let mut sugar: Vec<u32> = g.iter().map(|p| p.terms().iter().map(|(e, _)| deg(e)).max().unwrap_or(0)).collect();
    let pair_sugar = |g: &[Poly<F>], sugar: &[u32], i: usize, j: usize| {
        let l = deg(&lcm(g[i].lm(), g[j].lm()));
        (sugar[i] + l - deg(g[i].lm())).max(sugar[j] + l - deg(g[j].lm()))
    };
    let mut pairs: BTreeMap<(usize, usize), u32> = BTreeMap::new();
    for j in 0..g.len() {
        for i in 0..j {
            pairs.insert((i, j), pair_sugar(&g, &sugar, i, j));
        }
    }
    let mut reductions = 0usize;
    while !pairs.is_empty() {
        let (&(i, j), &s) = pairs
            .iter()
            .min_by(|(a, sa), (b, sb)| {
                let la = lcm(g[a.0].lm(), g[a.1].lm());
                let lb = lcm(g[b.0].lm(), g[b.1].lm());
                sa.cmp(sb).then_with(|| order.cmp(&la, &lb)).then(a.cmp(b))
            })
            .expect("nonempty");
        pairs.remove(&(i, j));
        if coprime(g[i].lm(), g[j].lm()) {
            continue;
        }
        let l = lcm(g[i].lm(), g[j].lm());
        let chain = (0..g.len()).any(|k| {
            k != i
                && k != j
                && divides(g[k].lm(), &l)
                && !pairs.contains_key(&(i.min(k), i.max(k)))
                && !pairs.contains_key(&(j.min(k), j.max(k)))
        });
        if chain {
            continue;
        }
        reductions += 1;
        if reductions > budget {
            return Err(PowError::BudgetExceeded(format!("more than {budget} S-polynomial reductions")));
        }
        let h = normal_form(&s_poly(&g[i], &g[j], order), &g, order);
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(vec![Poly::constant(nvars, F::one())]);
        }
        let k = g.len();
        g.push(h.monic());
        sugar.push(s.max(deg(g[k].lm())));
        for i in 0..k {
            let s = pair_sugar(&g, &sugar, i, k);
            pairs.insert((i, k), s);
        }
    }
    Ok(reduce_basis(g, order))
}

fn reduce_basis<F: Field>(g: Vec<Poly<F>>, order: &TermOrder) -> Vec<Poly<F>> {
    let mut keep: Vec<Poly<F>> = Vec::new();
    for (i, p) in g.iter().enumerate() {
        let redundant = g.iter().enumerate().any(|(j, q)| {
            j != i && divides(q.lm(), p.lm()) && (q.lm() != p.lm() || j < i)
        });
        if !redundant {
            keep.push(p.clone());
        }
    }
    let mut out: Vec<Poly<F>> = (0..keep.len())
        .map(|i| {
            let others: Vec<Poly<F>> =
                keep.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, q)| q.clone()).collect();
            let lead = Poly::monomial(keep[i].lm().clone(), keep[i].lc().clone());
            let tail = keep[i].sub_scaled(&F::one(), &vec![0; keep[i].nvars()], &lead, order);
            lead.add(&normal_form(&tail, &others, order), order).monic()
        })
        .collect();
    out.sort_by(|a, b| order.cmp(b.lm(), a.lm()));
    out
}
