//! Compiling a pair `(L, W)` with real-embedded exponents into a system of
//! exponential sums in free coordinates `u` on `L(a)`.

use astro_float::BigFloat;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{Float, Zero};

use super::mp::{to_f64, MpComplex, MpContext};
use crate::error::{PowError, Result};
use crate::exponent_field::{numeric_embed_with, EmbeddingSpec, ExponentScalar};
use crate::predimension::Configuration;
use crate::subspace::affine_decompose;

/// One term `a exp(r·u)`.
#[derive(Clone, Debug)]
pub struct ExpTerm {
    pub coef: MpComplex,
    pub exponents: Vec<BigFloat>,
}

/// `Σ a_i exp(r_i·u) = 0`, one sum per nonzero generator of `W`.
#[derive(Clone, Debug)]
pub struct ExpSumSystem {
    pub dim_domain: usize,
    pub equations: Vec<Vec<ExpTerm>>,
    /// Rows `P_k` of the basis of `L(0)`: `z = Σ u_k P_k + shift`.
    pub basis: Vec<Vec<BigFloat>>,
    /// `r a` with `a` the principal logarithm of the parameter values.
    pub shift: Vec<MpComplex>,
    pub precision_bits: usize,
    pub config: Configuration,
    pub embedding: EmbeddingSpec,
}

fn rational_pow(q: &BigRational, e: i32) -> Result<BigRational> {
    if e < 0 && q.is_zero() {
        return Err(PowError::DivisionByZero);
    }
    let p = num_traits::pow(q.clone(), e.unsigned_abs() as usize);
    Ok(if e < 0 { p.recip() } else { p })
}

/// Restricts `W(exp a)` to `L(a) = L(0) + r a`, with `a = Log s` taken from
/// the configuration's parameter values.
pub fn compile_system(config: &Configuration, emb: &EmbeddingSpec) -> Result<ExpSumSystem> {
    emb.validate(None)?;
    let (n, l) = (config.n, config.l);
    let params: Vec<BigRational> = match (&config.params, l) {
        (_, 0) => Vec::new(),
        (Some(p), _) => p.clone(),
        (None, _) => return Err(PowError::MissingParameters),
    };
    if params.iter().any(|s| s.is_zero()) {
        return Err(PowError::InvalidInput("parameter values must be nonzero".into()));
    }
    let mut ctx = MpContext::new(emb.precision_bits + 64);
    let dec = affine_decompose(&config.linear);
    let pb = dec.l0.basis();
    let mut basis = Vec::with_capacity(pb.rows());
    for k in 0..pb.rows() {
        // scale so the first nonzero coordinate is 1
        let row = pb.row(k);
        let lead = row.iter().find(|v| !v.is_zero()).cloned().unwrap_or_else(|| ExponentScalar::from_int(1));
        let row = row
            .iter()
            .map(|v| numeric_embed_with(&(v / &lead), emb, &mut ctx))
            .collect::<Result<Vec<_>>>()?;
        basis.push(row);
    }
    let logs: Vec<MpComplex> = params.iter().map(|s| {
        let v = ctx.from_rational(s);
        ctx.real_log(&v)
    }).collect();
    let mut shift = Vec::with_capacity(n);
    for j in 0..n {
        let mut acc = MpComplex::from_real(ctx.zero(), &ctx);
        for (k, a) in logs.iter().enumerate() {
            let r = dec.r.get(j, k);
            if r.is_zero() {
                continue;
            }
            let rv = numeric_embed_with(r, emb, &mut ctx)?;
            acc = ctx.cadd(&acc, &ctx.cmul(&MpComplex::from_real(rv, &ctx), a));
        }
        shift.push(acc);
    }

    let mut equations = Vec::new();
    for g in config.variety.nonzero_generators() {
        let mut terms = Vec::new();
        for (e, c) in g.terms() {
            let mut exact = c.clone();
            for (k, s) in params.iter().enumerate() {
                exact *= rational_pow(s, e[n + k])?;
            }
            let mut phase = MpComplex::from_real(ctx.zero(), &ctx);
            for (j, sh) in shift.iter().enumerate() {
                if e[j] != 0 {
                    let ej = MpComplex::from_real(ctx.from_bigint(&e[j].into()), &ctx);
                    phase = ctx.cadd(&phase, &ctx.cmul(&ej, sh));
                }
            }
            let scale = ctx.cexp(&phase);
            let cv = MpComplex::from_real(ctx.from_rational(&exact), &ctx);
            let coef = ctx.cmul(&cv, &scale);
            let exponents = basis
                .iter()
                .map(|p| {
                    let mut acc = ctx.zero();
                    for j in 0..n {
                        if e[j] != 0 {
                            let ej = ctx.from_bigint(&e[j].into());
                            acc = ctx.add(&acc, &ctx.mul(&ej, &p[j]));
                        }
                    }
                    acc
                })
                .collect();
            terms.push(ExpTerm { coef, exponents });
        }
        equations.push(terms);
    }
    if equations.is_empty() {
        return Err(PowError::InvalidInput("W has no nonzero generators".into()));
    }
    Ok(ExpSumSystem {
        dim_domain: basis.len(),
        equations,
        basis,
        shift,
        precision_bits: emb.precision_bits,
        config: config.clone(),
        embedding: emb.clone(),
    })
}

impl ExpSumSystem {
    /// Working copy in a machine float type.
    pub fn to_num<T: Float>(&self) -> NumSystem<T> {
        let cast = |x: &BigFloat| T::from(to_f64(x)).unwrap_or_else(T::nan);
        NumSystem {
            dim: self.dim_domain,
            equations: self
                .equations
                .iter()
                .map(|eq| {
                    eq.iter()
                        .map(|t| {
                            let c = Complex::new(cast(&t.coef.re), cast(&t.coef.im));
                            (c, t.exponents.iter().map(cast).collect())
                        })
                        .collect()
                })
                .collect(),
        }
    }

    /// V-coordinates `z = Σ u_k P_k + shift`.
    pub fn coordinates(&self, u: &[Complex<f64>]) -> Vec<Complex<f64>> {
        let n = self.shift.len();
        (0..n)
            .map(|j| {
                let base = self.shift[j].to_f64();
                u.iter().zip(&self.basis).fold(base, |acc, (uk, p)| acc + uk * to_f64(&p[j]))
            })
            .collect()
    }

    /// Sup-norm residual at `u`, evaluated at the system's precision.
    pub fn residual_mp(&self, u: &[Complex<f64>]) -> f64 {
        let mut ctx = MpContext::new(self.precision_bits);
        let um: Vec<MpComplex> = u.iter().map(|z| MpComplex::from_f64(*z, &ctx)).collect();
        let mut worst = 0.0f64;
        for eq in &self.equations {
            let mut acc = MpComplex::from_real(ctx.zero(), &ctx);
            for t in eq {
                let mut arg = MpComplex::from_real(ctx.zero(), &ctx);
                for (r, uk) in t.exponents.iter().zip(&um) {
                    arg.re = ctx.add(&arg.re, &ctx.mul(r, &uk.re));
                    arg.im = ctx.add(&arg.im, &ctx.mul(r, &uk.im));
                }
                let e = ctx.cexp(&arg);
                acc = ctx.cadd(&acc, &ctx.cmul(&t.coef, &e));
            }
            let v = ctx.cabs_f64(&acc);
            if v.is_nan() {
                return f64::NAN;
            }
            worst = worst.max(v);
        }
        worst
    }
}

/// An exponential-sum system over a machine float type.
#[derive(Clone, Debug, PartialEq)]
pub struct NumSystem<T> {
    pub dim: usize,
    pub equations: Vec<Vec<(Complex<T>, Vec<T>)>>,
}

impl<T: Float> NumSystem<T> {
    fn arg(r: &[T], u: &[Complex<T>]) -> Complex<T> {
        r.iter().zip(u).fold(Complex::new(T::zero(), T::zero()), |acc, (&ri, ui)| acc + ui * ri)
    }

    pub fn eval(&self, u: &[Complex<T>]) -> Vec<Complex<T>> {
        self.equations
            .iter()
            .map(|eq| {
                eq.iter().fold(Complex::new(T::zero(), T::zero()), |acc, (a, r)| acc + a * Self::arg(r, u).exp())
            })
            .collect()
    }

    /// `∂/∂u_k Σ a_i exp(r_i·u) = Σ a_i r_ik exp(r_i·u)`.
    pub fn jacobian(&self, u: &[Complex<T>]) -> Vec<Vec<Complex<T>>> {
        self.equations
            .iter()
            .map(|eq| {
                let mut row = vec![Complex::new(T::zero(), T::zero()); self.dim];
                for (a, r) in eq {
                    let e = a * Self::arg(r, u).exp();
                    for (k, &rk) in r.iter().enumerate() {
                        row[k] = row[k] + e * rk;
                    }
                }
                row
            })
            .collect()
    }

    /// Largest `|Re(r_i·u)|` over all terms.
    pub fn max_real_exponent(&self, u: &[Complex<T>]) -> T {
        self.equations
            .iter()
            .flatten()
            .map(|(_, r)| Self::arg(r, u).re.abs())
            .fold(T::zero(), |m, v| if v.is_nan() || v > m { v } else { m })
    }

    /// Exponents past this magnitude overflow or underflow `T`.
    pub fn exponent_limit() -> T {
        let ln_max = T::max_value().ln();
        ln_max * T::from(0.9).unwrap_or_else(T::one)
    }
}
