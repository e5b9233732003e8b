use astro_float::BigFloat;
use num_bigint::BigInt;

use super::{ExponentScalar, LambdaPoly};
use crate::error::{PowError, Result};
use crate::numeric::mp::{binary_exponent, MpContext};

/// Numeric values for `l1..lm` and the working precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddingSpec {
    pub lambda_values: Vec<String>,
    pub precision_bits: usize,
}

impl EmbeddingSpec {
    pub fn new(lambda_values: Vec<String>, precision_bits: usize) -> Result<Self> {
        let spec = EmbeddingSpec { lambda_values, precision_bits };
        spec.validate(None)?;
        Ok(spec)
    }

    /// Checks precision and, when given, the lambda count.
    pub fn validate(&self, m: Option<usize>) -> Result<()> {
        if self.precision_bits < 64 {
            return Err(PowError::InvalidInput(format!(
                "precision must be at least 64 bits, got {}",
                self.precision_bits
            )));
        }
        if let Some(m) = m {
            if self.lambda_values.len() != m {
                return Err(PowError::DimensionMismatch {
                    expected: m,
                    found: self.lambda_values.len(),
                });
            }
        }
        Ok(())
    }

    /// Parses the lambda values at the context's precision.
    pub fn values(&self, ctx: &mut MpContext) -> Result<Vec<BigFloat>> {
        self.lambda_values.iter().map(|s| ctx.parse_real(s)).collect()
    }
}

pub(crate) fn eval_poly(p: &LambdaPoly, vals: &[BigFloat], ctx: &mut MpContext) -> Result<BigFloat> {
    if p.num_vars() > vals.len() {
        return Err(PowError::NotRealEmbedded);
    }
    let mut acc = ctx.zero();
    for (mono, c) in p.terms() {
        let mut term = ctx.from_bigint(c);
        for (i, &e) in mono.exponents().iter().enumerate() {
            if e > 0 {
                term = ctx.mul(&term, &ctx.powi(&vals[i], e));
            }
        }
        acc = ctx.add(&acc, &term);
    }
    Ok(acc)
}

/// Evaluates `a` at the lambda values of `emb`.
///
/// Evaluation runs with 64 guard bits; the result is rejected when the
/// denominator's magnitude is below `2^(-precision/2)`.
pub fn numeric_embed(a: &ExponentScalar, emb: &EmbeddingSpec) -> Result<BigFloat> {
    emb.validate(None)?;
    let mut ctx = MpContext::new(emb.precision_bits + 64);
    numeric_embed_with(a, emb, &mut ctx)
}

pub(crate) fn numeric_embed_with(a: &ExponentScalar, emb: &EmbeddingSpec, ctx: &mut MpContext) -> Result<BigFloat> {
    if a.num_lambdas() > emb.lambda_values.len() {
        return Err(PowError::NotRealEmbedded);
    }
    let vals = emb.values(ctx)?;
    let num = eval_poly(a.numer(), &vals, ctx)?;
    if a.is_polynomial() {
        return Ok(num);
    }
    let den = eval_poly(a.denom(), &vals, ctx)?;
    let threshold = -((emb.precision_bits / 2) as i64);
    match binary_exponent(&den) {
        // |den| < 2^(e) <= 2^(-p/2)
        Some(e) if e > threshold => {}
        _ => return Err(PowError::NearSingularEvaluation),
    }
    Ok(ctx.div(&num, &den))
}

/// Convenience for tests and the CLI: integer constants.
#[allow(dead_code)]
pub(crate) fn int_constant(v: i64) -> ExponentScalar {
    ExponentScalar::from_poly(LambdaPoly::constant(BigInt::from(v)))
}
