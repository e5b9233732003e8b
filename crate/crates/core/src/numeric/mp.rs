//! Thin multiprecision layer over `astro-float` for residual certification
//! and embedding of exponent scalars.

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;

use crate::error::{PowError, Result};

const RM: RoundingMode = RoundingMode::ToEven;

/// Working precision plus the cached constants `astro-float` needs.
pub struct MpContext {
    precision: usize,
    consts: Consts,
}

impl std::fmt::Debug for MpContext {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("MpContext").field("precision", &self.precision).finish()
    }
}

impl MpContext {
    pub fn new(precision: usize) -> Self {
        MpContext {
            precision: precision.max(64),
            consts: Consts::new().expect("astro-float constant cache"),
        }
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn parse_decimal(&mut self, s: &str) -> Result<BigFloat> {
        let v = BigFloat::parse(s.trim(), Radix::Dec, self.precision, RM, &mut self.consts);
        if v.is_nan() || v.is_inf() {
            return Err(PowError::InvalidInput(format!("not a decimal number: {s:?}")));
        }
        Ok(v)
    }

    pub fn from_bigint(&mut self, v: &BigInt) -> BigFloat {
        BigFloat::parse(&v.to_string(), Radix::Dec, self.precision, RM, &mut self.consts)
    }

    pub fn from_rational(&mut self, q: &BigRational) -> BigFloat {
        let n = self.from_bigint(q.numer());
        let d = self.from_bigint(q.denom());
        self.div(&n, &d)
    }

    pub fn from_f64(&self, v: f64) -> BigFloat {
        BigFloat::from_f64(v, self.precision)
    }

    pub fn zero(&self) -> BigFloat {
        BigFloat::from_f64(0.0, self.precision)
    }

    /// A real literal: a decimal, a ratio `p/q` of decimals, or `sqrt(..)` of either.
    pub fn parse_real(&mut self, s: &str) -> Result<BigFloat> {
        let t = s.trim();
        if let Some(inner) = t.strip_prefix("sqrt(").and_then(|r| r.strip_suffix(')')) {
            let v = self.parse_real(inner)?;
            if v.is_negative() {
                return Err(PowError::InvalidInput(format!("square root of a negative number: {s:?}")));
            }
            return Ok(v.sqrt(self.precision, RM));
        }
        if let Some((p, q)) = t.split_once('/') {
            let (p, q) = (self.parse_decimal(p)?, self.parse_decimal(q)?);
            if q.is_zero() {
                return Err(PowError::DivisionByZero);
            }
            return Ok(self.div(&p, &q));
        }
        self.parse_decimal(t)
    }

    pub fn sqrt(&self, a: &BigFloat) -> BigFloat {
        a.sqrt(self.precision, RM)
    }

    pub fn add(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.add(b, self.precision, RM)
    }

    pub fn sub(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.sub(b, self.precision, RM)
    }

    pub fn mul(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.mul(b, self.precision, RM)
    }

    pub fn div(&self, a: &BigFloat, b: &BigFloat) -> BigFloat {
        a.div(b, self.precision, RM)
    }

    pub fn powi(&self, a: &BigFloat, e: u32) -> BigFloat {
        a.powi(e as usize, self.precision, RM)
    }

    pub fn exp(&mut self, a: &BigFloat) -> BigFloat {
        a.exp(self.precision, RM, &mut self.consts)
    }

    pub fn ln(&mut self, a: &BigFloat) -> BigFloat {
        a.ln(self.precision, RM, &mut self.consts)
    }

    pub fn sin(&mut self, a: &BigFloat) -> BigFloat {
        a.sin(self.precision, RM, &mut self.consts)
    }

    pub fn cos(&mut self, a: &BigFloat) -> BigFloat {
        a.cos(self.precision, RM, &mut self.consts)
    }

    pub fn pi(&mut self) -> BigFloat {
        self.consts.pi(self.precision, RM)
    }

    pub fn cadd(&self, a: &MpComplex, b: &MpComplex) -> MpComplex {
        MpComplex { re: self.add(&a.re, &b.re), im: self.add(&a.im, &b.im) }
    }

    pub fn cmul(&self, a: &MpComplex, b: &MpComplex) -> MpComplex {
        let re = self.sub(&self.mul(&a.re, &b.re), &self.mul(&a.im, &b.im));
        let im = self.add(&self.mul(&a.re, &b.im), &self.mul(&a.im, &b.re));
        MpComplex { re, im }
    }

    /// `exp(a)` for complex `a`.
    pub fn cexp(&mut self, a: &MpComplex) -> MpComplex {
        let m = self.exp(&a.re);
        let c = self.cos(&a.im);
        let s = self.sin(&a.im);
        MpComplex { re: self.mul(&m, &c), im: self.mul(&m, &s) }
    }

    /// Principal logarithm of a nonzero real number.
    pub fn real_log(&mut self, a: &BigFloat) -> MpComplex {
        let abs = a.abs();
        let re = self.ln(&abs);
        let im = if a.is_negative() { self.pi() } else { self.zero() };
        MpComplex { re, im }
    }

    /// `|a|` as an f64 (modulus of a multiprecision complex).
    pub fn cabs_f64(&self, a: &MpComplex) -> f64 {
        let re = to_f64(&a.re);
        let im = to_f64(&a.im);
        if re.is_finite() && im.is_finite() && (re != 0.0 || im != 0.0) {
            return re.hypot(im);
        }
        let sq = self.add(&self.mul(&a.re, &a.re), &self.mul(&a.im, &a.im));
        to_f64(&sq).sqrt()
    }
}

/// Complex number with multiprecision parts.
#[derive(Clone, Debug)]
pub struct MpComplex {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl MpComplex {
    pub fn from_real(re: BigFloat, ctx: &MpContext) -> Self {
        MpComplex { re, im: ctx.zero() }
    }

    pub fn from_f64(z: Complex<f64>, ctx: &MpContext) -> Self {
        MpComplex { re: ctx.from_f64(z.re), im: ctx.from_f64(z.im) }
    }

    pub fn to_f64(&self) -> Complex<f64> {
        Complex::new(to_f64(&self.re), to_f64(&self.im))
    }
}

/// Nearest-ish `f64` (truncated to the top mantissa word).
pub fn to_f64(x: &BigFloat) -> f64 {
    if x.is_nan() {
        return f64::NAN;
    }
    if x.is_inf_pos() {
        return f64::INFINITY;
    }
    if x.is_inf_neg() {
        return f64::NEG_INFINITY;
    }
    if x.is_zero() {
        return 0.0;
    }
    let Some((words, _, sign, exp, _)) = x.as_raw_parts() else {
        return f64::NAN;
    };
    let Some(&top) = words.last() else {
        return 0.0;
    };
    let e = exp as i64 - 64;
    let mag = if e > 1100 {
        f64::INFINITY
    } else if e < -1200 {
        0.0
    } else {
        // split the scaling to stay inside the f64 exponent range
        let half = (e / 2) as i32;
        (top as f64) * 2f64.powi(half) * 2f64.powi(e as i32 - half)
    };
    if sign == Sign::Neg {
        -mag
    } else {
        mag
    }
}

/// Binary exponent `e` with `|x|` in `[2^(e-1), 2^e)`, or `None` for zero.
pub fn binary_exponent(x: &BigFloat) -> Option<i64> {
    if x.is_zero() || x.is_nan() {
        return None;
    }
    x.exponent().map(|e| e as i64)
}
