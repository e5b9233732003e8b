//! The exponent field `K = Q(l1, .., lm)` with the `li` algebraically
//! independent indeterminates.
//!
//! Elements are kept as reduced fractions of integer polynomials. The
//! denominator has positive leading coefficient in graded lex order, so
//! equal field elements have identical representations and `==` is exact.

mod embed;
pub mod lambda_poly;
mod qbasis;

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{PowError, Result};
pub use embed::{numeric_embed, EmbeddingSpec};
pub(crate) use embed::numeric_embed_with;
pub use lambda_poly::{LambdaPoly, Mono};
pub use qbasis::{qbasis_decompose, QBasis};

/// Element of `K` in canonical form.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExponentScalar {
    num: LambdaPoly,
    den: LambdaPoly,
}

/// Which field operation [`scalar_arith`] performs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

impl ExponentScalar {
    /// Builds `num / den` and brings it to canonical form.
    pub fn new(num: LambdaPoly, den: LambdaPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(PowError::DivisionByZero);
        }
        Ok(Self::normalize(num, den))
    }

    fn normalize(num: LambdaPoly, den: LambdaPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        if den.is_one() {
            return ExponentScalar { num, den };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_exact(&g).expect("gcd divides"), den.div_exact(&g).expect("gcd divides"))
        };
        if den.leading_coefficient().is_negative() {
            num = -num;
            den = -den;
        }
        ExponentScalar { num, den }
    }

    pub fn from_poly(p: LambdaPoly) -> Self {
        ExponentScalar { num: p, den: LambdaPoly::one() }
    }

    pub fn from_int(v: i64) -> Self {
        Self::from_poly(LambdaPoly::constant(BigInt::from(v)))
    }

    pub fn from_rational(q: &BigRational) -> Self {
        Self::normalize(LambdaPoly::constant(q.numer().clone()), LambdaPoly::constant(q.denom().clone()))
    }

    /// The indeterminate `l_{index+1}` (zero based index).
    pub fn lambda(index: usize) -> Self {
        Self::from_poly(LambdaPoly::var(index))
    }

    pub fn numer(&self) -> &LambdaPoly {
        &self.num
    }

    pub fn denom(&self) -> &LambdaPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// The value as a rational number when no indeterminate occurs.
    pub fn as_rational(&self) -> Option<BigRational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(BigRational::new(n, d))
    }

    /// Sum of numerator and denominator degrees; used to rank pivots.
    pub fn total_degree(&self) -> u32 {
        self.num.total_degree() + self.den.total_degree()
    }

    pub fn num_lambdas(&self) -> usize {
        self.num.num_vars().max(self.den.num_vars())
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(PowError::DivisionByZero);
        }
        Ok(Self::normalize(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, e: i32) -> Result<Self> {
        let base = if e < 0 { self.inverse()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(ExponentScalar { num: base.num.pow(k), den: base.den.pow(k) })
    }

    /// Re-normalizes; canonical inputs are returned unchanged.
    pub fn canonical(&self) -> Self {
        Self::normalize(self.num.clone(), self.den.clone())
    }
}

/// Exact field arithmetic in `K`.
pub fn scalar_arith(a: &ExponentScalar, b: &ExponentScalar, op: ArithOp) -> Result<ExponentScalar> {
    Ok(match op {
        ArithOp::Add => a + b,
        ArithOp::Sub => a - b,
        ArithOp::Mul => a * b,
        ArithOp::Div => {
            if b.is_zero() {
                return Err(PowError::DivisionByZero);
            }
            a / b
        }
    })
}

impl Zero for ExponentScalar {
    fn zero() -> Self {
        ExponentScalar { num: LambdaPoly::zero(), den: LambdaPoly::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for ExponentScalar {
    fn one() -> Self {
        ExponentScalar { num: LambdaPoly::one(), den: LambdaPoly::one() }
    }
}

impl<'a> Add<&'a ExponentScalar> for &'a ExponentScalar {
    type Output = ExponentScalar;
    fn add(self, rhs: &ExponentScalar) -> ExponentScalar {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.den.is_one() {
                return ExponentScalar { num, den: LambdaPoly::one() };
            }
            return ExponentScalar::normalize(num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        ExponentScalar::normalize(num, &self.den * &rhs.den)
    }
}

impl<'a> Sub<&'a ExponentScalar> for &'a ExponentScalar {
    type Output = ExponentScalar;
    fn sub(self, rhs: &ExponentScalar) -> ExponentScalar {
        self + &(-rhs.clone())
    }
}

impl<'a> Mul<&'a ExponentScalar> for &'a ExponentScalar {
    type Output = ExponentScalar;
    fn mul(self, rhs: &ExponentScalar) -> ExponentScalar {
        if self.is_zero() || rhs.is_zero() {
            return ExponentScalar::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return ExponentScalar { num: &self.num * &rhs.num, den: LambdaPoly::one() };
        }
        // cross cancellation keeps the intermediate gcds small
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let n1 = self.num.div_exact(&g1).expect("gcd divides");
        let d2 = rhs.den.div_exact(&g1).expect("gcd divides");
        let n2 = rhs.num.div_exact(&g2).expect("gcd divides");
        let d1 = self.den.div_exact(&g2).expect("gcd divides");
        let mut num = &n1 * &n2;
        let mut den = &d1 * &d2;
        if den.leading_coefficient().is_negative() {
            num = -num;
            den = -den;
        }
        ExponentScalar { num, den }
    }
}

impl<'a> Div<&'a ExponentScalar> for &'a ExponentScalar {
    type Output = ExponentScalar;
    fn div(self, rhs: &ExponentScalar) -> ExponentScalar {
        let inv = rhs.inverse().expect("division by zero in K");
        self * &inv
    }
}

impl Neg for ExponentScalar {
    type Output = ExponentScalar;
    fn neg(self) -> ExponentScalar {
        ExponentScalar { num: -self.num, den: self.den }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for ExponentScalar {
            type Output = ExponentScalar;
            fn $m(self, rhs: ExponentScalar) -> ExponentScalar {
                (&self).$m(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);
owned_binop!(Div, div);

impl fmt::Display for ExponentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wrap = |p: &LambdaPoly| {
            if p.num_terms() > 1 {
                format!("({})", p)
            } else {
                p.to_string()
            }
        };
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
    }
}

impl fmt::Debug for ExponentScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

#[cfg(test)]
mod props;
