use std::fmt::{Debug, Display};
use std::ops::{Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exponent_field::{ExponentScalar, LambdaPoly};

/// Exact scalar field usable by [`super::Matrix`].
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Display
    + Zero
    + One
    + Neg<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Send
    + Sync
    + 'static
{
    fn add_ref(&self, o: &Self) -> Self;
    fn sub_ref(&self, o: &Self) -> Self;
    fn mul_ref(&self, o: &Self) -> Self;
    fn div_ref(&self, o: &Self) -> Self;
    fn from_int(v: i64) -> Self;

    /// Pivot cost; the smallest nonzero weight in a column is chosen.
    fn weight(&self) -> u64;

    /// Rescales a row by a nonzero factor to keep entries small during
    /// fraction-free elimination.
    fn normalize_row(_row: &mut [Self]) {}

    /// Canonical representative of the line spanned by a nonzero row.
    /// Defaults to making the leading entry one.
    fn canonical_row(row: &mut [Self]) {
        if let Some(p) = row.iter().find(|v| !v.is_zero()).cloned() {
            for v in row.iter_mut() {
                *v = v.div_ref(&p);
            }
        }
    }
}

impl Field for BigRational {
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn div_ref(&self, o: &Self) -> Self {
        self / o
    }
    fn from_int(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
    fn weight(&self) -> u64 {
        self.numer().bits() + self.denom().bits()
    }
    fn normalize_row(row: &mut [Self]) {
        make_primitive(row);
    }
    /// Primitive integer row with positive leading entry.
    fn canonical_row(row: &mut [Self]) {
        make_primitive(row);
    }
}

fn make_primitive(row: &mut [BigRational]) {
    let Some(lead) = row.iter().find(|v| !v.is_zero()) else {
        return;
    };
    let negative = lead.is_negative();
    let mut den = BigInt::one();
    let mut num = BigInt::zero();
    for v in row.iter().filter(|v| !v.is_zero()) {
        den = den.lcm(v.denom());
        num = num.gcd(v.numer());
    }
    let mut scale = BigRational::new(den, num);
    if negative {
        scale = -scale;
    }
    if scale.is_one() {
        return;
    }
    for v in row.iter_mut() {
        *v = &*v * &scale;
    }
}

impl Field for ExponentScalar {
    fn add_ref(&self, o: &Self) -> Self {
        self + o
    }
    fn sub_ref(&self, o: &Self) -> Self {
        self - o
    }
    fn mul_ref(&self, o: &Self) -> Self {
        self * o
    }
    fn div_ref(&self, o: &Self) -> Self {
        self / o
    }
    fn from_int(v: i64) -> Self {
        ExponentScalar::from_int(v)
    }
    fn weight(&self) -> u64 {
        self.total_degree() as u64
    }
    /// Clears denominators and removes the polynomial content of the row.
    fn normalize_row(row: &mut [Self]) {
        let nonzero: Vec<&ExponentScalar> = row.iter().filter(|v| !v.is_zero()).collect();
        if nonzero.len() < 2 {
            return;
        }
        let mut den = LambdaPoly::one();
        for v in &nonzero {
            if !v.denom().is_one() && den != *v.denom() {
                let g = den.gcd(v.denom());
                den = (&den * v.denom()).div_exact(&g).expect("gcd divides");
            }
        }
        let mut g: Option<LambdaPoly> = None;
        for v in &nonzero {
            let scaled = v.numer() * &den.div_exact(v.denom()).expect("lcm divisible");
            g = Some(match g {
                None => scaled,
                Some(acc) => acc.gcd(&scaled),
            });
            if g.as_ref().is_some_and(|p| p.as_constant().is_some_and(|c| c.abs().is_one())) {
                break;
            }
        }
        let g = g.expect("nonempty row");
        let factor = match ExponentScalar::new(den, g) {
            Ok(f) => f,
            Err(_) => return,
        };
        if factor.is_one() {
            return;
        }
        for v in row.iter_mut() {
            *v = &*v * &factor;
        }
    }
}
