//! Exact torus points with coordinates `r * exp(2πi t)`, `r` positive
//! rational and `t` rational, i.e. rationals times roots of unity.

use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{PowError, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TorusCoord {
    modulus: BigRational,
    turn: BigRational,
}

fn frac(t: &BigRational) -> BigRational {
    t - t.floor()
}

impl TorusCoord {
    pub fn new(modulus: BigRational, turn: BigRational) -> Result<Self> {
        if !modulus.is_positive() {
            return Err(PowError::InvalidInput("torus coordinates need a positive modulus".into()));
        }
        Ok(TorusCoord { modulus, turn: frac(&turn) })
    }

    pub fn from_rational(q: &BigRational) -> Result<Self> {
        if q.is_zero() {
            return Err(PowError::InvalidInput("torus coordinates must be nonzero".into()));
        }
        let turn = if q.is_negative() { BigRational::new(1.into(), 2.into()) } else { BigRational::zero() };
        Ok(TorusCoord { modulus: q.abs(), turn })
    }

    pub fn one() -> Self {
        TorusCoord { modulus: BigRational::one(), turn: BigRational::zero() }
    }

    /// `exp(2πi k / n)`.
    pub fn root_of_unity(k: &BigInt, n: &BigInt) -> Self {
        TorusCoord { modulus: BigRational::one(), turn: frac(&BigRational::new(k.clone(), n.clone())) }
    }

    pub fn modulus(&self) -> &BigRational {
        &self.modulus
    }

    /// Argument divided by `2π`, in `[0, 1)`.
    pub fn turn(&self) -> &BigRational {
        &self.turn
    }

    /// Order of the root-of-unity part.
    pub fn root_order(&self) -> BigInt {
        self.turn.denom().clone()
    }

    pub fn as_rational(&self) -> Option<BigRational> {
        if self.turn.is_zero() {
            Some(self.modulus.clone())
        } else if self.turn == BigRational::new(1.into(), 2.into()) {
            Some(-self.modulus.clone())
        } else {
            None
        }
    }

    pub fn mul(&self, o: &TorusCoord) -> TorusCoord {
        TorusCoord { modulus: &self.modulus * &o.modulus, turn: frac(&(&self.turn + &o.turn)) }
    }

    pub fn pow(&self, e: &BigInt) -> TorusCoord {
        let k = e.to_i32().expect("exponent fits in i32");
        TorusCoord {
            modulus: num_traits::Pow::pow(&self.modulus, k),
            turn: frac(&(&self.turn * BigRational::from_integer(e.clone()))),
        }
    }

    pub fn to_complex(&self) -> Complex<f64> {
        let r = self.modulus.to_f64().unwrap_or(f64::NAN);
        let t = self.turn.to_f64().unwrap_or(0.0);
        Complex::from_polar(r, std::f64::consts::TAU * t)
    }
}

impl fmt::Debug for TorusCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for TorusCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(q) = self.as_rational() {
            return write!(f, "{q}");
        }
        if self.modulus.is_one() {
            write!(f, "e({})", self.turn)
        } else {
            write!(f, "{}*e({})", self.modulus, self.turn)
        }
    }
}

impl Serialize for TorusCoord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// A point of the torus `(F^×)^n` with exact coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TorusPoint {
    pub coords: Vec<TorusCoord>,
}

impl TorusPoint {
    pub fn new(coords: Vec<TorusCoord>) -> Self {
        TorusPoint { coords }
    }

    pub fn from_rationals(v: &[BigRational]) -> Result<Self> {
        Ok(TorusPoint { coords: v.iter().map(TorusCoord::from_rational).collect::<Result<_>>()? })
    }

    pub fn from_ints(v: &[i64]) -> Result<Self> {
        let q: Vec<BigRational> = v.iter().map(|&x| BigRational::from_integer(x.into())).collect();
        Self::from_rationals(&q)
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    /// `w^m = prod w_j^(m_j)`.
    pub fn character(&self, m: &[BigInt]) -> TorusCoord {
        self.coords
            .iter()
            .zip(m)
            .filter(|(_, e)| !e.is_zero())
            .fold(TorusCoord::one(), |acc, (c, e)| acc.mul(&c.pow(e)))
    }

    /// Least common multiple of the coordinates' root orders.
    pub fn root_order(&self) -> u64 {
        self.coords
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(&c.root_order()))
            .to_u64()
            .expect("root order fits in u64")
    }

    pub fn to_complex(&self) -> Vec<Complex<f64>> {
        self.coords.iter().map(|c| c.to_complex()).collect()
    }
}

impl fmt::Display for TorusPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn negative_rationals_are_half_turns() {
        let c = TorusCoord::from_rational(&BigRational::from_integer((-3).into())).unwrap();
        assert_eq!(c.as_rational(), Some(BigRational::from_integer((-3).into())));
        assert_eq!(c.pow(&BigInt::from(2)).as_rational(), Some(BigRational::from_integer(9.into())));
        assert_eq!(c.to_string(), "-3");
    }

    #[test]
    fn characters_of_roots() {
        let z = TorusCoord::root_of_unity(&1.into(), &3.into());
        let p = TorusPoint::new(vec![z.clone(), z]);
        assert_eq!(p.character(&[BigInt::from(1), BigInt::from(2)]), TorusCoord::one());
        assert_eq!(p.root_order(), 3);
        assert!(TorusCoord::from_rational(&BigRational::zero()).is_err());
    }
}
