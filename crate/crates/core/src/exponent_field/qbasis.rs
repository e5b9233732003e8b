use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{ExponentScalar, LambdaPoly, Mono};
use crate::linalg::{Matrix, QMatrix};

/// A `Q`-basis of the span of a finite family of scalars, with coordinates.
#[derive(Clone, Debug, PartialEq)]
pub struct QBasis {
    pub basis: Vec<ExponentScalar>,
    /// `coords[i][j]` is the coefficient of `basis[j]` in input `i`.
    pub coords: QMatrix,
}

impl QBasis {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Recombines `coords * basis`.
    pub fn reconstruct(&self) -> Vec<ExponentScalar> {
        (0..self.coords.rows())
            .map(|i| {
                let mut acc = ExponentScalar::zero();
                for (j, b) in self.basis.iter().enumerate() {
                    let c = self.coords.get(i, j);
                    if !c.is_zero() {
                        acc = &acc + &(&ExponentScalar::from_rational(c) * b);
                    }
                }
                acc
            })
            .collect()
    }
}

fn lcm(a: &LambdaPoly, b: &LambdaPoly) -> LambdaPoly {
    let g = a.gcd(b);
    (a * b).div_exact(&g).expect("gcd divides product").normalized_sign()
}

/// Computes a basis `b1..bt` of `span_Q(scalars)` and rational coordinates.
///
/// All scalars are put over the common denominator `D`; the numerators are
/// expanded into coefficient vectors indexed by monomials in ascending
/// graded lex order and row reduced over `Q`. Each reduced row divided by
/// `D` is a basis element, and because pivots are unit the coordinate of an
/// input on a basis element is its numerator coefficient at that pivot.
pub fn qbasis_decompose(scalars: &[ExponentScalar]) -> QBasis {
    let mut den = LambdaPoly::one();
    for s in scalars {
        if !s.denom().is_one() && den != *s.denom() {
            den = lcm(&den, s.denom());
        }
    }
    let nums: Vec<LambdaPoly> = scalars
        .iter()
        .map(|s| {
            let factor = den.div_exact(s.denom()).expect("lcm divisible by denominator");
            s.numer() * &factor
        })
        .collect();
    let monos: Vec<Mono> = nums
        .iter()
        .flat_map(|p| p.terms().map(|(m, _)| m.clone()))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut mat = Matrix::zeros(scalars.len(), monos.len());
    for (i, p) in nums.iter().enumerate() {
        for (m, c) in p.terms() {
            let j = monos.binary_search(m).expect("collected monomial");
            mat.set(i, j, BigRational::from_integer(c.clone()));
        }
    }
    let red = mat.rref();
    let den_scalar = ExponentScalar::from_poly(den);
    let basis: Vec<ExponentScalar> = (0..red.rank)
        .map(|r| {
            let terms = (0..monos.len()).filter_map(|j| {
                let c = red.matrix.get(r, j);
                if c.is_zero() {
                    None
                } else {
                    Some((monos[j].clone(), c.clone()))
                }
            });
            let (poly, scale) = rational_poly(terms);
            &(&ExponentScalar::from_poly(poly) / &den_scalar) * &ExponentScalar::from_rational(&scale)
        })
        .collect();
    let mut coords = Matrix::zeros(scalars.len(), red.rank);
    for i in 0..scalars.len() {
        for (j, &pc) in red.pivots.iter().enumerate() {
            coords.set(i, j, mat.get(i, pc).clone());
        }
    }
    QBasis { basis, coords }
}

/// Splits a rational-coefficient polynomial into an integer polynomial and
/// a rational scale.
fn rational_poly<I: Iterator<Item = (Mono, BigRational)>>(terms: I) -> (LambdaPoly, BigRational) {
    let terms: Vec<(Mono, BigRational)> = terms.collect();
    let mut l = num_bigint::BigInt::one();
    for (_, c) in &terms {
        l = num_integer::Integer::lcm(&l, c.denom());
    }
    let poly = LambdaPoly::from_terms(
        terms.into_iter().map(|(m, c)| (m, (c * BigRational::from_integer(l.clone())).to_integer())),
    );
    (poly, BigRational::new(num_bigint::BigInt::one(), l))
}
