//! Exact arithmetic in `Q(ζ_N) = Q[z]/Φ_N(z)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Coefficients of `Φ_n`, lowest degree first.
pub fn cyclotomic_poly(n: u64) -> Vec<BigInt> {
    assert!(n >= 1, "cyclotomic index must be positive");
    // z^n - 1 divided by Φ_d for every proper divisor d
    let mut p: Vec<BigInt> = vec![BigInt::zero(); n as usize + 1];
    p[0] = -BigInt::one();
    p[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            p = div_monic(&p, &cyclotomic_poly(d));
        }
    }
    p
}

fn div_monic(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let dn = den.len() - 1;
    let mut rem = num.to_vec();
    let mut q = vec![BigInt::zero(); num.len() - dn];
    for i in (0..q.len()).rev() {
        let c = rem[i + dn].clone();
        if c.is_zero() {
            continue;
        }
        for (j, dj) in den.iter().enumerate() {
            rem[i + j] -= &c * dj;
        }
        q[i] = c;
    }
    debug_assert!(rem.iter().all(|v| v.is_zero()), "inexact cyclotomic division");
    q
}

/// Euler's totient, the degree of `Φ_n`.
pub fn totient(n: u64) -> u64 {
    let (mut m, mut out, mut p) = (n, n, 2);
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if m > 1 {
        out -= out / m;
    }
    out
}

/// Element of `Q(ζ_N)` as a reduced polynomial in `ζ_N` of degree `< φ(N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycloElem {
    order: u64,
    coeffs: Vec<BigRational>,
}

impl CycloElem {
    pub fn zero(order: u64) -> Self {
        CycloElem { order, coeffs: vec![BigRational::zero(); totient(order) as usize] }
    }

    pub fn from_rational(order: u64, q: BigRational) -> Self {
        let mut e = Self::zero(order);
        e.coeffs[0] = q;
        e
    }

    /// `c * ζ_N^k`.
    pub fn scaled_root(order: u64, k: u64, c: BigRational) -> Self {
        let mut dense = vec![BigRational::zero(); order as usize];
        dense[(k % order) as usize] = c;
        Self::reduce(order, dense)
    }

    fn reduce(order: u64, mut dense: Vec<BigRational>) -> Self {
        let phi = cyclotomic_poly(order);
        let deg = phi.len() - 1;
        for i in (deg..dense.len()).rev() {
            let c = dense[i].clone();
            if c.is_zero() {
                continue;
            }
            for (j, pj) in phi.iter().enumerate() {
                if !pj.is_zero() {
                    dense[i - deg + j] -= &c * BigRational::from_integer(pj.clone());
                }
            }
        }
        dense.truncate(deg);
        dense.resize(deg, BigRational::zero());
        CycloElem { order, coeffs: dense }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, o: &CycloElem) -> CycloElem {
        assert_eq!(self.order, o.order, "mixed cyclotomic orders");
        CycloElem { order: self.order, coeffs: self.coeffs.iter().zip(&o.coeffs).map(|(a, b)| a + b).collect() }
    }

    pub fn mul(&self, o: &CycloElem) -> CycloElem {
        assert_eq!(self.order, o.order, "mixed cyclotomic orders");
        let mut dense = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len()];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    dense[i + j] += a * b;
                }
            }
        }
        Self::reduce(self.order, dense)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomics() {
        assert_eq!(cyclotomic_poly(1), ints(&[-1, 1]));
        assert_eq!(cyclotomic_poly(2), ints(&[1, 1]));
        assert_eq!(cyclotomic_poly(4), ints(&[1, 0, 1]));
        assert_eq!(cyclotomic_poly(6), ints(&[1, -1, 1]));
        assert_eq!(cyclotomic_poly(12), ints(&[1, 0, -1, 0, 1]));
        assert_eq!(totient(12), 4);
    }

    #[test]
    fn roots_of_unity_sum_to_zero() {
        let n = 5;
        let mut acc = CycloElem::zero(n);
        for k in 0..n {
            acc = acc.add(&CycloElem::scaled_root(n, k, BigRational::one()));
        }
        assert!(acc.is_zero());
        let z = CycloElem::scaled_root(n, 2, BigRational::one());
        let w = CycloElem::scaled_root(n, 3, BigRational::one());
        assert_eq!(z.mul(&w), CycloElem::from_rational(n, BigRational::one()));
    }
}
