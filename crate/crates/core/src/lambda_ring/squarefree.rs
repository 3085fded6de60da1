use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Default trial-division bound for [`squarefree_part`].
pub const DEFAULT_TRIAL_DIVISION_BOUND: u64 = 1_000_000;

/// The signed squarefree integer `s` with `q = s * r^2` for some rational `r`.
///
/// This is the canonical representative of the class of `q` in `Q*/(Q*)^2`.
pub fn squarefree_part(q: &BigRational) -> Result<BigInt> {
    squarefree_part_with_bound(q, DEFAULT_TRIAL_DIVISION_BOUND)
}

/// As [`squarefree_part`] with an explicit trial-division bound.
pub fn squarefree_part_with_bound(q: &BigRational, bound: u64) -> Result<BigInt> {
    if q.is_zero() {
        return Err(Error::ZeroSquareClass);
    }
    // q = n/m is in the same class as n*m
    let product = q.numer().abs() * q.denom().abs();
    let mut s = squarefree_kernel(&product, bound)?;
    if q.is_negative() {
        s = -s;
    }
    Ok(s)
}

/// Squarefree kernel of a positive integer.
fn squarefree_kernel(n: &BigInt, bound: u64) -> Result<BigInt> {
    debug_assert_eq!(n.sign(), Sign::Plus);
    let mut rest = n.clone();
    let mut kernel = BigInt::one();
    let mut p: u64 = 2;
    while p <= bound {
        let pb = BigInt::from(p);
        if &pb * &pb > rest {
            break;
        }
        let mut parity = false;
        while (&rest % &pb).is_zero() {
            rest /= &pb;
            parity = !parity;
        }
        if parity {
            kernel *= &pb;
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if rest.is_one() {
        return Ok(kernel);
    }
    // All prime factors of `rest` exceed the last trial divisor.
    let b = BigInt::from(p);
    if &b * &b > rest {
        // rest is prime
        return Ok(kernel * rest);
    }
    if &b * &b * &b > rest {
        // at most two prime factors: p^2 or squarefree
        let root = rest.sqrt();
        if &root * &root == rest {
            return Ok(kernel);
        }
        return Ok(kernel * rest);
    }
    Err(Error::FactorBoundExceeded {
        value: n.to_string(),
        bound: bound.to_u64().unwrap_or(u64::MAX),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sf(n: i64, d: i64) -> i64 {
        squarefree_part(&BigRational::new(n.into(), d.into()))
            .unwrap()
            .to_i64()
            .unwrap()
    }

    #[test]
    fn examples() {
        assert_eq!(sf(1, 1), 1);
        assert_eq!(sf(-4, 9), -1);
        assert_eq!(sf(12, 1), 3);
        assert_eq!(sf(2, 9), 2);
        assert_eq!(sf(1, 2), 2);
        assert_eq!(sf(-18, 50), -1);
        assert_eq!(sf(6, 1), 6);
    }

    #[test]
    fn zero_rejected() {
        assert_eq!(
            squarefree_part(&BigRational::zero()),
            Err(Error::ZeroSquareClass)
        );
    }

    #[test]
    fn large_prime_cofactors() {
        // 10007 is prime and above a bound of 1000
        let p = BigInt::from(10_007u64);
        let q = BigRational::from_integer(&p * &p * 5);
        assert_eq!(squarefree_part_with_bound(&q, 1000).unwrap(), BigInt::from(5));
        let q = BigRational::from_integer(p.clone() * 7);
        assert_eq!(squarefree_part_with_bound(&q, 1000).unwrap(), p * 7);
    }

    #[test]
    fn bound_exceeded() {
        let p = BigInt::from(10_007u64);
        let q = BigRational::from_integer(&p * &p * &p);
        assert!(matches!(
            squarefree_part_with_bound(&q, 1000),
            Err(Error::FactorBoundExceeded { .. })
        ));
    }
}
