use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::LambdaProduct;
use crate::error::{Error, Result};

/// Default cap on the degree of an expanded characteristic polynomial.
pub const DEFAULT_MAX_EXPAND_DEGREE: usize = 10_000;

/// Intermediate products may exceed the final degree before the denominators
/// are divided out; this bounds the working degree relative to the cap.
const WORK_FACTOR: usize = 16;

/// Dense integer polynomial, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntPolynomial {
    coefficients: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coefficients: Vec<BigInt>) -> Self {
        while coefficients.last().is_some_and(|c| c.is_zero()) {
            coefficients.pop();
        }
        IntPolynomial { coefficients }
    }

    pub fn from_i64(coefficients: &[i64]) -> Self {
        Self::new(coefficients.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    /// Exact evaluation at a rational point (homogenised Horner).
    pub fn eval(&self, t: &BigRational) -> BigRational {
        let mut acc = BigInt::zero();
        let (p, q) = (t.numer(), t.denom());
        let mut qpow = BigInt::one();
        for c in self.coefficients.iter().rev() {
            acc = acc * p + c * &qpow;
            qpow *= q;
        }
        // acc = sum c_i p^i q^(deg - i); qpow = q^(deg + 1)
        match self.degree() {
            None => BigRational::zero(),
            Some(_) => BigRational::new(acc * q, qpow),
        }
    }

    /// Multiplies in place by `t^m - 1`.
    fn mul_binomial(&mut self, m: usize) {
        if self.coefficients.is_empty() {
            return;
        }
        let old_len = self.coefficients.len();
        self.coefficients.resize(old_len + m, BigInt::zero());
        for j in (0..old_len + m).rev() {
            let shifted = if j >= m { self.coefficients[j - m].clone() } else { BigInt::zero() };
            let here = if j < old_len { self.coefficients[j].clone() } else { BigInt::zero() };
            self.coefficients[j] = shifted - here;
        }
        let trimmed = std::mem::take(&mut self.coefficients);
        *self = IntPolynomial::new(trimmed);
    }

    /// Exact quotient by `t^m - 1`, or `None` if there is a remainder.
    fn div_binomial(&self, m: usize) -> Option<IntPolynomial> {
        let Some(deg) = self.degree() else {
            return Some(self.clone());
        };
        if deg < m {
            return None;
        }
        // p_j = q_{j-m} - q_j
        let qlen = deg - m + 1;
        let mut q = vec![BigInt::zero(); qlen];
        for j in (m..=deg).rev() {
            let qj = if j < qlen { q[j].clone() } else { BigInt::zero() };
            q[j - m] = &self.coefficients[j] + qj;
        }
        for j in 0..m {
            let remainder = match q.get(j) {
                Some(qj) => &self.coefficients[j] + qj,
                None => self.coefficients[j].clone(),
            };
            if !remainder.is_zero() {
                return None;
            }
        }
        Some(IntPolynomial::new(q))
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            }
            first = false;
            let show_coeff = !abs.is_one() || i == 0;
            if show_coeff {
                write!(f, "{abs}")?;
            }
            match i {
                0 => {}
                1 => write!(f, "t")?,
                _ => write!(f, "t^{i}")?,
            }
        }
        Ok(())
    }
}

impl LambdaProduct {
    /// Expands into an integer polynomial of degree at most `max_degree`.
    ///
    /// Denominator binomials are divided out as soon as they divide the
    /// running product, which keeps intermediate degrees near the final one.
    pub fn expand(&self, max_degree: usize) -> Result<IntPolynomial> {
        let degree = self.degree();
        if degree < 0 {
            return Err(Error::NotAPolynomial);
        }
        if degree > max_degree as i128 {
            return Err(Error::TooLarge {
                degree,
                cap: max_degree,
            });
        }
        let work_cap = max_degree.saturating_mul(WORK_FACTOR).max(64);
        let too_large = |m: u64| -> Result<usize> {
            usize::try_from(m)
                .ok()
                .filter(|&m| m <= work_cap)
                .ok_or(Error::TooLarge { degree, cap: max_degree })
        };

        let mut pending: Vec<(usize, i64)> = Vec::new();
        let mut numerators: Vec<usize> = Vec::new();
        for (&m, &e) in self.factors() {
            let m = too_large(m)?;
            if e > 0 {
                numerators.extend(std::iter::repeat_n(m, e as usize));
            } else {
                pending.push((m, -e));
            }
        }
        // Smallest binomials first so the running product stays short.
        numerators.sort_unstable();

        let mut poly = IntPolynomial::new(vec![BigInt::from(self.unit())]);
        let drain = |poly: &mut IntPolynomial, pending: &mut Vec<(usize, i64)>| {
            loop {
                let mut progressed = false;
                for entry in pending.iter_mut().filter(|(_, e)| *e > 0) {
                    if let Some(q) = poly.div_binomial(entry.0) {
                        *poly = q;
                        entry.1 -= 1;
                        progressed = true;
                    }
                }
                if !progressed {
                    break;
                }
            }
        };
        for m in numerators {
            poly.mul_binomial(m);
            if poly.coefficients.len() > work_cap + 1 {
                return Err(Error::TooLarge { degree, cap: max_degree });
            }
            drain(&mut poly, &mut pending);
        }
        drain(&mut poly, &mut pending);
        if pending.iter().any(|&(_, e)| e > 0) {
            return Err(Error::NotAPolynomial);
        }
        debug_assert_eq!(poly.degree().map(|d| d as i128), Some(degree));
        Ok(poly)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(f: &[(u64, i64)]) -> LambdaProduct {
        LambdaProduct::from_factors(1, f.iter().copied()).unwrap()
    }

    #[test]
    fn expands_phi_two_three() {
        // (t^8-1)(t^2-1)/((t^4-1)(t-1)) = (t^4+1)(t+1)
        let p = lp(&[(8, 1), (2, 1), (4, -1), (1, -1)]);
        let e = p.expand(DEFAULT_MAX_EXPAND_DEGREE).unwrap();
        assert_eq!(e, IntPolynomial::from_i64(&[1, 1, 0, 0, 1, 1]));
        assert_eq!(e.to_string(), "t^5 + t^4 + t + 1");
    }

    #[test]
    fn geometric_sum() {
        let e = lp(&[(3, 1), (1, -1)]).expand(10).unwrap();
        assert_eq!(e, IntPolynomial::from_i64(&[1, 1, 1]));
    }

    #[test]
    fn negative_degree_is_not_polynomial() {
        assert_eq!(lp(&[(1, 1), (2, -1)]).expand(10), Err(Error::NotAPolynomial));
    }

    #[test]
    fn remainder_is_not_polynomial() {
        // (t^3-1)/(t^2-1) has degree 1 but is not a polynomial
        assert_eq!(lp(&[(3, 1), (2, -1)]).expand(10), Err(Error::NotAPolynomial));
    }

    #[test]
    fn degree_cap() {
        assert!(matches!(
            lp(&[(20, 1)]).expand(10),
            Err(Error::TooLarge { degree: 20, cap: 10 })
        ));
    }

    #[test]
    fn unit_and_powers() {
        let p = LambdaProduct::from_factors(-1, [(1, 2)]).unwrap();
        // -(t-1)^2
        assert_eq!(p.expand(10).unwrap(), IntPolynomial::from_i64(&[-1, 2, -1]));
        assert_eq!(LambdaProduct::one().expand(0).unwrap(), IntPolynomial::from_i64(&[1]));
    }

    #[test]
    fn eval_matches_horner() {
        let p = IntPolynomial::from_i64(&[1, -2, 0, 3]);
        let t = BigRational::new(2.into(), 3.into());
        // 1 - 4/3 + 3 * 8/27 = 1 - 4/3 + 8/9 = 5/9
        assert_eq!(p.eval(&t), BigRational::new(5.into(), 9.into()));
        assert_eq!(IntPolynomial::new(vec![]).eval(&t), BigRational::zero());
    }
}
