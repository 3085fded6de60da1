//! Unexpanded products of cyclotomic binomials.
//!
//! A [`LambdaProduct`] stores `unit * prod (t^m - 1)^{e_m}` as a sparse map
//! `m -> e_m`. Monodromy characteristic polynomials of weighted-homogeneous
//! singularities always have this shape, and their degrees grow like
//! `(d-1)^(n+2)`, so nothing here expands unless explicitly asked to.

mod expand;
mod squarefree;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Div, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use expand::{IntPolynomial, DEFAULT_MAX_EXPAND_DEGREE};
pub use squarefree::{squarefree_part, squarefree_part_with_bound, DEFAULT_TRIAL_DIVISION_BOUND};

/// `unit * prod_m (t^m - 1)^{e_m}` with `unit` in `{+1, -1}`.
///
/// Zero multiplicities are never stored, so structural equality is equality of
/// rational functions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "LambdaProductRepr", into = "LambdaProductRepr")]
pub struct LambdaProduct {
    unit: i8,
    factors: BTreeMap<u64, i64>,
}

#[derive(Serialize, Deserialize)]
struct LambdaProductRepr {
    unit: i8,
    factors: Vec<(u64, i64)>,
}

impl From<LambdaProduct> for LambdaProductRepr {
    fn from(p: LambdaProduct) -> Self {
        LambdaProductRepr {
            unit: p.unit,
            factors: p.factors.into_iter().collect(),
        }
    }
}

impl TryFrom<LambdaProductRepr> for LambdaProduct {
    type Error = Error;

    fn try_from(repr: LambdaProductRepr) -> Result<Self> {
        LambdaProduct::from_factors(repr.unit, repr.factors)
    }
}

impl Default for LambdaProduct {
    fn default() -> Self {
        Self::one()
    }
}

impl LambdaProduct {
    /// The empty product with unit `+1`.
    pub fn one() -> Self {
        LambdaProduct {
            unit: 1,
            factors: BTreeMap::new(),
        }
    }

    /// The single binomial `t^m - 1`.
    ///
    /// # Panics
    /// Panics if `m == 0`.
    pub fn binomial(m: u64) -> Self {
        Self::binomial_pow(m, 1)
    }

    /// `(t^m - 1)^e`.
    ///
    /// # Panics
    /// Panics if `m == 0`.
    pub fn binomial_pow(m: u64, e: i64) -> Self {
        assert!(m >= 1, "binomial exponent must be positive");
        let mut p = Self::one();
        if e != 0 {
            p.factors.insert(m, e);
        }
        p
    }

    /// Builds a product from `(m, e)` pairs; repeated `m` accumulate.
    pub fn from_factors<I>(unit: i8, factors: I) -> Result<Self>
    where
        I: IntoIterator<Item = (u64, i64)>,
    {
        if unit != 1 && unit != -1 {
            return Err(Error::InvalidParameters(format!("unit must be +1 or -1, got {unit}")));
        }
        let mut p = LambdaProduct {
            unit,
            factors: BTreeMap::new(),
        };
        for (m, e) in factors {
            if m == 0 {
                return Err(Error::InvalidParameters("binomial exponent m must be >= 1".into()));
            }
            p.add_factor(m, e);
        }
        Ok(p)
    }

    fn add_factor(&mut self, m: u64, e: i64) {
        if e == 0 {
            return;
        }
        let entry = self.factors.entry(m).or_insert(0);
        *entry += e;
        if *entry == 0 {
            self.factors.remove(&m);
        }
    }

    pub fn unit(&self) -> i8 {
        self.unit
    }

    /// Factor map in ascending order of `m`.
    pub fn factors(&self) -> &BTreeMap<u64, i64> {
        &self.factors
    }

    pub fn multiplicity(&self, m: u64) -> i64 {
        self.factors.get(&m).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.unit == 1 && self.factors.is_empty()
    }

    /// Negates the unit.
    pub fn negated(mut self) -> Self {
        self.unit = -self.unit;
        self
    }

    /// Multiplicative inverse as a rational function.
    pub fn inverse(&self) -> Self {
        LambdaProduct {
            unit: self.unit,
            factors: self.factors.iter().map(|(&m, &e)| (m, -e)).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        let unit = if self.unit == -1 && k.rem_euclid(2) == 1 { -1 } else { 1 };
        let mut p = LambdaProduct {
            unit,
            factors: BTreeMap::new(),
        };
        for (&m, &e) in &self.factors {
            p.add_factor(m, e * k);
        }
        p
    }

    /// Degree as a rational function, `sum m * e_m`.
    pub fn degree(&self) -> i128 {
        self.factors
            .iter()
            .map(|(&m, &e)| m as i128 * e as i128)
            .sum()
    }

    /// Order of vanishing at `t = 1`, `sum e_m`.
    pub fn order_at_one(&self) -> i64 {
        self.factors.values().sum()
    }

    /// Limit at `t = 1`, `unit * prod m^{e_m}`; requires order zero at 1.
    pub fn value_at_one(&self) -> Result<BigRational> {
        let order = self.order_at_one();
        if order != 0 {
            return Err(Error::NonzeroOrderAtOne { order });
        }
        let mut num = BigInt::from(self.unit);
        let mut den = BigInt::one();
        for (&m, &e) in &self.factors {
            let base = BigInt::from(m).pow(e.unsigned_abs() as u32);
            if e > 0 {
                num *= base;
            } else {
                den *= base;
            }
        }
        Ok(BigRational::new(num, den))
    }

    /// Evaluates at a rational point by factorwise substitution.
    ///
    /// Returns `None` when some factor with negative multiplicity vanishes.
    pub fn eval(&self, t: &BigRational) -> Option<BigRational> {
        let mut acc = BigRational::from_integer(BigInt::from(self.unit));
        for (&m, &e) in &self.factors {
            let base = pow_rational(t, m) - BigRational::one();
            if base.is_zero() {
                if e < 0 {
                    return None;
                }
                return Some(BigRational::zero());
            }
            let p = pow_rational(&base, e.unsigned_abs());
            if e > 0 {
                acc *= p;
            } else {
                acc /= p;
            }
        }
        Some(acc)
    }

    /// `prod_{i=0}^{d-1} P(w^i t)` for `w` a primitive `d`-th root of unity.
    ///
    /// Factorwise, `prod_i ((w^i t)^m - 1) = ((-1)^{k+1} (t^{mk} - 1))^g` with
    /// `g = gcd(m, d)` and `k = d / g`.
    ///
    /// # Panics
    /// Panics if `d == 0` or `lcm(m, d)` overflows `u64`.
    pub fn root_of_unity_product(&self, d: u64) -> Self {
        assert!(d >= 1, "root of unity order must be positive");
        let mut out = LambdaProduct {
            unit: if self.unit == -1 && d % 2 == 1 { -1 } else { 1 },
            factors: BTreeMap::new(),
        };
        for (&m, &e) in &self.factors {
            let g = m.gcd(&d);
            let k = d / g;
            let lcm = m.checked_mul(k).expect("lcm(m, d) overflows u64");
            let g = i64::try_from(g).expect("gcd fits in i64");
            out.add_factor(lcm, g * e);
            if k.is_multiple_of(2) && (g * e).rem_euclid(2) == 1 {
                out.unit = -out.unit;
            }
        }
        out
    }
}

pub(crate) fn pow_rational(base: &BigRational, exp: u64) -> BigRational {
    let exp = i32::try_from(exp).expect("exponent fits in i32");
    num_traits::Pow::pow(base, exp)
}

impl Mul for &LambdaProduct {
    type Output = LambdaProduct;

    fn mul(self, rhs: &LambdaProduct) -> LambdaProduct {
        let mut out = self.clone();
        out.unit *= rhs.unit;
        for (&m, &e) in &rhs.factors {
            out.add_factor(m, e);
        }
        out
    }
}

impl Mul for LambdaProduct {
    type Output = LambdaProduct;

    fn mul(self, rhs: LambdaProduct) -> LambdaProduct {
        &self * &rhs
    }
}

impl Div for &LambdaProduct {
    type Output = LambdaProduct;

    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &LambdaProduct) -> LambdaProduct {
        self * &rhs.inverse()
    }
}

impl Div for LambdaProduct {
    type Output = LambdaProduct;

    fn div(self, rhs: LambdaProduct) -> LambdaProduct {
        &self / &rhs
    }
}

impl fmt::Display for LambdaProduct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fn binomial(m: u64) -> String {
            if m == 1 {
                "(t-1)".to_string()
            } else {
                format!("(t^{m}-1)")
            }
        }
        fn side<'a>(it: impl Iterator<Item = (&'a u64, i64)>) -> String {
            let parts: Vec<String> = it
                .map(|(&m, e)| {
                    if e == 1 {
                        binomial(m)
                    } else {
                        format!("{}^{e}", binomial(m))
                    }
                })
                .collect();
            parts.join("")
        }
        // Largest binomials first reads like the usual closed forms.
        let num = side(self.factors.iter().rev().filter(|(_, &e)| e > 0).map(|(m, &e)| (m, e)));
        let den = side(self.factors.iter().rev().filter(|(_, &e)| e < 0).map(|(m, &e)| (m, -e)));
        let sign = if self.unit < 0 { "-" } else { "" };
        let num = if num.is_empty() { "1".to_string() } else { num };
        if den.is_empty() {
            write!(f, "{sign}{num}")
        } else if den.matches('(').count() > 1 {
            write!(f, "{sign}{num}/({den})")
        } else {
            write!(f, "{sign}{num}/{den}")
        }
    }
}
