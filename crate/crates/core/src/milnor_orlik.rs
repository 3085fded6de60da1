//! Milnor–Orlik divisor calculus for weighted-homogeneous isolated singularities.
//!
//! A divisor is a rational combination `sum c_m Λ_m` in the ring with
//! `Λ_a Λ_b = gcd(a, b) Λ_lcm(a, b)`. A variable of weight `u/v` (lowest
//! terms) contributes the factor `(1/v) Λ_u - Λ_1`; the product over all
//! variables is the divisor of the monodromy characteristic polynomial
//! `prod (t^m - 1)^{c_m}` on the reduced middle cohomology of the Milnor fiber.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::json::JsonInt;
use crate::lambda_ring::LambdaProduct;

/// Rational weights `w_i > 1` of a weighted-homogeneous isolated singularity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<String>", into = "Vec<String>")]
pub struct WeightSystem {
    weights: Vec<BigRational>,
}

impl WeightSystem {
    pub fn new(weights: Vec<BigRational>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::EmptyWeights);
        }
        if let Some(w) = weights.iter().find(|w| **w <= BigRational::one()) {
            return Err(Error::InvalidWeight(w.to_string()));
        }
        Ok(WeightSystem { weights })
    }

    pub fn from_ratios(ratios: &[(i64, i64)]) -> Result<Self> {
        if ratios.iter().any(|&(_, v)| v == 0) {
            return Err(Error::InvalidWeight("zero denominator".into()));
        }
        Self::new(
            ratios
                .iter()
                .map(|&(u, v)| BigRational::new(u.into(), v.into()))
                .collect(),
        )
    }

    pub fn weights(&self) -> &[BigRational] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Concatenation of variable blocks (the join of the two germs).
    pub fn join(&self, other: &WeightSystem) -> WeightSystem {
        let mut weights = self.weights.clone();
        weights.extend(other.weights.iter().cloned());
        WeightSystem { weights }
    }

    /// Weighted degree `sum e_j / w_j` of a monomial with exponents `e`.
    pub fn weighted_degree(&self, exponents: &[u32]) -> BigRational {
        assert_eq!(exponents.len(), self.weights.len(), "monomial arity mismatch");
        exponents
            .iter()
            .zip(&self.weights)
            .filter(|(&e, _)| e > 0)
            .map(|(&e, w)| BigRational::from_integer(e.into()) / w)
            .fold(BigRational::zero(), |a, b| a + b)
    }
}

impl fmt::Display for WeightSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.weights.iter().map(|w| w.to_string()).collect();
        write!(f, "({})", parts.join(", "))
    }
}

impl FromStr for WeightSystem {
    type Err = Error;

    /// Parses a comma-separated list such as `2,4,8/3`.
    fn from_str(s: &str) -> Result<Self> {
        let weights = s
            .split(',')
            .map(|w| parse_rational(w.trim()))
            .collect::<Result<Vec<_>>>()?;
        WeightSystem::new(weights)
    }
}

impl From<WeightSystem> for Vec<String> {
    fn from(ws: WeightSystem) -> Self {
        ws.weights.iter().map(|w| w.to_string()).collect()
    }
}

impl TryFrom<Vec<String>> for WeightSystem {
    type Error = Error;

    fn try_from(v: Vec<String>) -> Result<Self> {
        WeightSystem::new(v.iter().map(|s| parse_rational(s)).collect::<Result<_>>()?)
    }
}

/// Parses `p` or `p/q` into a rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("not a rational number: {s:?}"));
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s.trim(), "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// A formal combination `sum c_m Λ_m` with rational coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Divisor {
    terms: BTreeMap<u64, BigRational>,
}

impl Divisor {
    pub fn zero() -> Self {
        Divisor::default()
    }

    /// `Λ_1`, the multiplicative identity.
    pub fn one() -> Self {
        Self::lambda(1)
    }

    pub fn lambda(m: u64) -> Self {
        Self::term(m, BigRational::one())
    }

    pub fn term(m: u64, c: BigRational) -> Self {
        assert!(m >= 1, "Λ index must be positive");
        let mut d = Divisor::zero();
        d.add_term(m, c);
        d
    }

    fn add_term(&mut self, m: u64, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(m).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn terms(&self) -> &BTreeMap<u64, BigRational> {
        &self.terms
    }

    pub fn coefficient(&self, m: u64) -> BigRational {
        self.terms.get(&m).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        let mut out = self.clone();
        for (&m, c) in &other.terms {
            out.add_term(m, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Divisor) -> Divisor {
        let mut out = self.clone();
        for (&m, c) in &other.terms {
            out.add_term(m, -c.clone());
        }
        out
    }

    /// Bilinear product under `Λ_a Λ_b = gcd(a, b) Λ_lcm(a, b)`.
    ///
    /// # Panics
    /// Panics if an lcm overflows `u64`.
    pub fn mul(&self, other: &Divisor) -> Divisor {
        let mut out = Divisor::zero();
        for (&a, ca) in &self.terms {
            for (&b, cb) in &other.terms {
                let g = a.gcd(&b);
                let lcm = (a / g).checked_mul(b).expect("Λ index overflows u64");
                out.add_term(lcm, ca * cb * BigRational::from_integer(g.into()));
            }
        }
        out
    }

    /// `prod (t^m - 1)^{c_m}`, provided every coefficient is an integer.
    pub fn to_lambda_product(&self) -> Result<LambdaProduct> {
        let factors = self
            .terms
            .iter()
            .map(|(&m, c)| {
                c.is_integer()
                    .then(|| c.to_integer().to_i64())
                    .flatten()
                    .map(|e| (m, e))
                    .ok_or_else(|| Error::NonIntegralDivisor {
                        index: m,
                        coefficient: c.to_string(),
                    })
            })
            .collect::<Result<Vec<_>>>()?;
        LambdaProduct::from_factors(1, factors)
    }

    /// Degree of the associated rational function, `sum m c_m`.
    pub fn degree(&self) -> BigRational {
        self.terms
            .iter()
            .map(|(&m, c)| c * BigRational::from_integer(m.into()))
            .fold(BigRational::zero(), |a, b| a + b)
    }
}

impl From<&LambdaProduct> for Divisor {
    /// The divisor of a unit-free product of binomials.
    fn from(p: &LambdaProduct) -> Self {
        let mut d = Divisor::zero();
        for (&m, &e) in p.factors() {
            d.add_term(m, BigRational::from_integer(e.into()));
        }
        d
    }
}

impl fmt::Display for Divisor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let neg = *c < BigRational::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            match (first, neg) {
                (true, true) => write!(f, "-")?,
                (false, true) => write!(f, " - ")?,
                (false, false) => write!(f, " + ")?,
                (true, false) => {}
            }
            first = false;
            if !abs.is_one() {
                write!(f, "({abs})")?;
            }
            write!(f, "L{m}")?;
        }
        Ok(())
    }
}

impl Serialize for Divisor {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let triples: Vec<(u64, JsonInt, JsonInt)> = self
            .terms
            .iter()
            .map(|(&m, c)| (m, JsonInt(c.numer().clone()), JsonInt(c.denom().clone())))
            .collect();
        triples.serialize(s)
    }
}

impl<'de> Deserialize<'de> for Divisor {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let triples = Vec::<(u64, JsonInt, JsonInt)>::deserialize(d)?;
        let mut out = Divisor::zero();
        for (m, JsonInt(n), JsonInt(q)) in triples {
            if m == 0 || q.is_zero() {
                return Err(serde::de::Error::custom("invalid divisor term"));
            }
            out.add_term(m, BigRational::new(n, q));
        }
        Ok(out)
    }
}

/// `(1/v) Λ_u - Λ_1` for a weight `w = u/v` in lowest terms.
pub fn weight_divisor(w: &BigRational) -> Result<Divisor> {
    if *w <= BigRational::one() {
        return Err(Error::InvalidWeight(w.to_string()));
    }
    let u = w
        .numer()
        .to_u64()
        .ok_or(Error::Overflow("weight numerator"))?;
    let v = BigRational::from_integer(w.denom().clone());
    Ok(Divisor::term(u, v.recip()).sub(&Divisor::one()))
}

/// Product of the per-variable divisors.
pub fn weight_system_divisor(ws: &WeightSystem) -> Result<Divisor> {
    ws.weights()
        .iter()
        .try_fold(Divisor::one(), |acc, w| Ok(acc.mul(&weight_divisor(w)?)))
}

/// Characteristic polynomial of the monodromy on the reduced middle
/// cohomology of the Milnor fiber; its degree is the Milnor number.
pub fn monodromy_char_poly(ws: &WeightSystem) -> Result<LambdaProduct> {
    weight_system_divisor(ws)?.to_lambda_product()
}

/// `prod (w_i - 1)`.
pub fn milnor_number(ws: &WeightSystem) -> Result<BigInt> {
    let mu = ws
        .weights()
        .iter()
        .fold(BigRational::one(), |acc, w| acc * (w - BigRational::one()));
    if !mu.is_integer() {
        return Err(Error::NonIntegralMilnorNumber(mu.to_string()));
    }
    Ok(mu.to_integer())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{integer, rational};

    fn lam(m: u64) -> Divisor {
        Divisor::lambda(m)
    }

    #[test]
    fn product_examples() {
        let d = lam(6).sub(&lam(2));
        assert_eq!(d.mul(&Divisor::one()), d);
        let a = lam(2).sub(&lam(1)).mul(&lam(4).sub(&lam(1)));
        assert_eq!(a, lam(4).sub(&lam(2)).add(&lam(1)));
        let b = a.mul(&Divisor::term(8, rational(1, 3)).sub(&lam(1)));
        assert_eq!(b, lam(8).sub(&lam(4)).add(&lam(2)).sub(&lam(1)));
    }

    #[test]
    fn weight_divisors() {
        assert_eq!(weight_divisor(&integer(7)).unwrap(), lam(7).sub(&lam(1)));
        assert_eq!(
            weight_divisor(&rational(8, 3)).unwrap(),
            Divisor::term(8, rational(1, 3)).sub(&lam(1))
        );
        assert_eq!(weight_divisor(&integer(2)).unwrap(), lam(2).sub(&lam(1)));
        assert!(weight_divisor(&integer(1)).is_err());
        assert!(weight_divisor(&rational(1, 2)).is_err());
    }

    #[test]
    fn char_poly_examples() {
        let ws = WeightSystem::from_ratios(&[(6, 1)]).unwrap();
        let p = monodromy_char_poly(&ws).unwrap();
        assert_eq!(p, LambdaProduct::from_factors(1, [(6, 1), (1, -1)]).unwrap());
        assert_eq!(p.degree(), 5);

        let ws: WeightSystem = "2,4,8/3".parse().unwrap();
        let p = monodromy_char_poly(&ws).unwrap();
        assert_eq!(
            p,
            LambdaProduct::from_factors(1, [(8, 1), (4, -1), (2, 1), (1, -1)]).unwrap()
        );
        assert_eq!(milnor_number(&ws).unwrap(), BigInt::from(5));
    }

    #[test]
    fn brieskorn_pairs() {
        for a in 2..9u64 {
            for b in 2..9u64 {
                let ws = WeightSystem::from_ratios(&[(a as i64, 1), (b as i64, 1)]).unwrap();
                let p = monodromy_char_poly(&ws).unwrap();
                let g = a.gcd(&b);
                let expected = LambdaProduct::from_factors(
                    1,
                    [(a * b / g, g as i64), (1, 1), (a, -1), (b, -1)],
                )
                .unwrap();
                assert_eq!(p, expected, "a={a} b={b}");
                assert_eq!(p.degree(), ((a - 1) * (b - 1)) as i128);
            }
        }
    }

    #[test]
    fn non_integral_inputs() {
        // a single variable of weight 5/2 is not realised by any polynomial
        let ws = WeightSystem::from_ratios(&[(5, 2)]).unwrap();
        assert!(matches!(
            monodromy_char_poly(&ws),
            Err(Error::NonIntegralDivisor { .. })
        ));
        assert!(matches!(
            milnor_number(&ws),
            Err(Error::NonIntegralMilnorNumber(_))
        ));
    }

    #[test]
    fn weight_system_validation() {
        assert_eq!(WeightSystem::new(vec![]), Err(Error::EmptyWeights));
        assert!("2,1".parse::<WeightSystem>().is_err());
        assert!("2,x".parse::<WeightSystem>().is_err());
        assert!("3/0".parse::<WeightSystem>().is_err());
        let ws: WeightSystem = "4/2, 3".parse().unwrap();
        assert_eq!(ws.weights()[0], integer(2));
    }

    #[test]
    fn divisor_json() {
        let d = Divisor::term(8, rational(1, 3)).sub(&lam(1));
        let s = serde_json::to_string(&d).unwrap();
        assert_eq!(s, "[[1,-1,1],[8,1,3]]");
        assert_eq!(serde_json::from_str::<Divisor>(&s).unwrap(), d);
    }
}
