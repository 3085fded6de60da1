use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use super::equations::h_equation;
use crate::error::{Error, Result};
use crate::linalg::{integer, Matrix};
use crate::milnor_orlik::WeightSystem;

/// Weights of `H(a_0, ..., a_{n+1})` from the cyclic system
/// `w_i + a_{i-1} w_{i-1} = d` (indices mod `n + 2`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct KollarSolution {
    pub a: Vec<u64>,
    #[serde(with = "crate::json::bigint")]
    pub d: BigInt,
    #[serde(with = "crate::json::rational_vec")]
    pub weights: Vec<BigRational>,
    /// gcd of the weights when they are all integers.
    #[serde(with = "crate::json::option_bigint")]
    pub w_star: Option<BigInt>,
    pub admissible: bool,
    /// Quasi-smoothness of the hypersurface is assumed, never checked.
    pub quasi_smoothness_checked: bool,
}

impl KollarSolution {
    pub fn n(&self) -> usize {
        self.a.len() - 2
    }

    /// `w_i + a_{i-1} w_{i-1} - d` for every `i`; identically zero for a solution.
    pub fn residual(&self) -> Vec<BigRational> {
        let len = self.a.len();
        let d = BigRational::from_integer(self.d.clone());
        (0..len)
            .map(|i| {
                let prev = (i + len - 1) % len;
                &self.weights[i] + integer(self.a[prev]) * &self.weights[prev] - &d
            })
            .collect()
    }

    /// Weights `d / w_i` of the affine cone, normalised so the equation has
    /// weighted degree one. `None` unless every `w_i` is positive.
    pub fn cone_weights(&self) -> Option<WeightSystem> {
        let d = BigRational::from_integer(self.d.clone());
        if d.is_zero() || self.weights.iter().any(|w| !w.is_positive()) {
            return None;
        }
        WeightSystem::new(self.weights.iter().map(|w| &d / w).collect()).ok()
    }

    /// True when every monomial of the cyclic equation has weighted degree `d`.
    pub fn equation_is_quasi_homogeneous(&self) -> bool {
        self.cone_weights()
            .is_some_and(|ws| h_equation(&self.a).is_weighted_homogeneous(&ws))
    }
}

pub fn kollar_weight_system(a: &[u64]) -> Result<KollarSolution> {
    let len = a.len();
    if len < 5 || len.is_multiple_of(2) {
        return Err(Error::InvalidParameters(format!(
            "H(a) needs n + 2 exponents with n odd and n >= 3, got {len}"
        )));
    }
    if a.contains(&0) {
        return Err(Error::InvalidParameters("exponents a_i must be positive".into()));
    }
    let n = len - 2;
    let product: BigInt = a.iter().map(|&x| BigInt::from(x)).product();
    let d: BigInt = if (n + 1).is_multiple_of(2) { product + 1 } else { product - 1 };

    let mut m = Matrix::zeros(len, len);
    for i in 0..len {
        let prev = (i + len - 1) % len;
        m.set(i, i, BigRational::one());
        m.set(i, prev, integer(a[prev]));
    }
    let rhs = vec![BigRational::from_integer(d.clone()); len];
    let weights = m
        .solve_unique(&rhs)
        .ok_or_else(|| Error::DegenerateSystem(format!("cyclic system for a = {a:?} is singular")))?;

    let integral = weights.iter().all(|w| w.is_integer());
    let w_star = integral.then(|| {
        weights
            .iter()
            .fold(BigInt::zero(), |g, w| g.gcd(&w.to_integer()))
    });
    let positive = weights.iter().all(|w| w.is_positive());
    let admissible = integral && positive && w_star.as_ref().is_some_and(|g| g.is_one());
    Ok(KollarSolution {
        a: a.to_vec(),
        d,
        weights,
        w_star,
        admissible,
        quasi_smoothness_checked: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_twos() {
        let s = kollar_weight_system(&[2, 2, 2, 2, 2]).unwrap();
        assert_eq!(s.d, BigInt::from(33));
        assert!(s.weights.iter().all(|w| *w == integer(11)));
        assert_eq!(s.w_star, Some(BigInt::from(11)));
        assert!(!s.admissible);
        assert!(s.residual().iter().all(Zero::is_zero));
    }

    #[test]
    fn all_ones() {
        let s = kollar_weight_system(&[1, 1, 1, 1, 1]).unwrap();
        assert_eq!(s.d, BigInt::from(2));
        assert!(s.weights.iter().all(|w| w.is_one()));
        assert!(s.admissible);
        assert!(s.equation_is_quasi_homogeneous());
    }

    #[test]
    fn admissible_example() {
        let s = kollar_weight_system(&[2, 1, 1, 1, 1]).unwrap();
        assert_eq!(s.d, BigInt::from(3));
        assert!(s.residual().iter().all(Zero::is_zero));
        assert!(s.equation_is_quasi_homogeneous());
    }

    #[test]
    fn parameter_validation() {
        assert!(kollar_weight_system(&[1, 1, 1]).is_err());
        assert!(kollar_weight_system(&[1, 1, 1, 1, 1, 1]).is_err());
        assert!(kollar_weight_system(&[1, 1, 0, 1, 1]).is_err());
        assert!(kollar_weight_system(&[1; 7]).is_ok());
    }
}
