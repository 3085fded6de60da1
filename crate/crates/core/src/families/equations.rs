//! Explicit defining equations of the three families and of their local
//! singularities at `P = (1:0:...:0)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::lambda_ring::pow_rational;
use crate::milnor_orlik::WeightSystem;

/// A polynomial with integer coefficients as a list of `(coefficient, exponents)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    pub variables: usize,
    pub terms: Vec<(i64, Vec<u32>)>,
}

impl Polynomial {
    fn new(variables: usize) -> Self {
        Polynomial {
            variables,
            terms: Vec::new(),
        }
    }

    /// Adds the monomial `prod z_i^e` given as sparse `(index, exponent)` pairs.
    fn push(&mut self, sparse: &[(usize, u32)]) {
        let mut exps = vec![0; self.variables];
        for &(i, e) in sparse {
            exps[i] += e;
        }
        self.terms.push((1, exps));
    }

    pub fn eval(&self, point: &[BigRational]) -> BigRational {
        assert_eq!(point.len(), self.variables);
        self.terms
            .iter()
            .map(|(c, exps)| {
                exps.iter()
                    .zip(point)
                    .filter(|(&e, _)| e > 0)
                    .fold(BigRational::from_integer((*c).into()), |acc, (&e, z)| {
                        acc * pow_rational(z, e as u64)
                    })
            })
            .fold(BigRational::zero(), |a, b| a + b)
    }

    /// True when every monomial has total degree `degree`.
    pub fn is_homogeneous_of_degree(&self, degree: u32) -> bool {
        self.terms
            .iter()
            .all(|(_, e)| e.iter().sum::<u32>() == degree)
    }

    /// True when every monomial has weighted degree exactly 1.
    pub fn is_weighted_homogeneous(&self, ws: &WeightSystem) -> bool {
        ws.len() == self.variables
            && self
                .terms
                .iter()
                .all(|(_, e)| ws.weighted_degree(e).is_one())
    }
}

/// `z_0 z_1^{d-1} + z_1 z_2^{d-1} + ... + z_n z_{n+1}^{d-1}` in `z_0..z_{n+1}`.
pub fn w_equation(n: u32, d: u32) -> Polynomial {
    let n = n as usize;
    let mut p = Polynomial::new(n + 2);
    for i in 0..=n {
        p.push(&[(i, 1), (i + 1, d - 1)]);
    }
    p
}

/// `z_1^d + z_0 z_2^{d-1} + z_2 z_3^{d-1} + ... + z_n z_{n+1}^{d-1}`.
pub fn v_equation(n: u32, d: u32) -> Polynomial {
    let n = n as usize;
    let mut p = Polynomial::new(n + 2);
    p.push(&[(1, d)]);
    p.push(&[(0, 1), (2, d - 1)]);
    for i in 2..=n {
        p.push(&[(i, 1), (i + 1, d - 1)]);
    }
    p
}

/// Cyclic sum of `z_{i-1}^{a_{i-1}} z_i`; each monomial has weighted degree
/// `a_{i-1} w_{i-1} + w_i`, which is the left side of the Kollár system.
pub fn h_equation(a: &[u64]) -> Polynomial {
    let len = a.len();
    let mut p = Polynomial::new(len);
    for i in 0..len {
        let prev = (i + len - 1) % len;
        p.push(&[(prev, a[prev] as u32), (i, 1)]);
    }
    p
}

/// Local equation of `W_n^d` at `P`: `z_1^{d-1} + z_1 z_2^{d-1} + ... + z_n z_{n+1}^{d-1}`
/// in the variables `z_1..z_{n+1}`.
pub fn w_local_equation(n: u32, d: u32) -> Polynomial {
    let n = n as usize;
    let mut p = Polynomial::new(n + 1);
    p.push(&[(0, d - 1)]);
    for i in 0..n {
        p.push(&[(i, 1), (i + 1, d - 1)]);
    }
    p
}

/// Local equation of `V_n^d` at `P`: `z_1^d + z_2^{d-1} + z_2 z_3^{d-1} + ...`
/// in the variables `z_1..z_{n+1}`.
pub fn v_local_equation(n: u32, d: u32) -> Polynomial {
    let n = n as usize;
    let mut p = Polynomial::new(n + 1);
    p.push(&[(0, d)]);
    if n >= 1 {
        p.push(&[(1, d - 1)]);
    }
    for i in 1..n {
        p.push(&[(i, 1), (i + 1, d - 1)]);
    }
    p
}

/// Checks the chart of `W_n^d` off `z_1 = 0`: the point
/// `(-(z_2^{d-1} + z_2 z_3^{d-1} + ... + z_n z_{n+1}^{d-1}), 1, z_2, ..., z_{n+1})`
/// must lie on the hypersurface for every choice of `z_2..z_{n+1}`.
pub fn affine_chart_check(n: u32, d: u32, sample: &[BigRational]) -> Result<bool> {
    if d < 2 || n < 1 {
        return Err(Error::InvalidParameters(format!("need n >= 1, d >= 2; got n={n}, d={d}")));
    }
    if sample.len() != n as usize {
        return Err(Error::InvalidParameters(format!(
            "sample must have n = {n} coordinates, got {}",
            sample.len()
        )));
    }
    let mut z0 = pow_rational(&sample[0], (d - 1) as u64);
    for i in 0..sample.len() - 1 {
        z0 += &sample[i] * pow_rational(&sample[i + 1], (d - 1) as u64);
    }
    let mut point = Vec::with_capacity(n as usize + 2);
    point.push(-z0);
    point.push(BigRational::from_integer(BigInt::one()));
    point.extend(sample.iter().cloned());
    Ok(w_equation(n, d).eval(&point).is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::integer;

    #[test]
    fn shapes() {
        let w = w_equation(2, 3);
        assert_eq!(w.terms.len(), 3);
        assert_eq!(w.terms[0].1, vec![1, 2, 0, 0]);
        assert!(w.is_homogeneous_of_degree(3));
        let v = v_equation(2, 3);
        assert_eq!(v.terms[0].1, vec![0, 3, 0, 0]);
        assert_eq!(v.terms[1].1, vec![1, 0, 2, 0]);
        assert_eq!(v.terms[2].1, vec![0, 0, 1, 2]);
        assert!(v.is_homogeneous_of_degree(3));
        let h = h_equation(&[2, 3, 1, 1, 1]);
        assert_eq!(h.terms[0].1, vec![1, 0, 0, 0, 1]);
        assert_eq!(h.terms[1].1, vec![2, 1, 0, 0, 0]);
    }

    #[test]
    fn chart_examples() {
        assert!(affine_chart_check(2, 3, &[integer(0), integer(0)]).unwrap());
        assert!(affine_chart_check(2, 3, &[integer(1), integer(1)]).unwrap());
        assert!(affine_chart_check(1, 5, &[integer(7)]).unwrap());
        assert!(affine_chart_check(2, 3, &[integer(1)]).is_err());
    }

    #[test]
    fn chart_point_is_explicit() {
        // (n, d) = (2, 3), sample (1, 1): z_0 = -2 and -2 + 1 + 1 = 0
        let point = [integer(-2), integer(1), integer(1), integer(1)];
        assert!(w_equation(2, 3).eval(&point).is_zero());
        let off = [integer(-1), integer(1), integer(1), integer(1)];
        assert!(!w_equation(2, 3).eval(&off).is_zero());
    }
}
