//! Free graded-commutative algebras on finitely many homogeneous generators.
//!
//! A monomial is an exponent vector (trailing zeros trimmed) read in
//! generator order, `x_0^{e_0} x_1^{e_1} ...`; odd generators have exponent
//! at most one. Reordering odd factors produces the Koszul sign.

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Exponents = Vec<u32>;

fn trim(mut e: Exponents) -> Exponents {
    while e.last() == Some(&0) {
        e.pop();
    }
    e
}

pub fn monomial_degree(e: &[u32], degrees: &[u32]) -> u32 {
    e.iter().zip(degrees).map(|(a, d)| a * d).sum()
}

/// The generator `x_i` as an exponent vector.
pub fn generator_exponents(i: usize) -> Exponents {
    let mut e = vec![0; i + 1];
    e[i] = 1;
    e
}

/// `m1 * m2 = sign * m`, or `None` when an odd generator would be squared.
pub fn monomial_mul(m1: &[u32], m2: &[u32], degrees: &[u32]) -> Option<(bool, Exponents)> {
    let len = m1.len().max(m2.len());
    let at = |m: &[u32], i: usize| m.get(i).copied().unwrap_or(0);
    let mut out = vec![0; len];
    let mut negative = false;
    // odd factors of m1 to the right of index j, scanned from the right
    let mut odd_right_of = 0u32;
    for i in (0..len).rev() {
        let (a, b) = (at(m1, i), at(m2, i));
        let odd = degrees[i] % 2 == 1;
        if odd {
            if a > 0 && b > 0 {
                return None;
            }
            if b > 0 && odd_right_of % 2 == 1 {
                negative = !negative;
            }
            if a > 0 {
                odd_right_of += 1;
            }
        }
        out[i] = a + b;
    }
    Some((negative, trim(out)))
}

/// Polynomial in the free algebra with exact rational coefficients.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FreePoly {
    terms: BTreeMap<Exponents, BigRational>,
}

impl FreePoly {
    pub fn zero() -> Self {
        FreePoly::default()
    }

    pub fn one() -> Self {
        FreePoly::monomial(Vec::new(), BigRational::one())
    }

    pub fn monomial(e: Exponents, c: BigRational) -> Self {
        let mut p = FreePoly::zero();
        p.add_term(e, c);
        p
    }

    pub fn generator(i: usize) -> Self {
        FreePoly::monomial(generator_exponents(i), BigRational::one())
    }

    pub fn terms(&self) -> &BTreeMap<Exponents, BigRational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: Exponents, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let e = trim(e);
        let entry = self.terms.entry(e.clone()).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&e);
        }
    }

    pub fn add(&mut self, other: &FreePoly) {
        for (e, c) in &other.terms {
            self.add_term(e.clone(), c.clone());
        }
    }

    pub fn scaled(&self, s: &BigRational) -> FreePoly {
        let mut out = FreePoly::zero();
        for (e, c) in &self.terms {
            out.add_term(e.clone(), c * s);
        }
        out
    }

    pub fn mul(&self, other: &FreePoly, degrees: &[u32]) -> FreePoly {
        let mut out = FreePoly::zero();
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                if let Some((negative, e)) = monomial_mul(e1, e2, degrees) {
                    let c = c1 * c2;
                    out.add_term(e, if negative { -c } else { c });
                }
            }
        }
        out
    }

    /// True when some term is a single generator.
    pub fn has_linear_term(&self) -> bool {
        self.terms.keys().any(|e| e.iter().sum::<u32>() == 1)
    }

    /// Common degree of all terms, if homogeneous and nonzero.
    pub fn homogeneous_degree(&self, degrees: &[u32]) -> Option<u32> {
        let mut it = self.terms.keys().map(|e| monomial_degree(e, degrees));
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }
}

/// Extends `x_i -> differentials[i]` to a derivation of degree one.
pub fn apply_differential(p: &FreePoly, differentials: &[FreePoly], degrees: &[u32]) -> FreePoly {
    let mut out = FreePoly::zero();
    for (e, c) in p.terms() {
        let mut dm = differential_of_monomial(e, differentials, degrees);
        dm = dm.scaled(c);
        out.add(&dm);
    }
    out
}

fn differential_of_monomial(e: &[u32], differentials: &[FreePoly], degrees: &[u32]) -> FreePoly {
    let mut out = FreePoly::zero();
    for i in 0..e.len() {
        if e[i] == 0 || differentials[i].is_zero() {
            continue;
        }
        let prefix: Exponents = e[..i].to_vec();
        let mut suffix = vec![0; e.len()];
        suffix[i + 1..].copy_from_slice(&e[i + 1..]);
        // d(x_i^k) = k x_i^{k-1} dx_i; only even generators have k > 1
        let mut rest = vec![0; i + 1];
        rest[i] = e[i] - 1;
        let middle = FreePoly::monomial(rest, BigRational::from_integer(e[i].into()))
            .mul(&differentials[i], degrees);
        let sign_negative = monomial_degree(&prefix, degrees) % 2 == 1;
        let term = FreePoly::monomial(prefix, BigRational::one())
            .mul(&middle, degrees)
            .mul(&FreePoly::monomial(suffix, BigRational::one()), degrees);
        out.add(&if sign_negative { term.scaled(&-BigRational::one()) } else { term });
    }
    out
}

/// All monomials of total degree `target`, in a fixed order.
pub fn monomials_of_degree(degrees: &[u32], target: u32) -> Vec<Exponents> {
    fn go(degrees: &[u32], i: usize, remaining: u32, current: &mut Vec<u32>, out: &mut Vec<Exponents>) {
        if i == degrees.len() {
            if remaining == 0 {
                out.push(trim(current.clone()));
            }
            return;
        }
        let d = degrees[i];
        let max = if d == 0 {
            0
        } else if d % 2 == 1 {
            u32::from(remaining >= d)
        } else {
            remaining / d
        };
        for k in 0..=max {
            current.push(k);
            go(degrees, i + 1, remaining - k * d, current, out);
            current.pop();
        }
    }
    let mut out = Vec::new();
    go(degrees, 0, target, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::integer;

    #[test]
    fn koszul_signs() {
        // x0, x1 odd: x1 * x0 = -x0 x1
        let degs = [3, 5];
        let (neg, e) = monomial_mul(&[0, 1], &[1], &degs).unwrap();
        assert!(neg);
        assert_eq!(e, vec![1, 1]);
        let (neg, _) = monomial_mul(&[1], &[0, 1], &degs).unwrap();
        assert!(!neg);
        assert!(monomial_mul(&[1], &[1], &degs).is_none());
        // even generators commute freely
        let (neg, e) = monomial_mul(&[0, 2], &[3], &[2, 4]).unwrap();
        assert!(!neg);
        assert_eq!(e, vec![3, 2]);
    }

    #[test]
    fn enumeration() {
        let m = monomials_of_degree(&[2, 3], 6);
        assert_eq!(m, vec![vec![3]]);
        let m = monomials_of_degree(&[2, 3], 5);
        assert_eq!(m, vec![vec![1, 1]]);
        assert_eq!(monomials_of_degree(&[2, 2], 4).len(), 3);
        assert_eq!(monomials_of_degree(&[2], 0), vec![Vec::<u32>::new()]);
    }

    #[test]
    fn leibniz_rule() {
        // x (deg 2), y (deg 3) with dy = x^2: d(x y) = x^3, d(x^2 y) = x^4
        let degs = [2, 3];
        let d = [FreePoly::zero(), FreePoly::monomial(vec![2], integer(1))];
        let xy = FreePoly::monomial(vec![1, 1], integer(1));
        assert_eq!(apply_differential(&xy, &d, &degs), FreePoly::monomial(vec![3], integer(1)));
        // two odd generators a, b with da = x^2, db = x^3 (degrees 3, 5)
        let degs = [2, 3, 5];
        let d = [
            FreePoly::zero(),
            FreePoly::monomial(vec![2], integer(1)),
            FreePoly::monomial(vec![3], integer(1)),
        ];
        // d(a b) = x^2 b - a x^3
        let ab = FreePoly::monomial(vec![0, 1, 1], integer(1));
        let mut expected = FreePoly::monomial(vec![2, 0, 1], integer(1));
        expected.add_term(vec![3, 1], integer(-1));
        assert_eq!(apply_differential(&ab, &d, &degs), expected);
        // d o d = 0 on a b
        assert!(apply_differential(&expected, &d, &degs).is_zero());
    }
}
