use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::constructors::twist_index;
use super::{odd_quadric_ring, smooth_quadric_ring, truncated_polynomial_ring, GradedRing};
use crate::error::{Error, Result};
use crate::lambda_ring::{pow_rational, squarefree_part};
use crate::linalg::{integer, Inertia, Matrix};

/// The pairing `<x y, top>` on the middle-degree basis.
pub fn poincare_pairing(ring: &GradedRing) -> Result<Matrix> {
    ring.fundamental_index()?;
    ring.pairing_matrix(ring.top_degree() / 2)
}

/// Inertia of the middle-degree pairing over the reals.
pub fn middle_signature(ring: &GradedRing) -> Result<Inertia> {
    Ok(poincare_pairing(ring)?.inertia())
}

/// In the smooth quadric ring sets `v = 2l - h^k` and checks `h v = 0` and
/// `h^{2k} = (-1)^k v^2`.
pub fn quadric_vanishing_class_check(k: u32) -> Result<bool> {
    let r = smooth_quadric_ring(k)?;
    let h = r.element(&[("h", integer(1))])?;
    let hk = r.pow(&h, k);
    let mut v = r.element(&[("l", integer(2))])?;
    for (vi, hi) in v.iter_mut().zip(&hk) {
        *vi -= hi;
    }
    let hv_zero = r.mul(&h, &v).iter().all(Zero::is_zero);
    let sign = if k.is_multiple_of(2) { integer(1) } else { integer(-1) };
    let v2: Vec<BigRational> = r.mul(&v, &v).into_iter().map(|c| c * &sign).collect();
    Ok(hv_zero && r.pow(&h, 2 * k) == v2)
}

/// `(1 - (1 - d)^{k+1}) / d`.
pub fn linear_space_self_intersection(d: u32, k: u32) -> Result<BigRational> {
    if d < 1 {
        return Err(Error::InvalidParameters("d must be >= 1".into()));
    }
    let base = integer(1) - integer(d);
    Ok((integer(1) - pow_rational(&base, u64::from(k) + 1)) / integer(d))
}

/// Real homotopy class of the `a`-twisted quadric: the sign of `a`.
pub fn real_homotopy_class(a: &BigRational) -> Result<i8> {
    if a.is_zero() {
        return Err(Error::ZeroSquareClass);
    }
    Ok(if a.is_positive() { 1 } else { -1 })
}

/// Rational homotopy class of the `a`-twisted quadric: the class of `a` in
/// `Q*/(Q*)^2`, as a signed squarefree integer.
pub fn rational_homotopy_class(a: &BigRational) -> Result<BigInt> {
    squarefree_part(a)
}

pub fn twisted_quadrics_really_equivalent(a: &BigRational, b: &BigRational) -> Result<bool> {
    Ok(real_homotopy_class(a)? == real_homotopy_class(b)?)
}

pub fn twisted_quadrics_rationally_equivalent(a: &BigRational, b: &BigRational) -> Result<bool> {
    Ok(rational_homotopy_class(a)? == rational_homotopy_class(b)?)
}

/// Twist parameter `(-1)^k` of the quadric modelling `W_{2k}^d` over the reals.
pub fn w_quadric_parameter(n: u32) -> Result<BigRational> {
    if n == 0 || n % 2 == 1 {
        return Err(Error::InvalidParameters(format!("need even n >= 2, got {n}")));
    }
    Ok(if (n / 2).is_multiple_of(2) { integer(1) } else { integer(-1) })
}

/// Checks that the linear map sending basis element `i` of `src` to
/// `images[i]` (coordinates in `dst`) is a graded ring isomorphism.
pub fn is_ring_isomorphism(src: &GradedRing, dst: &GradedRing, images: &[Vec<BigRational>]) -> bool {
    let n = src.rank();
    if images.len() != n || dst.rank() != n || images.iter().any(|v| v.len() != n) {
        return false;
    }
    if images[0] != dst.unit() {
        return false;
    }
    let graded = (0..n).all(|i| {
        images[i]
            .iter()
            .enumerate()
            .all(|(k, c)| c.is_zero() || dst.degree(k) == src.degree(i))
    });
    if !graded {
        return false;
    }
    let m = Matrix::from_rows(n, images.to_vec());
    if m.determinant().is_zero() {
        return false;
    }
    let map = |x: &[BigRational]| -> Vec<BigRational> {
        let mut out = dst.zero();
        for (i, c) in x.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (o, im) in out.iter_mut().zip(&images[i]) {
                *o += c * im;
            }
        }
        out
    };
    (0..n).all(|i| {
        (0..n).all(|j| {
            let prod = src.mul(&src.basis_element(i), &src.basis_element(j));
            map(&prod) == dst.mul(&images[i], &images[j])
        })
    })
}

/// `y -> h^t / d` with `h -> x`: checks the rescaling identifies
/// `twisted_projective_ring(n, d)` with `Q[x]/(x^{n+1})`.
pub fn rational_iso_to_truncated(ring: &GradedRing, n: u32, d: u32) -> Result<bool> {
    if d < 1 || ring.rank() != n as usize + 1 {
        return Ok(false);
    }
    let target = truncated_polynomial_ring(n)?;
    let t = twist_index(n) as usize;
    let dd = integer(d);
    let images: Vec<Vec<BigRational>> = (0..=n as usize)
        .map(|i| {
            let mut v = target.zero();
            v[i] = if i < t { BigRational::one() } else { dd.recip() };
            v
        })
        .collect();
    Ok(is_ring_isomorphism(ring, &target, &images))
}

/// For a ring of rank one in each even degree `0..=2n` generated by its
/// degree-2 element `g`: sends `e_i -> x^i / c_i` where `g^i = c_i e_i`, and
/// checks this is an isomorphism onto `Q[x]/(x^{n+1})`.
pub fn rank_one_truncated_iso(ring: &GradedRing) -> Result<bool> {
    let top = ring.top_degree();
    let n = top / 2;
    if n < 1 || (0..=top).any(|d| ring.rank_in_degree(d) != usize::from(d % 2 == 0)) {
        return Ok(false);
    }
    let g = ring.basis_element(ring.degree_basis(2)[0]);
    let target = truncated_polynomial_ring(n)?;
    let mut images = Vec::new();
    for i in 0..=n {
        let e = ring.degree_basis(2 * i)[0];
        let c = ring.pow(&g, i)[e].clone();
        if c.is_zero() {
            return Ok(false);
        }
        let mut v = target.zero();
        v[i as usize] = c.recip();
        images.push((e, v));
    }
    images.sort_by_key(|(e, _)| *e);
    let images: Vec<Vec<BigRational>> = images.into_iter().map(|(_, v)| v).collect();
    Ok(is_ring_isomorphism(ring, &target, &images))
}

/// `H^*(Q_{2k+1}; Q) = Q[x]/(x^{2k+2})`.
pub fn odd_quadric_iso_check(k: u32) -> Result<bool> {
    rank_one_truncated_iso(&odd_quadric_ring(k)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational;
    use crate::rings::{twisted_projective_ring, twisted_quadric_ring, wedge_of_spheres_ring};

    fn inertia(p: usize, q: usize, z: usize) -> Inertia {
        Inertia {
            positive: p,
            negative: q,
            zero: z,
        }
    }

    #[test]
    fn pairings() {
        let tq = twisted_quadric_ring(2, &rational(1, 3)).unwrap();
        assert_eq!(poincare_pairing(&tq).unwrap(), Matrix::from_i64(&[&[1, 0], &[0, 3]]));
        assert_eq!(
            poincare_pairing(&smooth_quadric_ring(2).unwrap()).unwrap(),
            Matrix::from_i64(&[&[2, 1], &[1, 1]])
        );
        assert_eq!(
            poincare_pairing(&smooth_quadric_ring(1).unwrap()).unwrap(),
            Matrix::from_i64(&[&[2, 1], &[1, 0]])
        );
        assert_eq!(
            poincare_pairing(&wedge_of_spheres_ring(2).unwrap()),
            Err(Error::NoFundamentalClass(2))
        );
    }

    #[test]
    fn signatures() {
        let s = |k, a: i64| middle_signature(&twisted_quadric_ring(k, &integer(a)).unwrap()).unwrap();
        assert_eq!(s(2, 1), inertia(2, 0, 0));
        assert_eq!(s(1, -1), inertia(1, 1, 0));
        assert_eq!(middle_signature(&smooth_quadric_ring(2).unwrap()).unwrap(), inertia(2, 0, 0));
        for k in 1..5u32 {
            let a = if k % 2 == 0 { 1 } else { -1 };
            assert_eq!(middle_signature(&smooth_quadric_ring(k).unwrap()).unwrap(), s(k, a));
        }
    }

    #[test]
    fn vanishing_class() {
        for k in 1..6 {
            assert!(quadric_vanishing_class_check(k).unwrap());
        }
    }

    #[test]
    fn self_intersection_formula() {
        for k in 0..7 {
            let expected = if k % 2 == 0 { 1 } else { 0 };
            assert_eq!(linear_space_self_intersection(2, k).unwrap(), integer(expected));
            assert_eq!(linear_space_self_intersection(1, k).unwrap(), integer(1));
        }
        assert_eq!(linear_space_self_intersection(3, 1).unwrap(), integer(-1));
    }

    #[test]
    fn homotopy_classes() {
        assert_eq!(real_homotopy_class(&rational(-3, 7)).unwrap(), -1);
        assert!(twisted_quadrics_rationally_equivalent(&integer(4), &integer(1)).unwrap());
        assert!(!twisted_quadrics_rationally_equivalent(&integer(2), &integer(1)).unwrap());
        assert!(twisted_quadrics_really_equivalent(&integer(2), &integer(1)).unwrap());
        assert_eq!(rational_homotopy_class(&rational(-4, 9)).unwrap(), BigInt::from(-1));
        assert!(real_homotopy_class(&integer(0)).is_err());
        assert_eq!(w_quadric_parameter(2).unwrap(), integer(-1));
        assert_eq!(w_quadric_parameter(4).unwrap(), integer(1));
    }

    #[test]
    fn truncated_isomorphisms() {
        assert!(rational_iso_to_truncated(&twisted_projective_ring(3, 5).unwrap(), 3, 5).unwrap());
        for d in 1..6 {
            assert!(rational_iso_to_truncated(&twisted_projective_ring(2, d).unwrap(), 2, d).unwrap());
        }
        // wrong twist factor is rejected
        assert!(!rational_iso_to_truncated(&twisted_projective_ring(3, 5).unwrap(), 3, 4).unwrap());
        for k in 1..4 {
            assert!(odd_quadric_iso_check(k).unwrap());
        }
        assert!(!rank_one_truncated_iso(&smooth_quadric_ring(1).unwrap()).unwrap());
    }
}
