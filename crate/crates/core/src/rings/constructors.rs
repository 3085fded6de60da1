use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{CoefficientMode, GradedRing, Product};
use crate::error::{Error, Result};
use crate::linalg::integer;

fn power_label(base: &str, i: u32) -> String {
    match i {
        0 => "1".to_string(),
        1 => base.to_string(),
        _ => format!("{base}^{i}"),
    }
}

fn one_term(k: usize, c: BigRational) -> Product {
    vec![(k, c)]
}

/// `Q[x]/(x^{n+1})` with `deg x = 2`; `n = 1` is the rational 2-sphere.
pub fn truncated_polynomial_ring(n: u32) -> Result<GradedRing> {
    if n < 1 {
        return Err(Error::InvalidParameters("truncated polynomial ring needs n >= 1".into()));
    }
    let labels = (0..=n).map(|i| power_label("x", i)).collect();
    let degrees = (0..=n).map(|i| 2 * i).collect();
    GradedRing::from_products(labels, degrees, CoefficientMode::Rationals, |i, j| {
        if i + j <= n as usize {
            one_term(i + j, BigRational::one())
        } else {
            Vec::new()
        }
    })
}

/// Cohomology of `S^2`.
pub fn sphere_ring() -> Result<GradedRing> {
    truncated_polynomial_ring(1)
}

/// Cohomology of a wedge of `m` two-spheres: all positive-degree products vanish.
pub fn wedge_of_spheres_ring(m: usize) -> Result<GradedRing> {
    if m < 1 {
        return Err(Error::InvalidParameters("wedge needs at least one sphere".into()));
    }
    let mut labels = vec!["1".to_string()];
    labels.extend((1..=m).map(|i| format!("x{i}")));
    let mut degrees = vec![0];
    degrees.extend(std::iter::repeat_n(2, m));
    GradedRing::from_products(labels, degrees, CoefficientMode::Rationals, |i, j| match (i, j) {
        (0, k) | (k, 0) => one_term(k, BigRational::one()),
        _ => Vec::new(),
    })
}

/// Rank one in every even degree up to `2n`: `e_i` in degree `2i`, with
/// `e_i e_j = c e_{i+j}` where `c = d` exactly when `i, j < t <= i + j`.
/// This is `Z[h, y]/(h^t = d y, ...)` with `e_i = h^i` below `t` and
/// `e_i = h^{i-t} y` from `t` on.
fn rank_one_twisted(n: u32, t: u32, d: u32, y: &str) -> Result<GradedRing> {
    let labels = (0..=n)
        .map(|i| match i {
            _ if i < t => power_label("h", i),
            _ if i == t => y.to_string(),
            _ => format!("{}*{y}", power_label("h", i - t)),
        })
        .collect();
    let degrees = (0..=n).map(|i| 2 * i).collect();
    let (n, t) = (n as usize, t as usize);
    GradedRing::from_products(labels, degrees, CoefficientMode::Integers, |i, j| {
        if i + j > n {
            return Vec::new();
        }
        let c = if i < t && j < t && i + j >= t { integer(d) } else { BigRational::one() };
        one_term(i + j, c)
    })
}

/// The twist index: `h^t = d y` with `t = (n+1)/2` for odd `n`, `n/2 + 1` for even `n`.
pub(crate) fn twist_index(n: u32) -> u32 {
    if n % 2 == 1 {
        n.div_ceil(2)
    } else {
        n / 2 + 1
    }
}

/// Integral cohomology of the `V_n^d` and `H(a)` spaces: `Z[h, y]` with
/// `h^{n+1} = 0` and `h^t = d y` in degree `2t`.
pub fn twisted_projective_ring(n: u32, d: u32) -> Result<GradedRing> {
    if n < 2 || d < 1 {
        return Err(Error::InvalidParameters(format!(
            "twisted projective ring needs n >= 2 and d >= 1, got n = {n}, d = {d}"
        )));
    }
    let t = twist_index(n);
    rank_one_twisted(n, t, d, &format!("y{}", 2 * t))
}

/// `Q[h, v]/(hv, h^{2k+1}, h^{2k} - a v^2)` with `deg h = 2`, `deg v = 2k`.
pub fn twisted_quadric_ring(k: u32, a: &BigRational) -> Result<GradedRing> {
    if k < 1 {
        return Err(Error::InvalidParameters("twisted quadric needs k >= 1".into()));
    }
    if a.is_zero() {
        return Err(Error::InvalidParameters("twisted quadric needs a != 0".into()));
    }
    // basis: h^0..h^k, v, h^{k+1}..h^{2k}
    let k = k as usize;
    let v = k + 1;
    let h = |i: usize| if i <= k { i } else { i + 1 };
    let mut labels: Vec<String> = (0..=k).map(|i| power_label("h", i as u32)).collect();
    labels.push("v".into());
    labels.extend((k + 1..=2 * k).map(|i| power_label("h", i as u32)));
    let mut degrees: Vec<u32> = (0..=k).map(|i| 2 * i as u32).collect();
    degrees.push(2 * k as u32);
    degrees.extend((k + 1..=2 * k).map(|i| 2 * i as u32));
    let exponent = |idx: usize| if idx <= k { idx } else { idx - 1 };
    let v_sq = a.recip();
    GradedRing::from_products(labels, degrees, CoefficientMode::Rationals, |i, j| match (i, j) {
        (0, x) | (x, 0) => one_term(x, BigRational::one()),
        (x, y) if x == v && y == v => one_term(h(2 * k), v_sq.clone()),
        (x, y) if x == v || y == v => Vec::new(),
        (x, y) => {
            let s = exponent(x) + exponent(y);
            if s <= 2 * k {
                one_term(h(s), BigRational::one())
            } else {
                Vec::new()
            }
        }
    })
}

/// Integral cohomology of the smooth quadric `Q_{2k}`: `h^i` for `i <= k`
/// and `h^j l` for `j = 0..=k`, with `h^{k+1} = 2 h l` and `l^2 = l h^k`
/// (`k` even) or `l^2 = 0` (`k` odd).
pub fn smooth_quadric_ring(k: u32) -> Result<GradedRing> {
    if k < 1 {
        return Err(Error::InvalidParameters("smooth quadric needs k >= 1".into()));
    }
    let k = k as usize;
    // indices: h^i -> i for i <= k; h^j l -> k + 1 + j
    let l = |j: usize| k + 1 + j;
    let mut labels: Vec<String> = (0..=k).map(|i| power_label("h", i as u32)).collect();
    labels.extend((0..=k).map(|j| match j {
        0 => "l".to_string(),
        _ => format!("{}*l", power_label("h", j as u32)),
    }));
    let mut degrees: Vec<u32> = (0..=k).map(|i| 2 * i as u32).collect();
    degrees.extend((0..=k).map(|j| 2 * (k + j) as u32));
    let k_even = k.is_multiple_of(2);
    GradedRing::from_products(labels, degrees, CoefficientMode::Integers, |i, j| {
        match (i <= k, j <= k) {
            (true, true) => {
                let s = i + j;
                if s <= k {
                    one_term(s, BigRational::one())
                } else {
                    one_term(l(s - k), integer(2))
                }
            }
            (true, false) | (false, true) => {
                let (hi, lj) = if i <= k { (i, j - k - 1) } else { (j, i - k - 1) };
                if hi + lj <= k {
                    one_term(l(hi + lj), BigRational::one())
                } else {
                    Vec::new()
                }
            }
            (false, false) => {
                if i == l(0) && j == l(0) && k_even {
                    one_term(l(k), BigRational::one())
                } else {
                    Vec::new()
                }
            }
        }
    })
}

/// Integral cohomology of the odd quadric `Q_{2k+1}`: rank one per even
/// degree, `h^{k+1} = 2 l`.
pub fn odd_quadric_ring(k: u32) -> Result<GradedRing> {
    if k < 1 {
        return Err(Error::InvalidParameters("odd quadric needs k >= 1".into()));
    }
    rank_one_twisted(2 * k + 1, k + 1, 2, "l")
}
