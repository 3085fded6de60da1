//! Local weights and monodromy of the singular points of `V_n^d` and `W_n^d`.
//!
//! Two independent routes produce each characteristic polynomial: the closed
//! recurrences (`phi_closed_form`, `delta_closed_form`) and the Milnor–Orlik
//! divisor of the local weights (`phi_oracle`, `delta_oracle`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::equations::{v_local_equation, w_local_equation};
use crate::error::{Error, Result};
use crate::lambda_ring::LambdaProduct;
use crate::linalg::integer;
use crate::milnor_orlik::{monodromy_char_poly, WeightSystem};

fn check_d(d: u32) -> Result<()> {
    if d < 2 {
        return Err(Error::InvalidParameters(format!("degree d must be >= 2, got {d}")));
    }
    Ok(())
}

/// `base^exp` as a binomial index, failing on `u64` overflow.
pub(crate) fn index_pow(base: u64, exp: u32) -> Result<u64> {
    base.checked_pow(exp).ok_or(Error::Overflow("binomial index"))
}

fn index_mul(a: u64, b: u64) -> Result<u64> {
    a.checked_mul(b).ok_or(Error::Overflow("binomial index"))
}

/// Weights `w_i = d (d-1)^i / ((d-1)^i + (-1)^{i-1})`, `i = 1..n+1`, of the
/// singularity of `W_n^d` at `P`.
///
/// Every monomial of the local equation is checked to have weighted degree 1.
/// For `d = 2` the local equation has the linear term `z_1`, so `P` is a
/// smooth point and [`Error::SmoothGerm`] is returned.
pub fn w_singularity_weights(n: u32, d: u32) -> Result<WeightSystem> {
    check_d(d)?;
    if d == 2 {
        return Err(Error::SmoothGerm(format!(
            "W_{n}^2 is smooth at P (linear term z_1)"
        )));
    }
    let d_big = BigInt::from(d);
    let base = BigInt::from(d - 1);
    let weights: Vec<BigRational> = (1..=n + 1)
        .map(|i| {
            let p = base.pow(i);
            let sign = if i % 2 == 1 { BigInt::one() } else { -BigInt::one() };
            BigRational::new(&d_big * &p, p + sign)
        })
        .collect();

    // balance: 1/w_i + (d-1)/w_{i+1} = 1
    for pair in weights.windows(2) {
        let lhs = pair[0].recip() + integer(d - 1) / &pair[1];
        if !lhs.is_one() {
            return Err(Error::Inconsistent(format!(
                "balance identity fails for W_{n}^{d}: got {lhs}"
            )));
        }
    }
    let ws = WeightSystem::new(weights)?;
    if !w_local_equation(n, d).is_weighted_homogeneous(&ws) {
        return Err(Error::Inconsistent(format!(
            "local equation of W_{n}^{d} is not weighted homogeneous for {ws}"
        )));
    }
    Ok(ws)
}

/// Weights of the singular point of `V_n^d`.
///
/// For `d >= 3` this is the germ at `P` with local equation
/// `z_1^d + z_2^{d-1} + z_2 z_3^{d-1} + ...`: `w_1 = d`, `w_2 = d - 1`, and
/// `w_{i+1} = (d-1) w_i / (w_i - 1)` along the chain.
///
/// For `d = 2` the point `P` is smooth. `V_n^2` is then a quadric whose
/// matrix is a path of `n + 1` vertices plus `z_1^2`: for even `n` it is a
/// cone with a single node, returned here as weights `(2, ..., 2)` in `n + 1`
/// variables; for odd `n` it is smooth and [`Error::SmoothGerm`] is returned.
pub fn v_singularity_weights(n: u32, d: u32) -> Result<WeightSystem> {
    check_d(d)?;
    if n < 1 {
        return Err(Error::InvalidParameters("V_n^d needs n >= 1".into()));
    }
    if d == 2 {
        if n % 2 == 1 {
            return Err(Error::SmoothGerm(format!("V_{n}^2 is a smooth quadric")));
        }
        return WeightSystem::new(vec![integer(2); n as usize + 1]);
    }
    let mut weights = vec![integer(d), integer(d - 1)];
    while weights.len() < n as usize + 1 {
        let w = weights.last().expect("nonempty").clone();
        let next = integer(d - 1) * &w / (w - BigRational::one());
        weights.push(next);
    }
    weights.truncate(n as usize + 1);
    let ws = WeightSystem::new(weights)?;
    if !v_local_equation(n, d).is_weighted_homogeneous(&ws) {
        return Err(Error::Inconsistent(format!(
            "local equation of V_{n}^{d} is not weighted homogeneous for {ws}"
        )));
    }
    Ok(ws)
}

/// `Phi_n^d` by iterating
/// `Phi_{n+1} = Phi_{n-1} (t^{(d-1)^{n+2}} - 1) / (t^{(d-1)^{n+1}} - 1)` from
/// `Phi_0 = (t^{d-1} - 1) / (t - 1)`. Only even `n` are reachable.
pub fn phi_closed_form(n: u32, d: u32) -> Result<LambdaProduct> {
    check_d(d)?;
    if n % 2 == 1 {
        return Err(Error::InvalidParameters(format!(
            "the recurrence only reaches even n (got n = {n}); use phi_oracle for odd n"
        )));
    }
    let q = u64::from(d - 1);
    let mut phi = LambdaProduct::binomial(q) / LambdaProduct::binomial(1);
    for k in (1..n).step_by(2) {
        // step from Phi_{k-1} to Phi_{k+1}
        let up = index_pow(q, k + 2)?;
        let down = index_pow(q, k + 1)?;
        phi = phi * (LambdaProduct::binomial(up) / LambdaProduct::binomial(down));
    }
    Ok(phi)
}

/// `Delta_n^d` from the recurrence
/// `Delta_{m+2} = Delta_m (t^{d q^{m+2}} - 1)(t^{q^{m+1}} - 1) / ((t^{q^{m+2}} - 1)(t^{d q^{m+1}} - 1))`
/// with `q = d - 1`. The odd chain starts at the closed form of `Delta_1`;
/// the even chain starts at `Delta_2` computed from the weights of `V_2^d`.
pub fn delta_closed_form(n: u32, d: u32) -> Result<LambdaProduct> {
    check_d(d)?;
    if n < 1 {
        return Err(Error::InvalidParameters("Delta_n needs n >= 1".into()));
    }
    let q = u64::from(d - 1);
    let dd = u64::from(d);
    let (mut delta, start) = if n % 2 == 1 {
        let base = LambdaProduct::from_factors(1, [(dd * q, 1), (1, 1)])?
            / LambdaProduct::from_factors(1, [(q, 1), (dd, 1)])?;
        (base, 1)
    } else {
        (delta_oracle(2, d)?, 2)
    };
    let mut m = start;
    while m < n {
        let qa = index_pow(q, m + 2)?;
        let qb = index_pow(q, m + 1)?;
        let num = LambdaProduct::from_factors(1, [(index_mul(dd, qa)?, 1), (qb, 1)])?;
        let den = LambdaProduct::from_factors(1, [(qa, 1), (index_mul(dd, qb)?, 1)])?;
        delta = delta * (num / den);
        m += 2;
    }
    Ok(delta)
}

/// Monodromy of the `W_n^d` germ at `P` via Milnor–Orlik; trivial when `P`
/// is a smooth point.
pub fn phi_oracle(n: u32, d: u32) -> Result<LambdaProduct> {
    match w_singularity_weights(n, d) {
        Ok(ws) => monodromy_char_poly(&ws),
        Err(Error::SmoothGerm(_)) => Ok(LambdaProduct::one()),
        Err(e) => Err(e),
    }
}

/// Monodromy of the singular point of `V_n^d` via Milnor–Orlik; trivial when
/// the hypersurface is smooth.
pub fn delta_oracle(n: u32, d: u32) -> Result<LambdaProduct> {
    match v_singularity_weights(n, d) {
        Ok(ws) => monodromy_char_poly(&ws),
        Err(Error::SmoothGerm(_)) => Ok(LambdaProduct::one()),
        Err(e) => Err(e),
    }
}

/// `Phi_n^d` for any `n`: the recurrence for even `n`, the oracle for odd `n`.
pub fn phi(n: u32, d: u32) -> Result<LambdaProduct> {
    if n.is_multiple_of(2) {
        phi_closed_form(n, d)
    } else {
        phi_oracle(n, d)
    }
}

/// Both sides of `Delta_{n+1}(t) Phi_n(t) = prod_{i=0}^{d-1} Phi_n(w_d^i t)`.
pub fn ts_identity_sides(n: u32, d: u32) -> Result<(LambdaProduct, LambdaProduct)> {
    if n % 2 == 1 {
        return Err(Error::InvalidParameters(format!("Thom–Sebastiani check needs even n, got {n}")));
    }
    let phi = phi_closed_form(n, d)?;
    let lhs = &delta_closed_form(n + 1, d)? * &phi;
    let rhs = phi.root_of_unity_product(u64::from(d));
    Ok((lhs, rhs))
}

/// Checks the Thom–Sebastiani relation between `V_{n+1}^d` and `W_n^d`
/// exactly, units included.
pub fn verify_ts_identity(n: u32, d: u32) -> Result<bool> {
    let (lhs, rhs) = ts_identity_sides(n, d)?;
    Ok(lhs == rhs)
}

/// `((d-1)^{n+2} + (-1)^n (d-1)) / d`.
pub fn milnor_number_v(n: u32, d: u32) -> Result<BigInt> {
    check_d(d)?;
    let q = BigInt::from(d - 1);
    let sign = if n.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
    exact_div(q.pow(n + 2) + sign * &q, d)
}

/// `((d-1)^{n+2} - (-1)^n) / d` for `d >= 3`; for even `n` this is
/// `((d-1)^{n+2} - 1) / d`. Zero for `d = 2`.
pub fn milnor_number_w(n: u32, d: u32) -> Result<BigInt> {
    check_d(d)?;
    if d == 2 {
        // W_n^2 is smooth at the point P.
        return Ok(BigInt::zero());
    }
    let q = BigInt::from(d - 1);
    let sign = if n.is_multiple_of(2) { BigInt::one() } else { -BigInt::one() };
    exact_div(q.pow(n + 2) - sign, d)
}

fn exact_div(num: BigInt, d: u32) -> Result<BigInt> {
    let d = BigInt::from(d);
    if !(&num % &d).is_zero() {
        return Err(Error::Inconsistent(format!("{num} is not divisible by {d}")));
    }
    Ok(num / d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational;
    use crate::milnor_orlik::milnor_number;

    fn lp(f: &[(u64, i64)]) -> LambdaProduct {
        LambdaProduct::from_factors(1, f.iter().copied()).unwrap()
    }

    #[test]
    fn w_weights() {
        let ws = w_singularity_weights(2, 3).unwrap();
        assert_eq!(ws.weights(), &[integer(2), integer(4), rational(8, 3)]);
        for d in 3..9 {
            assert_eq!(w_singularity_weights(3, d).unwrap().weights()[0], integer(d - 1));
        }
        let ws = w_singularity_weights(1, 4).unwrap();
        assert_eq!(ws.weights(), &[integer(3), rational(9, 2)]);
        assert!(matches!(w_singularity_weights(2, 2), Err(Error::SmoothGerm(_))));
    }

    #[test]
    fn v_weights() {
        let ws = v_singularity_weights(2, 3).unwrap();
        assert_eq!(ws.weights(), &[integer(3), integer(2), integer(4)]);
        assert_eq!(milnor_number(&ws).unwrap(), BigInt::from(6));
        let ws = v_singularity_weights(1, 5).unwrap();
        assert_eq!(ws.weights(), &[integer(5), integer(4)]);
        assert_eq!(milnor_number(&ws).unwrap(), BigInt::from(12));
        for d in 3..9 {
            assert_eq!(v_singularity_weights(4, d).unwrap().weights()[1], integer(d - 1));
        }
        assert_eq!(v_singularity_weights(2, 2).unwrap().weights(), &vec![integer(2); 3][..]);
        assert!(matches!(v_singularity_weights(3, 2), Err(Error::SmoothGerm(_))));
    }

    #[test]
    fn phi_examples() {
        assert_eq!(phi_closed_form(2, 3).unwrap(), lp(&[(8, 1), (4, -1), (2, 1), (1, -1)]));
        for d in 2..9u32 {
            assert_eq!(
                phi_closed_form(0, d).unwrap(),
                lp(&[(u64::from(d - 1), 1), (1, -1)])
            );
        }
        assert_eq!(phi_closed_form(4, 3).unwrap().degree(), 21);
        assert!(phi_closed_form(3, 3).is_err());
    }

    #[test]
    fn delta_examples() {
        let d1 = delta_closed_form(1, 3).unwrap();
        assert_eq!(d1, lp(&[(6, 1), (1, 1), (2, -1), (3, -1)]));
        assert_eq!(d1.degree(), 2);
        assert_eq!(delta_closed_form(2, 2).unwrap().degree(), 1);
        for n in 1..7 {
            for d in 2..7 {
                assert_eq!(
                    BigInt::from(delta_closed_form(n, d).unwrap().degree()),
                    milnor_number_v(n, d).unwrap(),
                    "n={n} d={d}"
                );
            }
        }
    }

    #[test]
    fn ts_examples() {
        assert!(verify_ts_identity(2, 3).unwrap());
        for d in 2..7 {
            assert!(verify_ts_identity(0, d).unwrap());
        }
        assert!(verify_ts_identity(2, 2).unwrap());
        assert!(verify_ts_identity(1, 3).is_err());
    }

    #[test]
    fn milnor_numbers() {
        assert_eq!(milnor_number_v(2, 3).unwrap(), BigInt::from(6));
        assert_eq!(milnor_number_w(2, 3).unwrap(), BigInt::from(5));
        for n in 0..10 {
            assert!(milnor_number_w(n, 2).unwrap().is_zero());
        }
    }

    #[test]
    fn odd_phi_matches_weights() {
        for n in (1..8).step_by(2) {
            for d in 3..8 {
                let ws = w_singularity_weights(n, d).unwrap();
                assert_eq!(milnor_number(&ws).unwrap(), milnor_number_w(n, d).unwrap());
                assert_eq!(
                    BigInt::from(phi(n, d).unwrap().degree()),
                    milnor_number_w(n, d).unwrap()
                );
            }
        }
    }
}
