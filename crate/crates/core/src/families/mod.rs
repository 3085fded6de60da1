//! The hypersurface families
//!
//! - `H(a_0, ..., a_{n+1})`: `sum z_i^{a_i} z_{i+1} = 0` (cyclic, `n` odd) in a
//!   weighted projective space,
//! - `V_n^d`: `z_1^d + z_0 z_2^{d-1} + z_2 z_3^{d-1} + ... + z_n z_{n+1}^{d-1} = 0`,
//! - `W_n^d`: `z_0 z_1^{d-1} + z_1 z_2^{d-1} + ... + z_n z_{n+1}^{d-1} = 0`,
//!
//! together with everything computed from them: local weights, the monodromy
//! recurrences, Milnor numbers, Betti numbers and `K^n`.

pub mod equations;
mod kollar;
mod monodromy;

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use equations::affine_chart_check;
pub use kollar::{kollar_weight_system, KollarSolution};
pub use monodromy::{
    delta_closed_form, delta_oracle, milnor_number_v, milnor_number_w, phi, phi_closed_form,
    phi_oracle, ts_identity_sides, v_singularity_weights, verify_ts_identity,
    w_singularity_weights,
};

pub const FLAG_QUASI_SMOOTHNESS: &str = "quasi-smoothness unchecked";
pub const FLAG_OUTSIDE_HYPOTHESES: &str = "outside theorem hypotheses";

/// One hypersurface of one of the three families.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "family")]
pub enum FamilyInstance {
    H { a: Vec<u64> },
    V { n: u32, d: u32 },
    W { n: u32, d: u32 },
}

impl FamilyInstance {
    pub fn h(a: Vec<u64>) -> Result<Self> {
        let inst = FamilyInstance::H { a };
        inst.validate()?;
        Ok(inst)
    }

    pub fn v(n: u32, d: u32) -> Result<Self> {
        let inst = FamilyInstance::V { n, d };
        inst.validate()?;
        Ok(inst)
    }

    pub fn w(n: u32, d: u32) -> Result<Self> {
        let inst = FamilyInstance::W { n, d };
        inst.validate()?;
        Ok(inst)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            FamilyInstance::H { a } => {
                if a.len() < 5 || a.len() % 2 == 0 {
                    return Err(Error::InvalidParameters(format!(
                        "H(a) needs n + 2 entries with n odd and n >= 3, got {}",
                        a.len()
                    )));
                }
                if a.contains(&0) {
                    return Err(Error::InvalidParameters("entries of a must be >= 1".into()));
                }
            }
            FamilyInstance::V { n, d } | FamilyInstance::W { n, d } => {
                if *n < 1 || *d < 2 {
                    return Err(Error::InvalidParameters(format!(
                        "need n >= 1 and d >= 2, got n = {n}, d = {d}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// Complex dimension of the hypersurface.
    pub fn dimension(&self) -> u32 {
        match self {
            FamilyInstance::H { a } => (a.len() - 2) as u32,
            FamilyInstance::V { n, .. } | FamilyInstance::W { n, .. } => *n,
        }
    }

    /// `W_n^d` with `n` and `d` both even: the homotopy-quadric regime.
    pub fn is_homotopy_quadric_regime(&self) -> bool {
        matches!(self, FamilyInstance::W { n, d } if n % 2 == 0 && d % 2 == 0)
    }
}

impl fmt::Display for FamilyInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyInstance::H { a } => {
                let parts: Vec<String> = a.iter().map(|x| x.to_string()).collect();
                write!(f, "H({})", parts.join(","))
            }
            FamilyInstance::V { n, d } => write!(f, "V_{n}^{d}"),
            FamilyInstance::W { n, d } => write!(f, "W_{n}^{d}"),
        }
    }
}

/// Betti numbers `b_0..b_{2n}` with caveats.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BettiNumbers {
    pub values: Vec<u64>,
    pub flags: Vec<String>,
}

impl BettiNumbers {
    pub fn is_poincare_symmetric(&self) -> bool {
        self.values.iter().eq(self.values.iter().rev())
    }
}

fn projective_space_betti(n: u32) -> Vec<u64> {
    (0..=2 * n).map(|i| u64::from(i % 2 == 0)).collect()
}

/// Rational Betti numbers.
///
/// `H` and `V` have the rational homology of `P^n`. For `W_n^d` the middle
/// rank is `b_n(smooth degree-d hypersurface) - mu(W_n^d)`; the other ranks
/// are those of `P^n`. Outside `n, d` both even the same arithmetic is
/// returned with a flag, or an error if it does not produce a Betti number.
pub fn betti_numbers(inst: &FamilyInstance) -> Result<BettiNumbers> {
    inst.validate()?;
    match *inst {
        FamilyInstance::H { .. } => Ok(BettiNumbers {
            values: projective_space_betti(inst.dimension()),
            flags: vec![FLAG_QUASI_SMOOTHNESS.to_string()],
        }),
        FamilyInstance::V { n, .. } => Ok(BettiNumbers {
            values: projective_space_betti(n),
            flags: Vec::new(),
        }),
        FamilyInstance::W { n, d } => {
            let middle = w_middle_betti(n, d)?;
            let mut values = projective_space_betti(n);
            values[n as usize] = middle;
            let mut flags = Vec::new();
            if !inst.is_homotopy_quadric_regime() {
                flags.push(FLAG_OUTSIDE_HYPOTHESES.to_string());
            }
            Ok(BettiNumbers { values, flags })
        }
    }
}

/// Middle Betti number of a smooth degree-`d` hypersurface of dimension `n`.
pub fn smooth_hypersurface_middle_betti(n: u32, d: u32) -> Result<BigInt> {
    let parity = if n.is_multiple_of(2) { BigInt::one() } else { BigInt::zero() };
    Ok(milnor_number_v(n, d)? + parity)
}

fn w_middle_betti(n: u32, d: u32) -> Result<u64> {
    let rank = smooth_hypersurface_middle_betti(n, d)? - milnor_number_w(n, d)?;
    if rank.is_negative() {
        return Err(Error::RankArithmetic(rank.to_string()));
    }
    rank.to_u64().ok_or(Error::Overflow("middle Betti number"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SignReport {
    Positive,
    Zero,
    Negative,
}

impl SignReport {
    pub fn of(v: &BigInt) -> Self {
        if v.is_positive() {
            SignReport::Positive
        } else if v.is_zero() {
            SignReport::Zero
        } else {
            SignReport::Negative
        }
    }
}

/// Top self-intersection of the canonical class of `V_n^d` (or `W_n^d`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalSelfIntersection {
    /// `d - n - 2`, so that `K = O(d - n - 2)` by adjunction.
    pub canonical_degree: i64,
    /// `K^n = d (d - n - 2)^n`.
    #[serde(with = "crate::json::bigint")]
    pub value: BigInt,
    pub sign: SignReport,
    /// `d (n + 2 - d)^n`, the value with `K` written as `O(n + 2 - d)`.
    #[serde(with = "crate::json::bigint")]
    pub opposite_convention_value: BigInt,
    pub note: String,
}

pub fn canonical_self_intersection(n: u32, d: u32) -> Result<CanonicalSelfIntersection> {
    if n < 1 || d < 2 {
        return Err(Error::InvalidParameters(format!(
            "need n >= 1 and d >= 2, got n = {n}, d = {d}"
        )));
    }
    let k = i64::from(d) - i64::from(n) - 2;
    let value = BigInt::from(d) * BigInt::from(k).pow(n);
    let opposite = BigInt::from(d) * BigInt::from(-k).pow(n);
    Ok(CanonicalSelfIntersection {
        canonical_degree: k,
        sign: SignReport::of(&value),
        value,
        opposite_convention_value: opposite,
        note: "K = O(d-n-2) by adjunction; K^n vanishes exactly at d = n+2".to_string(),
    })
}
