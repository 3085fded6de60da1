//! One-shot verification of every identity the library implements, over
//! configurable parameter ranges, with a machine-readable report.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::families::{
    affine_chart_check, betti_numbers, delta_closed_form, delta_oracle, kollar_weight_system,
    milnor_number_v, milnor_number_w, phi_closed_form, phi_oracle, verify_ts_identity,
    FamilyInstance,
};
use crate::lambda_ring::{pow_rational, squarefree_part, LambdaProduct};
use crate::linalg::{integer, rational};
use crate::rings::{
    linear_space_self_intersection, middle_signature, odd_quadric_iso_check,
    quadric_vanishing_class_check, rational_homotopy_class, rational_iso_to_truncated,
    real_homotopy_class, smooth_quadric_ring, truncated_polynomial_ring, twisted_projective_ring,
    twisted_quadric_ring,
};
use crate::sullivan::minimal_model;
use crate::threefolds::{
    cubic_discriminant, fn_homotopy_equivalent, hirzebruch_diffeomorphic, pe_cohomology_ring,
    pe_cubic_form, triple_product_form,
};

/// Deliberate corruption used to check that the suite can fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Perturbation {
    None,
    /// Negates one exponent of the recurrence output before comparing.
    FlipExponent,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyConfig {
    pub n_min: u32,
    pub n_max: u32,
    pub d_min: u32,
    pub d_max: u32,
    pub max_expand_degree: usize,
    pub perturbation: Perturbation,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            n_min: 0,
            n_max: 8,
            d_min: 2,
            d_max: 8,
            max_expand_degree: crate::lambda_ring::DEFAULT_MAX_EXPAND_DEGREE,
            perturbation: Perturbation::None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub identity: String,
    pub params: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckSummary {
    pub identity: String,
    pub cases: usize,
    pub failures: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub passed: bool,
    pub config: VerifyConfig,
    pub checks: Vec<CheckSummary>,
    pub failures: Vec<Failure>,
    pub warnings: Vec<String>,
}

enum Outcome {
    Pass,
    Fail(String),
    Skip,
}

impl From<Result<bool>> for Outcome {
    fn from(r: Result<bool>) -> Self {
        match r {
            Ok(true) => Outcome::Pass,
            Ok(false) => Outcome::Fail("identity does not hold".into()),
            Err(e) => Outcome::Fail(e.to_string()),
        }
    }
}

fn expect_eq<T: PartialEq + std::fmt::Display>(got: T, want: T) -> Outcome {
    if got == want {
        Outcome::Pass
    } else {
        Outcome::Fail(format!("got {got}, expected {want}"))
    }
}

struct Suite {
    checks: Vec<CheckSummary>,
    failures: Vec<Failure>,
}

impl Suite {
    fn run<P, F>(&mut self, identity: &str, cases: Vec<P>, f: F)
    where
        P: std::fmt::Display + Sync,
        F: Fn(&P) -> Outcome + Sync,
    {
        let outcomes: Vec<(String, Outcome)> = cases
            .par_iter()
            .map(|p| (p.to_string(), f(p)))
            .collect();
        let mut summary = CheckSummary {
            identity: identity.to_string(),
            cases: outcomes.len(),
            failures: 0,
            skipped: 0,
        };
        for (params, o) in outcomes {
            match o {
                Outcome::Pass => {}
                Outcome::Skip => summary.skipped += 1,
                Outcome::Fail(detail) => {
                    summary.failures += 1;
                    self.failures.push(Failure {
                        identity: identity.to_string(),
                        params,
                        detail,
                    });
                }
            }
        }
        self.checks.push(summary);
    }
}

#[derive(Clone, Copy)]
struct Nd(u32, u32);

impl std::fmt::Display for Nd {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "n={},d={}", self.0, self.1)
    }
}

fn flip_one_exponent(p: &LambdaProduct) -> LambdaProduct {
    match p.factors().iter().next_back() {
        Some((&m, &e)) => p * &LambdaProduct::binomial_pow(m, -2 * e),
        None => p * &LambdaProduct::binomial(1),
    }
}

/// Runs the suite. Family identities use `n` in `n_min..=n_max` and `d` in
/// `d_min..=d_max`; ring, model and appendix identities use fixed ranges.
pub fn run_verify(config: &VerifyConfig) -> VerifyReport {
    let mut warnings = Vec::new();
    let d_lo = config.d_min.max(2);
    let grid: Vec<Nd> = (config.n_min..=config.n_max)
        .flat_map(|n| (d_lo..=config.d_max).map(move |d| Nd(n, d)))
        .collect();
    if grid.is_empty() {
        warnings.push("empty parameter range: family identities hold vacuously".to_string());
    }
    let even: Vec<Nd> = grid.iter().copied().filter(|p| p.0 % 2 == 0).collect();
    let positive: Vec<Nd> = grid.iter().copied().filter(|p| p.0 >= 1).collect();
    let cap = config.max_expand_degree;
    let perturb = config.perturbation;

    let mut s = Suite {
        checks: Vec::new(),
        failures: Vec::new(),
    };

    s.run("oracle-equivalence-phi", even.clone(), |&Nd(n, d)| {
        let (closed, oracle) = match (phi_closed_form(n, d), phi_oracle(n, d)) {
            (Ok(c), Ok(o)) => (c, o),
            (Err(e), _) | (_, Err(e)) => return Outcome::Fail(e.to_string()),
        };
        let closed = match perturb {
            Perturbation::None => closed,
            Perturbation::FlipExponent => flip_one_exponent(&closed),
        };
        expect_eq(closed, oracle)
    });
    s.run("oracle-equivalence-delta", positive.clone(), |&Nd(n, d)| {
        match (delta_closed_form(n, d), delta_oracle(n, d)) {
            (Ok(c), Ok(o)) => expect_eq(c, o),
            (Err(e), _) | (_, Err(e)) => Outcome::Fail(e.to_string()),
        }
    });
    s.run("degree-formula-phi", even.clone(), |&Nd(n, d)| {
        let q = BigInt::from(d - 1);
        let formula = (q.pow(n + 2) - 1u32) / BigInt::from(d);
        match (phi_closed_form(n, d), milnor_number_w(n, d)) {
            (Ok(p), Ok(mu)) if BigInt::from(p.degree()) == formula && mu == formula => Outcome::Pass,
            (Ok(p), Ok(mu)) => Outcome::Fail(format!("degree {}, mu {mu}, formula {formula}", p.degree())),
            (Err(e), _) | (_, Err(e)) => Outcome::Fail(e.to_string()),
        }
    });
    s.run("degree-formula-delta", positive.clone(), |&Nd(n, d)| {
        let q = BigInt::from(d - 1);
        let sign = if n % 2 == 0 { BigInt::one() } else { -BigInt::one() };
        let formula = (q.pow(n + 2) + sign * &q) / BigInt::from(d);
        match (delta_closed_form(n, d), milnor_number_v(n, d)) {
            (Ok(p), Ok(mu)) if BigInt::from(p.degree()) == formula && mu == formula => Outcome::Pass,
            (Ok(p), Ok(mu)) => Outcome::Fail(format!("degree {}, mu {mu}, formula {formula}", p.degree())),
            (Err(e), _) | (_, Err(e)) => Outcome::Fail(e.to_string()),
        }
    });
    s.run("value-at-one", even.clone(), |&Nd(n, d)| {
        let want = pow_rational(&integer(d - 1), u64::from(n / 2 + 1));
        match phi_closed_form(n, d).and_then(|p| p.value_at_one()) {
            Ok(v) => expect_eq(v, want),
            Err(e) => Outcome::Fail(e.to_string()),
        }
    });
    s.run("thom-sebastiani", even.clone(), |&Nd(n, d)| verify_ts_identity(n, d).into());
    s.run("expansion", even.clone(), |&Nd(n, d)| {
        let p = match phi_closed_form(n, d) {
            Ok(p) => p,
            Err(e) => return Outcome::Fail(e.to_string()),
        };
        if p.degree() > cap as i128 {
            return Outcome::Skip;
        }
        let poly = match p.expand(cap) {
            Ok(poly) => poly,
            Err(e) => return Outcome::Fail(e.to_string()),
        };
        let points = [rational(2, 1), rational(-1, 2), rational(3, 5), rational(-7, 3)];
        if points.iter().all(|t| p.eval(t) == Some(poly.eval(t))) {
            Outcome::Pass
        } else {
            Outcome::Fail("expanded polynomial disagrees with the product".into())
        }
    });
    s.run("betti", positive.clone(), |&Nd(n, d)| {
        let check = || -> Result<bool> {
            let v = betti_numbers(&FamilyInstance::v(n, d)?)?;
            let pn: Vec<u64> = (0..=2 * n).map(|i| u64::from(i % 2 == 0)).collect();
            let mut ok = v.values == pn;
            if n % 2 == 0 && d % 2 == 0 {
                let w = betti_numbers(&FamilyInstance::w(n, d)?)?;
                let mut quadric = pn.clone();
                quadric[n as usize] = 2;
                ok &= w.values == quadric && w.is_poincare_symmetric();
            }
            Ok(ok)
        };
        check().into()
    });
    s.run("affine-chart", positive.clone(), |&Nd(n, d)| {
        let samples = [
            vec![BigRational::zero(); n as usize],
            (0..n).map(|i| rational(i64::from(i) + 1, 2)).collect(),
            (0..n).map(|i| rational(-3 * i64::from(i) - 1, 5)).collect::<Vec<_>>(),
        ];
        let ok = samples.iter().map(|s| affine_chart_check(n, d, s)).collect::<Result<Vec<bool>>>();
        ok.map(|v| v.into_iter().all(|b| b)).into()
    });

    let kollar_cases: Vec<KollarCase> = (0..3u64.pow(5))
        .map(|mut i| {
            let mut a = Vec::new();
            for _ in 0..5 {
                a.push(i % 3 + 1);
                i /= 3;
            }
            KollarCase(a)
        })
        .collect();
    s.run("kollar-residual", kollar_cases, |KollarCase(a)| match kollar_weight_system(a) {
        Ok(sol) if sol.residual().iter().all(Zero::is_zero) => Outcome::Pass,
        Ok(_) => Outcome::Fail("nonzero residual".into()),
        Err(e) => Outcome::Fail(e.to_string()),
    });

    let ks: Vec<u32> = (1..=4).collect();
    s.run("quadric-signature", ks.clone(), |&k| {
        let a = if k % 2 == 0 { integer(1) } else { integer(-1) };
        match (
            twisted_quadric_ring(k, &a).and_then(|r| middle_signature(&r)),
            smooth_quadric_ring(k).and_then(|r| middle_signature(&r)),
        ) {
            (Ok(t), Ok(q)) if t == q => Outcome::Pass,
            (Ok(t), Ok(q)) => Outcome::Fail(format!("{t:?} vs {q:?}")),
            (Err(e), _) | (_, Err(e)) => Outcome::Fail(e.to_string()),
        }
    });
    s.run("vanishing-class", ks.clone(), |&k| quadric_vanishing_class_check(k).into());
    s.run("self-intersection", (0..=6u32).collect(), |&k| {
        match linear_space_self_intersection(2, k) {
            Ok(v) => expect_eq(v, integer(u32::from(k % 2 == 0))),
            Err(e) => Outcome::Fail(e.to_string()),
        }
    });
    s.run("real-class-square-invariance", (1..=20i64).collect(), |&i| {
        let a = rational(if i % 2 == 0 { i } else { -i }, 3);
        let r = rational(2 * i + 1, i + 5);
        let ar2 = &a * &r * &r;
        match (real_homotopy_class(&a), real_homotopy_class(&ar2), squarefree_part(&a), squarefree_part(&ar2)) {
            (Ok(x), Ok(y), Ok(p), Ok(q)) if x == y && p == q => Outcome::Pass,
            (Ok(_), Ok(_), Ok(_), Ok(_)) => Outcome::Fail("class changed under a -> a r^2".into()),
            _ => Outcome::Fail("class computation failed".into()),
        }
    });
    s.run("rational-classes-distinct", vec![1i64], |_| {
        let classes: Vec<_> = [1, 2, 3, 5, 6]
            .iter()
            .map(|&a| rational_homotopy_class(&integer(a)))
            .collect::<Result<Vec<_>>>()
            .unwrap_or_default();
        let mut sorted = classes.clone();
        sorted.sort();
        sorted.dedup();
        if classes.len() == 5 && sorted.len() == 5 {
            Outcome::Pass
        } else {
            Outcome::Fail(format!("classes {classes:?}"))
        }
    });
    s.run("truncated-isomorphisms", (2..=6u32).collect(), |&n| {
        let check = || -> Result<bool> {
            let mut ok = odd_quadric_iso_check(n - 1)?;
            for d in 1..=5 {
                ok &= rational_iso_to_truncated(&twisted_projective_ring(n, d)?, n, d)?;
            }
            Ok(ok)
        };
        check().into()
    });
    s.run("sullivan-projective", (1..=4u32).collect(), |&n| {
        let check = || -> Result<bool> {
            let ring = truncated_polynomial_ring(n)?;
            let model = minimal_model(&ring, 2 * n + 1)?;
            let mut degs = model.generator_degrees();
            degs.sort_unstable();
            Ok(degs == [2, 2 * n + 1] && model.verify(&ring).ok())
        };
        check().into()
    });
    s.run("sullivan-twisted-quadric", (1..=3u32).collect(), |&k| {
        let check = || -> Result<bool> {
            let mut ok = true;
            for a in [1, -1, 2] {
                let ring = twisted_quadric_ring(k, &integer(a))?;
                let model = minimal_model(&ring, 4 * k)?;
                let mut degs = model.generator_degrees();
                degs.sort_unstable();
                let mut want = vec![2, 2 * k, 2 * k + 1, 4 * k - 1];
                want.sort_unstable();
                ok &= degs == want && model.verify(&ring).ok();
            }
            Ok(ok)
        };
        check().into()
    });
    s.run("appendix", (0..=20u64).collect(), |&n| {
        let disc_ok = cubic_discriminant(&pe_cubic_form(n)) == BigInt::from(-27) * BigInt::from(n * n);
        let ring_ok = pe_cohomology_ring(n)
            .and_then(|r| triple_product_form(&r))
            .is_ok_and(|f| f == pe_cubic_form(n));
        let rules_ok = (0..=20u64).all(|m| {
            fn_homotopy_equivalent(n, m) == (n == m) && hirzebruch_diffeomorphic(n, m) == (n % 2 == m % 2)
        });
        if disc_ok && ring_ok && rules_ok {
            Outcome::Pass
        } else {
            Outcome::Fail(format!("discriminant {disc_ok}, ring {ring_ok}, rules {rules_ok}"))
        }
    });

    let skipped: usize = s.checks.iter().map(|c| c.skipped).sum();
    if skipped > 0 {
        warnings.push(format!("{skipped} expansion cross-checks {}", crate::catalog::FLAG_DEGREE_CAP));
    }
    VerifyReport {
        passed: s.failures.is_empty(),
        config: config.clone(),
        checks: s.checks,
        failures: s.failures,
        warnings,
    }
}

struct KollarCase(Vec<u64>);

impl std::fmt::Display for KollarCase {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "a={:?}", self.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn small() -> VerifyConfig {
        VerifyConfig {
            n_max: 4,
            d_max: 5,
            ..VerifyConfig::default()
        }
    }

    #[test]
    fn small_ranges_pass() {
        let r = run_verify(&small());
        assert!(r.passed, "{:?}", r.failures);
        assert!(r.warnings.is_empty());
    }

    #[test]
    fn perturbation_is_located() {
        let r = run_verify(&VerifyConfig {
            perturbation: Perturbation::FlipExponent,
            ..small()
        });
        assert!(!r.passed);
        assert!(r.failures.iter().all(|f| f.identity == "oracle-equivalence-phi"));
        assert_eq!(r.failures[0].params, "n=0,d=2");
    }

    #[test]
    fn empty_range_warns() {
        let r = run_verify(&VerifyConfig {
            d_max: 1,
            ..VerifyConfig::default()
        });
        assert!(r.passed);
        assert_eq!(r.warnings.len(), 1);
    }
}
