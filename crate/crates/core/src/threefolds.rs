//! Binary cubic forms attached to the threefolds `P(O + O(n))` over `P^2`,
//! their discriminants and integral equivalence, plus the parity rule for
//! Hirzebruch surfaces.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::integer;
use crate::rings::{CoefficientMode, GradedRing};

/// `a X^3 + b X^2 Y + c X Y^2 + d Y^3`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BinaryCubicForm {
    #[serde(with = "crate::json::bigint")]
    pub a: BigInt,
    #[serde(with = "crate::json::bigint")]
    pub b: BigInt,
    #[serde(with = "crate::json::bigint")]
    pub c: BigInt,
    #[serde(with = "crate::json::bigint")]
    pub d: BigInt,
}

/// Integer substitution `X -> p X + q Y`, `Y -> r X + s Y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Substitution {
    pub matrix: [[i64; 2]; 2],
}

impl Substitution {
    pub fn new(p: i64, q: i64, r: i64, s: i64) -> Self {
        Substitution {
            matrix: [[p, q], [r, s]],
        }
    }

    pub fn identity() -> Self {
        Substitution::new(1, 0, 0, 1)
    }

    pub fn determinant(&self) -> i128 {
        let [[p, q], [r, s]] = self.matrix;
        i128::from(p) * i128::from(s) - i128::from(q) * i128::from(r)
    }
}

impl BinaryCubicForm {
    pub fn new(a: impl Into<BigInt>, b: impl Into<BigInt>, c: impl Into<BigInt>, d: impl Into<BigInt>) -> Self {
        BinaryCubicForm {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        }
    }

    pub fn coefficients(&self) -> [&BigInt; 4] {
        [&self.a, &self.b, &self.c, &self.d]
    }

    pub fn eval(&self, x: &BigInt, y: &BigInt) -> BigInt {
        &self.a * x * x * x + &self.b * x * x * y + &self.c * x * y * y + &self.d * y * y * y
    }

    /// The form `f(p X + q Y, r X + s Y)`.
    pub fn substitute(&self, m: &Substitution) -> BinaryCubicForm {
        let [[p, q], [r, s]] = m.matrix;
        let l1 = [BigInt::from(p), BigInt::from(q)];
        let l2 = [BigInt::from(r), BigInt::from(s)];
        // homogeneous polynomials in X, Y as coefficient arrays, X-power descending
        let mul = |u: &[BigInt], v: &[BigInt]| -> Vec<BigInt> {
            let mut out = vec![BigInt::zero(); u.len() + v.len() - 1];
            for (i, ui) in u.iter().enumerate() {
                for (j, vj) in v.iter().enumerate() {
                    out[i + j] += ui * vj;
                }
            }
            out
        };
        let monomial = |i: usize| -> Vec<BigInt> {
            let mut acc = vec![BigInt::one()];
            for _ in 0..(3 - i) {
                acc = mul(&acc, &l1);
            }
            for _ in 0..i {
                acc = mul(&acc, &l2);
            }
            acc
        };
        let mut out = vec![BigInt::zero(); 4];
        for (i, coef) in self.coefficients().into_iter().enumerate() {
            for (o, t) in out.iter_mut().zip(monomial(i)) {
                *o += coef * t;
            }
        }
        let [a, b, c, d]: [BigInt; 4] = out.try_into().expect("four coefficients");
        BinaryCubicForm { a, b, c, d }
    }
}

impl fmt::Display for BinaryCubicForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.a, self.b, self.c, self.d)
    }
}

/// The trilinear form `mu(aX + bY) = 3a^2 b - 3n a b^2 + n^2 b^3`.
pub fn pe_cubic_form(n: u64) -> BinaryCubicForm {
    let n = BigInt::from(n);
    BinaryCubicForm::new(0, 3, -3 * &n, &n * &n)
}

/// `b^2 c^2 + 18 abcd - 4 a c^3 - 4 b^3 d - 27 a^2 d^2`.
pub fn cubic_discriminant(f: &BinaryCubicForm) -> BigInt {
    let BinaryCubicForm { a, b, c, d } = f;
    b * b * c * c + 18 * a * b * c * d - 4 * a * c * c * c - 4 * b * b * b * d - 27 * a * a * d * d
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "lowercase")]
pub enum Equivalence {
    /// `g = f o witness`.
    Equivalent { witness: Substitution },
    /// Separated by the discriminant.
    Inequivalent,
    /// Same discriminant, no witness within the entry bound.
    Unknown,
}

/// Bounded search for `M` in `GL_2(Z)` with `g = f o M`.
pub fn gl2z_equivalent(f: &BinaryCubicForm, g: &BinaryCubicForm, entry_bound: u32) -> Result<Equivalence> {
    if entry_bound < 1 {
        return Err(Error::InvalidParameters("entry bound must be >= 1".into()));
    }
    if cubic_discriminant(f) != cubic_discriminant(g) {
        return Ok(Equivalence::Inequivalent);
    }
    if f == g {
        return Ok(Equivalence::Equivalent {
            witness: Substitution::identity(),
        });
    }
    let b = i64::from(entry_bound);
    for p in -b..=b {
        for q in -b..=b {
            for r in -b..=b {
                for s in -b..=b {
                    let m = Substitution::new(p, q, r, s);
                    if m.determinant().abs() == 1 && f.substitute(&m) == *g {
                        return Ok(Equivalence::Equivalent { witness: m });
                    }
                }
            }
        }
    }
    Ok(Equivalence::Unknown)
}

/// `F_n` and `F_m` are homotopy equivalent exactly when the discriminants of
/// their cubic forms agree.
pub fn fn_homotopy_equivalent(n: u64, m: u64) -> bool {
    cubic_discriminant(&pe_cubic_form(n)) == cubic_discriminant(&pe_cubic_form(m))
}

/// Hirzebruch surfaces `H_n`, `H_m` are diffeomorphic iff `n = m (mod 2)`.
pub fn hirzebruch_diffeomorphic(n: u64, m: u64) -> bool {
    n % 2 == m % 2
}

/// `Z[x, y]/(x^3, y^2 + n x y)` with `x, y` in degree 2.
pub fn pe_cohomology_ring(n: u64) -> Result<GradedRing> {
    let labels = ["1", "x", "y", "x^2", "x*y", "x^2*y"].map(String::from).to_vec();
    let degrees = vec![0, 2, 2, 4, 4, 6];
    let nn = integer(n);
    let neg_n = -nn.clone();
    GradedRing::from_products(labels, degrees, CoefficientMode::Integers, move |i, j| {
        let one = BigRational::one();
        let (i, j) = if i <= j { (i, j) } else { (j, i) };
        match (i, j) {
            (0, k) => vec![(k, one)],
            (1, 1) => vec![(3, one)],
            (1, 2) => vec![(4, one)],
            (2, 2) => vec![(4, neg_n.clone())],
            (1, 4) | (2, 3) => vec![(5, one)],
            (2, 4) => vec![(5, neg_n.clone())],
            _ => Vec::new(),
        }
    })
}

/// `f(a, b) = <(a u + b w)^3, top>` for the degree-2 basis `(u, w)` of a
/// six-dimensional ring.
pub fn triple_product_form(ring: &GradedRing) -> Result<BinaryCubicForm> {
    let basis = ring.degree_basis(2);
    if basis.len() != 2 || ring.top_degree() != 6 {
        return Err(Error::InvalidParameters(
            "triple product form needs rank 2 in degree 2 and top degree 6".into(),
        ));
    }
    let u = ring.basis_element(basis[0]);
    let w = ring.basis_element(basis[1]);
    let cube = |x: &[BigRational], y: &[BigRational], z: &[BigRational]| -> Result<BigRational> {
        ring.top_coefficient(&ring.mul(&ring.mul(x, y), z))
    };
    let coeffs = [
        cube(&u, &u, &u)?,
        integer(3) * cube(&u, &u, &w)?,
        integer(3) * cube(&u, &w, &w)?,
        cube(&w, &w, &w)?,
    ];
    if coeffs.iter().any(|c| !c.is_integer()) {
        return Err(Error::Inconsistent("non-integral triple products".into()));
    }
    let [a, b, c, d] = coeffs.map(|c| c.to_integer());
    Ok(BinaryCubicForm { a, b, c, d })
}

/// Summary for `F_n = P(O + O(n))`; the finer invariants are not computed.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThreefoldReport {
    pub n: u64,
    pub cubic_form: BinaryCubicForm,
    #[serde(with = "crate::json::bigint")]
    pub discriminant: BigInt,
    pub w2: String,
    pub p1_mod_48: String,
}

pub fn threefold_report(n: u64) -> ThreefoldReport {
    let cubic_form = pe_cubic_form(n);
    ThreefoldReport {
        n,
        discriminant: cubic_discriminant(&cubic_form),
        cubic_form,
        w2: "not computed".into(),
        p1_mod_48: "not computed".into(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pe_forms() {
        assert_eq!(pe_cubic_form(0), BinaryCubicForm::new(0, 3, 0, 0));
        assert_eq!(pe_cubic_form(1), BinaryCubicForm::new(0, 3, -3, 1));
        assert_eq!(pe_cubic_form(4), BinaryCubicForm::new(0, 3, -12, 16));
    }

    #[test]
    fn discriminants() {
        for n in 0..10u64 {
            assert_eq!(cubic_discriminant(&pe_cubic_form(n)), BigInt::from(-27 * (n * n) as i64));
        }
        assert_eq!(cubic_discriminant(&BinaryCubicForm::new(1, 0, 0, 1)), BigInt::from(-27));
    }

    #[test]
    fn substitution_matches_evaluation() {
        let f = BinaryCubicForm::new(2, -1, 5, 3);
        let m = Substitution::new(2, 1, -3, 4);
        let g = f.substitute(&m);
        for (x, y) in [(1, 0), (0, 1), (2, -3), (-5, 7)] {
            let (x, y) = (BigInt::from(x), BigInt::from(y));
            let px = BigInt::from(2) * &x + &y;
            let py = BigInt::from(-3) * &x + BigInt::from(4) * &y;
            assert_eq!(g.eval(&x, &y), f.eval(&px, &py));
        }
    }

    #[test]
    fn equivalence_search() {
        let f = pe_cubic_form(3);
        assert!(matches!(gl2z_equivalent(&f, &f, 1).unwrap(), Equivalence::Equivalent { .. }));
        assert_eq!(
            gl2z_equivalent(&pe_cubic_form(1), &pe_cubic_form(2), 5).unwrap(),
            Equivalence::Inequivalent
        );
        let g = f.substitute(&Substitution::new(1, 1, 0, 1));
        let Equivalence::Equivalent { witness } = gl2z_equivalent(&f, &g, 2).unwrap() else {
            panic!("expected a witness");
        };
        assert_eq!(f.substitute(&witness), g);
        // X^3 - Y^3 is X^3 + Y^3 after Y -> -Y
        let x3y3 = BinaryCubicForm::new(1, 0, 0, 1);
        let h = BinaryCubicForm::new(1, 0, 0, -1);
        assert!(matches!(gl2z_equivalent(&x3y3, &h, 1).unwrap(), Equivalence::Equivalent { .. }));
        assert!(gl2z_equivalent(&f, &f, 0).is_err());
    }

    #[test]
    fn swapped_basis_gives_equivalent_form() {
        let swap = Substitution::new(0, 1, 1, 0);
        for n in 0..=6 {
            let f = pe_cubic_form(n);
            let swapped = f.substitute(&swap);
            assert_eq!(swapped, BinaryCubicForm::new(n * n, -3 * n as i64, 3, 0));
            assert!(matches!(gl2z_equivalent(&f, &swapped, 1).unwrap(), Equivalence::Equivalent { .. }));
        }
    }

    #[test]
    fn classification_rules() {
        assert!(fn_homotopy_equivalent(3, 3));
        assert!(!fn_homotopy_equivalent(0, 1));
        assert!(!fn_homotopy_equivalent(2, 5));
        assert!(hirzebruch_diffeomorphic(0, 2));
        assert!(!hirzebruch_diffeomorphic(0, 1));
    }

    #[test]
    fn pe_ring() {
        let r = pe_cohomology_ring(2).unwrap();
        let x = r.element(&[("x", integer(1))]).unwrap();
        let y = r.element(&[("y", integer(1))]).unwrap();
        assert!(r.pow(&x, 3).iter().all(Zero::is_zero));
        assert_eq!(r.mul(&y, &y), r.element(&[("x*y", integer(-2))]).unwrap());
        assert_eq!(r.betti_numbers(), vec![1, 0, 2, 0, 2, 0, 1]);
        assert!(r.satisfies_poincare_duality());
        // (x + y)^3 = mu(1, 1) = 3 - 3n + n^2
        let s: Vec<BigRational> = x.iter().zip(&y).map(|(a, b)| a + b).collect();
        assert_eq!(r.top_coefficient(&r.pow(&s, 3)).unwrap(), integer(1));
        for n in 0..8 {
            assert_eq!(triple_product_form(&pe_cohomology_ring(n).unwrap()).unwrap(), pe_cubic_form(n));
        }
    }

    #[test]
    fn json() {
        let r = threefold_report(2);
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["discriminant"], -108);
        assert_eq!(v["w2"], "not computed");
        let e = serde_json::to_value(Equivalence::Inequivalent).unwrap();
        assert_eq!(e["verdict"], "inequivalent");
    }
}
