//! Finite graded-commutative rings stored as explicit multiplication tables.
//!
//! A [`GradedRing`] has a labelled homogeneous basis whose element `0` is the
//! unit, and structure constants `e_i e_j = sum_k c_ij^k e_k`. Every ring is
//! audited at construction: unit, grading, graded commutativity, associativity
//! on all basis triples and, in integer mode, integrality of the constants.

mod constructors;
mod forms;
mod notation;

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{is_zero_vector, zero_vector, Matrix, Vector};
use crate::milnor_orlik::parse_rational;

pub use constructors::{
    odd_quadric_ring, smooth_quadric_ring, sphere_ring, truncated_polynomial_ring,
    twisted_projective_ring, twisted_quadric_ring, wedge_of_spheres_ring,
};
pub use forms::{
    is_ring_isomorphism, linear_space_self_intersection, middle_signature, odd_quadric_iso_check,
    poincare_pairing, quadric_vanishing_class_check, rank_one_truncated_iso,
    rational_homotopy_class, rational_iso_to_truncated, real_homotopy_class,
    twisted_quadrics_rationally_equivalent, twisted_quadrics_really_equivalent,
    w_quadric_parameter,
};
pub use notation::RingSpec;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CoefficientMode {
    Integers,
    Rationals,
}

/// Sparse product `e_i e_j` as `(k, c)` pairs.
pub type Product = Vec<(usize, BigRational)>;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedRing {
    labels: Vec<String>,
    degrees: Vec<u32>,
    table: Vec<Vec<Product>>,
    mode: CoefficientMode,
    /// Value of the fundamental basis element on the geometric fundamental
    /// class; geometric pairings are the abstract ones times this factor.
    fundamental_scale: BigRational,
}

impl GradedRing {
    /// Builds a ring from basis data and a product rule, then audits it.
    pub fn from_products<F>(
        labels: Vec<String>,
        degrees: Vec<u32>,
        mode: CoefficientMode,
        product: F,
    ) -> Result<Self>
    where
        F: Fn(usize, usize) -> Product,
    {
        if labels.len() != degrees.len() || labels.is_empty() {
            return Err(Error::RingAudit("basis labels and degrees must be nonempty and match".into()));
        }
        let n = labels.len();
        let table = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut merged: BTreeMap<usize, BigRational> = BTreeMap::new();
                        for (k, c) in product(i, j) {
                            *merged.entry(k).or_insert_with(BigRational::zero) += c;
                        }
                        merged.into_iter().filter(|(_, c)| !c.is_zero()).collect()
                    })
                    .collect()
            })
            .collect();
        let ring = GradedRing {
            labels,
            degrees,
            table,
            mode,
            fundamental_scale: BigRational::one(),
        };
        ring.audit()?;
        Ok(ring)
    }

    pub fn with_fundamental_scale(mut self, scale: BigRational) -> Self {
        self.fundamental_scale = scale;
        self
    }

    pub fn rank(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn degree(&self, i: usize) -> u32 {
        self.degrees[i]
    }

    pub fn coefficient_mode(&self) -> CoefficientMode {
        self.mode
    }

    pub fn fundamental_scale(&self) -> &BigRational {
        &self.fundamental_scale
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn top_degree(&self) -> u32 {
        self.degrees.iter().copied().max().unwrap_or(0)
    }

    /// Basis indices in degree `deg`, in basis order.
    pub fn degree_basis(&self, deg: u32) -> Vec<usize> {
        (0..self.rank()).filter(|&i| self.degrees[i] == deg).collect()
    }

    pub fn rank_in_degree(&self, deg: u32) -> usize {
        self.degrees.iter().filter(|&&d| d == deg).count()
    }

    /// Ranks in every degree `0..=top_degree`.
    pub fn betti_numbers(&self) -> Vec<usize> {
        (0..=self.top_degree()).map(|d| self.rank_in_degree(d)).collect()
    }

    /// The basis element spanning the top degree.
    pub fn fundamental_index(&self) -> Result<usize> {
        match self.degree_basis(self.top_degree()).as_slice() {
            [i] => Ok(*i),
            other => Err(Error::NoFundamentalClass(other.len())),
        }
    }

    pub fn basis_product(&self, i: usize, j: usize) -> &Product {
        &self.table[i][j]
    }

    pub fn zero(&self) -> Vector {
        zero_vector(self.rank())
    }

    pub fn basis_element(&self, i: usize) -> Vector {
        let mut v = self.zero();
        v[i] = BigRational::one();
        v
    }

    pub fn unit(&self) -> Vector {
        self.basis_element(0)
    }

    pub fn mul(&self, a: &[BigRational], b: &[BigRational]) -> Vector {
        let mut out = self.zero();
        for (i, ai) in a.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for (j, bj) in b.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
                let ab = ai * bj;
                for (k, c) in &self.table[i][j] {
                    out[*k] += &ab * c;
                }
            }
        }
        out
    }

    pub fn pow(&self, a: &[BigRational], k: u32) -> Vector {
        (0..k).fold(self.unit(), |acc, _| self.mul(&acc, a))
    }

    /// Element from `(label, coefficient)` pairs.
    pub fn element(&self, terms: &[(&str, BigRational)]) -> Result<Vector> {
        let mut v = self.zero();
        for (label, c) in terms {
            let i = self
                .index_of(label)
                .ok_or_else(|| Error::InvalidParameters(format!("no basis element {label}")))?;
            v[i] += c;
        }
        Ok(v)
    }

    /// Coefficient of `x` on the fundamental basis element.
    pub fn top_coefficient(&self, x: &[BigRational]) -> Result<BigRational> {
        Ok(x[self.fundamental_index()?].clone())
    }

    /// Matrix of `(e_i, e_j) -> <e_i e_j, top>` between degrees `p` and `top - p`.
    pub fn pairing_matrix(&self, p: u32) -> Result<Matrix> {
        let top = self.fundamental_index()?;
        let rows = self.degree_basis(p);
        let cols = self.degree_basis(self.top_degree().saturating_sub(p));
        let data = rows
            .iter()
            .map(|&i| {
                cols.iter()
                    .map(|&j| {
                        self.table[i][j]
                            .iter()
                            .find(|(k, _)| *k == top)
                            .map(|(_, c)| c.clone())
                            .unwrap_or_else(BigRational::zero)
                    })
                    .collect()
            })
            .collect();
        Ok(Matrix::from_rows(cols.len(), data))
    }

    /// True when every pairing `H^p x H^{top-p} -> Q` is perfect.
    pub fn satisfies_poincare_duality(&self) -> bool {
        let top = self.top_degree();
        (0..=top).all(|p| match self.pairing_matrix(p) {
            Ok(m) => m.rows() == m.cols() && (m.rows() == 0 || !m.determinant().is_zero()),
            Err(_) => false,
        })
    }

    /// Runs every structural check; constructors call this.
    pub fn audit(&self) -> Result<()> {
        let n = self.rank();
        if self.degrees[0] != 0 || self.rank_in_degree(0) != 1 {
            return Err(Error::RingAudit("basis element 0 must be the only degree-0 element".into()));
        }
        if !self.top_degree().is_multiple_of(2) {
            return Err(Error::RingAudit(format!("top degree {} is odd", self.top_degree())));
        }
        for i in 0..n {
            let expected = vec![(i, BigRational::one())];
            if self.table[0][i] != expected || self.table[i][0] != expected {
                return Err(Error::RingAudit(format!("basis element 0 is not a unit on {}", self.labels[i])));
            }
        }
        for i in 0..n {
            for j in 0..n {
                let deg = self.degrees[i] + self.degrees[j];
                for (k, c) in &self.table[i][j] {
                    if self.degrees[*k] != deg {
                        return Err(Error::RingAudit(format!(
                            "{} * {} has a component on {} of the wrong degree",
                            self.labels[i], self.labels[j], self.labels[*k]
                        )));
                    }
                    if self.mode == CoefficientMode::Integers && !c.is_integer() {
                        return Err(Error::RingAudit(format!(
                            "non-integral structure constant {c} in {} * {}",
                            self.labels[i], self.labels[j]
                        )));
                    }
                }
                let sign = if self.degrees[i] % 2 == 1 && self.degrees[j] % 2 == 1 {
                    -BigRational::one()
                } else {
                    BigRational::one()
                };
                let flipped: Product = self.table[j][i].iter().map(|(k, c)| (*k, c * &sign)).collect();
                if self.table[i][j] != flipped {
                    return Err(Error::RingAudit(format!(
                        "{} and {} do not graded-commute",
                        self.labels[i], self.labels[j]
                    )));
                }
            }
        }
        for i in 0..n {
            let ei = self.basis_element(i);
            for j in 0..n {
                let ej = self.basis_element(j);
                let ij = self.mul(&ei, &ej);
                for k in 0..n {
                    let ek = self.basis_element(k);
                    let left = self.mul(&ij, &ek);
                    let right = self.mul(&ei, &self.mul(&ej, &ek));
                    if left != right {
                        return Err(Error::RingAudit(format!(
                            "associativity fails on ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Human-readable form of an element.
    pub fn format_element(&self, x: &[BigRational]) -> String {
        if is_zero_vector(x) {
            return "0".into();
        }
        let parts: Vec<String> = x
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| {
                if c.is_one() {
                    self.labels[i].clone()
                } else {
                    format!("{c}*{}", self.labels[i])
                }
            })
            .collect();
        parts.join(" + ")
    }
}

impl fmt::Display for GradedRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let basis: Vec<String> = self
            .labels
            .iter()
            .zip(&self.degrees)
            .map(|(l, d)| format!("{l}[{d}]"))
            .collect();
        write!(f, "graded ring over {:?} with basis {}", self.mode, basis.join(", "))
    }
}

#[derive(Serialize, Deserialize)]
struct BasisEntry {
    label: String,
    degree: u32,
}

#[derive(Serialize, Deserialize)]
struct GradedRingRepr {
    top_degree: u32,
    coefficient_mode: CoefficientMode,
    #[serde(with = "crate::json::rational")]
    fundamental_scale: BigRational,
    basis: Vec<BasisEntry>,
    /// `[i, j, [[k, "c"], ...]]` for every nonzero product with `i <= j`.
    mult_table: Vec<TableEntry>,
}

type TableEntry = (usize, usize, Vec<(usize, String)>);

impl Serialize for GradedRing {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let n = self.rank();
        let mut mult_table = Vec::new();
        for i in 0..n {
            for j in i..n {
                if !self.table[i][j].is_empty() {
                    let coeffs = self.table[i][j].iter().map(|(k, c)| (*k, c.to_string())).collect();
                    mult_table.push((i, j, coeffs));
                }
            }
        }
        GradedRingRepr {
            top_degree: self.top_degree(),
            coefficient_mode: self.mode,
            fundamental_scale: self.fundamental_scale.clone(),
            basis: self
                .labels
                .iter()
                .zip(&self.degrees)
                .map(|(l, d)| BasisEntry {
                    label: l.clone(),
                    degree: *d,
                })
                .collect(),
            mult_table,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GradedRing {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = GradedRingRepr::deserialize(d)?;
        let n = repr.basis.len();
        let degrees: Vec<u32> = repr.basis.iter().map(|b| b.degree).collect();
        let mut table = vec![vec![Product::new(); n]; n];
        for (i, j, coeffs) in repr.mult_table {
            if i >= n || j >= n || coeffs.iter().any(|(k, _)| *k >= n) {
                return Err(D::Error::custom("multiplication table index out of range"));
            }
            let prod: Product = coeffs
                .iter()
                .map(|(k, c)| parse_rational(c).map(|c| (*k, c)))
                .collect::<Result<_>>()
                .map_err(D::Error::custom)?;
            let sign = if degrees[i] % 2 == 1 && degrees[j] % 2 == 1 {
                -BigRational::one()
            } else {
                BigRational::one()
            };
            table[j][i] = prod.iter().map(|(k, c)| (*k, c * &sign)).collect();
            table[i][j] = prod;
        }
        let ring = GradedRing::from_products(
            repr.basis.into_iter().map(|b| b.label).collect(),
            degrees,
            repr.coefficient_mode,
            |i, j| table[i][j].clone(),
        )
        .map_err(D::Error::custom)?;
        if ring.top_degree() != repr.top_degree {
            return Err(D::Error::custom("top_degree does not match the basis"));
        }
        Ok(ring.with_fundamental_scale(repr.fundamental_scale))
    }
}
