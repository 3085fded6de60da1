//! Minimal Sullivan models of formal spaces, built degree by degree from a
//! cohomology ring up to a degree cutoff.
//!
//! At degree `n` the model `(ΛV, d)` with a map `φ: ΛV → H` is extended by
//! closed generators hitting the cokernel of `H^n(ΛV) → H^n`, then by
//! generators of degree `n` whose differentials kill the kernel of
//! `H^{n+1}(ΛV) → H^{n+1}`. All choices come from canonical row-reduced
//! bases, so the output is deterministic.

pub mod free;

use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::Zero;
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};
use crate::linalg::{quotient_basis, zero_vector, Matrix, Vector};
use crate::rings::GradedRing;
use free::{apply_differential, monomial_degree, monomials_of_degree, Exponents, FreePoly};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Generator {
    pub degree: u32,
    pub label: String,
    pub differential: FreePoly,
    /// Image under `φ`, in ring coordinates; zero for non-closed generators.
    pub image: Vector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SullivanModel {
    generators: Vec<Generator>,
    cutoff: u32,
}

/// Result of the structural checks on a model.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModelVerification {
    pub d_squared_zero: bool,
    pub minimal: bool,
    pub chain_map: bool,
    /// `(degree, H^deg(ΛV) → H^deg is an isomorphism)` for every degree up to the cutoff.
    pub cohomology_isomorphism: Vec<(u32, bool)>,
}

impl ModelVerification {
    pub fn ok(&self) -> bool {
        self.d_squared_zero
            && self.minimal
            && self.chain_map
            && self.cohomology_isomorphism.iter().all(|(_, ok)| *ok)
    }
}

impl SullivanModel {
    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn cutoff(&self) -> u32 {
        self.cutoff
    }

    pub fn generator_degrees(&self) -> Vec<u32> {
        self.generators.iter().map(|g| g.degree).collect()
    }

    fn differentials(&self) -> Vec<FreePoly> {
        self.generators.iter().map(|g| g.differential.clone()).collect()
    }

    /// Rechecks `d∘d = 0`, minimality, `φ∘d = 0` and the cohomology
    /// isomorphism in every degree up to the cutoff.
    pub fn verify(&self, ring: &GradedRing) -> ModelVerification {
        let degrees = self.generator_degrees();
        let diffs = self.differentials();
        let d_squared_zero = diffs
            .iter()
            .all(|dg| apply_differential(dg, &diffs, &degrees).is_zero());
        let minimal = self.generators.iter().enumerate().all(|(i, g)| {
            !g.differential.has_linear_term()
                && g.differential.terms().keys().all(|e| {
                    // only earlier generators, and the right degree
                    e.len() <= i && monomial_degree(e, &degrees) == g.degree + 1
                })
        });
        let images: Vec<Vector> = self.generators.iter().map(|g| g.image.clone()).collect();
        let chain_map = diffs
            .iter()
            .all(|dg| poly_image(ring, dg, &images).iter().all(Zero::is_zero));
        let cohomology_isomorphism = (0..=self.cutoff)
            .map(|m| (m, cohomology_matches(ring, &degrees, &diffs, &images, m)))
            .collect();
        ModelVerification {
            d_squared_zero,
            minimal,
            chain_map,
            cohomology_isomorphism,
        }
    }
}

fn monomial_image(ring: &GradedRing, e: &[u32], images: &[Vector]) -> Vector {
    let mut acc = ring.unit();
    for (i, &k) in e.iter().enumerate() {
        for _ in 0..k {
            acc = ring.mul(&acc, &images[i]);
        }
    }
    acc
}

fn poly_image(ring: &GradedRing, p: &FreePoly, images: &[Vector]) -> Vector {
    let mut out = ring.zero();
    for (e, c) in p.terms() {
        for (o, v) in out.iter_mut().zip(monomial_image(ring, e, images)) {
            *o += c * v;
        }
    }
    out
}

/// Dense coordinates of `p` on the monomial basis `basis`.
fn coordinates(p: &FreePoly, index: &BTreeMap<Exponents, usize>, len: usize) -> Vector {
    let mut v = zero_vector(len);
    for (e, c) in p.terms() {
        let i = index[e];
        v[i] = c.clone();
    }
    v
}

fn index_of(basis: &[Exponents]) -> BTreeMap<Exponents, usize> {
    basis.iter().enumerate().map(|(i, e)| (e.clone(), i)).collect()
}

/// Matrix of `d: ΛV^m → ΛV^{m+1}` (rows indexed by degree-`m+1` monomials).
fn differential_matrix(
    source: &[Exponents],
    target: &[Exponents],
    diffs: &[FreePoly],
    degrees: &[u32],
) -> Matrix {
    let index = index_of(target);
    let mut m = Matrix::zeros(target.len(), source.len());
    for (j, e) in source.iter().enumerate() {
        let de = apply_differential(&FreePoly::monomial(e.clone(), BigRational::from_integer(1.into())), diffs, degrees);
        for (i, c) in coordinates(&de, &index, target.len()).into_iter().enumerate() {
            if !c.is_zero() {
                m.set(i, j, c);
            }
        }
    }
    m
}

fn image_columns(m: &Matrix) -> Vec<Vector> {
    m.transpose().into_rows()
}

/// Restriction of a ring vector to the basis of degree `deg`.
fn restrict(ring: &GradedRing, v: &[BigRational], deg: u32) -> Vector {
    ring.degree_basis(deg).iter().map(|&i| v[i].clone()).collect()
}

fn cocycles(basis_m: &[Exponents], basis_next: &[Exponents], diffs: &[FreePoly], degrees: &[u32]) -> Vec<Vector> {
    if basis_m.is_empty() {
        return Vec::new();
    }
    differential_matrix(basis_m, basis_next, diffs, degrees).kernel()
}

fn boundaries(basis_prev: &[Exponents], basis_m: &[Exponents], diffs: &[FreePoly], degrees: &[u32]) -> Vec<Vector> {
    if basis_prev.is_empty() || basis_m.is_empty() {
        return Vec::new();
    }
    image_columns(&differential_matrix(basis_prev, basis_m, diffs, degrees))
}

/// `φ` on cocycles given in monomial coordinates, restricted to degree `m`.
fn cocycle_images(
    ring: &GradedRing,
    basis_m: &[Exponents],
    zs: &[Vector],
    images: &[Vector],
    m: u32,
) -> Vec<Vector> {
    let mono_images: Vec<Vector> = basis_m
        .iter()
        .map(|e| restrict(ring, &monomial_image(ring, e, images), m))
        .collect();
    let dim = ring.rank_in_degree(m);
    zs.iter()
        .map(|z| {
            let mut out = zero_vector(dim);
            for (c, im) in z.iter().zip(&mono_images) {
                if !c.is_zero() {
                    for (o, x) in out.iter_mut().zip(im) {
                        *o += c * x;
                    }
                }
            }
            out
        })
        .collect()
}

fn rank_of(cols: usize, rows: &[Vector]) -> usize {
    if rows.is_empty() || cols == 0 {
        return 0;
    }
    Matrix::from_rows(cols, rows.to_vec()).rank()
}

fn cohomology_matches(
    ring: &GradedRing,
    degrees: &[u32],
    diffs: &[FreePoly],
    images: &[Vector],
    m: u32,
) -> bool {
    let basis_m = monomials_of_degree(degrees, m);
    let basis_next = monomials_of_degree(degrees, m + 1);
    let basis_prev = if m == 0 { Vec::new() } else { monomials_of_degree(degrees, m - 1) };
    let z = cocycles(&basis_m, &basis_next, diffs, degrees);
    let b_rank = rank_of(basis_m.len(), &boundaries(&basis_prev, &basis_m, diffs, degrees));
    let h_dim = ring.rank_in_degree(m);
    let phi_rank = rank_of(h_dim, &cocycle_images(ring, &basis_m, &z, images, m));
    z.len() - b_rank == h_dim && phi_rank == h_dim
}

/// Builds the minimal model of the formal space with cohomology `ring`
/// through degree `cutoff`.
pub fn minimal_model(ring: &GradedRing, cutoff: u32) -> Result<SullivanModel> {
    let ones = ring.rank_in_degree(1);
    if ones > 0 {
        return Err(Error::NotSimplyConnected(ones));
    }
    if cutoff < 2 || cutoff + 1 < ring.top_degree() {
        return Err(Error::CutoffTooSmall(format!(
            "cutoff {cutoff} cannot certify a ring of top degree {} (need cutoff >= max(2, top - 1))",
            ring.top_degree()
        )));
    }
    let mut degrees: Vec<u32> = Vec::new();
    let mut diffs: Vec<FreePoly> = Vec::new();
    let mut images: Vec<Vector> = Vec::new();

    for n in 2..=cutoff {
        // closed generators for the cokernel of H^n(ΛV) → H^n
        let basis_n = monomials_of_degree(&degrees, n);
        let basis_n1 = monomials_of_degree(&degrees, n + 1);
        let z = cocycles(&basis_n, &basis_n1, &diffs, &degrees);
        let hit = cocycle_images(ring, &basis_n, &z, &images, n);
        let h_basis = ring.degree_basis(n);
        let standard: Vec<Vector> = (0..h_basis.len())
            .map(|i| {
                let mut v = zero_vector(h_basis.len());
                v[i] = BigRational::from_integer(1.into());
                v
            })
            .collect();
        for c in quotient_basis(h_basis.len(), &standard, &hit) {
            let mut image = ring.zero();
            for (&k, ck) in h_basis.iter().zip(&c) {
                image[k] = ck.clone();
            }
            degrees.push(n);
            diffs.push(FreePoly::zero());
            images.push(image);
        }

        // killers for the kernel of H^{n+1}(ΛV) → H^{n+1}
        let basis_n = monomials_of_degree(&degrees, n);
        let basis_n1 = monomials_of_degree(&degrees, n + 1);
        let basis_n2 = monomials_of_degree(&degrees, n + 2);
        let z1 = cocycles(&basis_n1, &basis_n2, &diffs, &degrees);
        if z1.is_empty() {
            continue;
        }
        let z1_images = cocycle_images(ring, &basis_n1, &z1, &images, n + 1);
        let h_dim = ring.rank_in_degree(n + 1);
        // combinations of cocycles with zero image
        let kernel_combos = if h_dim == 0 {
            (0..z1.len())
                .map(|i| {
                    let mut v = zero_vector(z1.len());
                    v[i] = BigRational::from_integer(1.into());
                    v
                })
                .collect()
        } else {
            let mut m = Matrix::zeros(h_dim, z1.len());
            for (j, im) in z1_images.iter().enumerate() {
                for (i, c) in im.iter().enumerate() {
                    m.set(i, j, c.clone());
                }
            }
            m.kernel()
        };
        let kernel: Vec<Vector> = kernel_combos
            .iter()
            .map(|combo| {
                let mut v = zero_vector(basis_n1.len());
                for (c, zi) in combo.iter().zip(&z1) {
                    if !c.is_zero() {
                        for (o, x) in v.iter_mut().zip(zi) {
                            *o += c * x;
                        }
                    }
                }
                v
            })
            .collect();
        let b = boundaries(&basis_n, &basis_n1, &diffs, &degrees);
        for rep in quotient_basis(basis_n1.len(), &kernel, &b) {
            let mut dp = FreePoly::zero();
            for (e, c) in basis_n1.iter().zip(rep) {
                dp.add_term(e.clone(), c);
            }
            degrees.push(n);
            diffs.push(dp);
            images.push(ring.zero());
        }
    }

    // labels x{deg} or x{deg}_{i} when a degree carries several generators
    let mut per_degree: BTreeMap<u32, usize> = BTreeMap::new();
    for d in &degrees {
        *per_degree.entry(*d).or_default() += 1;
    }
    let mut seen: BTreeMap<u32, usize> = BTreeMap::new();
    let generators = degrees
        .iter()
        .zip(diffs)
        .zip(images)
        .map(|((&degree, differential), image)| {
            let i = seen.entry(degree).or_default();
            *i += 1;
            let label = if per_degree[&degree] == 1 {
                format!("x{degree}")
            } else {
                format!("x{degree}_{i}")
            };
            Generator {
                degree,
                label,
                differential,
                image,
            }
        })
        .collect();
    Ok(SullivanModel { generators, cutoff })
}

/// Model with the default cutoff `2 * top_degree + 1`.
pub fn minimal_model_default(ring: &GradedRing) -> Result<SullivanModel> {
    minimal_model(ring, (2 * ring.top_degree() + 1).max(2))
}

/// Number of generators in each degree, i.e. ranks of `π_* ⊗ Q` up to the cutoff.
pub fn homotopy_ranks(model: &SullivanModel) -> BTreeMap<u32, usize> {
    let mut out = BTreeMap::new();
    for g in &model.generators {
        *out.entry(g.degree).or_default() += 1;
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "elliptic at cutoff")]
    EllipticAtCutoff,
    #[serde(rename = "inconclusive at cutoff")]
    InconclusiveAtCutoff,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EllipticityReport {
    pub cutoff: u32,
    pub formal_dimension: u32,
    pub homotopy_ranks: BTreeMap<u32, usize>,
    /// Total rank of `π_* ⊗ Q` in degrees up to the cutoff.
    pub total_rank_up_to_cutoff: usize,
    pub total_homology_rank: usize,
    /// Even-degree minus odd-degree generator count.
    pub chi_pi: i64,
    /// Degrees `(window.0, window.1]` that must carry no generators.
    pub window: (u32, u32),
    pub generators_in_window: usize,
    pub verdict: Verdict,
}

/// Finite ellipticity certificate.
///
/// With formal dimension `N`, generators of an elliptic space live in
/// degrees `<= 2N - 1`. The verdict is "elliptic at cutoff" when the model
/// has no generators in `(max(cutoff - N, 2N - 1), cutoff]` and
/// `chi_pi <= 0`. Requires `cutoff >= 2N - 1`.
pub fn ellipticity_report(model: &SullivanModel, ring: &GradedRing) -> Result<EllipticityReport> {
    let n = ring.top_degree();
    let needed = (2 * n).saturating_sub(1);
    if model.cutoff < needed {
        return Err(Error::CutoffTooSmall(format!(
            "ellipticity report needs cutoff >= 2N - 1 = {needed}, model cutoff is {}",
            model.cutoff
        )));
    }
    let ranks = homotopy_ranks(model);
    let even: usize = ranks.iter().filter(|(d, _)| *d % 2 == 0).map(|(_, c)| c).sum();
    let odd: usize = ranks.iter().filter(|(d, _)| *d % 2 == 1).map(|(_, c)| c).sum();
    let chi_pi = even as i64 - odd as i64;
    let lo = model.cutoff.saturating_sub(n).max(needed);
    let window = (lo, model.cutoff);
    let generators_in_window: usize = ranks
        .iter()
        .filter(|(d, _)| **d > lo && **d <= model.cutoff)
        .map(|(_, c)| *c)
        .sum();
    let verdict = if generators_in_window == 0 && chi_pi <= 0 {
        Verdict::EllipticAtCutoff
    } else {
        Verdict::InconclusiveAtCutoff
    };
    Ok(EllipticityReport {
        cutoff: model.cutoff,
        formal_dimension: n,
        total_rank_up_to_cutoff: even + odd,
        total_homology_rank: ring.rank(),
        homotopy_ranks: ranks,
        chi_pi,
        window,
        generators_in_window,
        verdict,
    })
}

#[derive(Serialize)]
struct TermRepr {
    /// Sparse exponent vector `[[generator index, exponent], ...]`.
    exponents: Vec<(usize, u32)>,
    coefficient: String,
}

fn poly_repr(p: &FreePoly) -> Vec<TermRepr> {
    p.terms()
        .iter()
        .map(|(e, c)| TermRepr {
            exponents: e.iter().enumerate().filter(|(_, k)| **k > 0).map(|(i, k)| (i, *k)).collect(),
            coefficient: c.to_string(),
        })
        .collect()
}

impl Serialize for Generator {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("Generator", 4)?;
        st.serialize_field("label", &self.label)?;
        st.serialize_field("degree", &self.degree)?;
        st.serialize_field("differential", &poly_repr(&self.differential))?;
        let image: Vec<(usize, String)> = self
            .image
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| (i, c.to_string()))
            .collect();
        st.serialize_field("image", &image)?;
        st.end()
    }
}

impl Serialize for SullivanModel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SullivanModel", 3)?;
        st.serialize_field("cutoff", &self.cutoff)?;
        st.serialize_field("generators", &self.generators)?;
        st.serialize_field("homotopy_ranks", &homotopy_ranks(self))?;
        st.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::integer;
    use crate::rings::{sphere_ring, truncated_polynomial_ring, twisted_quadric_ring, wedge_of_spheres_ring};

    fn sorted_degrees(m: &SullivanModel) -> Vec<u32> {
        let mut d = m.generator_degrees();
        d.sort_unstable();
        d
    }

    #[test]
    fn projective_spaces() {
        for n in 1..5 {
            let ring = truncated_polynomial_ring(n).unwrap();
            let model = minimal_model(&ring, 2 * n + 1).unwrap();
            assert_eq!(sorted_degrees(&model), vec![2, 2 * n + 1]);
            assert!(model.verify(&ring).ok());
        }
        let ring = truncated_polynomial_ring(2).unwrap();
        let model = minimal_model(&ring, 6).unwrap();
        let top = &model.generators()[1];
        assert_eq!(top.differential, FreePoly::monomial(vec![3], integer(1)));
    }

    #[test]
    fn sphere() {
        let ring = sphere_ring().unwrap();
        let model = minimal_model(&ring, 4).unwrap();
        assert_eq!(sorted_degrees(&model), vec![2, 3]);
        assert_eq!(homotopy_ranks(&model), BTreeMap::from([(2, 1), (3, 1)]));
    }

    #[test]
    fn twisted_quadrics() {
        for k in 1..3u32 {
            for a in [1, -1, 2] {
                let ring = twisted_quadric_ring(k, &integer(a)).unwrap();
                let model = minimal_model(&ring, 4 * k).unwrap();
                let mut expected = vec![2, 2 * k, 2 * k + 1, 4 * k - 1];
                expected.sort_unstable();
                assert_eq!(sorted_degrees(&model), expected, "k = {k}, a = {a}");
                assert!(model.verify(&ring).ok());
            }
        }
    }

    #[test]
    fn stability_under_larger_cutoff() {
        let ring = twisted_quadric_ring(1, &integer(3)).unwrap();
        let small = minimal_model(&ring, 4).unwrap();
        let large = minimal_model(&ring, 9).unwrap();
        assert_eq!(small.generators(), &large.generators()[..small.generators().len()]);
    }

    #[test]
    fn ellipticity() {
        let ring = truncated_polynomial_ring(3).unwrap();
        let model = minimal_model(&ring, 11).unwrap();
        let r = ellipticity_report(&model, &ring).unwrap();
        assert_eq!(r.chi_pi, 0);
        assert_eq!(r.verdict, Verdict::EllipticAtCutoff);
        assert!(ellipticity_report(&minimal_model(&ring, 7).unwrap(), &ring).is_err());

        let wedge = wedge_of_spheres_ring(2).unwrap();
        let model = minimal_model(&wedge, 5).unwrap();
        assert!(model.verify(&wedge).ok());
        // loop space homology is the tensor algebra on two degree-1 classes
        assert_eq!(homotopy_ranks(&model), BTreeMap::from([(2, 2), (3, 3), (4, 2), (5, 3)]));
        let r = ellipticity_report(&model, &wedge).unwrap();
        assert_eq!(r.verdict, Verdict::InconclusiveAtCutoff);
    }

    #[test]
    fn cutoff_and_connectivity_errors() {
        let ring = truncated_polynomial_ring(4).unwrap();
        assert!(matches!(minimal_model(&ring, 5), Err(Error::CutoffTooSmall(_))));
        assert!(matches!(minimal_model(&ring, 1), Err(Error::CutoffTooSmall(_))));
    }

    #[test]
    fn json_shape() {
        let ring = sphere_ring().unwrap();
        let model = minimal_model(&ring, 4).unwrap();
        let v = serde_json::to_value(&model).unwrap();
        assert_eq!(v["generators"][1]["label"], "x3");
        assert_eq!(v["generators"][1]["differential"][0]["exponents"], serde_json::json!([[0, 2]]));
        assert_eq!(v["homotopy_ranks"]["3"], 1);
    }
}
