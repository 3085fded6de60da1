use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;

use super::{
    odd_quadric_ring, smooth_quadric_ring, sphere_ring, truncated_polynomial_ring,
    twisted_projective_ring, twisted_quadric_ring, wedge_of_spheres_ring, GradedRing,
};
use crate::error::{Error, Result};
use crate::milnor_orlik::parse_rational;
use crate::threefolds::pe_cohomology_ring;

/// Short textual names for the built-in rings, e.g. `pn:3` or
/// `twisted-quadric:2:-1/2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RingSpec {
    /// `Q[x]/(x^{n+1})`.
    Pn(u32),
    Sphere,
    TwistedProjective { n: u32, d: u32 },
    TwistedQuadric { k: u32, a: BigRational },
    SmoothQuadric(u32),
    OddQuadric(u32),
    Pe(u64),
    WedgeOfSpheres(usize),
}

impl RingSpec {
    pub fn build(&self) -> Result<GradedRing> {
        match self {
            RingSpec::Pn(n) => truncated_polynomial_ring(*n),
            RingSpec::Sphere => sphere_ring(),
            RingSpec::TwistedProjective { n, d } => twisted_projective_ring(*n, *d),
            RingSpec::TwistedQuadric { k, a } => twisted_quadric_ring(*k, a),
            RingSpec::SmoothQuadric(k) => smooth_quadric_ring(*k),
            RingSpec::OddQuadric(k) => odd_quadric_ring(*k),
            RingSpec::Pe(n) => pe_cohomology_ring(*n),
            RingSpec::WedgeOfSpheres(m) => wedge_of_spheres_ring(*m),
        }
    }
}

fn int<T: FromStr>(s: &str, what: &str) -> Result<T> {
    s.trim()
        .parse()
        .map_err(|_| Error::Parse(format!("bad {what} '{s}' in ring spec")))
}

impl FromStr for RingSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let spec = match parts.as_slice() {
            ["pn", n] => RingSpec::Pn(int(n, "n")?),
            ["s2"] => RingSpec::Sphere,
            ["twisted-projective", n, d] => RingSpec::TwistedProjective {
                n: int(n, "n")?,
                d: int(d, "d")?,
            },
            ["twisted-quadric", k, a] => RingSpec::TwistedQuadric {
                k: int(k, "k")?,
                a: parse_rational(a)?,
            },
            ["smooth-quadric", k] => RingSpec::SmoothQuadric(int(k, "k")?),
            ["odd-quadric", k] => RingSpec::OddQuadric(int(k, "k")?),
            ["pe", n] => RingSpec::Pe(int(n, "n")?),
            ["wedge-s2", m] => RingSpec::WedgeOfSpheres(int(m, "m")?),
            _ => {
                return Err(Error::Parse(format!(
                    "unknown ring spec '{s}'; expected one of pn:N, s2, twisted-projective:N:D, \
                     twisted-quadric:K:A, smooth-quadric:K, odd-quadric:K, pe:N, wedge-s2:M"
                )))
            }
        };
        Ok(spec)
    }
}

impl fmt::Display for RingSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingSpec::Pn(n) => write!(f, "pn:{n}"),
            RingSpec::Sphere => write!(f, "s2"),
            RingSpec::TwistedProjective { n, d } => write!(f, "twisted-projective:{n}:{d}"),
            RingSpec::TwistedQuadric { k, a } => write!(f, "twisted-quadric:{k}:{a}"),
            RingSpec::SmoothQuadric(k) => write!(f, "smooth-quadric:{k}"),
            RingSpec::OddQuadric(k) => write!(f, "odd-quadric:{k}"),
            RingSpec::Pe(n) => write!(f, "pe:{n}"),
            RingSpec::WedgeOfSpheres(m) => write!(f, "wedge-s2:{m}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational;

    #[test]
    fn parse_and_display() {
        for s in [
            "pn:3",
            "s2",
            "twisted-projective:3:5",
            "twisted-quadric:2:-1/2",
            "smooth-quadric:2",
            "odd-quadric:1",
            "pe:4",
            "wedge-s2:2",
        ] {
            let spec: RingSpec = s.parse().unwrap();
            assert_eq!(spec.to_string(), s);
            assert!(spec.build().is_ok(), "{s}");
        }
        assert_eq!(
            "twisted-quadric:2:1".parse::<RingSpec>().unwrap(),
            RingSpec::TwistedQuadric { k: 2, a: rational(1, 1) }
        );
        assert!("pn".parse::<RingSpec>().is_err());
        assert!("pn:x".parse::<RingSpec>().is_err());
        assert!("torus".parse::<RingSpec>().is_err());
        assert!("twisted-quadric:2:0".parse::<RingSpec>().unwrap().build().is_err());
    }
}
