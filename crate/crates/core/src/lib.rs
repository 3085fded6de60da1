//! Exact invariants of three families of singular projective hypersurfaces
//! whose rational homotopy type is elliptic.
//!
//! The crate is organised bottom-up:
//!
//! - [`lambda_ring`]: products of cyclotomic binomials `prod (t^m - 1)^{e_m}`,
//!   the representation used for every monodromy characteristic polynomial;
//! - [`milnor_orlik`]: the divisor calculus turning weights into Milnor
//!   numbers and characteristic polynomials;
//! - [`families`]: the hypersurfaces `H(a)`, `V_n^d`, `W_n^d`, their weights,
//!   monodromy recurrences and Betti numbers;
//! - [`rings`]: finite graded-commutative cohomology rings, Poincaré pairings,
//!   signatures and homotopy classes of twisted quadrics;
//! - [`sullivan`]: minimal Sullivan models of formal spaces up to a degree cutoff;
//! - [`threefolds`]: binary cubic forms of the threefolds `P(O + O(n))`;
//! - [`catalog`] and [`verify`]: catalog records and the identity suite behind
//!   the command-line front end.

pub mod catalog;
pub mod error;
pub mod families;
pub mod json;
pub mod lambda_ring;
pub mod linalg;
pub mod milnor_orlik;
pub mod rings;
pub mod sullivan;
pub mod threefolds;
pub mod verify;

pub use error::{Error, Result};
pub use families::{FamilyInstance, KollarSolution};
pub use lambda_ring::{squarefree_part, IntPolynomial, LambdaProduct};
pub use linalg::{Inertia, Matrix};
pub use milnor_orlik::{monodromy_char_poly, milnor_number, Divisor, WeightSystem};
pub use rings::{CoefficientMode, GradedRing};
pub use threefolds::BinaryCubicForm;
pub use sullivan::{minimal_model, SullivanModel};
