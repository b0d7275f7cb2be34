//! Exact symbolic computation for edge contraction of weighted Coxeter
//! systems: the contracted system, the group-level embedding through the
//! reflection representation, its Hecke-algebra lift with unequal
//! parameters, affine variants in both standard presentations, and the
//! tensor-space compatibility checks — all over exact coefficient rings,
//! with every claimed identity re-verified at desk scale and reported with
//! witnesses on failure.

pub mod affine_a;
pub mod affine_general;
pub mod affine_weyl;
pub mod duality;
pub mod embed;
pub mod group;
pub mod hecke;
pub mod kmatrix;
pub mod laurent;
pub mod matrix;
pub mod monomial;
pub mod quad;
pub mod rank;
pub mod report;
pub mod roots;
pub mod scalar;
pub mod system;

pub use group::{ball, GroupElement, Representation};
pub use kmatrix::{contracted_k, KMatrix, KMode};
pub use laurent::LaurentPoly;
pub use monomial::{geometric_quotient, Monomial};
pub use quad::QuadScalar;
pub use report::{Status, VerificationReport};
pub use system::{Bond, BranchSequence, Contraction, CoxeterSystem, Edge};
