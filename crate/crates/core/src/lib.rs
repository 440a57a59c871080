//! SU(N) irreducible representations and coherent states built from
//! irreducible Schwinger bosons on truncated Fock spaces.
//!
//! The construction is exact where it can be: Fock-space ladder algebra,
//! dressed-boson (ISB) monomials, constraint annihilation and rank/dimension
//! statements all run over complex rationals with zero tolerance. Group
//! manifolds, coherent-state expansions, covariance under finite group
//! elements and Monte Carlo resolution-of-identity estimates run in double
//! precision against explicit tolerances.
//!
//! Module map:
//! - [`fock`]: sparse exact states, ladder operators, inner products
//! - [`liealg`]: generalized Gell-Mann basis, generators Q^a, constraints,
//!   structure constants, matrix representations
//! - [`isb`]: irreducible Schwinger bosons A†\[k\], irrep bases, Weyl
//!   dimension, exact rank extraction
//! - [`manifold`]: orthonormal frames, wedge completion, Haar sampling,
//!   group action on coordinates
//! - [`coherent`]: Heisenberg–Weyl and SU(N) coherent states, structure
//!   functions, covariance and identity-resolution checks
//! - [`verify`]: the bundled invariant suite behind the CLI

pub mod coherent;
pub mod fock;
pub mod isb;
pub mod liealg;
pub mod linalg;
pub mod manifold;
pub mod report;
pub mod verify;

pub use fock::{Amplitude, FockState, ModeIndex, Scalar, State, StateF, StateVector};
pub use isb::{irrep_basis, isb_create, monomial_state, weyl_dimension, IrrepLabel};
pub use liealg::{GeneratorBasis, MatrixRep};
pub use manifold::{haar_sample, ManifoldPoint, UnitaryFrame};
