//! Numerical ranges of small complex matrices and the mapping theorems built on
//! them.
//!
//! * [`linalg`]: dense complex matrices, a Hermitian Jacobi eigensolver, linear
//!   solves, PSD tests and operator norms.
//! * [`numrange`]: support function and boundary of `W(T)`, numerical radius,
//!   membership.
//! * [`blaschke`]: finite Blaschke products, their unimodular level sets and
//!   Clark decompositions.
//! * [`calculus`]: a small tree of disk functions with scalar and matrix
//!   evaluation.
//! * [`regions`]: the teardrop region, the parameter region `S` and the
//!   operator-inequality parametrizations.
//! * [`verify`]: seeded property suites, reports and an extremal search.
//! * [`cli`]: file formats and the handlers used by the `numrange` binary.

pub mod blaschke;
pub mod calculus;
pub mod cli;
pub mod linalg;
pub mod numrange;
pub mod regions;
pub mod verify;

pub use blaschke::{BlaschkeProduct, ClarkAtom, ClarkDecomposition};
pub use calculus::{DiskFunction, MobiusAutomorphism};
pub use linalg::CMatrix;
pub use numrange::{boundary, numerical_radius, BoundaryCurve};
pub use regions::Teardrop;
pub use verify::{Suite, VerifyReport};
