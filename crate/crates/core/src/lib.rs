//! Rigid spheres in complex 2-space and spherical Sasakian structures on the
//! Heisenberg sphere.
//!
//! * [`parameters`]: the triples `(tau, rho, a)`, Stanton's `(theta, r, b)`,
//!   the closed-form parameters, the scaling action and moduli normalization.
//! * [`cubic_discriminant`]: the branch cubic in `phi`, its discriminant and
//!   the Stanton region.
//! * [`series`]: truncated power series, expansion of the closed-form
//!   defining equations into rigid normal form.
//! * [`symmetry`]: holomorphic vector fields, Sasakian symmetry algebras and
//!   the finite automorphisms of the two homogeneous models.
//! * [`linalg`]: row reduction used for the symmetry kernels.
//! * [`cli`]: the command implementations behind the `rsl` binary.

pub mod cli;
pub mod cubic_discriminant;
pub mod error;
pub mod linalg;
pub mod parameters;
pub mod ring;
pub mod scalar;
pub mod series;
pub mod symmetry;

pub use error::{Error, Result};
pub use parameters::{ClosedFormParams, GammaLow, ModuliPoint, SasakiTriple, ScalingAction, StantonParams};
pub use scalar::{Complex64, Rational, Real};
