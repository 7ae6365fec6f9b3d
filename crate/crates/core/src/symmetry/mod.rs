//! Infinitesimal CR automorphisms of the Heisenberg sphere `v = |z|^2` and the
//! subalgebras commuting with a Reeb field.

pub mod algebra;
pub mod field;
pub mod moebius;
pub mod tangency;

pub use algebra::{classify_homogeneous, sasaki_algebra, HomogeneousClass, SymmetryAlgebra, HOMOGENEOUS_BAND};
pub use field::{
    aut_family, aut_params_of, bracket, equal_modulo, reeb_field, reeb_params, transverse_generator, AutParams,
    HoloVectorField, PolyZW, AUT_COORDINATES, MAX_DEGREE,
};
pub use moebius::{finite_automorphism_residual, verify_finite_automorphism, MoebiusMapParams};
pub use tangency::is_tangent_to_sphere;
