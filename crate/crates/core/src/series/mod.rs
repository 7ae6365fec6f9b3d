//! Truncated power series and the expansion of closed-form rigid spheres into
//! rigid normal form.
//!
//! Grading: `z` and `zbar` have weight 1, `v` has weight 2.  A [`BiSeries`] of
//! order `N` keeps every `z^k zbar^l` with `k + l <= N`.

pub mod bivariate;
pub mod expand;
pub mod hermitian;
pub mod normalize;
pub mod univariate;

pub use bivariate::BiSeries;
pub use expand::{
    build_v_factors, expand_float_branches, expand_rational_branches, expand_sphere, expand_sphere_all_branches,
    expand_stanton, BranchExpansion, DefiningFunction, VFactors, DEFAULT_ORDER,
};
pub use hermitian::{extract_normal_params, is_rigid_normal_form, rescale_surface, HermitianSeries, NormalFormReport};
pub use univariate::VSeries;
pub use normalize::stanton_normalize;
