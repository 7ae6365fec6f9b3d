use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::linalg::{coordinates_in_rref, nullspace, rref};
use crate::parameters::SasakiTriple;
use crate::scalar::{abs2, float_tolerance, Real};
use crate::symmetry::field::{aut_family, aut_params_of, bracket, reeb_field, AutParams, HoloVectorField, AUT_COORDINATES};

/// Infinitesimal automorphisms of `v = |z|^2` commuting with the Reeb field.
#[derive(Clone, Debug, PartialEq)]
pub struct SymmetryAlgebra<R: Real = f64> {
    pub dimension: usize,
    /// Basis parameters, reduced row-echelon in the order of [`AUT_COORDINATES`].
    pub params: Vec<AutParams<R>>,
    pub basis: Vec<HoloVectorField<R>>,
    /// `[B_i, B_j] = sum_k structure_constants[i][j][k] B_k`.
    pub structure_constants: Vec<Vec<Vec<R>>>,
}

impl<R: Real> SymmetryAlgebra<R> {
    pub fn to_json(&self) -> Value {
        json!({
            "dimension": self.dimension,
            "coordinates": AUT_COORDINATES,
            "params": self.params.iter().map(AutParams::to_json).collect::<Vec<_>>(),
            "basis": self.basis.iter().map(HoloVectorField::to_json).collect::<Vec<_>>(),
            "structure_constants": self.structure_constants.iter().map(|m| {
                m.iter().map(|row| row.iter().map(Real::to_json).collect::<Vec<_>>()).collect::<Vec<_>>()
            }).collect::<Vec<_>>(),
        })
    }

    /// Whether `x` lies in the real span of the basis.
    pub fn contains(&self, x: &HoloVectorField<R>) -> bool {
        let tol = float_tolerance();
        let Some(ap) = aut_params_of(x, tol) else {
            return false;
        };
        let rows: Vec<Vec<R>> = self.params.iter().map(|p| p.to_vector().to_vec()).collect();
        coordinates_in_rref(&rref(&rows, 8, tol), &ap.to_vector(), tol).is_some()
    }
}

/// Real-linear map `AutParams -> [aut_family(ap), Z]`, one column per
/// parameter coordinate.
fn commutator_matrix<R: Real>(z: &HoloVectorField<R>) -> Result<Vec<Vec<R>>> {
    let mut columns = Vec::with_capacity(8);
    for j in 0..8 {
        let mut e = vec![R::zero(); 8];
        e[j] = R::one();
        let x = aut_family(&AutParams::from_vector(&e));
        columns.push(bracket(&x, z)?.real_coordinates());
    }
    let rows = columns[0].len();
    Ok((0..rows).map(|i| columns.iter().map(|c| c[i].clone()).collect()).collect())
}

/// Lie algebra of infinitesimal Sasakian automorphisms of the structure with
/// parameters `t`: the kernel of `ap -> [aut_family(ap), reeb_field(t)]`.
pub fn sasaki_algebra<R: Real>(t: &SasakiTriple<R>) -> Result<SymmetryAlgebra<R>> {
    let tol = float_tolerance();
    let z = reeb_field(t);
    let kernel = nullspace(&commutator_matrix(&z)?, 8, tol);
    let params: Vec<AutParams<R>> = kernel.iter().map(|v| AutParams::from_vector(v)).collect();
    let basis: Vec<HoloVectorField<R>> = params.iter().map(aut_family).collect();
    let reduced = rref(&kernel, 8, tol);

    let n = basis.len();
    let mut structure_constants = vec![vec![vec![R::zero(); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            let b = bracket(&basis[i], &basis[j])?;
            let ap = aut_params_of(&b, tol)
                .ok_or_else(|| Error::Internal(format!("[B{i}, B{j}] left the automorphism family")))?;
            let coords = coordinates_in_rref(&reduced, &ap.to_vector(), tol)
                .ok_or_else(|| Error::Internal(format!("[B{i}, B{j}] left the symmetry algebra")))?;
            structure_constants[i][j] = coords;
        }
    }
    Ok(SymmetryAlgebra {
        dimension: n,
        params,
        basis,
        structure_constants,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum HomogeneousClass {
    /// `v = |z|^2`.
    HeisenbergFlat,
    /// `v = log(1 + |z|^2)` up to scaling.
    RoundSphere,
    /// `v = -log(1 - |z|^2)` up to scaling.
    Hyperboloid,
    Generic,
}

impl fmt::Display for HomogeneousClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            HomogeneousClass::HeisenbergFlat => "HeisenbergFlat",
            HomogeneousClass::RoundSphere => "RoundSphere",
            HomogeneousClass::Hyperboloid => "Hyperboloid",
            HomogeneousClass::Generic => "Generic",
        };
        f.write_str(s)
    }
}

/// Band used by the float backend for the homogeneity predicates.
pub const HOMOGENEOUS_BAND: f64 = 1e-9;

pub fn classify_homogeneous<R: Real>(t: &SasakiTriple<R>) -> HomogeneousClass {
    // scale-invariant comparisons: |a|^2 against |tau|^3, rho - tau^2 against tau^2
    let a2 = abs2(&t.a);
    let tau2 = t.tau.clone() * t.tau.clone();
    let size = t.tau.to_f64().abs() + t.rho.to_f64().abs().sqrt() + a2.to_f64().powf(1.0 / 6.0);
    if t.is_heisenberg() || size == 0.0 {
        return HomogeneousClass::HeisenbergFlat;
    }
    let zero_a = a2.negligible(size.powi(6), HOMOGENEOUS_BAND);
    let on_parabola = (t.rho.clone() - tau2).negligible(size.powi(4), HOMOGENEOUS_BAND);
    let tau_zero = t.tau.negligible(size * size, HOMOGENEOUS_BAND);
    if !(zero_a && on_parabola) || tau_zero {
        // tau = 0 on the parabola forces rho = 0 as well: a scaled Heisenberg
        // sphere only when a = 0 too, which `size` already caught.
        return HomogeneousClass::Generic;
    }
    if t.tau > R::zero() {
        HomogeneousClass::RoundSphere
    } else {
        HomogeneousClass::Hyperboloid
    }
}
