//! The three-particle states used by the proofs, and an exchange-symmetry audit.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::hilbert::{
    permutation_operator, region_state, spatial_permutation_operator, spin_spatial_product,
    spin_state, superpose, Permutation, Spatial, MODE_DIM,
};
use crate::linalg::{apply, vector_norm, StateVector, CHECK_TOL};

/// `(|↑↑↑> - |↓↓↓>)/√2` on the spin-only space (dim 8).
pub fn ghz_spin() -> StateVector {
    let up = spin_state(&[true, true, true]);
    let down = spin_state(&[false, false, false]);
    StateVector::normalized(superpose(&[
        (Complex64::new(1.0, 0.0), &up),
        (Complex64::new(-1.0, 0.0), &down),
    ]))
    .unwrap()
}

/// GHZ spin state with all three particles in the `Here` region (dim 216).
pub fn psi_prime() -> StateVector {
    use Spatial::Here;
    spin_spatial_product(&ghz_spin(), &region_state(&[Here, Here, Here]))
}

/// The six mode orderings of the spatial Slater determinant with their signs,
/// in the order the determinant is conventionally expanded.
pub const SLATER_TERMS: [([Spatial; 3], i8); 6] = {
    use Spatial::{Here as H, There as T, Yonder as Y};
    [
        ([H, T, Y], 1),
        ([H, Y, T], -1),
        ([T, H, Y], -1),
        ([T, Y, H], 1),
        ([Y, T, H], -1),
        ([Y, H, T], 1),
    ]
};

/// Antisymmetrized spatial state of one particle in each region (dim 27),
/// built from the explicit six-term expansion.
pub fn slater_spatial() -> StateVector {
    let states: Vec<(Complex64, StateVector)> = SLATER_TERMS
        .iter()
        .map(|(regions, sign)| (Complex64::new(f64::from(*sign), 0.0), region_state(regions)))
        .collect();
    let terms: Vec<(Complex64, &StateVector)> = states.iter().map(|(c, v)| (*c, v)).collect();
    StateVector::normalized(superpose(&terms)).unwrap()
}

/// `psi_tilde`, built as the parity-signed sum of spatial permutation
/// operators acting on `|h,t,y>` in the full space.
pub fn psi_tilde_by_permutations() -> StateVector {
    use Spatial::*;
    let base = spin_spatial_product(&ghz_spin(), &region_state(&[Here, There, Yonder]));
    let mut acc = vec![Complex64::new(0.0, 0.0); base.dim()];
    for p in Permutation::all(3) {
        let moved = apply(&spatial_permutation_operator(&p), &base).unwrap();
        let sign = f64::from(p.parity());
        for (a, m) in acc.iter_mut().zip(moved) {
            *a += sign * m;
        }
    }
    StateVector::normalized(acc).unwrap()
}

/// GHZ spin state times the spatial Slater determinant (dim 216).
pub fn psi_tilde() -> StateVector {
    spin_spatial_product(&ghz_spin(), &slater_spatial())
}

/// Coefficient of `|r_1 r_2 r_3>` in a 27-dim spatial state.
pub fn spatial_coefficient(v: &StateVector, regions: &[Spatial; 3]) -> Complex64 {
    assert_eq!(v.dim(), MODE_DIM.pow(3));
    let idx = region_state(regions)
        .amplitudes()
        .iter()
        .position(|a| a.re == 1.0)
        .unwrap();
    v.amplitude(idx)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExchangeVerdict {
    /// `P|v> = |v>`.
    Plus,
    /// `P|v> = -|v>`.
    Minus,
    Neither,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SymmetryClass {
    /// +1 under every exchange.
    Symmetric,
    /// Sign equals the permutation parity for every exchange.
    ParitySigned,
    Neither,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PermutationEvidence {
    pub permutation: Vec<usize>,
    pub parity: i8,
    pub residual_plus: f64,
    pub residual_minus: f64,
    pub verdict: ExchangeVerdict,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SymmetryReport {
    pub tolerance: f64,
    pub per_permutation: Vec<PermutationEvidence>,
    pub class: SymmetryClass,
}

impl SymmetryReport {
    /// True when every permutation got exactly one of the +1/-1 verdicts.
    pub fn is_definitive(&self) -> bool {
        self.per_permutation.iter().all(|e| {
            (e.residual_plus < self.tolerance) != (e.residual_minus < self.tolerance)
        })
    }
}

/// Applies all six whole-particle exchanges to a three-particle state
/// (dim 8 spin-only or dim 216 full) and classifies it.
pub fn symmetry_report(v: &StateVector) -> SymmetryReport {
    symmetry_report_with_tol(v, CHECK_TOL)
}

pub fn symmetry_report_with_tol(v: &StateVector, tol: f64) -> SymmetryReport {
    let spin_only = match v.dim() {
        8 => true,
        216 => false,
        d => panic!("symmetry_report expects a three-particle state, got dim {d}"),
    };
    let per_permutation: Vec<PermutationEvidence> = Permutation::all(3)
        .into_iter()
        .map(|p| {
            let pv = apply(&permutation_operator(&p, spin_only), v).unwrap();
            let minus: Vec<Complex64> = pv.iter().zip(v.amplitudes()).map(|(a, b)| a - b).collect();
            let plus: Vec<Complex64> = pv.iter().zip(v.amplitudes()).map(|(a, b)| a + b).collect();
            let residual_plus = vector_norm(&minus);
            let residual_minus = vector_norm(&plus);
            let verdict = if residual_plus < tol {
                ExchangeVerdict::Plus
            } else if residual_minus < tol {
                ExchangeVerdict::Minus
            } else {
                ExchangeVerdict::Neither
            };
            PermutationEvidence {
                permutation: p.images().to_vec(),
                parity: p.parity(),
                residual_plus,
                residual_minus,
                verdict,
            }
        })
        .collect();

    let all = |f: &dyn Fn(&PermutationEvidence) -> bool| per_permutation.iter().all(f);
    let class = if all(&|e| e.verdict == ExchangeVerdict::Plus) {
        SymmetryClass::Symmetric
    } else if all(&|e| {
        e.verdict == if e.parity > 0 { ExchangeVerdict::Plus } else { ExchangeVerdict::Minus }
    }) {
        SymmetryClass::ParitySigned
    } else {
        SymmetryClass::Neither
    };
    SymmetryReport {
        tolerance: tol,
        per_permutation,
        class,
    }
}
