//! Symmetrization of labelled operators over particle permutations.
//!
//! The symmetrized operator is the plain sum over the distinct labels in the
//! orbit of the source label under factor permutations. Nothing is divided
//! by the orbit or group size, so `sym(XYY) = XYY + YXY + YYX` has eigenvalue
//! +3 on the GHZ state.

use std::collections::BTreeSet;

use crate::hilbert::{build_operator, ObservableLabel, Permutation};
use crate::linalg::Operator;

#[derive(Debug, Clone)]
pub struct SymmetrizedOperator {
    source: ObservableLabel,
    terms: Vec<ObservableLabel>,
    matrix: Operator,
}

impl SymmetrizedOperator {
    pub fn source_label(&self) -> &ObservableLabel {
        &self.source
    }

    /// Distinct permuted labels, in the order first reached by `Permutation::all`.
    pub fn terms(&self) -> &[ObservableLabel] {
        &self.terms
    }

    pub fn matrix(&self) -> &Operator {
        &self.matrix
    }

    pub fn into_matrix(self) -> Operator {
        self.matrix
    }

    /// Sum divided by the orbit size.
    pub fn averaged(&self) -> Operator {
        self.matrix.scale((1.0 / self.terms.len() as f64).into())
    }

    /// Human-readable sum, e.g. `XYY + YXY + YYX`.
    pub fn expansion(&self) -> String {
        self.terms
            .iter()
            .map(ToString::to_string)
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// Distinct labels obtained by permuting the factors of `label`.
pub fn orbit(label: &ObservableLabel) -> Vec<ObservableLabel> {
    let mut seen = BTreeSet::new();
    Permutation::all(label.particles())
        .iter()
        .map(|p| label.permuted(p))
        .filter(|l| seen.insert(l.clone()))
        .collect()
}

pub fn orbit_size(label: &ObservableLabel) -> usize {
    orbit(label).len()
}

pub fn symmetrize(label: &ObservableLabel) -> SymmetrizedOperator {
    let terms = orbit(label);
    let matrix = terms
        .iter()
        .map(build_operator)
        .reduce(|acc, m| &acc + &m)
        .expect("orbit is never empty");
    SymmetrizedOperator {
        source: label.clone(),
        terms,
        matrix,
    }
}

/// Matrix of the symmetrized operator for a spin-only Pauli string.
pub fn sym_spin(paulis: &str) -> Operator {
    symmetrize(&ObservableLabel::spin(paulis).expect("valid Pauli string")).into_matrix()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{permutation_operator, Pauli, Spatial};
    use crate::linalg::{commutator, NORM_TOL};

    fn positional(p: [Pauli; 3]) -> ObservableLabel {
        use Spatial::*;
        ObservableLabel::full(&[(p[0], Here), (p[1], There), (p[2], Yonder)]).unwrap()
    }

    #[test]
    fn xxx_is_its_own_orbit() {
        let s = symmetrize(&ObservableLabel::spin("XXX").unwrap());
        assert_eq!(s.terms().len(), 1);
        assert_eq!(s.matrix(), &build_operator(&ObservableLabel::spin("XXX").unwrap()));
    }

    #[test]
    fn xyy_has_three_terms() {
        let s = symmetrize(&ObservableLabel::spin("XYY").unwrap());
        let names: BTreeSet<String> = s.terms().iter().map(ToString::to_string).collect();
        let expected: BTreeSet<String> = ["XYY", "YXY", "YYX"].iter().map(|s| s.to_string()).collect();
        assert_eq!(names, expected);
    }

    #[test]
    fn positional_label_has_six_terms() {
        use Pauli::*;
        let l = positional([X, Y, Y]);
        assert_eq!(orbit_size(&l), 6);
        assert_eq!(symmetrize(&l).terms().len(), 6);
    }

    #[test]
    fn orbit_sizes() {
        assert_eq!(orbit_size(&ObservableLabel::spin("XXX").unwrap()), 1);
        assert_eq!(orbit_size(&ObservableLabel::spin("IXX").unwrap()), 3);
        assert_eq!(orbit_size(&ObservableLabel::spin("XYZ").unwrap()), 6);
        assert_eq!(orbit_size(&ObservableLabel::spin("IX").unwrap()), 2);
        assert_eq!(orbit_size(&ObservableLabel::spin("YY").unwrap()), 1);
    }

    #[test]
    fn orbit_times_stabilizer_is_group_order() {
        for s in ["XXX", "XYY", "XYZ", "IIZ"] {
            let l = ObservableLabel::spin(s).unwrap();
            let stab = Permutation::all(3).iter().filter(|p| l.permuted(p) == l).count();
            assert_eq!(orbit_size(&l) * stab, 6, "{s}");
        }
    }

    #[test]
    fn symmetrizing_any_orbit_member_gives_same_matrix() {
        let l = ObservableLabel::spin("XYY").unwrap();
        let m = symmetrize(&l);
        for member in m.terms() {
            assert_eq!(symmetrize(member).matrix(), m.matrix());
        }
    }

    #[test]
    fn symmetrized_matrix_is_exchange_invariant_and_hermitian() {
        use Pauli::*;
        let m = symmetrize(&positional([X, Y, Y]));
        for p in Permutation::all(3) {
            let c = commutator(&permutation_operator(&p, false), m.matrix()).unwrap();
            assert!(c.norm() < NORM_TOL);
        }
        assert!(m.matrix().is_hermitian(NORM_TOL));
    }

    #[test]
    fn averaged_divides_by_orbit() {
        let s = symmetrize(&ObservableLabel::spin("IX").unwrap());
        assert!(s.averaged().scale(2.0.into()).approx_eq(s.matrix(), NORM_TOL));
        assert_eq!(s.expansion(), "IX + XI");
    }
}
