use avn_core::hilbert::{
    build_operator, permutation_operator, region_state, spin_state, FactorSpec, ObservableLabel, Pauli, Permutation,
    Spatial,
};
use avn_core::hv::{ghz_scenario, mermin_square_scenario, search, symmetrized_ghz_scenario};
use avn_core::linalg::{expectation, is_eigenvector, pauli, tensor, tensor_all, Operator, CHECK_TOL, I, ONE};
use avn_core::states::{ghz_spin, psi_prime, psi_tilde, psi_tilde_by_permutations, symmetry_report, SymmetryClass};
use avn_core::symmetrize::{sym_spin, symmetrize};
use num_complex::Complex64;

fn catalog_labels() -> Vec<ObservableLabel> {
    ["XXX", "XYY", "YXY", "YYX", "IXZ", "ZXI", "YYI"]
        .iter()
        .map(|s| ObservableLabel::spin(s).unwrap())
        .collect()
}

#[test]
fn tensor_matches_built_label() {
    let direct = tensor(&pauli::x(), &tensor(&pauli::y(), &pauli::y()));
    assert_eq!(direct, build_operator(&ObservableLabel::spin("XYY").unwrap()));
}

#[test]
fn permutation_conjugation_relabels() {
    for l in catalog_labels() {
        for p in Permutation::all(3) {
            let pm = permutation_operator(&p, true);
            let conj = &(&pm * &build_operator(&l)) * &pm.adjoint();
            assert_eq!(conj, build_operator(&l.permuted(&p)), "{l} under {:?}", p.images());
        }
        let full = l.lifted();
        for p in Permutation::all(3) {
            let pm = permutation_operator(&p, false);
            let conj = &(&pm * &build_operator(&full)) * &pm.adjoint();
            assert_eq!(conj, build_operator(&full.permuted(&p)));
        }
    }
}

#[test]
fn ghz_eigenvalues() {
    let ghz = ghz_spin();
    for s in ["XYY", "YXY", "YYX"] {
        let op = build_operator(&ObservableLabel::spin(s).unwrap());
        assert!(is_eigenvector(&op, &ghz, ONE, CHECK_TOL), "{s}");
    }
    let xxx = build_operator(&ObservableLabel::spin("XXX").unwrap());
    assert!(is_eigenvector(&xxx, &ghz, -ONE, CHECK_TOL));
}

#[test]
fn symmetrized_xyy_on_ghz() {
    assert!(is_eigenvector(&sym_spin("XYY"), &ghz_spin(), Complex64::new(3.0, 0.0), CHECK_TOL));
    assert_eq!(symmetrize(&ObservableLabel::spin("XYY").unwrap()).expansion(), "XYY + YXY + YYX");
}

#[test]
fn product_of_rows_is_minus_xxx() {
    let ops: Vec<Operator> = ["XYY", "YXY", "YYX"]
        .iter()
        .map(|s| build_operator(&ObservableLabel::spin(s).unwrap()))
        .collect();
    let prod = &(&ops[0] * &ops[1]) * &ops[2];
    let xxx = build_operator(&ObservableLabel::spin("XXX").unwrap());
    assert_eq!(prod, -&xxx);
}

#[test]
fn pauli_algebra() {
    assert_eq!(&pauli::x() * &pauli::y(), pauli::z().scale(I));
    let c = avn_core::linalg::commutator(&pauli::x(), &pauli::z()).unwrap();
    assert_eq!(c, pauli::y().scale(-2.0 * I));
}

#[test]
fn psi_tilde_has_no_weight_with_all_particles_here() {
    let here = FactorSpec::new(Pauli::I, Spatial::Here);
    let proj = build_operator(&ObservableLabel::new(vec![here; 3], false).unwrap());
    assert!(expectation(&proj, &psi_tilde()).unwrap().norm() < 1e-12);
    assert!((expectation(&proj, &psi_prime()).unwrap() - ONE).norm() < 1e-12);
}

#[test]
fn psi_tilde_constructions_agree() {
    let a = psi_tilde();
    let b = psi_tilde_by_permutations();
    assert!((a.inner(&b).unwrap().norm() - 1.0).abs() < 1e-12);
}

#[test]
fn state_symmetry_classes() {
    assert_eq!(symmetry_report(&ghz_spin()).class, SymmetryClass::Symmetric);
    assert_eq!(symmetry_report(&psi_prime()).class, SymmetryClass::Symmetric);
    assert_eq!(symmetry_report(&psi_tilde()).class, SymmetryClass::ParitySigned);
    let mixed = spin_state(&[true, true, false]);
    assert_eq!(symmetry_report(&mixed).class, SymmetryClass::Neither);
}

#[test]
fn region_states_are_basis_vectors() {
    let v = region_state(&[Spatial::Here, Spatial::There, Spatial::Yonder]);
    assert_eq!(v.dim(), 27);
    assert_eq!(v.amplitudes().iter().filter(|z| z.norm() > 0.0).count(), 1);
}

#[test]
fn positional_projectors_resolve_identity() {
    let projectors: Vec<Operator> = Spatial::REGIONS.iter().map(|r| r.matrix()).collect();
    let sum = projectors.iter().fold(Operator::zeros(3), |acc, p| &acc + p);
    assert_eq!(sum, Operator::identity(3));
    let full = tensor_all([&pauli::identity(), &projectors[0]]);
    assert_eq!(full.dim(), 6);
}

#[test]
fn hv_search_examples() {
    assert_eq!(search(&ghz_scenario(-1)).count, 0);
    assert_eq!(search(&ghz_scenario(1)).count, 8);
    assert_eq!(search(&symmetrized_ghz_scenario()).count, 0);
    assert_eq!(search(&mermin_square_scenario()).count, 0);
    let relaxed = mermin_square_scenario();
    let n = relaxed.constraints().len();
    assert_eq!(search(&relaxed.without_constraint(n - 1)).count, 16);
}
