//! Catalog of verifications. Each entry builds its states and operators,
//! checks the quantum predictions numerically, and runs the value-assignment
//! search on the matching scenario.

use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::hilbert::{build_operator, ObservableLabel, Pauli, Spatial};
use crate::hv::{
    self, ghz_scenario, mermin_rectangle_scenario, mermin_square_scenario,
    symmetrized_ghz_scenario, ConstraintKind, Scenario, SearchResult, MERMIN_SQUARE,
};
use crate::linalg::{
    commutator, eigen_residual, expectation, Operator, StateVector, CHECK_TOL, I, NORM_TOL,
};
use crate::states::{ghz_spin, psi_prime, psi_tilde, symmetry_report, SymmetryClass, SymmetryReport};
use crate::symmetrize::{sym_spin, symmetrize};

/// Matrix identities and commutators of small-integer matrices are checked
/// at this tolerance.
pub const EXACT_TOL: f64 = NORM_TOL;
/// Symmetrized operators that must not commute have a commutator norm above this.
pub const NONCOMMUTING_MIN_NORM: f64 = 0.5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Comparison {
    /// Pass iff `residual < tolerance`.
    Below,
    /// Pass iff `residual > tolerance`.
    Above,
}

impl Comparison {
    pub fn passes(self, residual: f64, tolerance: f64) -> bool {
        match self {
            Comparison::Below => residual < tolerance,
            Comparison::Above => residual > tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QuantumCheck {
    pub description: String,
    pub expected: f64,
    pub computed_re: f64,
    pub computed_im: f64,
    pub residual: f64,
    pub tolerance: f64,
    pub comparison: Comparison,
    pub pass: bool,
}

impl QuantumCheck {
    fn new(
        description: impl Into<String>,
        expected: f64,
        computed: Complex64,
        residual: f64,
        tolerance: f64,
        comparison: Comparison,
    ) -> Self {
        Self {
            description: description.into(),
            expected,
            computed_re: computed.re,
            computed_im: computed.im,
            residual,
            tolerance,
            comparison,
            pass: comparison.passes(residual, tolerance),
        }
    }

    /// `op |v> = lambda |v>`; reports `<v|op|v>` and `||op v - lambda v||`.
    pub fn eigenvalue(desc: impl Into<String>, op: &Operator, v: &StateVector, lambda: f64) -> Self {
        let computed = expectation(op, v).expect("operator and state dims agree");
        let residual = eigen_residual(op, v, lambda.into()).expect("operator and state dims agree");
        Self::new(desc, lambda, computed, residual, CHECK_TOL, Comparison::Below)
    }

    pub fn expectation(desc: impl Into<String>, op: &Operator, v: &StateVector, expected: f64) -> Self {
        let computed = expectation(op, v).expect("operator and state dims agree");
        let residual = (computed - expected).norm();
        Self::new(desc, expected, computed, residual, CHECK_TOL, Comparison::Below)
    }

    /// `lhs = rhs` entrywise; residual is the Frobenius norm of the difference.
    pub fn identity(desc: impl Into<String>, lhs: &Operator, rhs: &Operator) -> Self {
        let residual = lhs.distance(rhs).expect("operator dims agree");
        Self::new(desc, 0.0, residual.into(), residual, EXACT_TOL, Comparison::Below)
    }

    pub fn commutes(desc: impl Into<String>, a: &Operator, b: &Operator) -> Self {
        let norm = commutator(a, b).expect("operator dims agree").norm();
        Self::new(desc, 0.0, norm.into(), norm, EXACT_TOL, Comparison::Below)
    }

    pub fn does_not_commute(desc: impl Into<String>, a: &Operator, b: &Operator) -> Self {
        let norm = commutator(a, b).expect("operator dims agree").norm();
        Self::new(desc, 0.0, norm.into(), norm, NONCOMMUTING_MIN_NORM, Comparison::Above)
    }

    /// `pass` recomputed from the stored residual and threshold.
    pub fn recomputed_pass(&self) -> bool {
        self.comparison.passes(self.residual, self.tolerance)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Conclusion {
    ContradictionEstablished,
    NoContradiction,
}

impl Conclusion {
    pub fn from_parts(checks: &[QuantumCheck], hv: &SearchResult) -> Self {
        if checks.iter().all(|c| c.pass) && hv.count == 0 {
            Conclusion::ContradictionEstablished
        } else {
            Conclusion::NoContradiction
        }
    }
}

impl fmt::Display for Conclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Conclusion::ContradictionEstablished => "ContradictionEstablished",
            Conclusion::NoContradiction => "NoContradiction",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub name: String,
    pub quantum_checks: Vec<QuantumCheck>,
    pub hv: SearchResult,
    pub conclusion: Conclusion,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub symmetry: Option<SymmetryReport>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerificationReport {
    fn new(name: &str, quantum_checks: Vec<QuantumCheck>, scenario: &Scenario) -> Self {
        let hv = hv::search(scenario);
        let conclusion = Conclusion::from_parts(&quantum_checks, &hv);
        Self {
            name: name.to_owned(),
            quantum_checks,
            hv,
            conclusion,
            symmetry: None,
            notes: Vec::new(),
        }
    }

    pub fn all_checks_pass(&self) -> bool {
        self.quantum_checks.iter().all(|c| c.pass)
    }

    pub fn check(&self, description: &str) -> Option<&QuantumCheck> {
        self.quantum_checks.iter().find(|c| c.description == description)
    }

    /// Conclusion recomputed from residuals and the search count alone.
    pub fn recomputed_conclusion(&self) -> Conclusion {
        if self.quantum_checks.iter().all(QuantumCheck::recomputed_pass) && self.hv.count == 0 {
            Conclusion::ContradictionEstablished
        } else {
            Conclusion::NoContradiction
        }
    }
}

fn spin_op(paulis: &str) -> Operator {
    build_operator(&ObservableLabel::spin(paulis).expect("valid Pauli string"))
}

/// Checks every product constraint against the operators bound to its
/// symbols: the ordered operator product must have the target as eigenvalue
/// on `state`, or equal `target * I` when no state is given.
pub fn product_consistency(
    scenario: &Scenario,
    binding: impl Fn(&str) -> Operator,
    state: Option<&StateVector>,
) -> Vec<QuantumCheck> {
    scenario
        .constraints()
        .iter()
        .filter(|c| c.kind == ConstraintKind::ProductEquals)
        .map(|c| {
            let product = c.terms[0]
                .iter()
                .map(|s| binding(s))
                .reduce(|acc, m| &acc * &m)
                .expect("constraints have at least one symbol");
            let target = c.target as f64;
            match state {
                Some(v) => QuantumCheck::eigenvalue(format!("eigenvalue of {c}"), &product, v, target),
                None => {
                    let rhs = Operator::identity(product.dim()).scale(target.into());
                    QuantumCheck::identity(format!("operator product {c} · I"), &product, &rhs)
                }
            }
        })
        .collect()
}

fn pairwise_commutation(named: &[(&str, &Operator)]) -> Vec<QuantumCheck> {
    let mut out = Vec::new();
    for (i, (na, a)) in named.iter().enumerate() {
        for (nb, b) in &named[i + 1..] {
            out.push(QuantumCheck::commutes(format!("[{na}, {nb}] = 0"), a, b));
        }
    }
    out
}

/// GHZ state of three distinguishable qubits.
pub fn verify_ghz_distinguishable() -> VerificationReport {
    let state = ghz_spin();
    let rows = [("XYY", 1.0), ("YXY", 1.0), ("YYX", 1.0), ("XXX", -1.0)];
    let ops: Vec<Operator> = rows.iter().map(|(s, _)| spin_op(s)).collect();

    let mut checks: Vec<QuantumCheck> = rows
        .iter()
        .zip(&ops)
        .map(|((name, lambda), op)| {
            QuantumCheck::eigenvalue(format!("{name} |GHZ> = {lambda:+} |GHZ>"), op, &state, *lambda)
        })
        .collect();
    let named: Vec<(&str, &Operator)> = rows.iter().map(|(s, _)| *s).zip(&ops).collect();
    checks.extend(pairwise_commutation(&named));

    let scenario = ghz_scenario(-1);
    // X1 = X on particle 1, and so on
    let binding = |sym: &str| {
        let mut paulis = ['I'; 3];
        let particle = sym[1..].parse::<usize>().expect("symbols are X1..Y3") - 1;
        paulis[particle] = sym.chars().next().unwrap();
        spin_op(&paulis.iter().collect::<String>())
    };
    checks.extend(product_consistency(&scenario, binding, Some(&state)));

    VerificationReport::new("ghz-distinguishable", checks, &scenario)
}

/// `sym(XYY)` and `XXX` restricted to all three particles being here, as
/// used on `psi_prime`. The region projector multiplies the whole sum.
pub fn symmetrized_here_operators() -> (Operator, Operator) {
    use Pauli::I as Id;
    use Spatial::Here;
    let here = build_operator(&ObservableLabel::full(&[(Id, Here), (Id, Here), (Id, Here)]).unwrap());
    let sym_xyy = symmetrize(&ObservableLabel::spin("XYY").unwrap().lifted());
    let xxx = build_operator(&ObservableLabel::spin("XXX").unwrap().lifted());
    (sym_xyy.matrix() * &here, &xxx * &here)
}

/// Identical particles sharing one region: the three `XYY`-type rows
/// collapse into one sum rule.
pub fn verify_ghz_indistinguishable_contextuality() -> VerificationReport {
    use Pauli::{X, Y};
    use Spatial::Here;
    let state = psi_prime();
    let (sym_xyy, xxx) = symmetrized_here_operators();

    let per_summand = symmetrize(&ObservableLabel::full(&[(X, Here), (Y, Here), (Y, Here)]).unwrap());
    let checks = vec![
        QuantumCheck::eigenvalue("(XYY + YXY + YYX) Π_hhh |Ψ'> = +3 |Ψ'>", &sym_xyy, &state, 3.0),
        QuantumCheck::eigenvalue("XXX Π_hhh |Ψ'> = -1 |Ψ'>", &xxx, &state, -1.0),
        QuantumCheck::commutes("[sym(XYY) Π_hhh, XXX Π_hhh] = 0", &sym_xyy, &xxx),
        QuantumCheck::identity(
            "projector on the sum equals projector on each summand",
            &sym_xyy,
            per_summand.matrix(),
        ),
    ];
    let mut report = VerificationReport::new(
        "ghz-indistinguishable-contextuality",
        checks,
        &symmetrized_ghz_scenario(),
    );
    report.symmetry = Some(symmetry_report(&state));
    report.notes.push(format!(
        "|Ψ'> exchange symmetry: {:?}; it is built as written (all particles here), no statistics enforced",
        report.symmetry.as_ref().unwrap().class
    ));
    report
}

/// The four symmetrized region-resolved operators, in row order
/// `X_h Y_t Y_y`, `Y_h X_t Y_y`, `Y_h Y_t X_y`, `X_h X_t X_y`.
pub fn symmetrized_positional_operators() -> Vec<(ObservableLabel, Operator)> {
    use Pauli::{X, Y};
    use Spatial::{Here, There, Yonder};
    [[X, Y, Y], [Y, X, Y], [Y, Y, X], [X, X, X]]
        .iter()
        .map(|p| {
            let label = ObservableLabel::full(&[(p[0], Here), (p[1], There), (p[2], Yonder)]).unwrap();
            let m = symmetrize(&label).into_matrix();
            (label, m)
        })
        .collect()
}

/// Projector onto "one particle in each region": `sym(Π⁺_h Π⁺_t Π⁺_y)`.
pub fn one_per_region_projector() -> Operator {
    use Pauli::I as Id;
    use Spatial::{Here, There, Yonder};
    symmetrize(&ObservableLabel::full(&[(Id, Here), (Id, There), (Id, Yonder)]).unwrap()).into_matrix()
}

/// Identical particles in three separated regions.
pub fn verify_ghz_nonlocality() -> VerificationReport {
    let state = psi_tilde();
    let ops = symmetrized_positional_operators();
    let eigen = [1.0, 1.0, 1.0, -1.0];

    let mut checks: Vec<QuantumCheck> = ops
        .iter()
        .zip(eigen)
        .map(|((label, op), lambda)| {
            QuantumCheck::eigenvalue(format!("sym({label}) |Ψ~> = {lambda:+} |Ψ~>"), op, &state, lambda)
        })
        .collect();

    let names: Vec<String> = ops.iter().map(|(l, _)| format!("sym({l})")).collect();
    let named: Vec<(&str, &Operator)> = names.iter().map(String::as_str).zip(ops.iter().map(|(_, m)| m)).collect();
    let global = pairwise_commutation(&named);
    let mut notes = Vec::new();
    if global.iter().all(|c| c.pass) {
        notes.push("the four symmetrized operators commute on the full space".to_owned());
        checks.extend(global);
    } else {
        let proj = one_per_region_projector();
        notes.push(
            "the four symmetrized operators do not commute globally; commutation checked on the one-per-region subspace"
                .to_owned(),
        );
        for (i, (na, a)) in named.iter().enumerate() {
            for (nb, b) in &named[i + 1..] {
                let c = commutator(a, b).unwrap();
                let restricted = &(&proj * &c) * &proj;
                checks.push(QuantumCheck::identity(
                    format!("Π [{na}, {nb}] Π = 0"),
                    &restricted,
                    &Operator::zeros(restricted.dim()),
                ));
            }
        }
    }

    checks.push(QuantumCheck::expectation(
        "<Ψ~| sym(Π⁺_h Π⁺_t Π⁺_y) |Ψ~> = 1",
        &one_per_region_projector(),
        &state,
        1.0,
    ));

    let scenario = ghz_scenario(-1);
    let mut report = VerificationReport::new("ghz-nonlocality", checks, &scenario);
    let symmetry = symmetry_report(&state);
    notes.push(match symmetry.class {
        SymmetryClass::Symmetric => "|Ψ~> is symmetric under particle exchange (bosonic)".to_owned(),
        SymmetryClass::ParitySigned => "|Ψ~> is antisymmetric under particle exchange: symmetric GHZ spin part times antisymmetric spatial part; it is not the bosonic state its construction is usually described as".to_owned(),
        SymmetryClass::Neither => "|Ψ~> has no definite exchange symmetry".to_owned(),
    });
    report.symmetry = Some(symmetry);
    report.notes = notes;
    report
}

/// Two-qubit operator for a Mermin-square symbol such as `"ZX"`.
fn mermin_op(symbol: &str) -> Operator {
    spin_op(symbol)
}

/// Mermin square on two distinguishable qubits.
pub fn verify_mermin_square() -> VerificationReport {
    let mut checks = Vec::new();
    let rows: Vec<Vec<&str>> = MERMIN_SQUARE.iter().map(|r| r.to_vec()).collect();
    let cols: Vec<Vec<&str>> = (0..3).map(|c| MERMIN_SQUARE.iter().map(|r| r[c]).collect()).collect();
    for ctx in rows.iter().chain(&cols) {
        let ops: Vec<Operator> = ctx.iter().map(|s| mermin_op(s)).collect();
        let named: Vec<(&str, &Operator)> = ctx.iter().copied().zip(&ops).collect();
        checks.extend(pairwise_commutation(&named));
    }
    let scenario = mermin_square_scenario();
    checks.extend(product_consistency(&scenario, mermin_op, None));
    VerificationReport::new("mermin-square", checks, &scenario)
}

/// Symmetrized Mermin rectangle: the first two columns merge and the
/// state-independent contradiction disappears.
pub fn verify_symmetrized_mermin_rectangle() -> VerificationReport {
    let s_ix = sym_spin("IX");
    let s_iz = sym_spin("IZ");
    let s_xz = sym_spin("XZ");
    let s_iy = sym_spin("IY");
    let s_xy = sym_spin("XY");
    let s_yz = sym_spin("YZ");
    let comm = |a: &Operator, b: &Operator| commutator(a, b).unwrap();
    let i = I;

    let mut checks = vec![
        QuantumCheck::identity("sym(IX) · XX = sym(IX)", &(&s_ix * &spin_op("XX")), &s_ix),
        QuantumCheck::identity("sym(IZ) · ZZ = sym(IZ)", &(&s_iz * &spin_op("ZZ")), &s_iz),
        QuantumCheck::identity("sym(XZ) · YY = sym(XZ)", &(&s_xz * &spin_op("YY")), &s_xz),
        QuantumCheck::identity(
            "[sym(IX), sym(IZ)] = -2i sym(IY)",
            &comm(&s_ix, &s_iz),
            &s_iy.scale(-2.0 * i),
        ),
        QuantumCheck::identity(
            "[sym(IX), sym(XZ)] = -2i sym(XY)",
            &comm(&s_ix, &s_xz),
            &s_xy.scale(-2.0 * i),
        ),
        QuantumCheck::identity(
            "[sym(IZ), sym(XZ)] = +2i sym(YZ)",
            &comm(&s_iz, &s_xz),
            &s_yz.scale(2.0 * i),
        ),
        // The same two commutators with real coefficients. A commutator of
        // Hermitian operators is anti-Hermitian, so these cannot hold.
        QuantumCheck::identity(
            "[sym(IX), sym(XZ)] = -2 sym(XY) (real coefficient)",
            &comm(&s_ix, &s_xz),
            &s_xy.scale((-2.0).into()),
        ),
        QuantumCheck::identity(
            "[sym(IZ), sym(XZ)] = +2 sym(YZ) (real coefficient)",
            &comm(&s_iz, &s_xz),
            &s_yz.scale(2.0.into()),
        ),
        QuantumCheck::does_not_commute("sym(IX), sym(IZ) do not commute", &s_ix, &s_iz),
        QuantumCheck::does_not_commute("sym(IX), sym(XZ) do not commute", &s_ix, &s_xz),
        QuantumCheck::does_not_commute("sym(IZ), sym(XZ) do not commute", &s_iz, &s_xz),
    ];
    for (sym, joint) in [(&s_ix, "XX"), (&s_iz, "ZZ"), (&s_xz, "YY")] {
        checks.push(QuantumCheck::commutes(format!("row context commutes: [{joint}, ·]"), sym, &spin_op(joint)));
    }

    let scenario = mermin_rectangle_scenario();
    let mut report = VerificationReport::new("symmetrized-mermin-rectangle", checks, &scenario);
    report.notes.push(
        "each symbol appears in one context only; the rectangle admits noncontextual assignments".to_owned(),
    );
    report
}

/// Entries of the verification catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CatalogEntry {
    GhzDistinguishable,
    GhzIndistinguishableContextuality,
    GhzNonlocality,
    MerminSquare,
    SymmetrizedMerminRectangle,
}

impl CatalogEntry {
    pub const ALL: [CatalogEntry; 5] = [
        CatalogEntry::GhzDistinguishable,
        CatalogEntry::GhzIndistinguishableContextuality,
        CatalogEntry::GhzNonlocality,
        CatalogEntry::MerminSquare,
        CatalogEntry::SymmetrizedMerminRectangle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CatalogEntry::GhzDistinguishable => "ghz-distinguishable",
            CatalogEntry::GhzIndistinguishableContextuality => "ghz-indistinguishable-contextuality",
            CatalogEntry::GhzNonlocality => "ghz-nonlocality",
            CatalogEntry::MerminSquare => "mermin-square",
            CatalogEntry::SymmetrizedMerminRectangle => "symmetrized-mermin-rectangle",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::ALL.into_iter().find(|e| e.name() == name)
    }

    pub fn expected_conclusion(self) -> Conclusion {
        match self {
            CatalogEntry::SymmetrizedMerminRectangle => Conclusion::NoContradiction,
            _ => Conclusion::ContradictionEstablished,
        }
    }

    pub fn run(self) -> VerificationReport {
        match self {
            CatalogEntry::GhzDistinguishable => verify_ghz_distinguishable(),
            CatalogEntry::GhzIndistinguishableContextuality => verify_ghz_indistinguishable_contextuality(),
            CatalogEntry::GhzNonlocality => verify_ghz_nonlocality(),
            CatalogEntry::MerminSquare => verify_mermin_square(),
            CatalogEntry::SymmetrizedMerminRectangle => verify_symmetrized_mermin_rectangle(),
        }
    }
}
