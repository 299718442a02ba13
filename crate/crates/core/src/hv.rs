//! Exhaustive search for noncontextual ±1 value assignments.
//!
//! A [`Scenario`] names abstract observables and lists constraints on the
//! values they take. [`search`] enumerates every assignment of ±1 to the
//! observables and counts the ones satisfying all constraints; a count of
//! zero is an all-versus-nothing contradiction.
//!
//! Assignments are enumerated as bitmasks. Symbol `i` of `n` owns bit
//! `n - 1 - i` and a set bit means +1, so counting upwards visits assignments
//! in lexicographic order over the declared symbols with -1 before +1.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;
use std::thread;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Hard cap on the number of observables in a scenario.
pub const MAX_OBSERVABLES: usize = 20;
/// Default number of witness assignments kept by [`search`].
pub const DEFAULT_WITNESS_CAP: usize = 32;

/// Below this many observables the search runs on the calling thread.
const PARALLEL_THRESHOLD: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScenarioError {
    #[error("{count} observables exceed the search cap of {cap}")]
    TooManyObservables { count: usize, cap: usize },
    #[error("observable `{0}` declared twice")]
    DuplicateObservable(String),
    #[error("constraint {constraint} references undeclared symbol `{symbol}`")]
    UnknownSymbol { constraint: usize, symbol: String },
    #[error("constraint {constraint}: {reason}")]
    InvalidTarget { constraint: usize, reason: String },
    #[error("constraint {constraint} has an empty product term")]
    EmptyTerm { constraint: usize },
    #[error("constraint {constraint}: a product constraint takes exactly one term, got {terms}")]
    ProductArity { constraint: usize, terms: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConstraintKind {
    /// The product of the listed values equals the target (±1).
    ProductEquals,
    /// The sum over terms of each term's product equals the target.
    SumOfProductsEquals,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Constraint {
    pub kind: ConstraintKind,
    pub terms: Vec<Vec<String>>,
    pub target: i64,
}

impl Constraint {
    pub fn product<S: AsRef<str>>(symbols: &[S], target: i64) -> Self {
        Self {
            kind: ConstraintKind::ProductEquals,
            terms: vec![symbols.iter().map(|s| s.as_ref().to_owned()).collect()],
            target,
        }
    }

    pub fn sum_of_products<S: AsRef<str>>(terms: &[&[S]], target: i64) -> Self {
        Self {
            kind: ConstraintKind::SumOfProductsEquals,
            terms: terms
                .iter()
                .map(|t| t.iter().map(|s| s.as_ref().to_owned()).collect())
                .collect(),
            target,
        }
    }

    /// Distinct symbols in first-appearance order.
    pub fn symbols(&self) -> Vec<&str> {
        let mut seen = HashSet::new();
        self.terms
            .iter()
            .flatten()
            .map(String::as_str)
            .filter(|s| seen.insert(*s))
            .collect()
    }

    /// Left-hand side under the given valuation.
    pub fn evaluate(&self, value_of: impl Fn(&str) -> i8) -> i64 {
        self.terms
            .iter()
            .map(|t| t.iter().map(|s| i64::from(value_of(s))).product::<i64>())
            .sum()
    }

    pub fn holds(&self, value_of: impl Fn(&str) -> i8) -> bool {
        self.evaluate(value_of) == self.target
    }

    fn validate_target(&self) -> Result<(), String> {
        match self.kind {
            ConstraintKind::ProductEquals => {
                if self.target.abs() != 1 {
                    return Err(format!("product target must be -1 or +1, got {}", self.target));
                }
            }
            ConstraintKind::SumOfProductsEquals => {
                let k = self.terms.len() as i64;
                if self.target.abs() > k {
                    return Err(format!("sum target {} outside [-{k}, {k}]", self.target));
                }
                if (self.target - k) % 2 != 0 {
                    return Err(format!(
                        "sum target {} has the wrong parity for {k} terms",
                        self.target
                    ));
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for Constraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<String> = self.terms.iter().map(|t| t.join("·")).collect();
        write!(f, "{} = {:+}", terms.join(" + "), self.target)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Scenario {
    observables: Vec<String>,
    constraints: Vec<Constraint>,
}

impl Scenario {
    pub fn new<S: Into<String>>(
        observables: impl IntoIterator<Item = S>,
        constraints: Vec<Constraint>,
    ) -> Result<Self, ScenarioError> {
        let observables: Vec<String> = observables.into_iter().map(Into::into).collect();
        if observables.len() > MAX_OBSERVABLES {
            return Err(ScenarioError::TooManyObservables {
                count: observables.len(),
                cap: MAX_OBSERVABLES,
            });
        }
        let mut declared = HashSet::new();
        for o in &observables {
            if !declared.insert(o.as_str()) {
                return Err(ScenarioError::DuplicateObservable(o.clone()));
            }
        }
        for (i, c) in constraints.iter().enumerate() {
            if c.kind == ConstraintKind::ProductEquals && c.terms.len() != 1 {
                return Err(ScenarioError::ProductArity {
                    constraint: i,
                    terms: c.terms.len(),
                });
            }
            if c.terms.iter().any(Vec::is_empty) {
                return Err(ScenarioError::EmptyTerm { constraint: i });
            }
            if let Some(s) = c.terms.iter().flatten().find(|s| !declared.contains(s.as_str())) {
                return Err(ScenarioError::UnknownSymbol {
                    constraint: i,
                    symbol: s.clone(),
                });
            }
            c.validate_target()
                .map_err(|reason| ScenarioError::InvalidTarget { constraint: i, reason })?;
        }
        Ok(Self {
            observables,
            constraints,
        })
    }

    pub fn empty() -> Self {
        Self {
            observables: Vec::new(),
            constraints: Vec::new(),
        }
    }

    pub fn observables(&self) -> &[String] {
        &self.observables
    }

    pub fn constraints(&self) -> &[Constraint] {
        &self.constraints
    }

    /// Copy with constraint `index` removed.
    pub fn without_constraint(&self, index: usize) -> Self {
        let mut constraints = self.constraints.clone();
        constraints.remove(index);
        Self {
            observables: self.observables.clone(),
            constraints,
        }
    }

    /// Number of constraints each symbol appears in.
    pub fn context_counts(&self) -> BTreeMap<&str, usize> {
        let mut counts: BTreeMap<&str, usize> =
            self.observables.iter().map(|o| (o.as_str(), 0)).collect();
        for c in &self.constraints {
            for s in c.symbols() {
                *counts.get_mut(s).unwrap() += 1;
            }
        }
        counts
    }

    fn index_of(&self) -> HashMap<&str, usize> {
        self.observables
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SearchResult {
    /// Declared symbol order; witness entries are aligned with it.
    pub symbols: Vec<String>,
    pub satisfiable: bool,
    /// Exact number of satisfying assignments.
    pub count: u64,
    /// The first satisfying assignments in enumeration order, up to the cap.
    pub witnesses: Vec<Vec<i8>>,
}

impl SearchResult {
    pub fn witness_map(&self, index: usize) -> BTreeMap<&str, i8> {
        self.symbols
            .iter()
            .map(String::as_str)
            .zip(self.witnesses[index].iter().copied())
            .collect()
    }
}

/// A constraint compiled to per-term bitmasks. Repeated symbols within one
/// term cancel, since `v * v = 1` for `v = ±1`.
struct Compiled {
    masks: Vec<u32>,
    target: i64,
}

impl Compiled {
    fn new(c: &Constraint, index: &HashMap<&str, usize>, n: usize) -> Self {
        let masks = c
            .terms
            .iter()
            .map(|t| t.iter().fold(0u32, |m, s| m ^ (1 << (n - 1 - index[s.as_str()]))))
            .collect();
        Self {
            masks,
            target: c.target,
        }
    }

    #[inline]
    fn holds(&self, assignment: u32) -> bool {
        let negatives = !assignment;
        let sum: i64 = self
            .masks
            .iter()
            .map(|&m| if (negatives & m).count_ones() & 1 == 0 { 1 } else { -1 })
            .sum();
        sum == self.target
    }
}

fn decode(assignment: u32, n: usize) -> Vec<i8> {
    (0..n)
        .map(|i| if assignment >> (n - 1 - i) & 1 == 1 { 1 } else { -1 })
        .collect()
}

fn scan(compiled: &[Compiled], range: std::ops::Range<u32>, n: usize, cap: usize) -> (u64, Vec<Vec<i8>>) {
    let mut count = 0;
    let mut witnesses = Vec::new();
    for a in range {
        if compiled.iter().all(|c| c.holds(a)) {
            count += 1;
            if witnesses.len() < cap {
                witnesses.push(decode(a, n));
            }
        }
    }
    (count, witnesses)
}

pub fn search(s: &Scenario) -> SearchResult {
    search_with_cap(s, DEFAULT_WITNESS_CAP)
}

/// Exhaustive search keeping at most `witness_cap` witnesses. Large
/// scenarios are split across threads; the result is identical to a
/// sequential scan.
pub fn search_with_cap(s: &Scenario, witness_cap: usize) -> SearchResult {
    let n = s.observables.len();
    debug_assert!(n <= MAX_OBSERVABLES);
    let index = s.index_of();
    let compiled: Vec<Compiled> = s.constraints.iter().map(|c| Compiled::new(c, &index, n)).collect();
    let total: u32 = 1 << n;

    let threads = if n >= PARALLEL_THRESHOLD {
        thread::available_parallelism().map_or(1, |t| t.get()).min(16) as u32
    } else {
        1
    };

    let (count, witnesses) = if threads <= 1 {
        scan(&compiled, 0..total, n, witness_cap)
    } else {
        let chunk = total.div_ceil(threads);
        let parts: Vec<(u64, Vec<Vec<i8>>)> = thread::scope(|scope| {
            let handles: Vec<_> = (0..threads)
                .map(|t| {
                    let start = t * chunk;
                    let end = (start + chunk).min(total);
                    let compiled = &compiled;
                    scope.spawn(move || scan(compiled, start..end, n, witness_cap))
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        let count = parts.iter().map(|p| p.0).sum();
        let witnesses = parts.into_iter().flat_map(|p| p.1).take(witness_cap).collect();
        (count, witnesses)
    };

    SearchResult {
        symbols: s.observables.clone(),
        satisfiable: count > 0,
        count,
        witnesses,
    }
}

/// Values for one constraint's symbols, in that constraint's symbol order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContextValuation {
    pub constraint: usize,
    pub values: Vec<(String, i8)>,
}

impl ContextValuation {
    pub fn value(&self, symbol: &str) -> Option<i8> {
        self.values.iter().find(|(s, _)| s == symbol).map(|(_, v)| *v)
    }
}

/// Every valuation of each constraint's own symbols that satisfies it, with
/// no consistency required between constraints.
pub fn context_solutions(s: &Scenario) -> Vec<Vec<ContextValuation>> {
    s.constraints
        .iter()
        .enumerate()
        .map(|(ci, c)| {
            let symbols = c.symbols();
            let k = symbols.len();
            (0u32..1 << k)
                .map(|a| {
                    let values: Vec<(String, i8)> = symbols
                        .iter()
                        .zip(decode(a, k))
                        .map(|(s, v)| ((*s).to_owned(), v))
                        .collect();
                    ContextValuation {
                        constraint: ci,
                        values,
                    }
                })
                .filter(|cv| c.holds(|sym| cv.value(sym).unwrap()))
                .collect()
        })
        .collect()
}

/// A context-dependent assignment: the first satisfying valuation of every
/// constraint, or `None` if some constraint has no solution at all.
pub fn contextual_witness(s: &Scenario) -> Option<Vec<ContextValuation>> {
    context_solutions(s)
        .into_iter()
        .map(|sols| sols.into_iter().next())
        .collect()
}

/// Checks that each valuation covers exactly its constraint's symbols and
/// satisfies it, and that every constraint has one valuation.
pub fn validate_contextual(s: &Scenario, assignment: &[ContextValuation]) -> bool {
    assignment.len() == s.constraints.len()
        && assignment.iter().enumerate().all(|(i, cv)| {
            let c = &s.constraints[i];
            let mut symbols = c.symbols();
            let mut given: Vec<&str> = cv.values.iter().map(|(s, _)| s.as_str()).collect();
            symbols.sort_unstable();
            given.sort_unstable();
            cv.constraint == i
                && symbols == given
                && cv.values.iter().all(|(_, v)| v.abs() == 1)
                && c.holds(|sym| cv.value(sym).unwrap())
        })
}

/// Six symbols `X1..Y3` with the four GHZ product rows; the last row's
/// target is `last_target`.
pub fn ghz_scenario(last_target: i64) -> Scenario {
    Scenario::new(
        ["X1", "Y1", "X2", "Y2", "X3", "Y3"],
        vec![
            Constraint::product(&["X1", "Y2", "Y3"], 1),
            Constraint::product(&["Y1", "X2", "Y3"], 1),
            Constraint::product(&["Y1", "Y2", "X3"], 1),
            Constraint::product(&["X1", "X2", "X3"], last_target),
        ],
    )
    .expect("GHZ scenario is well formed")
}

/// The GHZ rows with the three `XYY`-type rows merged into one sum rule.
pub fn symmetrized_ghz_scenario() -> Scenario {
    Scenario::new(
        ["X1", "Y1", "X2", "Y2", "X3", "Y3"],
        vec![
            Constraint::sum_of_products(
                &[&["X1", "Y2", "Y3"], &["Y1", "X2", "Y3"], &["Y1", "Y2", "X3"]],
                3,
            ),
            Constraint::product(&["X1", "X2", "X3"], -1),
        ],
    )
    .expect("symmetrized GHZ scenario is well formed")
}

/// Symbol names of the Mermin square, row by row.
pub const MERMIN_SQUARE: [[&str; 3]; 3] = [
    ["IX", "XI", "XX"],
    ["ZI", "IZ", "ZZ"],
    ["ZX", "XZ", "YY"],
];

/// Nine symbols, three row products of +1, two column products of +1 and a
/// last column product of -1.
pub fn mermin_square_scenario() -> Scenario {
    let mut constraints: Vec<Constraint> = MERMIN_SQUARE
        .iter()
        .map(|row| Constraint::product(row, 1))
        .collect();
    for col in 0..3 {
        let symbols: Vec<&str> = MERMIN_SQUARE.iter().map(|row| row[col]).collect();
        constraints.push(Constraint::product(&symbols, if col == 2 { -1 } else { 1 }));
    }
    Scenario::new(MERMIN_SQUARE.iter().flatten().copied(), constraints)
        .expect("Mermin square scenario is well formed")
}

/// Rows of the symmetrized Mermin rectangle: the symmetrized first-column
/// operator and the joint operator of each row.
pub const MERMIN_RECTANGLE: [[&str; 2]; 3] = [["sIX", "XX"], ["sIZ", "ZZ"], ["sXZ", "YY"]];

/// The rectangle as a value-assignment problem. Each row identity
/// `sym · J = sym` leaves the symmetrized operator free and, for a nonzero
/// value of it, forces `J = +1`. The first column no longer commutes, so
/// rows are the only contexts and no symbol appears in two of them.
pub fn mermin_rectangle_scenario() -> Scenario {
    Scenario::new(
        MERMIN_RECTANGLE.iter().flatten().copied(),
        MERMIN_RECTANGLE
            .iter()
            .map(|[_, joint]| Constraint::product(&[*joint], 1))
            .collect(),
    )
    .expect("rectangle scenario is well formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: evaluate every assignment through symbol lookup.
    fn brute_force_count(s: &Scenario) -> u64 {
        let n = s.observables().len();
        let mut count = 0;
        for a in 0u32..1 << n {
            let values: HashMap<&str, i8> = s
                .observables()
                .iter()
                .enumerate()
                .map(|(i, o)| (o.as_str(), if a & (1 << i) != 0 { 1 } else { -1 }))
                .collect();
            if s.constraints().iter().all(|c| c.holds(|sym| values[sym])) {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn ghz_is_unsatisfiable() {
        let r = search(&ghz_scenario(-1));
        assert!(!r.satisfiable);
        assert_eq!(r.count, 0);
        assert!(r.witnesses.is_empty());
    }

    #[test]
    fn ghz_with_flipped_row_matches_brute_force() {
        let s = ghz_scenario(1);
        let oracle = brute_force_count(&s);
        // the fourth row is the product of the other three, so three
        // independent parity constraints on six bits leave 2^3
        assert_eq!(oracle, 8);
        assert_eq!(search(&s).count, oracle);
    }

    #[test]
    fn symmetrized_ghz_is_unsatisfiable() {
        assert_eq!(search(&symmetrized_ghz_scenario()).count, 0);
    }

    #[test]
    fn mermin_square_is_unsatisfiable() {
        let s = mermin_square_scenario();
        assert_eq!(s.observables().len(), 9);
        assert_eq!(s.constraints().len(), 6);
        assert_eq!(search(&s).count, 0);
    }

    #[test]
    fn mermin_square_without_last_column_is_satisfiable() {
        let s = mermin_square_scenario().without_constraint(5);
        let r = search(&s);
        assert_eq!(r.count, brute_force_count(&s));
        assert!(r.count > 0);
        assert_eq!(r.count, 16);
    }

    #[test]
    fn rectangle_has_disjoint_contexts() {
        let s = mermin_rectangle_scenario();
        assert!(s.context_counts().values().all(|&c| c <= 1));
        let r = search(&s);
        assert!(r.satisfiable);
        assert_eq!(r.count, 8);
    }

    #[test]
    fn witnesses_are_lexicographic() {
        let s = Scenario::new(["a", "b"], vec![Constraint::product(&["a", "b"], 1)]).unwrap();
        let r = search(&s);
        assert_eq!(r.witnesses, vec![vec![-1, -1], vec![1, 1]]);
        assert_eq!(r.witness_map(1)["a"], 1);
    }

    #[test]
    fn witness_cap_keeps_exact_count() {
        let s = Scenario::new(["a", "b", "c", "d", "e", "f", "g"], vec![]).unwrap();
        let r = search_with_cap(&s, 3);
        assert_eq!(r.count, 128);
        assert_eq!(r.witnesses.len(), 3);
    }

    #[test]
    fn repeated_symbol_cancels_in_product() {
        let s = Scenario::new(["a", "b"], vec![Constraint::product(&["a", "a", "b"], -1)]).unwrap();
        let r = search(&s);
        assert_eq!(r.count, brute_force_count(&s));
        assert_eq!(r.count, 2);
    }

    #[test]
    fn parallel_scan_matches_sequential() {
        let names: Vec<String> = (0..17).map(|i| format!("v{i}")).collect();
        let s = Scenario::new(
            names.clone(),
            vec![
                Constraint::product(&[&names[0], &names[5], &names[16]], -1),
                Constraint::sum_of_products(&[&[&names[1]], &[&names[2]], &[&names[3], &names[4]]], 1),
            ],
        )
        .unwrap();
        let par = search(&s);
        let compiled: Vec<Compiled> = s
            .constraints()
            .iter()
            .map(|c| Compiled::new(c, &s.index_of(), 17))
            .collect();
        let (count, witnesses) = scan(&compiled, 0..1 << 17, 17, DEFAULT_WITNESS_CAP);
        assert_eq!(par.count, count);
        assert_eq!(par.witnesses, witnesses);
        assert_eq!(count, brute_force_count(&s));
    }

    #[test]
    fn validation_errors() {
        let too_many: Vec<String> = (0..21).map(|i| format!("s{i}")).collect();
        assert!(matches!(
            Scenario::new(too_many, vec![]),
            Err(ScenarioError::TooManyObservables { count: 21, cap: 20 })
        ));
        assert_eq!(
            Scenario::new(["a", "a"], vec![]),
            Err(ScenarioError::DuplicateObservable("a".into()))
        );
        assert!(matches!(
            Scenario::new(["a"], vec![Constraint::product(&["b"], 1)]),
            Err(ScenarioError::UnknownSymbol { constraint: 0, .. })
        ));
        assert!(matches!(
            Scenario::new(["a"], vec![Constraint::product(&["a"], 2)]),
            Err(ScenarioError::InvalidTarget { .. })
        ));
        assert!(matches!(
            Scenario::new(["a", "b"], vec![Constraint::sum_of_products(&[&["a"], &["b"]], 1)]),
            Err(ScenarioError::InvalidTarget { .. })
        ));
        assert!(matches!(
            Scenario::new(["a", "b"], vec![Constraint::sum_of_products(&[&["a"], &["b"]], 4)]),
            Err(ScenarioError::InvalidTarget { .. })
        ));
        let empty: &[&str] = &[];
        assert!(matches!(
            Scenario::new(["a"], vec![Constraint::product(empty, 1)]),
            Err(ScenarioError::EmptyTerm { .. })
        ));
        let two_terms = Constraint {
            kind: ConstraintKind::ProductEquals,
            terms: vec![vec!["a".into()], vec!["a".into()]],
            target: 1,
        };
        assert!(matches!(
            Scenario::new(["a"], vec![two_terms]),
            Err(ScenarioError::ProductArity { terms: 2, .. })
        ));
    }

    #[test]
    fn empty_scenario() {
        let r = search(&Scenario::empty());
        assert_eq!(r.count, 1);
        assert_eq!(r.witnesses, vec![Vec::<i8>::new()]);
        assert_eq!(contextual_witness(&Scenario::empty()), Some(vec![]));
    }

    #[test]
    fn ghz_admits_the_textbook_contextual_assignment() {
        let s = ghz_scenario(-1);
        // all +1, except X1 which flips to -1 in the XXX row
        let assignment: Vec<ContextValuation> = s
            .constraints()
            .iter()
            .enumerate()
            .map(|(i, c)| ContextValuation {
                constraint: i,
                values: c
                    .symbols()
                    .into_iter()
                    .map(|sym| (sym.to_owned(), if i == 3 && sym == "X1" { -1 } else { 1 }))
                    .collect(),
            })
            .collect();
        assert!(validate_contextual(&s, &assignment));

        let solutions = context_solutions(&s);
        for cv in &assignment {
            assert!(solutions[cv.constraint].contains(cv));
        }
        let w = contextual_witness(&s).unwrap();
        assert!(validate_contextual(&s, &w));
    }

    #[test]
    fn invalid_contextual_assignments_are_rejected() {
        let s = ghz_scenario(-1);
        let mut w = contextual_witness(&s).unwrap();
        w[3].values[0].1 *= -1;
        assert!(!validate_contextual(&s, &w));
        assert!(!validate_contextual(&s, &w[..3]));
    }

    #[test]
    fn unsatisfiable_context_has_no_witness() {
        // a single product of a symbol with itself is always +1
        let s = Scenario::new(["a"], vec![Constraint::product(&["a", "a"], -1)]).unwrap();
        assert_eq!(contextual_witness(&s), None);
    }

    #[test]
    fn constraint_display() {
        assert_eq!(
            symmetrized_ghz_scenario().constraints()[0].to_string(),
            "X1·Y2·Y3 + Y1·X2·Y3 + Y1·Y2·X3 = +3"
        );
    }
}
