//! Command-line front end and the scenario file format.
//!
//! A scenario file lists observables and constraints, one directive per line:
//!
//! ```text
//! # GHZ rows
//! observables: X1 Y1 X2 Y2 X3 Y3
//! constraint: product X1 Y2 Y3 = +1
//! constraint: sum ( X1 Y2 Y3 ; Y1 X2 Y3 ; Y1 Y2 X3 ) = 3
//! ```
//!
//! `observables:` may appear on several lines; declarations accumulate and
//! may follow the constraints that use them.

use std::collections::HashMap;
use std::fmt;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::hv::{self, Constraint, ConstraintKind, Scenario, SearchResult, MAX_OBSERVABLES};
use crate::scenarios::{CatalogEntry, Comparison, VerificationReport};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum DiagCode {
    /// Constraint references an undeclared symbol.
    UnknownSymbol,
    /// Target is not an integer.
    MalformedTarget,
    TooManyObservables,
    DuplicateSymbol,
    /// Target is an integer outside the constraint's allowed values.
    TargetOutOfRange,
    Syntax,
    InvalidSymbolName,
    UnknownDirective,
}

impl DiagCode {
    pub fn as_str(self) -> &'static str {
        match self {
            DiagCode::UnknownSymbol => "E001",
            DiagCode::MalformedTarget => "E002",
            DiagCode::TooManyObservables => "E003",
            DiagCode::DuplicateSymbol => "E004",
            DiagCode::TargetOutOfRange => "E005",
            DiagCode::Syntax => "E006",
            DiagCode::InvalidSymbolName => "E007",
            DiagCode::UnknownDirective => "E008",
        }
    }
}

/// A located parse error. Lines and columns are 1-based; columns count chars.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub code: DiagCode,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}: error[{}]: {}",
            self.line,
            self.column,
            self.code.as_str(),
            self.message
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn is_punct(c: char) -> bool {
    matches!(c, '(' | ')' | ';' | '=')
}

/// Splits on whitespace; punctuation characters are tokens of their own.
fn tokenize(line: &str, first_column: usize) -> Vec<Token<'_>> {
    let mut tokens = Vec::new();
    let mut start: Option<(usize, usize)> = None;
    let mut column = first_column;
    for (byte, c) in line.char_indices() {
        if c.is_whitespace() || is_punct(c) {
            if let Some((b, col)) = start.take() {
                tokens.push(Token {
                    text: &line[b..byte],
                    column: col,
                });
            }
            if is_punct(c) {
                tokens.push(Token {
                    text: &line[byte..byte + 1],
                    column,
                });
            }
        } else if start.is_none() {
            start = Some((byte, column));
        }
        column += 1;
    }
    if let Some((b, col)) = start {
        tokens.push(Token {
            text: &line[b..],
            column: col,
        });
    }
    tokens
}

fn is_symbol(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

struct SymbolRef {
    name: String,
    line: usize,
    column: usize,
}

struct PendingConstraint {
    kind: ConstraintKind,
    terms: Vec<Vec<SymbolRef>>,
    target: i64,
}

struct LineParser<'a> {
    line: usize,
    tokens: Vec<Token<'a>>,
    pos: usize,
    end_column: usize,
}

impl<'a> LineParser<'a> {
    fn err(&self, code: DiagCode, column: usize, message: impl Into<String>) -> Diagnostic {
        Diagnostic {
            code,
            line: self.line,
            column,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<&Token<'a>> {
        self.tokens.get(self.pos)
    }

    fn next_column(&self) -> usize {
        self.peek().map_or(self.end_column, |t| t.column)
    }

    fn expect(&mut self, text: &str) -> Result<(), Diagnostic> {
        match self.peek() {
            Some(t) if t.text == text => {
                self.pos += 1;
                Ok(())
            }
            Some(t) => Err(self.err(
                DiagCode::Syntax,
                t.column,
                format!("expected `{text}`, found `{}`", t.text),
            )),
            None => Err(self.err(
                DiagCode::Syntax,
                self.end_column,
                format!("expected `{text}`, found end of line"),
            )),
        }
    }

    /// One or more symbols, stopping at punctuation or end of line.
    fn symbols(&mut self) -> Result<Vec<SymbolRef>, Diagnostic> {
        let mut out = Vec::new();
        while let Some(t) = self.peek() {
            if t.text.len() == 1 && is_punct(t.text.chars().next().unwrap()) {
                break;
            }
            if !is_symbol(t.text) {
                return Err(self.err(
                    DiagCode::InvalidSymbolName,
                    t.column,
                    format!("`{}` is not a valid symbol name", t.text),
                ));
            }
            out.push(SymbolRef {
                name: t.text.to_owned(),
                line: self.line,
                column: t.column,
            });
            self.pos += 1;
        }
        if out.is_empty() {
            return Err(self.err(DiagCode::Syntax, self.next_column(), "expected at least one symbol"));
        }
        Ok(out)
    }

    fn target(&mut self) -> Result<(i64, usize), Diagnostic> {
        let t = self
            .peek()
            .cloned()
            .ok_or_else(|| self.err(DiagCode::MalformedTarget, self.end_column, "missing target after `=`"))?;
        self.pos += 1;
        let value = t.text.parse::<i64>().map_err(|_| {
            self.err(
                DiagCode::MalformedTarget,
                t.column,
                format!("target `{}` is not an integer", t.text),
            )
        })?;
        if let Some(extra) = self.peek() {
            return Err(self.err(
                DiagCode::Syntax,
                extra.column,
                format!("unexpected `{}` after target", extra.text),
            ));
        }
        Ok((value, t.column))
    }

    fn constraint(&mut self) -> Result<PendingConstraint, Diagnostic> {
        let kind_tok = self
            .peek()
            .cloned()
            .ok_or_else(|| self.err(DiagCode::Syntax, self.end_column, "expected `product` or `sum`"))?;
        self.pos += 1;
        let (kind, terms) = match kind_tok.text {
            "product" => (ConstraintKind::ProductEquals, vec![self.symbols()?]),
            "sum" => {
                self.expect("(")?;
                let mut terms = vec![self.symbols()?];
                while self.peek().is_some_and(|t| t.text == ";") {
                    self.pos += 1;
                    terms.push(self.symbols()?);
                }
                self.expect(")")?;
                (ConstraintKind::SumOfProductsEquals, terms)
            }
            other => {
                return Err(self.err(
                    DiagCode::Syntax,
                    kind_tok.column,
                    format!("expected `product` or `sum`, found `{other}`"),
                ))
            }
        };
        self.expect("=")?;
        let (target, column) = self.target()?;
        match kind {
            ConstraintKind::ProductEquals if target.abs() != 1 => {
                return Err(self.err(
                    DiagCode::TargetOutOfRange,
                    column,
                    format!("product target must be -1 or +1, got {target}"),
                ));
            }
            ConstraintKind::SumOfProductsEquals => {
                let k = terms.len() as i64;
                if target.abs() > k || (target - k) % 2 != 0 {
                    return Err(self.err(
                        DiagCode::TargetOutOfRange,
                        column,
                        format!("sum of {k} products can only equal -{k}..={k} in steps of 2, got {target}"),
                    ));
                }
            }
            _ => {}
        }
        Ok(PendingConstraint { kind, terms, target })
    }
}

/// Parses a scenario file. On failure returns every diagnostic found, in
/// line order.
pub fn parse_scenario(text: &str) -> Result<Scenario, Vec<Diagnostic>> {
    let mut diags = Vec::new();
    let mut declared: Vec<SymbolRef> = Vec::new();
    let mut seen: HashMap<String, (usize, usize)> = HashMap::new();
    let mut pending = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let trimmed = content.trim_start();
        if trimmed.trim_end().is_empty() {
            continue;
        }
        let lead = content.len() - trimmed.len();
        let lead_cols = content[..lead].chars().count();
        let end_column = content.trim_end().chars().count() + 1;

        let Some(colon) = trimmed.find(':') else {
            diags.push(Diagnostic {
                code: DiagCode::UnknownDirective,
                line: line_no,
                column: lead_cols + 1,
                message: "expected `observables:` or `constraint:`".into(),
            });
            continue;
        };
        let directive = trimmed[..colon].trim_end();
        let rest = &trimmed[colon + 1..];
        let rest_column = lead_cols + trimmed[..=colon].chars().count() + 1;
        let mut parser = LineParser {
            line: line_no,
            tokens: tokenize(rest, rest_column),
            pos: 0,
            end_column,
        };

        match directive {
            "observables" => {
                for t in &parser.tokens {
                    if !is_symbol(t.text) {
                        diags.push(parser.err(
                            DiagCode::InvalidSymbolName,
                            t.column,
                            format!("`{}` is not a valid symbol name", t.text),
                        ));
                        continue;
                    }
                    if let Some((l, c)) = seen.get(t.text) {
                        diags.push(parser.err(
                            DiagCode::DuplicateSymbol,
                            t.column,
                            format!("symbol `{}` already declared at {l}:{c}", t.text),
                        ));
                        continue;
                    }
                    if declared.len() == MAX_OBSERVABLES {
                        diags.push(parser.err(
                            DiagCode::TooManyObservables,
                            t.column,
                            format!("more than {MAX_OBSERVABLES} observables; the exhaustive search is capped at 2^{MAX_OBSERVABLES}"),
                        ));
                        continue;
                    }
                    seen.insert(t.text.to_owned(), (line_no, t.column));
                    declared.push(SymbolRef {
                        name: t.text.to_owned(),
                        line: line_no,
                        column: t.column,
                    });
                }
            }
            "constraint" => match parser.constraint() {
                Ok(c) => pending.push(c),
                Err(d) => diags.push(d),
            },
            other => diags.push(Diagnostic {
                code: DiagCode::UnknownDirective,
                line: line_no,
                column: lead_cols + 1,
                message: format!("unknown directive `{other}:`"),
            }),
        }
    }

    let mut constraints = Vec::with_capacity(pending.len());
    for c in &pending {
        for s in c.terms.iter().flatten() {
            if !seen.contains_key(&s.name) {
                diags.push(Diagnostic {
                    code: DiagCode::UnknownSymbol,
                    line: s.line,
                    column: s.column,
                    message: format!("symbol `{}` is not declared in `observables:`", s.name),
                });
            }
        }
        constraints.push(Constraint {
            kind: c.kind,
            terms: c
                .terms
                .iter()
                .map(|t| t.iter().map(|s| s.name.clone()).collect())
                .collect(),
            target: c.target,
        });
    }

    if !diags.is_empty() {
        diags.sort_by_key(|d| (d.line, d.column));
        return Err(diags);
    }
    Scenario::new(declared.into_iter().map(|s| s.name), constraints).map_err(|e| {
        vec![Diagnostic {
            code: DiagCode::Syntax,
            line: 1,
            column: 1,
            message: e.to_string(),
        }]
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "avn", version, about = "All-versus-nothing contextuality and nonlocality checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Run catalog verifications (`all` or one entry name).
    Verify {
        name: String,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Parse a scenario file and count its noncontextual assignments.
    Search {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Maximum number of witness assignments to print.
        #[arg(long, default_value_t = hv::DEFAULT_WITNESS_CAP)]
        witnesses: usize,
    },
    /// List catalog entries.
    List,
}

/// Parses arguments and runs; returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return code;
        }
    };
    let result = match cli.command {
        Command::Verify { name, format } => verify(&name, format, out, err),
        Command::Search {
            file,
            format,
            witnesses,
        } => search_file(&file, format, witnesses, out, err),
        Command::List => {
            for e in CatalogEntry::ALL {
                let _ = writeln!(out, "{:<38} expect {}", e.name(), e.expected_conclusion());
            }
            Ok(EXIT_OK)
        }
    };
    result.unwrap_or_else(|e| {
        let _ = writeln!(err, "error: {e}");
        EXIT_USAGE
    })
}

fn verify(name: &str, format: Format, out: &mut dyn Write, err: &mut dyn Write) -> std::io::Result<i32> {
    let entries: Vec<CatalogEntry> = if name == "all" {
        CatalogEntry::ALL.to_vec()
    } else if let Some(e) = CatalogEntry::from_name(name) {
        vec![e]
    } else {
        let names: Vec<&str> = CatalogEntry::ALL.iter().map(|e| e.name()).collect();
        writeln!(
            err,
            "error: unknown catalog entry `{name}`; expected `all` or one of: {}",
            names.join(", ")
        )?;
        return Ok(EXIT_USAGE);
    };

    let reports: Vec<(CatalogEntry, VerificationReport)> = entries.iter().map(|&e| (e, e.run())).collect();
    match format {
        Format::Json => {
            let only: Vec<&VerificationReport> = reports.iter().map(|(_, r)| r).collect();
            writeln!(out, "{}", serde_json::to_string_pretty(&only).expect("reports serialize"))?;
        }
        Format::Text => {
            for (entry, report) in &reports {
                write_report_text(out, report, entry.expected_conclusion())?;
            }
        }
    }
    let all_match = reports.iter().all(|(e, r)| r.conclusion == e.expected_conclusion());
    Ok(if all_match { EXIT_OK } else { EXIT_MISMATCH })
}

/// Scientific notation with three significant digits.
pub fn sci(x: f64) -> String {
    format!("{x:.2e}")
}

fn sci_complex(re: f64, im: f64) -> String {
    let sign = if im.is_sign_negative() { '-' } else { '+' };
    format!("{}{sign}{}i", sci(re), sci(im.abs()))
}

pub fn write_report_text(
    out: &mut dyn Write,
    report: &VerificationReport,
    expected: crate::scenarios::Conclusion,
) -> std::io::Result<()> {
    writeln!(out, "== {}", report.name)?;
    for c in &report.quantum_checks {
        let op = match c.comparison {
            Comparison::Below => "<",
            Comparison::Above => ">",
        };
        writeln!(
            out,
            "  [{}] {}  computed {}  residual {} {} {}",
            if c.pass { "PASS" } else { "FAIL" },
            c.description,
            sci_complex(c.computed_re, c.computed_im),
            sci(c.residual),
            op,
            sci(c.tolerance),
        )?;
    }
    write_hv_text(out, &report.hv, 3)?;
    if let Some(sym) = &report.symmetry {
        writeln!(out, "  exchange symmetry: {:?} (tol {})", sym.class, sci(sym.tolerance))?;
        for e in &sym.per_permutation {
            writeln!(
                out,
                "    perm {:?} parity {:+}  |Pv - v| {}  |Pv + v| {}  -> {:?}",
                e.permutation,
                e.parity,
                sci(e.residual_plus),
                sci(e.residual_minus),
                e.verdict
            )?;
        }
    }
    for n in &report.notes {
        writeln!(out, "  note: {n}")?;
    }
    let status = if report.conclusion == expected { "as expected" } else { "MISMATCH" };
    writeln!(out, "  conclusion: {} ({status})", report.conclusion)?;
    Ok(())
}

fn write_hv_text(out: &mut dyn Write, hv: &SearchResult, max_witnesses: usize) -> std::io::Result<()> {
    writeln!(
        out,
        "  hv: {} symbols, count={} {}",
        hv.symbols.len(),
        hv.count,
        if hv.satisfiable { "SATISFIABLE" } else { "UNSATISFIABLE" }
    )?;
    for w in hv.witnesses.iter().take(max_witnesses) {
        let cells: Vec<String> = hv
            .symbols
            .iter()
            .zip(w)
            .map(|(s, v)| format!("{s}={v:+}"))
            .collect();
        writeln!(out, "    witness: {}", cells.join(" "))?;
    }
    if hv.witnesses.len() > max_witnesses {
        writeln!(out, "    ... {} more stored", hv.witnesses.len() - max_witnesses)?;
    }
    Ok(())
}

#[derive(Serialize)]
struct SearchOutput<'a> {
    name: String,
    hv: &'a SearchResult,
}

fn search_file(
    path: &PathBuf,
    format: Format,
    witness_cap: usize,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> std::io::Result<i32> {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            writeln!(err, "error: cannot read {}: {e}", path.display())?;
            return Ok(EXIT_USAGE);
        }
    };
    let scenario = match parse_scenario(&text) {
        Ok(s) => s,
        Err(diags) => {
            for d in diags {
                writeln!(err, "{}:{d}", path.display())?;
            }
            return Ok(EXIT_USAGE);
        }
    };
    let result = hv::search_with_cap(&scenario, witness_cap);
    match format {
        Format::Json => {
            let doc = SearchOutput {
                name: path.display().to_string(),
                hv: &result,
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("result serializes"))?;
        }
        Format::Text => {
            writeln!(
                out,
                "{}: {} observables, {} constraints",
                path.display(),
                scenario.observables().len(),
                scenario.constraints().len()
            )?;
            writeln!(
                out,
                "count={} {}",
                result.count,
                if result.satisfiable { "SATISFIABLE" } else { "UNSATISFIABLE" }
            )?;
            for w in &result.witnesses {
                let cells: Vec<String> = result
                    .symbols
                    .iter()
                    .zip(w)
                    .map(|(s, v)| format!("{s}={v:+}"))
                    .collect();
                writeln!(out, "witness: {}", cells.join(" "))?;
            }
        }
    }
    Ok(EXIT_OK)
}

#[cfg(test)]
mod tests {
    use super::*;

    const GHZ: &str = "\
# GHZ rows
observables: X1 Y1 X2 Y2 X3 Y3
constraint: product X1 Y2 Y3 = +1
constraint: product Y1 X2 Y3 = 1
constraint: product Y1 Y2 X3 = +1
constraint: product X1 X2 X3 = -1   # the odd one
";

    fn first(text: &str) -> Diagnostic {
        parse_scenario(text).unwrap_err().remove(0)
    }

    #[test]
    fn parses_ghz_file() {
        let s = parse_scenario(GHZ).unwrap();
        assert_eq!(s.observables().len(), 6);
        assert_eq!(s.constraints().len(), 4);
        assert!(s.constraints().iter().all(|c| c.kind == ConstraintKind::ProductEquals));
        assert_eq!(s, hv::ghz_scenario(-1));
    }

    #[test]
    fn parses_sum_constraint() {
        let text = "observables: X1 Y1 X2 Y2 X3 Y3\n\
                    constraint: sum ( X1 Y2 Y3 ; Y1 X2 Y3 ; Y1 Y2 X3 ) = 3\n\
                    constraint: product X1 X2 X3 = -1\n";
        assert_eq!(parse_scenario(text).unwrap(), hv::symmetrized_ghz_scenario());
        // punctuation needs no surrounding spaces
        let tight = "observables: a b\nconstraint: sum(a;b)=0\n";
        assert_eq!(parse_scenario(tight).unwrap().constraints()[0].terms.len(), 2);
    }

    #[test]
    fn empty_file_is_empty_scenario() {
        assert_eq!(parse_scenario("").unwrap(), Scenario::empty());
        assert_eq!(parse_scenario("# nothing\n\nobservables:\n").unwrap(), Scenario::empty());
    }

    #[test]
    fn target_out_of_range() {
        let d = first("observables: X1 X2\nconstraint: product X1 X2 = 2\n");
        assert_eq!(d.code, DiagCode::TargetOutOfRange);
        assert_eq!((d.line, d.column), (2, 29));
        let d = first("observables: a b\nconstraint: sum ( a ; b ) = 1\n");
        assert_eq!(d.code, DiagCode::TargetOutOfRange);
    }

    #[test]
    fn malformed_target() {
        let d = first("observables: a\nconstraint: product a = one\n");
        assert_eq!(d.code, DiagCode::MalformedTarget);
        assert_eq!((d.line, d.column), (2, 25));
        let d = first("observables: a\nconstraint: product a =\n");
        assert_eq!(d.code, DiagCode::MalformedTarget);
    }

    #[test]
    fn unknown_symbol_points_at_reference() {
        let d = first("observables: a\nconstraint: product a b = 1\n");
        assert_eq!(d.code, DiagCode::UnknownSymbol);
        assert_eq!((d.line, d.column), (2, 23));
    }

    #[test]
    fn declarations_may_follow_use() {
        let s = parse_scenario("constraint: product a = 1\nobservables: a\n").unwrap();
        assert_eq!(s.observables(), ["a"]);
    }

    #[test]
    fn duplicate_symbol() {
        let d = first("observables: a b\nobservables: a\n");
        assert_eq!(d.code, DiagCode::DuplicateSymbol);
        assert!(d.message.contains("1:14"));
    }

    #[test]
    fn observable_cap() {
        let names: Vec<String> = (0..21).map(|i| format!("s{i}")).collect();
        let d = first(&format!("observables: {}\n", names.join(" ")));
        assert_eq!(d.code, DiagCode::TooManyObservables);
        assert_eq!(d.column, 14 + names[..20].iter().map(|n| n.len() + 1).sum::<usize>());
    }

    #[test]
    fn syntax_errors() {
        assert_eq!(first("observables: a\nconstraint: product a 1\n").code, DiagCode::InvalidSymbolName);
        assert_eq!(first("observables: a\nconstraint: product a\n").code, DiagCode::Syntax);
        assert_eq!(first("observables: a\nconstraint: prod a = 1\n").code, DiagCode::Syntax);
        assert_eq!(first("observables: a\nconstraint: sum ( a = 1\n").code, DiagCode::Syntax);
        assert_eq!(first("observables: a\nconstraint: sum ( ) = 1\n").code, DiagCode::Syntax);
        assert_eq!(first("observables: a\nconstraint: product a = 1 2\n").code, DiagCode::Syntax);
        assert_eq!(first("observables: 1a\n").code, DiagCode::InvalidSymbolName);
        assert_eq!(first("context: a\n").code, DiagCode::UnknownDirective);
        assert_eq!(first("just words\n").code, DiagCode::UnknownDirective);
    }

    #[test]
    fn collects_all_diagnostics_in_order() {
        let diags = parse_scenario("observables: a a\nconstraint: product b = 3\nbogus\n").unwrap_err();
        let codes: Vec<DiagCode> = diags.iter().map(|d| d.code).collect();
        assert_eq!(
            codes,
            vec![DiagCode::DuplicateSymbol, DiagCode::TargetOutOfRange, DiagCode::UnknownDirective]
        );
    }

    #[test]
    fn diagnostic_display() {
        let d = first("observables: a\nconstraint: product a = 2\n");
        assert_eq!(d.to_string(), "2:25: error[E005]: product target must be -1 or +1, got 2");
    }

    #[test]
    fn sci_has_three_significant_digits() {
        assert_eq!(sci(1.23456e-11), "1.23e-11");
        assert_eq!(sci(0.0), "0.00e0");
        assert_eq!(sci_complex(-1.0, -2.5e-17), "-1.00e0-2.50e-17i");
    }

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(args.iter().copied(), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn unknown_entry_is_usage_error() {
        let (code, _, err) = run_capture(&["avn", "verify", "nosuch"]);
        assert_eq!(code, EXIT_USAGE);
        assert!(err.contains("unknown catalog entry `nosuch`"));
    }

    #[test]
    fn bad_flag_is_usage_error() {
        let (code, _, _) = run_capture(&["avn", "verify", "all", "--format", "xml"]);
        assert_eq!(code, EXIT_USAGE);
        let (code, _, _) = run_capture(&["avn"]);
        assert_eq!(code, EXIT_USAGE);
    }

    #[test]
    fn help_exits_zero() {
        let (code, out, _) = run_capture(&["avn", "--help"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("verify"));
    }

    #[test]
    fn verify_single_entry_text() {
        let (code, out, _) = run_capture(&["avn", "verify", "mermin-square"]);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("count=0 UNSATISFIABLE"));
        assert!(out.contains("conclusion: ContradictionEstablished (as expected)"));
    }
}
