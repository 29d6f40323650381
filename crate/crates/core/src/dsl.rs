//! A small declarative language for building graded objects and running
//! named checks on them.
//!
//! ```text
//! chart X { x:0; xi:1; }
//! qfield Q on X { x -> xi; xi -> 0; }
//! check q2 Q;
//!
//! sigma S deg 2 pairs { (x:0, p:2); (theta:1, chi:1); }
//! ham TH on S = theta*p;
//! check master TH;
//! ```
//!
//! Statements:
//!
//! | statement | form |
//! |---|---|
//! | `chart` | `chart X { v:w; ... }` |
//! | `qfield` | `qfield Q on X [deg k] { v -> expr; ... }` |
//! | `sigma` | `sigma S deg n pairs { (q:w, p:w[, coeff]); ... }` |
//! | `ham`, `poly` | `ham TH on S = expr;`, `poly F on X = expr;` |
//! | `algebroid` | `algebroid A base (x, ...) fiber (e, ...) { anchor e x = expr; bracket e f = expr; }` |
//! | `algebra` | `algebra G = so3;`, `= sl2;`, `= abelian(d);`, or `algebra G basis (a, b) { [a, b] = expr; } metric { a a = expr; }` |
//! | `twist` | `twist T m M n N = expr;` over `x1.., xi1.., t` |
//! | `pair` | `pair P m M n N = ([v1, ...], alpha);` |
//! | `path` | `path P = const so3 (a, b, c) [orbit (g1, g2, g3) samples K];` or `path P = so3 { t: (a, b, c); ... }` |
//! | `complex` | `complex C = lattice torus(a, b) lie G;`, `= ball(n);`, `= double K n;`, `= cochain (degrees) [[...]] [pairing k [[...]]];` |
//! | `nmap` | `nmap N = S dim n;` |
//! | `grid` | `grid G = random n;` |
//! | `load` | `load grid|path|complex NAME "file";` |
//! | `check` | `check NAME args...;` |
//!
//! Expressions are polynomials in declared variables with integer literals,
//! `+ - * / ^` and `d(...)`, the de Rham operator pairing each weight-0
//! coordinate `x<k>` with `dx<k>`, `xi<k>` or `theta<k>`.

use std::collections::BTreeMap;
use std::fmt;
use std::path::PathBuf;
use std::time::Instant;

use serde::Serialize;

pub mod ast;
pub mod checks;
mod lexer;
mod parser;
mod printer;
pub mod value;

pub use ast::{Pos, Program, Stmt, StmtKind};
pub use checks::{Outcome, Verdict, CHECKS};
pub use parser::parse;
pub use printer::{render, render_expr};

use ast::{Arg, ComplexDef, FiberSpec};
use checks::{Env, A};
use value::{build, Bindings, Kind};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxError {
    pub pos: Pos,
    pub found: String,
    pub expected: Vec<String>,
    pub message: Option<String>,
}

impl SyntaxError {
    pub(crate) fn new(pos: Pos, message: &str, found: &str) -> Self {
        SyntaxError { pos, found: format!("`{found}`"), expected: Vec::new(), message: Some(message.into()) }
    }

    pub(crate) fn expected(pos: Pos, found: &str, expected: &[&str]) -> Self {
        SyntaxError {
            pos,
            found: found.into(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
            message: None,
        }
    }
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "syntax error at {}: ", self.pos)?;
        if let Some(m) = &self.message {
            write!(f, "{m} {}", self.found)
        } else {
            write!(f, "expected {}, found {}", self.expected.join(" or "), self.found)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DslError {
    #[error("{0}")]
    Syntax(SyntaxError),
    #[error("semantic error at {pos}: {msg}")]
    Semantic { pos: Pos, msg: String },
}

impl From<SyntaxError> for DslError {
    fn from(e: SyntaxError) -> Self {
        DslError::Syntax(e)
    }
}

fn semantic<T>(pos: Pos, msg: impl Into<String>) -> Result<T, DslError> {
    Err(DslError::Semantic { pos, msg: msg.into() })
}

fn kind_of(kind: &StmtKind) -> Option<Kind> {
    Some(match kind {
        StmtKind::Chart { .. } => Kind::Chart,
        StmtKind::QField { .. } => Kind::QField,
        StmtKind::Sigma { .. } => Kind::Sigma,
        StmtKind::Ham { .. } => Kind::Ham,
        StmtKind::Poly { .. } => Kind::Poly,
        StmtKind::Algebroid { .. } => Kind::Algebroid,
        StmtKind::Algebra { .. } => Kind::Algebra,
        StmtKind::Twist { .. } => Kind::Twist,
        StmtKind::Pair { .. } => Kind::Pair,
        StmtKind::Path { .. } => Kind::Path,
        StmtKind::Complex { .. } => Kind::Complex,
        StmtKind::NMap { .. } => Kind::NMap,
        StmtKind::Grid { .. } => Kind::Grid,
        StmtKind::Load { kind, .. } => match kind {
            ast::LoadKind::Grid => Kind::Grid,
            ast::LoadKind::Path => Kind::Path,
            ast::LoadKind::Complex => Kind::Complex,
        },
        StmtKind::Check { .. } => return None,
    })
}

fn arg_matches(a: &Arg, want: A, kinds: &BTreeMap<String, Kind>) -> bool {
    match (a, want) {
        (Arg::Name(n), A::Bound(ks)) => kinds.get(n).is_some_and(|k| ks.contains(k)),
        (Arg::Num(s), A::Int) => s.parse::<i64>().is_ok(),
        (Arg::Num(s), A::Num) => s.parse::<f64>().is_ok(),
        (Arg::List(v), A::Ints) => v.iter().all(|x| matches!(x, Arg::Num(s) if s.parse::<i64>().is_ok())),
        (Arg::List(v), A::Names) => v.iter().all(|x| matches!(x, Arg::Name(_))),
        _ => false,
    }
}

fn describe(sig: &[A]) -> String {
    sig.iter()
        .map(|a| match a {
            A::Bound(ks) => ks.iter().map(|k| k.label()).collect::<Vec<_>>().join("|"),
            A::Int => "integer".into(),
            A::Num => "number".into(),
            A::Ints => "(integers)".into(),
            A::Names => "(names)".into(),
        })
        .collect::<Vec<_>>()
        .join(" ")
}

/// Name resolution, binding uniqueness, surface weights and check arities.
pub fn analyze(p: &Program) -> Result<(), DslError> {
    let mut kinds: BTreeMap<String, Kind> = BTreeMap::new();
    let need = |kinds: &BTreeMap<String, Kind>, pos: Pos, name: &str, want: &[Kind]| -> Result<(), DslError> {
        match kinds.get(name) {
            None => semantic(pos, format!("unknown identifier `{name}`")),
            Some(k) if !want.contains(k) => semantic(
                pos,
                format!(
                    "`{name}` is a {}, expected {}",
                    k.label(),
                    want.iter().map(|k| k.label()).collect::<Vec<_>>().join(" or ")
                ),
            ),
            _ => Ok(()),
        }
    };
    let chartful = [
        Kind::Chart,
        Kind::Sigma,
        Kind::Ham,
        Kind::Poly,
        Kind::QField,
        Kind::Algebroid,
        Kind::Algebra,
        Kind::Twist,
        Kind::Pair,
    ];
    for s in &p.stmts {
        let pos = s.pos;
        match &s.kind {
            StmtKind::Chart { vars, .. } => {
                if let Some((v, _)) = vars.iter().find(|(_, w)| *w < 0) {
                    return semantic(pos, format!("negative weight for `{v}`"));
                }
            }
            StmtKind::QField { chart, .. } => need(&kinds, pos, chart, &chartful)?,
            StmtKind::Sigma { degree, pairs, .. } => {
                for pr in pairs {
                    if pr.wq < 0 || pr.wp < 0 {
                        return semantic(pos, format!("negative weight in pair ({}, {})", pr.q, pr.p));
                    }
                    if pr.wq + pr.wp != *degree {
                        return semantic(pos, format!("weights of ({}, {}) must add up to {degree}", pr.q, pr.p));
                    }
                }
            }
            StmtKind::Ham { sigma, .. } => need(&kinds, pos, sigma, &[Kind::Sigma])?,
            StmtKind::Poly { on, .. } => need(&kinds, pos, on, &chartful)?,
            StmtKind::Pair { m, vector, .. } => {
                if vector.len() as u64 != *m {
                    return semantic(pos, format!("vector field has {} components, expected {m}", vector.len()));
                }
            }
            StmtKind::Complex { def, .. } => match def {
                ComplexDef::Lattice { fiber: FiberSpec::Lie(g), .. } => need(&kinds, pos, g, &[Kind::Algebra])?,
                ComplexDef::Double(b, _) => need(&kinds, pos, b, &[Kind::Complex])?,
                ComplexDef::Cochain { degrees, d, pairing } => {
                    let n = degrees.len();
                    let square = |m: &Vec<Vec<ast::Expr>>| m.len() == n && m.iter().all(|r| r.len() == n);
                    if !square(d) || pairing.as_ref().is_some_and(|(_, m)| !square(m)) {
                        return semantic(pos, format!("matrices must be {n}x{n}"));
                    }
                }
                _ => {}
            },
            StmtKind::NMap { sigma, .. } => need(&kinds, pos, sigma, &[Kind::Sigma])?,
            StmtKind::Check { name, args } => {
                let Some(spec) = checks::spec(name) else {
                    return semantic(pos, format!("unknown check `{name}`"));
                };
                for a in args {
                    if let Arg::Name(n) = a {
                        if !kinds.contains_key(n) && !matches!(spec.signatures[0].get(1), Some(A::Names)) {
                            return semantic(pos, format!("unknown identifier `{n}`"));
                        }
                    }
                }
                let ok = spec.signatures.iter().any(|sig| {
                    sig.len() == args.len() && sig.iter().zip(args).all(|(w, a)| arg_matches(a, *w, &kinds))
                });
                if !ok {
                    let sigs: Vec<String> =
                        spec.signatures.iter().map(|s| format!("`{name} {}`", describe(s))).collect();
                    return semantic(pos, format!("arity or type mismatch: expected {}", sigs.join(" or ")));
                }
            }
            _ => {}
        }
        if let (Some(name), Some(k)) = (s.kind.binds(), kind_of(&s.kind)) {
            if kinds.insert(name.to_string(), k).is_some() {
                return semantic(pos, format!("`{name}` is already bound"));
            }
        }
    }
    Ok(())
}

#[derive(Debug, Clone)]
pub struct Options {
    pub steps: usize,
    pub tolerance: f64,
    pub seed: u64,
    /// Directory against which `load` paths are resolved.
    pub base_dir: PathBuf,
}

impl Default for Options {
    fn default() -> Self {
        Options { steps: 1000, tolerance: 1e-6, seed: 0, base_dir: PathBuf::from(".") }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckRecord {
    pub line: usize,
    pub name: String,
    pub inputs: Vec<String>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub residual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub explanation: Option<String>,
    /// Wall-clock time; shown in text output only.
    #[serde(skip)]
    pub elapsed_ms: u128,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub degraded: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub seed: u64,
    pub steps: usize,
    pub tolerance: f64,
    pub checks: Vec<CheckRecord>,
    pub summary: Summary,
}

impl Report {
    /// No check failed; degraded-mode verdicts count as passing.
    pub fn all_pass(&self) -> bool {
        self.summary.failed == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report is serializable");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.checks {
            let tag = match c.verdict {
                Verdict::Pass => "PASS",
                Verdict::Fail => "FAIL",
                Verdict::DegradedMode => "DEGRADED",
            };
            let mut line = format!("{tag} {}", c.name);
            for i in &c.inputs {
                line.push(' ');
                line.push_str(i);
            }
            line.push_str(&format!(" ({} ms)", c.elapsed_ms));
            if c.verdict != Verdict::Pass {
                if let Some(w) = c.witness.as_ref().or(c.explanation.as_ref()) {
                    line.push_str(&format!(" [{w}]"));
                }
            }
            out.push_str(&line);
            out.push('\n');
        }
        out
    }
}

fn arg_text(a: &Arg) -> String {
    match a {
        Arg::Name(s) | Arg::Num(s) => s.clone(),
        Arg::List(v) => format!("({})", v.iter().map(arg_text).collect::<Vec<_>>().join(", ")),
    }
}

/// Bound values and the log of checks run so far.
#[derive(Default)]
pub struct Session {
    pub bindings: Bindings,
    pub log: Vec<CheckRecord>,
}

/// Runs a checked program. Declarations that cannot be built are semantic
/// errors; failures inside checks become failed records.
pub fn execute(p: &Program, opts: &Options) -> Result<Report, DslError> {
    analyze(p)?;
    let mut session = Session::default();
    let env = Env { steps: opts.steps, tolerance: opts.tolerance };
    for (idx, s) in p.stmts.iter().enumerate() {
        match &s.kind {
            StmtKind::Check { name, args } => {
                let vals: Vec<&value::Value> = args
                    .iter()
                    .filter_map(|a| if let Arg::Name(n) = a { session.bindings.get(n) } else { None })
                    .collect();
                let start = Instant::now();
                let o = checks::run(name, &vals, args, &env);
                session.log.push(CheckRecord {
                    line: s.pos.line,
                    name: name.clone(),
                    inputs: args.iter().map(arg_text).collect(),
                    verdict: o.verdict,
                    witness: o.witness,
                    residual: o.residual,
                    explanation: o.explanation,
                    elapsed_ms: start.elapsed().as_millis(),
                });
            }
            kind => {
                let seed = opts.seed.wrapping_add(idx as u64);
                let v =
                    build(kind, &session.bindings, seed, &opts.base_dir).or_else(|e| semantic(s.pos, e.to_string()))?;
                session.bindings.insert(kind.binds().expect("declaration").to_string(), v);
            }
        }
    }
    let mut summary = Summary { total: session.log.len(), ..Summary::default() };
    for c in &session.log {
        match c.verdict {
            Verdict::Pass => summary.passed += 1,
            Verdict::Fail => summary.failed += 1,
            Verdict::DegradedMode => summary.degraded += 1,
        }
    }
    Ok(Report { seed: opts.seed, steps: opts.steps, tolerance: opts.tolerance, checks: session.log, summary })
}

/// Parses and executes source text.
pub fn run_source(src: &str, opts: &Options) -> Result<Report, DslError> {
    execute(&parse(src)?, opts)
}
