use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

/// Polynomial expression. Integer literals are kept as written.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Expr {
    Int(String),
    Var(String),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    D(Box<Expr>),
}

impl Expr {
    pub fn vars(&self, out: &mut Vec<String>) {
        match self {
            Expr::Int(_) => {}
            Expr::Var(v) => out.push(v.clone()),
            Expr::Neg(a) | Expr::Pow(a, _) | Expr::D(a) => a.vars(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.vars(out);
                b.vars(out);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairDecl {
    pub q: String,
    pub wq: i64,
    pub p: String,
    pub wp: i64,
    pub coeff: Option<Expr>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AlgebraDef {
    /// `so3`, `sl2`, `abelian(d)`.
    Builtin(String, Option<u64>),
    Custom {
        basis: Vec<String>,
        brackets: Vec<(String, String, Expr)>,
        metric: Vec<(String, String, Expr)>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PathDef {
    /// Constant `so(3)` path, optionally with an orbit through `start`
    /// sampled at `samples` points.
    Const { x: Vec<String>, orbit: Option<(Vec<String>, u64)> },
    /// Piecewise-linear `so(3)` path through `(t, x)` samples.
    Samples(Vec<(String, Vec<String>)>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FiberSpec {
    Scalars,
    Lie(String),
    Pair(u64),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ComplexDef {
    Lattice { surface: String, sizes: Vec<u64>, fiber: FiberSpec },
    Ball(u64),
    Double(String, u64),
    Cochain { degrees: Vec<i64>, d: Vec<Vec<Expr>>, pairing: Option<(i64, Vec<Vec<Expr>>)> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Arg {
    Name(String),
    Num(String),
    List(Vec<Arg>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LoadKind {
    Grid,
    Path,
    Complex,
}

impl LoadKind {
    pub fn keyword(self) -> &'static str {
        match self {
            LoadKind::Grid => "grid",
            LoadKind::Path => "path",
            LoadKind::Complex => "complex",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StmtKind {
    Chart {
        name: String,
        vars: Vec<(String, i64)>,
    },
    QField {
        name: String,
        chart: String,
        degree: Option<i64>,
        images: Vec<(String, Expr)>,
    },
    Sigma {
        name: String,
        degree: i64,
        pairs: Vec<PairDecl>,
    },
    Ham {
        name: String,
        sigma: String,
        expr: Expr,
    },
    Poly {
        name: String,
        on: String,
        expr: Expr,
    },
    Algebroid {
        name: String,
        base: Vec<String>,
        fiber: Vec<String>,
        anchors: Vec<(String, String, Expr)>,
        brackets: Vec<(String, String, Expr)>,
    },
    Algebra {
        name: String,
        def: AlgebraDef,
    },
    Twist {
        name: String,
        m: u64,
        n: u64,
        eta: Expr,
    },
    Pair {
        name: String,
        m: u64,
        n: u64,
        vector: Vec<Expr>,
        alpha: Expr,
    },
    Path {
        name: String,
        def: PathDef,
    },
    Complex {
        name: String,
        def: ComplexDef,
    },
    NMap {
        name: String,
        sigma: String,
        n: u64,
    },
    Grid {
        name: String,
        size: u64,
    },
    Load {
        kind: LoadKind,
        name: String,
        file: String,
    },
    Check {
        name: String,
        args: Vec<Arg>,
    },
}

impl StmtKind {
    /// Name bound by a declaration.
    pub fn binds(&self) -> Option<&str> {
        use StmtKind::*;
        match self {
            Chart { name, .. }
            | QField { name, .. }
            | Sigma { name, .. }
            | Ham { name, .. }
            | Poly { name, .. }
            | Algebroid { name, .. }
            | Algebra { name, .. }
            | Twist { name, .. }
            | Pair { name, .. }
            | Path { name, .. }
            | Complex { name, .. }
            | NMap { name, .. }
            | Grid { name, .. }
            | Load { name, .. } => Some(name),
            Check { .. } => None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Stmt {
    pub pos: Pos,
    pub kind: StmtKind,
}

#[derive(Debug, Clone, Default)]
pub struct Program {
    pub stmts: Vec<Stmt>,
}

impl Program {
    /// Structural equality, ignoring source positions.
    pub fn same_as(&self, other: &Program) -> bool {
        self.stmts.len() == other.stmts.len() && self.stmts.iter().zip(&other.stmts).all(|(a, b)| a.kind == b.kind)
    }
}
