use std::fmt::Write as _;

use super::ast::*;

pub fn render_expr(e: &Expr) -> String {
    expr(e, 0)
}

fn expr(e: &Expr, min: u8) -> String {
    let (prec, s) = match e {
        Expr::Int(s) | Expr::Var(s) => (5, s.clone()),
        Expr::D(a) => (5, format!("d({})", expr(a, 0))),
        Expr::Pow(a, k) => (4, format!("{}^{k}", expr(a, 5))),
        Expr::Neg(a) => (3, format!("-{}", expr(a, 3))),
        Expr::Mul(a, b) => (2, format!("{}*{}", expr(a, 2), expr(b, 3))),
        Expr::Div(a, b) => (2, format!("{}/{}", expr(a, 2), expr(b, 3))),
        Expr::Add(a, b) => (1, format!("{} + {}", expr(a, 1), expr(b, 2))),
        Expr::Sub(a, b) => (1, format!("{} - {}", expr(a, 1), expr(b, 2))),
    };
    if prec < min {
        format!("({s})")
    } else {
        s
    }
}

fn join<T>(items: &[T], f: impl Fn(&T) -> String) -> String {
    items.iter().map(f).collect::<Vec<_>>().join(", ")
}

fn matrix(m: &[Vec<Expr>]) -> String {
    format!("[{}]", join(m, |row| format!("[{}]", join(row, render_expr))))
}

fn arg(a: &Arg) -> String {
    match a {
        Arg::Name(s) | Arg::Num(s) => s.clone(),
        Arg::List(v) => format!("({})", join(v, arg)),
    }
}

pub fn render_stmt(s: &StmtKind) -> String {
    let mut o = String::new();
    match s {
        StmtKind::Chart { name, vars } => {
            let _ = write!(o, "chart {name} {{");
            for (v, w) in vars {
                let _ = write!(o, " {v}:{w};");
            }
            o.push_str(" }");
        }
        StmtKind::QField { name, chart, degree, images } => {
            let _ = write!(o, "qfield {name} on {chart}");
            if let Some(k) = degree {
                let _ = write!(o, " deg {k}");
            }
            o.push_str(" {");
            for (v, e) in images {
                let _ = write!(o, " {v} -> {};", render_expr(e));
            }
            o.push_str(" }");
        }
        StmtKind::Sigma { name, degree, pairs } => {
            let _ = write!(o, "sigma {name} deg {degree} pairs {{");
            for p in pairs {
                let _ = write!(o, " ({}:{}, {}:{}", p.q, p.wq, p.p, p.wp);
                if let Some(c) = &p.coeff {
                    let _ = write!(o, ", {}", render_expr(c));
                }
                o.push_str(");");
            }
            o.push_str(" }");
        }
        StmtKind::Ham { name, sigma, expr } => {
            let _ = write!(o, "ham {name} on {sigma} = {};", render_expr(expr));
        }
        StmtKind::Poly { name, on, expr } => {
            let _ = write!(o, "poly {name} on {on} = {};", render_expr(expr));
        }
        StmtKind::Algebroid { name, base, fiber, anchors, brackets } => {
            let _ = write!(o, "algebroid {name} base ({}) fiber ({}) {{", base.join(", "), fiber.join(", "));
            for (a, b, e) in anchors {
                let _ = write!(o, "\n  anchor {a} {b} = {};", render_expr(e));
            }
            for (a, b, e) in brackets {
                let _ = write!(o, "\n  bracket {a} {b} = {};", render_expr(e));
            }
            o.push_str("\n}");
        }
        StmtKind::Algebra { name, def: AlgebraDef::Builtin(b, arg) } => {
            let _ = write!(o, "algebra {name} = {b}");
            if let Some(d) = arg {
                let _ = write!(o, "({d})");
            }
            o.push(';');
        }
        StmtKind::Algebra { name, def: AlgebraDef::Custom { basis, brackets, metric } } => {
            let _ = write!(o, "algebra {name} basis ({}) {{", basis.join(", "));
            for (a, b, e) in brackets {
                let _ = write!(o, " [{a}, {b}] = {};", render_expr(e));
            }
            o.push_str(" } metric {");
            for (a, b, e) in metric {
                let _ = write!(o, " {a} {b} = {};", render_expr(e));
            }
            o.push_str(" }");
        }
        StmtKind::Twist { name, m, n, eta } => {
            let _ = write!(o, "twist {name} m {m} n {n} = {};", render_expr(eta));
        }
        StmtKind::Pair { name, m, n, vector, alpha } => {
            let _ = write!(o, "pair {name} m {m} n {n} = ([{}], {});", join(vector, render_expr), render_expr(alpha));
        }
        StmtKind::Path { name, def: PathDef::Const { x, orbit } } => {
            let _ = write!(o, "path {name} = const so3 ({})", x.join(", "));
            if let Some((start, k)) = orbit {
                let _ = write!(o, " orbit ({}) samples {k}", start.join(", "));
            }
            o.push(';');
        }
        StmtKind::Path { name, def: PathDef::Samples(rows) } => {
            let _ = write!(o, "path {name} = so3 {{");
            for (t, x) in rows {
                let _ = write!(o, " {t}: ({});", x.join(", "));
            }
            o.push_str(" }");
        }
        StmtKind::Complex { name, def } => {
            let _ = write!(o, "complex {name} = ");
            match def {
                ComplexDef::Lattice { surface, sizes, fiber } => {
                    let _ = write!(o, "lattice {surface}({}) ", join(sizes, u64::to_string));
                    match fiber {
                        FiberSpec::Scalars => o.push_str("scalars"),
                        FiberSpec::Lie(g) => {
                            let _ = write!(o, "lie {g}");
                        }
                        FiberSpec::Pair(n) => {
                            let _ = write!(o, "pair({n})");
                        }
                    }
                }
                ComplexDef::Ball(n) => {
                    let _ = write!(o, "ball({n})");
                }
                ComplexDef::Double(b, n) => {
                    let _ = write!(o, "double {b} {n}");
                }
                ComplexDef::Cochain { degrees, d, pairing } => {
                    let _ = write!(o, "cochain ({}) {}", join(degrees, i64::to_string), matrix(d));
                    if let Some((k, m)) = pairing {
                        let _ = write!(o, " pairing {k} {}", matrix(m));
                    }
                }
            }
            o.push(';');
        }
        StmtKind::NMap { name, sigma, n } => {
            let _ = write!(o, "nmap {name} = {sigma} dim {n};");
        }
        StmtKind::Grid { name, size } => {
            let _ = write!(o, "grid {name} = random {size};");
        }
        StmtKind::Load { kind, name, file } => {
            let _ = write!(o, "load {} {name} \"{file}\";", kind.keyword());
        }
        StmtKind::Check { name, args } => {
            let _ = write!(o, "check {name}");
            for a in args {
                let _ = write!(o, " {}", arg(a));
            }
            o.push(';');
        }
    }
    o
}

/// Source text that parses back to a structurally identical program.
pub fn render(p: &Program) -> String {
    let mut o = String::new();
    for s in &p.stmts {
        o.push_str(&render_stmt(&s.kind));
        o.push('\n');
    }
    o
}
