use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use nalgebra::{DMatrix, RowDVector};
use num_traits::{One, Zero};

use super::ast::*;
use crate::apath_integrator::{expm, so3_matrix, APath};
use crate::error::{Error, Result};
use crate::extensions::{fiber_chart, GridMap, QuadraticLieAlgebra, SymmetryPair, TwistData};
use crate::graded_algebra::{Chart, GPoly, Rational};
use crate::linalg::QMatrix;
use crate::nq_core::Derivation;
use crate::random::{random_grid, rng};
use crate::sigma_structures::{AlgebroidData, DarbouxChart};
use crate::symplectic_complexes::{
    lattice_model, nmap_space, parse_complex, relative_ball, Fiber, GradedComplex, NMapSpace, RelativeComplex, Surface,
    SymplecticComplex,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Kind {
    Chart,
    QField,
    Sigma,
    Ham,
    Poly,
    Algebroid,
    Algebra,
    Twist,
    Pair,
    Path,
    Complex,
    NMap,
    Grid,
}

impl Kind {
    pub fn label(self) -> &'static str {
        match self {
            Kind::Chart => "chart",
            Kind::QField => "qfield",
            Kind::Sigma => "sigma",
            Kind::Ham => "ham",
            Kind::Poly => "poly",
            Kind::Algebroid => "algebroid",
            Kind::Algebra => "algebra",
            Kind::Twist => "twist",
            Kind::Pair => "pair",
            Kind::Path => "path",
            Kind::Complex => "complex",
            Kind::NMap => "nmap",
            Kind::Grid => "grid",
        }
    }
}

/// Lie algebra data as declared; the Jacobi identity is a check, not a
/// precondition.
#[derive(Debug, Clone)]
pub struct AlgebraValue {
    pub names: Vec<String>,
    pub c: Vec<Vec<Vec<Rational>>>,
    pub metric: QMatrix,
}

impl AlgebraValue {
    pub fn quadratic(&self) -> Result<QuadraticLieAlgebra> {
        QuadraticLieAlgebra::new(self.names.clone(), self.c.clone(), self.metric.clone())
    }

    fn from_quadratic(g: &QuadraticLieAlgebra) -> Self {
        AlgebraValue { names: g.names().to_vec(), c: g.constants().to_vec(), metric: g.metric().clone() }
    }

    /// `A[1]` over a point; no Jacobi validation.
    pub fn algebroid(&self) -> Result<AlgebroidData> {
        let labels: Vec<String> = (1..=self.names.len()).map(|i| format!("xi{i}")).collect();
        let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
        AlgebroidData::from_lie_algebra(&refs, &self.c)
    }
}

#[derive(Debug, Clone)]
pub enum ComplexValue {
    Plain(GradedComplex),
    Relative(RelativeComplex),
}

impl ComplexValue {
    pub fn complex(&self) -> &GradedComplex {
        match self {
            ComplexValue::Plain(c) => c,
            ComplexValue::Relative(r) => r.total().complex(),
        }
    }
}

#[derive(Debug, Clone)]
pub enum Value {
    Chart(Arc<Chart>),
    QField(Derivation),
    Sigma(DarbouxChart),
    Ham(DarbouxChart, GPoly),
    Poly(GPoly),
    Algebroid(AlgebroidData),
    Algebra(AlgebraValue),
    Twist(TwistData),
    Pair(SymmetryPair),
    Path(APath),
    Complex(ComplexValue),
    NMap(NMapSpace),
    Grid(GridMap),
}

impl Value {
    pub fn kind(&self) -> Kind {
        match self {
            Value::Chart(_) => Kind::Chart,
            Value::QField(_) => Kind::QField,
            Value::Sigma(_) => Kind::Sigma,
            Value::Ham(..) => Kind::Ham,
            Value::Poly(_) => Kind::Poly,
            Value::Algebroid(_) => Kind::Algebroid,
            Value::Algebra(_) => Kind::Algebra,
            Value::Twist(_) => Kind::Twist,
            Value::Pair(_) => Kind::Pair,
            Value::Path(_) => Kind::Path,
            Value::Complex(_) => Kind::Complex,
            Value::NMap(_) => Kind::NMap,
            Value::Grid(_) => Kind::Grid,
        }
    }

    /// Chart on which polynomials attached to this value live.
    pub fn chart(&self) -> Option<Arc<Chart>> {
        Some(match self {
            Value::Chart(c) => c.clone(),
            Value::QField(q) => q.chart().clone(),
            Value::Sigma(s) | Value::Ham(s, _) => s.chart().clone(),
            Value::Poly(p) => p.chart().clone(),
            Value::Algebroid(a) => a.chart().clone(),
            Value::Algebra(g) => g.algebroid().ok()?.chart().clone(),
            Value::Twist(t) => t.chart().clone(),
            Value::Pair(p) => p.chart().clone(),
            _ => return None,
        })
    }
}

fn err(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}

/// `d` pairs each weight-0 coordinate `v` with the first of `dv`, `xi<k>`,
/// `theta<k>` present in the chart, where `<k>` is the numeric suffix of `v`.
fn differential_partner(chart: &Chart, i: usize) -> Option<usize> {
    let v = chart.name(i);
    let suffix = v.trim_start_matches(|c: char| !c.is_ascii_digit());
    [format!("d{v}"), format!("xi{suffix}"), format!("theta{suffix}")]
        .iter()
        .filter_map(|n| chart.index_of(n))
        .find(|&j| chart.weight(j) == 1)
}

pub fn symbolic_d(p: &GPoly) -> Result<GPoly> {
    let chart = p.chart();
    let mut images = vec![GPoly::zero(chart); chart.len()];
    for i in p.support() {
        if chart.weight(i) != 0 {
            continue;
        }
        match differential_partner(chart, i) {
            Some(j) => images[i] = GPoly::var(chart, j),
            None => return Err(err(format!("d(...) needs a differential for `{}`", chart.name(i)))),
        }
    }
    Derivation::new(chart, 1, images)?.apply(p)
}

pub fn eval(e: &Expr, chart: &Arc<Chart>) -> Result<GPoly> {
    Ok(match e {
        Expr::Int(s) => {
            let n: num_bigint::BigInt = s.parse().map_err(|_| err(format!("bad integer `{s}`")))?;
            GPoly::constant(chart, Rational::from_integer(n))
        }
        Expr::Var(v) => GPoly::var_named(chart, v).map_err(|_| err(format!("unknown variable `{v}`")))?,
        Expr::Neg(a) => -eval(a, chart)?,
        Expr::Add(a, b) => eval(a, chart)? + eval(b, chart)?,
        Expr::Sub(a, b) => eval(a, chart)? - eval(b, chart)?,
        Expr::Mul(a, b) => eval(a, chart)? * eval(b, chart)?,
        Expr::Div(a, b) => {
            let den = eval(b, chart)?;
            let c = den.constant_term();
            if den.len() > 1 || (den.len() == 1 && c.is_zero()) || c.is_zero() {
                return Err(err("division only by nonzero constants"));
            }
            eval(a, chart)?.scale(&(Rational::one() / c))
        }
        Expr::Pow(a, k) => eval(a, chart)?.pow(*k),
        Expr::D(a) => symbolic_d(&eval(a, chart)?)?,
    })
}

pub fn eval_const(e: &Expr) -> Result<Rational> {
    let p = eval(e, &Chart::point())?;
    Ok(p.constant_term())
}

fn floats(v: &[String]) -> Vec<f64> {
    v.iter().map(|s| s.parse().expect("validated by the parser")).collect()
}

fn vec3(v: &[String]) -> Result<[f64; 3]> {
    let f = floats(v);
    <[f64; 3]>::try_from(f.as_slice()).map_err(|_| err(format!("so(3) coordinates need 3 entries, got {}", v.len())))
}

fn matrix(rows: &[Vec<Expr>], n: usize) -> Result<QMatrix> {
    if rows.len() != n || rows.iter().any(|r| r.len() != n) {
        return Err(err(format!("matrix must be {n}x{n}")));
    }
    if n == 0 {
        return Ok(QMatrix::zeros(0, 0));
    }
    let m: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(eval_const).collect()).collect::<Result<_>>()?;
    Ok(QMatrix::from_rows(m))
}

/// Resolves names bound earlier in the session.
pub trait Scope {
    fn get(&self, name: &str) -> Option<&Value>;
}

pub fn build(kind: &StmtKind, scope: &dyn Scope, seed: u64, base_dir: &Path) -> Result<Value> {
    let lookup = |name: &str| scope.get(name).ok_or_else(|| err(format!("unknown identifier `{name}`")));
    Ok(match kind {
        StmtKind::Chart { vars, .. } => {
            if let Some((v, _)) = vars.iter().find(|(_, w)| *w < 0) {
                return Err(err(format!("negative weight for `{v}`")));
            }
            Value::Chart(Chart::new(vars.iter().map(|(v, w)| (v.clone(), *w as u32)))?)
        }
        StmtKind::QField { chart, degree, images, .. } => {
            let c = lookup(chart)?.chart().ok_or_else(|| err(format!("`{chart}` has no chart")))?;
            let mut comps = vec![GPoly::zero(&c); c.len()];
            for (v, e) in images {
                let i = c.index_of(v).ok_or_else(|| err(format!("unknown variable `{v}`")))?;
                comps[i] = eval(e, &c)?;
            }
            Value::QField(Derivation::new(&c, degree.unwrap_or(1) as i32, comps)?)
        }
        StmtKind::Sigma { degree, pairs, .. } => {
            let specs: Vec<(String, i64, String, i64)> =
                pairs.iter().map(|p| (p.q.clone(), p.wq, p.p.clone(), p.wp)).collect();
            let coeffs: Vec<Rational> = pairs
                .iter()
                .map(|p| p.coeff.as_ref().map_or(Ok(Rational::one()), eval_const))
                .collect::<Result<_>>()?;
            Value::Sigma(DarbouxChart::with_coefficients(*degree, &specs, coeffs)?)
        }
        StmtKind::Ham { sigma, expr, .. } => match lookup(sigma)? {
            Value::Sigma(s) => {
                let theta = eval(expr, s.chart())?;
                crate::sigma_structures::Hamiltonian::new(s, theta.clone())?;
                Value::Ham(s.clone(), theta)
            }
            v => return Err(err(format!("`{sigma}` is a {}, expected a sigma", v.kind().label()))),
        },
        StmtKind::Poly { on, expr, .. } => {
            let c = lookup(on)?.chart().ok_or_else(|| err(format!("`{on}` has no chart")))?;
            Value::Poly(eval(expr, &c)?)
        }
        StmtKind::Algebroid { base, fiber, anchors, brackets, .. } => {
            let mut a = AlgebroidData::new(base, fiber)?;
            let chart = a.chart().clone();
            let fi =
                |n: &str| fiber.iter().position(|f| f == n).ok_or_else(|| err(format!("`{n}` is not a fiber label")));
            let bi = |n: &str| {
                base.iter().position(|f| f == n).ok_or_else(|| err(format!("`{n}` is not a base coordinate")))
            };
            for (e, x, rho) in anchors {
                a.set_anchor(fi(e)?, bi(x)?, eval(rho, &chart)?)?;
            }
            for (e1, e2, rhs) in brackets {
                let (i, j) = (fi(e1)?, fi(e2)?);
                let p = eval(rhs, &chart)?;
                let mut rest = p.clone();
                for (k, f) in fiber.iter().enumerate() {
                    let fk = chart.index_of(f).expect("fiber label in chart");
                    let ck = p.left_derivative(fk);
                    if ck.support().iter().any(|&s| chart.weight(s) > 0) {
                        return Err(err(format!("bracket [{e1}, {e2}] must be linear in the fiber labels")));
                    }
                    rest = rest - &ck * &GPoly::var(&chart, fk);
                    a.set_bracket(i, j, k, ck)?;
                }
                if !rest.is_zero() {
                    return Err(err(format!("bracket [{e1}, {e2}] must be linear in the fiber labels")));
                }
            }
            Value::Algebroid(a)
        }
        StmtKind::Algebra { def: AlgebraDef::Builtin(b, arg), .. } => {
            let g = match (b.as_str(), arg) {
                ("so3", None) => QuadraticLieAlgebra::so3(),
                ("sl2", None) => QuadraticLieAlgebra::sl2(),
                ("abelian", Some(d)) => QuadraticLieAlgebra::abelian(*d as usize),
                _ => return Err(err(format!("unknown algebra `{b}`; expected so3, sl2 or abelian(d)"))),
            };
            Value::Algebra(AlgebraValue::from_quadratic(&g))
        }
        StmtKind::Algebra { def: AlgebraDef::Custom { basis, brackets, metric }, .. } => {
            let d = basis.len();
            let chart = Chart::new(basis.iter().map(|b| (b.clone(), 0u32)))?;
            let idx = |n: &str| chart.index_of(n).ok_or_else(|| err(format!("`{n}` is not a basis element")));
            let mut c = vec![vec![vec![Rational::zero(); d]; d]; d];
            for (a, b, e) in brackets {
                let (i, j) = (idx(a)?, idx(b)?);
                let p = eval(e, &chart)?;
                if p.terms().any(|(m, _)| m.exponents().iter().sum::<u32>() != 1) {
                    return Err(err(format!("[{a}, {b}] must be a linear combination of basis elements")));
                }
                for k in 0..d {
                    let mut exps = vec![0; d];
                    exps[k] = 1;
                    let v = p.coefficient(&exps);
                    c[k][j][i] = -v.clone();
                    c[k][i][j] = v;
                }
            }
            let mut g = QMatrix::zeros(d, d);
            for (a, b, e) in metric {
                let (i, j) = (idx(a)?, idx(b)?);
                let v = eval_const(e)?;
                g.set(i, j, v.clone());
                g.set(j, i, v);
            }
            Value::Algebra(AlgebraValue { names: basis.clone(), c, metric: g })
        }
        StmtKind::Twist { m, n, eta, .. } => {
            let chart = fiber_chart(*m as usize, *n as u32)?;
            Value::Twist(TwistData::new(*m as usize, *n as u32, &eval(eta, &chart)?)?)
        }
        StmtKind::Pair { m, n, vector, alpha, .. } => {
            let chart = fiber_chart(*m as usize, *n as u32)?;
            let v: Vec<GPoly> = vector.iter().map(|e| eval(e, &chart)).collect::<Result<_>>()?;
            Value::Pair(SymmetryPair::new(*m as usize, *n as u32, &v, &eval(alpha, &chart)?)?)
        }
        StmtKind::Path { def: PathDef::Const { x, orbit: None }, .. } => {
            Value::Path(APath::constant(so3_matrix(vec3(x)?))?)
        }
        StmtKind::Path { def: PathDef::Const { x, orbit: Some((start, k)) }, .. } => {
            let a = so3_matrix(vec3(x)?);
            let g0 = RowDVector::from_row_slice(&vec3(start)?);
            let k = (*k as usize).max(2);
            let times: Vec<f64> = (0..k).map(|j| j as f64 / (k - 1) as f64).collect();
            let base = times.iter().map(|&t| &g0 * expm(&(&a * t))).collect();
            Value::Path(APath::with_base(times.into_iter().map(|t| (t, a.clone())).collect(), base)?)
        }
        StmtKind::Path { def: PathDef::Samples(rows), .. } => {
            let samples: Vec<(f64, DMatrix<f64>)> = rows
                .iter()
                .map(|(t, x)| Ok((t.parse::<f64>().expect("validated"), so3_matrix(vec3(x)?))))
                .collect::<Result<_>>()?;
            Value::Path(APath::new(samples)?)
        }
        StmtKind::Complex { def, .. } => Value::Complex(match def {
            ComplexDef::Lattice { surface, sizes, fiber } => {
                let s = |k: usize| sizes.get(k).map(|&v| v as usize);
                let surf = match (surface.as_str(), sizes.len()) {
                    ("torus", 2) => Surface::Torus(s(0).unwrap(), s(1).unwrap()),
                    ("circle", 1) => Surface::Circle(s(0).unwrap()),
                    ("interval", 1) => Surface::Interval(s(0).unwrap()),
                    ("cylinder", 2) => Surface::Cylinder(s(0).unwrap(), s(1).unwrap()),
                    ("disk", 2) => Surface::Disk(s(0).unwrap(), s(1).unwrap()),
                    _ => {
                        return Err(err(format!(
                            "unknown surface `{surface}` with {} sizes; expected torus(a, b), circle(a), interval(a), cylinder(a, b) or disk(a, b)",
                            sizes.len()
                        )))
                    }
                };
                let fib = match fiber {
                    FiberSpec::Scalars => Fiber::scalars(),
                    FiberSpec::Pair(n) => Fiber::symplectic_pair(*n as i32),
                    FiberSpec::Lie(g) => match lookup(g)? {
                        Value::Algebra(a) => Fiber::lie_algebra(&a.quadratic()?),
                        v => return Err(err(format!("`{g}` is a {}, expected an algebra", v.kind().label()))),
                    },
                };
                ComplexValue::Relative(lattice_model(surf, &fib)?.relative)
            }
            ComplexDef::Ball(n) => ComplexValue::Plain(relative_ball(*n as usize)),
            ComplexDef::Double(b, n) => match lookup(b)? {
                Value::Complex(c) => {
                    ComplexValue::Relative(RelativeComplex::closed(SymplecticComplex::double(c.complex(), *n as i32))?)
                }
                v => return Err(err(format!("`{b}` is a {}, expected a complex", v.kind().label()))),
            },
            ComplexDef::Cochain { degrees, d, pairing } => {
                let n = degrees.len();
                let c = GradedComplex::new(degrees.iter().map(|&k| k as i32).collect(), matrix(d, n)?)?;
                match pairing {
                    None => ComplexValue::Plain(c),
                    Some((k, m)) => ComplexValue::Relative(RelativeComplex::closed(SymplecticComplex::new(
                        c,
                        matrix(m, n)?,
                        *k as i32,
                    )?)?),
                }
            }
        }),
        StmtKind::NMap { sigma, n, .. } => match lookup(sigma)? {
            Value::Sigma(s) => Value::NMap(nmap_space(s, *n as usize)?),
            v => return Err(err(format!("`{sigma}` is a {}, expected a sigma", v.kind().label()))),
        },
        StmtKind::Grid { size, .. } => Value::Grid(random_grid(&mut rng(seed), *size as usize)?),
        StmtKind::Load { kind, file, .. } => {
            let path = base_dir.join(file);
            let text =
                std::fs::read_to_string(&path).map_err(|e| err(format!("cannot read {}: {e}", path.display())))?;
            match kind {
                LoadKind::Grid => Value::Grid(GridMap::from_text(&text)?),
                LoadKind::Path => Value::Path(APath::from_text(&text)?),
                LoadKind::Complex => {
                    let f = parse_complex(&text)?;
                    Value::Complex(match f.pairing {
                        Some(s) => ComplexValue::Relative(RelativeComplex::closed(s)?),
                        None => ComplexValue::Plain(f.complex),
                    })
                }
            }
        }
        StmtKind::Check { .. } => unreachable!("checks are not values"),
    })
}

pub type Bindings = BTreeMap<String, Value>;

impl Scope for Bindings {
    fn get(&self, name: &str) -> Option<&Value> {
        BTreeMap::get(self, name)
    }
}
