use nalgebra::DMatrix;
use num_traits::Zero;

use super::ast::Arg;
use super::value::{ComplexValue, Kind, Value};
use crate::apath_integrator::{
    action_integrate, anchor_residual, concatenate, expm, integrate, observed_order, reparametrize_check, APath,
    Reparametrization,
};
use crate::error::{Error, Result};
use crate::extensions::{
    affine_cocycle_check, cartan_3form, central_extension, cross_term_total, derived_symmetry_bracket,
    gauge_conjugation_holds, iota_half_square, pair_sum, symmetry_bracket, twisted_q, wzw_product,
};
use crate::graded_algebra::{ratio, Weight};
use crate::nq_core::{euler_field, manifold_degree, Derivation};
use crate::sigma_structures::{
    algebroid_to_q, derived_bracket, hamiltonian_to_q, is_symplectic, lambda_check, master_equation, q_to_algebroid,
    q_to_hamiltonian,
};
use crate::symplectic_complexes::{boundary_lagrangian, cohomology_pairing, lemma3_orthogonality, suspension_check};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum A {
    Bound(&'static [Kind]),
    Int,
    Num,
    Ints,
    Names,
}

pub struct CheckSpec {
    pub name: &'static str,
    pub summary: &'static str,
    pub signatures: &'static [&'static [A]],
    /// Self-contained program used by `gq check NAME`.
    pub demo: &'static str,
}

use Kind as K;
use A::*;

const Q_LIKE: &[Kind] = &[K::QField, K::Ham, K::Algebroid, K::Twist, K::Algebra];

pub const CHECKS: &[CheckSpec] = &[
    CheckSpec {
        name: "q2",
        summary: "the homological vector field squares to zero",
        signatures: &[&[Bound(Q_LIKE)]],
        demo: "chart X { x:0; xi:1; } qfield Q on X { x -> xi; } check q2 Q;",
    },
    CheckSpec {
        name: "master",
        summary: "{Θ, Θ} = 0",
        signatures: &[&[Bound(&[K::Ham])]],
        demo: "sigma S deg 2 pairs { (x:0, p:2); (theta:1, chi:1); } ham TH on S = theta*p; check master TH;",
    },
    CheckSpec {
        name: "jacobi",
        summary: "Jacobi identity of the declared structure constants",
        signatures: &[&[Bound(&[K::Algebra])]],
        demo: "algebra G = sl2; check jacobi G;",
    },
    CheckSpec {
        name: "dirac",
        summary: "coordinate submanifold is Lagrangian and Q-invariant",
        signatures: &[&[Bound(&[K::Ham]), Names]],
        demo: "sigma S deg 2 pairs { (x1:0, p1:2); (theta1:1, chi1:1); } ham TH on S = theta1*p1; check dirac TH (chi1, p1);",
    },
    CheckSpec {
        name: "symplectic",
        summary: "Q preserves the symplectic form",
        signatures: &[&[Bound(&[K::Sigma]), Bound(&[K::QField])]],
        demo: "sigma S deg 1 pairs { (x:0, p:1); } qfield Q on S { } check symplectic S Q;",
    },
    CheckSpec {
        name: "roundtrip",
        summary: "Hamiltonian or algebroid data survive Q and back",
        signatures: &[&[Bound(&[K::Ham, K::Algebroid])]],
        demo: "algebroid A base (x) fiber (e1, e2) { anchor e1 x = 1; bracket e1 e2 = e2; } check roundtrip A;",
    },
    CheckSpec {
        name: "derived",
        summary: "derived bracket matches the expected element",
        signatures: &[&[Bound(&[K::Ham]), Bound(&[K::Poly]), Bound(&[K::Poly]), Bound(&[K::Poly])], &[Bound(&[K::Pair]), Bound(&[K::Pair])]],
        demo: "sigma S deg 1 pairs { (x1:0, p1:1); (x2:0, p2:1); } ham TH on S = x1*p1*p2; \
               poly A on S = x1; poly B on S = x2; poly R on S = x1; check derived TH A B R;",
    },
    CheckSpec {
        name: "scaling",
        summary: "homogeneous parts scale with their weight",
        signatures: &[&[Bound(&[K::Poly, K::Ham])]],
        demo: "chart X { x:0; xi:1; t:2; } poly F on X = x^2*xi*t - 3*xi*t; check scaling F;",
    },
    CheckSpec {
        name: "weight",
        summary: "polynomial is homogeneous of the given weight",
        signatures: &[&[Bound(&[K::Poly, K::Ham]), Int]],
        demo: "chart X { x:0; xi:1; t:2; } poly F on X = x*xi*t; check weight F 3;",
    },
    CheckSpec {
        name: "degree",
        summary: "degree of the graded manifold",
        signatures: &[&[Bound(&[K::Chart, K::Sigma]), Int]],
        demo: "sigma S deg 2 pairs { (x:0, p:2); (theta:1, chi:1); } check degree S 2;",
    },
    CheckSpec {
        name: "euler",
        summary: "Euler field acts on a homogeneous polynomial by its weight",
        signatures: &[&[Bound(&[K::Poly, K::Ham])]],
        demo: "chart X { x:0; xi:1; t:2; } poly F on X = x*xi*t; check euler F;",
    },
    CheckSpec {
        name: "gauge",
        summary: "exp(α) conjugates the twisted Q to the gauge-changed one",
        signatures: &[&[Bound(&[K::Twist]), Bound(&[K::Poly])]],
        demo: "twist T m 3 n 2 = xi1*xi2*xi3; poly B on T = x1*xi2*xi3; check gauge T B;",
    },
    CheckSpec {
        name: "cartan",
        summary: "the Cartan 3-form is Chevalley–Eilenberg closed",
        signatures: &[&[Bound(&[K::Algebra])]],
        demo: "algebra G = so3; check cartan G;",
    },
    CheckSpec {
        name: "central",
        summary: "graded Jacobi and derivation property of the central extension",
        signatures: &[&[Bound(&[K::Algebra])]],
        demo: "algebra G = so3; check central G;",
    },
    CheckSpec {
        name: "cocycle",
        summary: "affine loop cocycle identity up to a mode cutoff",
        signatures: &[&[Bound(&[K::Algebra]), Int]],
        demo: "algebra G = sl2; check cocycle G 4;",
    },
    CheckSpec {
        name: "wzw",
        summary: "central product on grid maps: inverse and cross-term bookkeeping",
        signatures: &[&[Bound(&[K::Grid])], &[Bound(&[K::Grid]), Bound(&[K::Grid])]],
        demo: "grid G = random 9; grid H = random 9; check wzw G; check wzw G H;",
    },
    CheckSpec {
        name: "iota",
        summary: "[ι, ι] vanishes exactly when v⌟α does",
        signatures: &[&[Bound(&[K::Pair])]],
        demo: "pair P m 2 n 2 = ([x2, 0], x1*xi1); check iota P;",
    },
    CheckSpec {
        name: "leibniz",
        summary: "left Leibniz identity of the symmetry-pair bracket",
        signatures: &[&[Bound(&[K::Pair]), Bound(&[K::Pair]), Bound(&[K::Pair])]],
        demo: "pair A m 2 n 2 = ([x2, 0], x1*xi2); pair B m 2 n 2 = ([1, x1], xi1); \
               pair C m 2 n 2 = ([0, x1^2], x2*xi1); check leibniz A B C;",
    },
    CheckSpec {
        name: "holonomy",
        summary: "holonomy is orthogonal and matches exp(X) for constant paths",
        signatures: &[&[Bound(&[K::Path])]],
        demo: "path P = const so3 (0.3, -1, 0.5); check holonomy P;",
    },
    CheckSpec {
        name: "concat",
        summary: "holonomy of a concatenation is the product",
        signatures: &[&[Bound(&[K::Path]), Bound(&[K::Path])]],
        demo: "path P = const so3 (1, 0, 0); path Q = so3 { 0: (0, 1, 0); 0.5: (0, 0, 1); 1: (1, 1, 0); } check concat P Q;",
    },
    CheckSpec {
        name: "reparam",
        summary: "holonomy is invariant under reparametrization",
        signatures: &[&[Bound(&[K::Path])]],
        demo: "path P = so3 { 0: (1, 0, 0); 0.5: (0, 1, 0); 1: (0, 0, 1); } check reparam P;",
    },
    CheckSpec {
        name: "order",
        summary: "observed convergence order of the integrator is 4",
        signatures: &[&[Bound(&[K::Path])]],
        demo: "path P = so3 { 0: (1, 0, 0); 0.5: (0, 1, 0); 1: (0, 0, 1); } check order P;",
    },
    CheckSpec {
        name: "action",
        summary: "action-algebroid path: anchor condition and transported base point",
        signatures: &[&[Bound(&[K::Path])], &[Bound(&[K::Path]), Num]],
        demo: "path P = const so3 (0, 0, 1) orbit (1, 0, 0) samples 65; check action P 0.001;",
    },
    CheckSpec {
        name: "lemma1",
        summary: "cohomology relative to the sphere is the base cohomology shifted by n",
        signatures: &[&[Bound(&[K::Complex]), Int]],
        demo: "complex K = cochain (0, 1) [[0, 0], [1, 0]]; complex L = cochain (0, 1, 1) [[0, 0, 0], [0, 0, 0], [0, 0, 0]]; \
               check lemma1 K 2; check lemma1 L 3;",
    },
    CheckSpec {
        name: "lemma3",
        summary: "cocycles are the annihilator of the vanishing-on-boundary coboundaries",
        signatures: &[&[Bound(&[K::Complex])]],
        demo: "complex K = cochain (0, 1, 1) [[0, 0, 0], [1, 0, 0], [0, 0, 0]]; complex D = double K 1; check lemma3 D;",
    },
    CheckSpec {
        name: "stokes",
        summary: "boundary pairing equals the compatibility defect",
        signatures: &[&[Bound(&[K::Complex])]],
        demo: "algebra G = abelian(1); complex C = lattice interval(3) lie G; check stokes C;",
    },
    CheckSpec {
        name: "boundary-lagrangian",
        summary: "image of bulk cohomology in boundary cohomology is Lagrangian",
        signatures: &[&[Bound(&[K::Complex])]],
        demo: "algebra G = so3; complex C = lattice cylinder(3, 3) lie G; check boundary-lagrangian C;",
    },
    CheckSpec {
        name: "cohomology",
        summary: "cohomology dimensions from the lowest degree up",
        signatures: &[&[Bound(&[K::Complex]), Ints]],
        demo: "algebra G = so3; complex T = lattice torus(3, 3) lie G; check cohomology T (3, 6, 3);",
    },
    CheckSpec {
        name: "poincare",
        summary: "induced pairing on cohomology is nondegenerate and graded symmetric",
        signatures: &[&[Bound(&[K::Complex])]],
        demo: "algebra G = so3; complex T = lattice torus(3, 3) lie G; check poincare T;",
    },
    CheckSpec {
        name: "nmap",
        summary: "mapping-space pairing is nondegenerate with the expected component sizes",
        signatures: &[&[Bound(&[K::NMap])], &[Bound(&[K::NMap]), Ints]],
        demo: "sigma S deg 2 pairs { (x:0, p:2); (theta:1, chi:1); } nmap N = S dim 2; check nmap N (1, 1, 2, 2);",
    },
];

pub fn spec(name: &str) -> Option<&'static CheckSpec> {
    CHECKS.iter().find(|c| c.name == name)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    DegradedMode,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub verdict: Verdict,
    pub witness: Option<String>,
    pub residual: Option<f64>,
    pub explanation: Option<String>,
}

impl Outcome {
    fn pass() -> Self {
        Outcome { verdict: Verdict::Pass, witness: None, residual: None, explanation: None }
    }

    fn verdict(ok: bool) -> Self {
        Outcome { verdict: if ok { Verdict::Pass } else { Verdict::Fail }, ..Self::pass() }
    }

    fn fail(explanation: impl Into<String>) -> Self {
        Outcome { verdict: Verdict::Fail, explanation: Some(explanation.into()), ..Self::pass() }
    }

    fn witness(mut self, w: Option<String>) -> Self {
        self.witness = w;
        self
    }

    fn residual(r: f64, tol: f64) -> Self {
        Outcome { residual: Some(r), ..Self::verdict(r <= tol) }
    }

    fn explain(mut self, e: impl Into<String>) -> Self {
        self.explanation = Some(e.into());
        self
    }
}

pub struct Env {
    pub steps: usize,
    pub tolerance: f64,
}

fn q_of(v: &Value) -> Result<Derivation> {
    match v {
        Value::QField(q) => Ok(q.clone()),
        Value::Ham(s, theta) => hamiltonian_to_q(s, theta),
        Value::Algebroid(a) => algebroid_to_q(a),
        Value::Twist(t) => twisted_q(t),
        Value::Algebra(g) => algebroid_to_q(&g.algebroid()?),
        _ => unreachable!("validated by the semantic pass"),
    }
}

fn poly_of(v: &Value) -> crate::graded_algebra::GPoly {
    match v {
        Value::Poly(p) | Value::Ham(_, p) => p.clone(),
        _ => unreachable!("validated by the semantic pass"),
    }
}

fn int(a: &Arg) -> i64 {
    match a {
        Arg::Num(s) => s.parse().expect("validated by the semantic pass"),
        _ => unreachable!(),
    }
}

fn ints(a: &Arg) -> Vec<i64> {
    match a {
        Arg::List(v) => v.iter().map(int).collect(),
        _ => unreachable!(),
    }
}

fn holonomy(p: &APath, steps: usize) -> Result<DMatrix<f64>> {
    Ok(integrate(p, steps)?.holonomy)
}

/// Smallest step count from `base` up to `8 * base` that puts a whole number
/// of steps on every sample interval, so that doubling refines uniformly.
fn aligned_steps(p: &APath, base: usize) -> usize {
    let times: Vec<f64> = p.samples().map(|(t, _)| t).collect();
    (base..=8 * base)
        .find(|&n| {
            times.windows(2).all(|w| {
                let x = (w[1] - w[0]) * n as f64;
                (x - x.round()).abs() < 1e-9
            })
        })
        .unwrap_or(base)
}

fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0, |a, x| a.max(x.abs()))
}

/// Runs one check. Structural errors become failed outcomes.
pub fn run(name: &str, vals: &[&Value], args: &[Arg], env: &Env) -> Outcome {
    match run_inner(name, vals, args, env) {
        Ok(o) => o,
        Err(e) => Outcome::fail(e.to_string()),
    }
}

fn run_inner(name: &str, v: &[&Value], args: &[Arg], env: &Env) -> Result<Outcome> {
    let tol = env.tolerance;
    Ok(match name {
        "q2" => {
            let sq = q_of(v[0])?.q_square()?;
            let w = sq.components().iter().enumerate().find(|(_, c)| !c.is_zero());
            Outcome::verdict(w.is_none()).witness(w.map(|(i, c)| format!("Q²({}) = {c}", sq.chart().name(i))))
        }
        "master" => {
            let Value::Ham(s, theta) = v[0] else { unreachable!() };
            let m = master_equation(s, theta)?;
            Outcome::verdict(m.is_zero()).witness((!m.is_zero()).then(|| m.to_string()))
        }
        "jacobi" => {
            let Value::Algebra(g) = v[0] else { unreachable!() };
            let w = jacobi_witness(&g.c);
            Outcome::verdict(w.is_none())
                .witness(w.map(|(i, j, k)| format!("({}, {}, {})", g.names[i], g.names[j], g.names[k])))
        }
        "dirac" => {
            let Value::Ham(s, theta) = v[0] else { unreachable!() };
            let names: Vec<String> = match &args[1] {
                Arg::List(l) => {
                    l.iter().map(|a| if let Arg::Name(n) = a { n.clone() } else { unreachable!() }).collect()
                }
                _ => unreachable!(),
            };
            let refs: Vec<&str> = names.iter().map(String::as_str).collect();
            let verdict = lambda_check(s, &hamiltonian_to_q(s, theta)?, &refs)?;
            let mut o =
                Outcome::verdict(verdict.holds()).witness(verdict.witness.map(|(n, p)| format!("Q({n}) = {p}")));
            if !verdict.lagrangian {
                o = o.explain("constraint set is not Lagrangian");
            }
            o
        }
        "symplectic" => {
            let (Value::Sigma(s), Value::QField(q)) = (v[0], v[1]) else { unreachable!() };
            let w = is_symplectic(s, q)?;
            Outcome::verdict(w.is_none()).witness(w.map(|(a, b, p)| format!("L_Q ω on ({a}, {b}) = {p}")))
        }
        "roundtrip" => match v[0] {
            Value::Ham(s, theta) => {
                let back = q_to_hamiltonian(s, &hamiltonian_to_q(s, theta)?)?;
                let diff = back.poly() - theta;
                let ok = diff.is_zero() || (diff.len() == 1 && !diff.constant_term().is_zero());
                Outcome::verdict(ok).witness((!ok).then(|| diff.to_string()))
            }
            Value::Algebroid(a) => Outcome::verdict(q_to_algebroid(&algebroid_to_q(a)?)? == *a),
            _ => unreachable!(),
        },
        "derived" => match v {
            [Value::Ham(s, theta), a, b, r] => {
                let got = derived_bracket(s, theta, &poly_of(a), &poly_of(b))?;
                let diff = &got - &poly_of(r);
                Outcome::verdict(diff.is_zero()).witness((!diff.is_zero()).then(|| format!("got {got}")))
            }
            [Value::Pair(a), Value::Pair(b)] => {
                let derived = derived_symmetry_bracket(a, b)?;
                let direct = symmetry_bracket(a, b)?;
                Outcome::verdict(derived == direct)
                    .witness((derived != direct).then(|| format!("decoded {derived}, direct {direct}")))
            }
            _ => unreachable!(),
        },
        "scaling" => {
            let p = poly_of(v[0]);
            Outcome::verdict(p.scaling_check(&ratio(2, 1))? && p.scaling_check(&ratio(-1, 3))?)
        }
        "weight" => {
            let p = poly_of(v[0]);
            let w = int(&args[1]);
            Outcome::verdict(p.is_homogeneous_of(w)).witness(match p.weight_of() {
                Weight::Homogeneous(k) if k as i64 != w => Some(format!("weight {k}")),
                Weight::Inhomogeneous => Some("inhomogeneous".into()),
                _ => None,
            })
        }
        "degree" => {
            let want = int(&args[1]);
            match v[0] {
                Value::Chart(c) => {
                    let d = manifold_degree(c) as i64;
                    Outcome::verdict(d == want).witness((d != want).then(|| format!("degree {d}")))
                }
                Value::Sigma(s) => {
                    let d = manifold_degree(s.chart()) as i64;
                    let ok = s.degree() as i64 == want && d <= want;
                    Outcome::verdict(ok)
                        .witness((!ok).then(|| format!("symplectic degree {}, manifold degree {d}", s.degree())))
                }
                _ => unreachable!(),
            }
        }
        "euler" => {
            let p = poly_of(v[0]);
            match p.weight_of() {
                Weight::Inhomogeneous => Outcome::fail("polynomial is not homogeneous"),
                w => {
                    let k = match w {
                        Weight::Homogeneous(k) => k,
                        _ => 0,
                    };
                    let e = euler_field(p.chart()).apply(&p)?;
                    Outcome::verdict(e == p.scale(&ratio(k as i64, 1)))
                }
            }
        }
        "gauge" => {
            let Value::Twist(t) = v[0] else { unreachable!() };
            Outcome::verdict(gauge_conjugation_holds(t, &poly_of(v[1]))?)
        }
        "cartan" => {
            let Value::Algebra(g) = v[0] else { unreachable!() };
            let g = g.quadratic()?;
            let image = g.ce_differential().apply(&cartan_3form(&g))?;
            Outcome::verdict(image.is_zero()).witness((!image.is_zero()).then(|| image.to_string()))
        }
        "central" => {
            let Value::Algebra(g) = v[0] else { unreachable!() };
            let ext = central_extension(&g.quadratic()?)?;
            let j = ext.jacobi_failure();
            let d = ext.derivation_failure();
            let q2 = ext.q_squares_to_zero();
            let ok = j.is_none() && d.is_none() && q2;
            let w =
                j.map(|t| format!("Jacobi fails on {t:?}")).or(d.map(|t| format!("Q is not a derivation on {t:?}")));
            Outcome::verdict(ok).witness(w.or((!q2).then(|| "Q² ≠ 0".to_string())))
        }
        "cocycle" => {
            let Value::Algebra(g) = v[0] else { unreachable!() };
            let n = int(&args[1]);
            if n < 0 {
                return Ok(Outcome::fail("cutoff must be non-negative"));
            }
            Outcome::verdict(affine_cocycle_check(&g.quadratic()?, n as u32)?)
        }
        "wzw" => match v {
            [Value::Grid(a)] => {
                let p = wzw_product(a, &a.inverse())?;
                let (nx, ny) = p.size();
                let mut r: f64 = p.total_omega().abs();
                for i in 0..nx {
                    for j in 0..ny {
                        r = r.max(p.node(i, j).angle());
                    }
                }
                Outcome::residual(r, tol)
            }
            [Value::Grid(a), Value::Grid(b)] => {
                let p = wzw_product(a, b)?;
                let r = (p.total_omega() - a.total_omega() - b.total_omega() - cross_term_total(a, b)?).abs();
                Outcome::residual(r, tol)
            }
            _ => unreachable!(),
        },
        "iota" => {
            let Value::Pair(p) = v[0] else { unreachable!() };
            let sq = iota_half_square(p)?.is_zero();
            let c = p.contract(p.form())?;
            Outcome::verdict(sq == c.is_zero()).witness(Some(format!("v⌟α = {c}")))
        }
        "leibniz" => {
            let [Value::Pair(a), Value::Pair(b), Value::Pair(c)] = v else { unreachable!() };
            let lhs = symmetry_bracket(a, &symmetry_bracket(b, c)?)?;
            let rhs = pair_sum(
                &symmetry_bracket(&symmetry_bracket(a, b)?, c)?,
                &symmetry_bracket(b, &symmetry_bracket(a, c)?)?,
            )?;
            Outcome::verdict(lhs == rhs).witness((lhs != rhs).then(|| format!("{lhs} vs {rhs}")))
        }
        "holonomy" => {
            let Value::Path(p) = v[0] else { unreachable!() };
            let el = integrate(p, env.steps)?;
            let mut r = el.orthogonality_residual().max(el.determinant_residual());
            let samples: Vec<&DMatrix<f64>> = p.samples().map(|(_, a)| a).collect();
            if samples.windows(2).all(|w| w[0] == w[1]) {
                r = r.max(max_abs(&(&el.holonomy - expm(samples[0]))));
            }
            Outcome::residual(r, tol)
        }
        "concat" => {
            let [Value::Path(p), Value::Path(q)] = v else { unreachable!() };
            let pq = holonomy(&concatenate(p, q)?, 2 * env.steps)?;
            let r = max_abs(&(pq - holonomy(p, env.steps)? * holonomy(q, env.steps)?));
            Outcome::residual(r, tol)
        }
        "reparam" => {
            let Value::Path(p) = v[0] else { unreachable!() };
            let phi = Reparametrization::sampled(|t| t * t * (3.0 - 2.0 * t), 33)?;
            Outcome::residual(reparametrize_check(p, &phi, env.steps)?, tol)
        }
        "order" => {
            let Value::Path(p) = v[0] else { unreachable!() };
            let k = observed_order(p, aligned_steps(p, (env.steps / 100).max(4)))?;
            Outcome { residual: Some(k), ..Outcome::verdict((k - 4.0).abs() <= 0.3) }
                .witness(Some(format!("order {k:.3}")))
        }
        "action" => {
            let Value::Path(p) = v[0] else { unreachable!() };
            let anchor_tol = args.get(1).map_or(tol, |a| match a {
                Arg::Num(s) => s.parse().expect("validated"),
                _ => unreachable!(),
            });
            let r = anchor_residual(p)?;
            match action_integrate(p, env.steps, anchor_tol) {
                Ok(_) => Outcome { residual: Some(r), ..Outcome::pass() },
                Err(Error::InconsistentPath(m)) => Outcome { residual: Some(r), ..Outcome::fail(m) },
                Err(e) => return Err(e),
            }
        }
        "lemma1" => {
            let Value::Complex(c) = v[0] else { unreachable!() };
            let n = int(&args[1]);
            if n < 0 {
                return Ok(Outcome::fail("n must be non-negative"));
            }
            let r = suspension_check(c.complex(), n as usize);
            Outcome::verdict(r.holds)
                .witness((!r.holds).then(|| format!("base {:?}, relative {:?}", r.base, r.shifted)))
        }
        "lemma3" => {
            let Value::Complex(ComplexValue::Relative(r)) = v[0] else {
                return Ok(Outcome::fail("lemma3 needs a complex with a pairing"));
            };
            let rep = lemma3_orthogonality(r)?;
            let dims = format!(
                "dim Z = {}, dim B0 = {}, dim B0^perp = {}",
                rep.cocycles_dim, rep.sub_coboundaries_dim, rep.annihilator_dim
            );
            if rep.inclusion && rep.equality && rep.quotient_nondegenerate {
                Outcome::pass().witness(Some(dims))
            } else if rep.holds() {
                Outcome { verdict: Verdict::DegradedMode, ..Outcome::pass() }.witness(Some(dims)).explain(
                    "chain-level pairing is degenerate: Z is a proper subspace of B0^perp; inclusion and the \
                     cohomology duality H(total) x H(relative) hold",
                )
            } else {
                Outcome::verdict(false).witness(Some(dims))
            }
        }
        "stokes" => {
            let Value::Complex(ComplexValue::Relative(r)) = v[0] else {
                return Ok(Outcome::fail("stokes needs a complex with a pairing"));
            };
            let lhs = r.restriction().transpose().mul(r.boundary().omega()).mul(r.restriction());
            Outcome::verdict(lhs == r.total().stokes_form())
        }
        "boundary-lagrangian" => {
            let Value::Complex(ComplexValue::Relative(r)) = v[0] else {
                return Ok(Outcome::fail("boundary-lagrangian needs a complex with a pairing"));
            };
            let rep = boundary_lagrangian(r)?;
            Outcome::verdict(rep.isotropic && rep.lagrangian)
                .witness(Some(format!("image {} of {}", rep.image_dim, rep.boundary_cohomology_dim)))
        }
        "cohomology" => {
            let Value::Complex(c) = v[0] else { unreachable!() };
            let betti = c.complex().cohomology().betti();
            let dims = c.complex().dims();
            let got: Vec<i64> = match (dims.keys().next(), dims.keys().last()) {
                (Some(&lo), Some(&hi)) => (lo..=hi).map(|k| betti.get(&k).copied().unwrap_or(0) as i64).collect(),
                _ => Vec::new(),
            };
            let want = ints(&args[1]);
            Outcome::verdict(got == want).witness(Some(format!("{got:?}")))
        }
        "poincare" => {
            let Value::Complex(ComplexValue::Relative(r)) = v[0] else {
                return Ok(Outcome::fail("poincare needs a complex with a pairing"));
            };
            let p = cohomology_pairing(r.total())?;
            let o = Outcome::verdict(p.nondegenerate && p.graded_symmetric);
            if !p.chain_level_nondegenerate {
                o.explain("chain-level pairing is degenerate; nondegenerate on cohomology")
            } else {
                o
            }
        }
        "nmap" => {
            let Value::NMap(s) = v[0] else { unreachable!() };
            let dims: Vec<i64> = s.components.iter().map(|c| c.dim() as i64).collect();
            let dims_ok = args.get(1).is_none_or(|a| ints(a) == dims);
            Outcome::verdict(s.is_nondegenerate() && dims_ok).witness(Some(format!("{dims:?}")))
        }
        _ => unreachable!("unknown checks are rejected by the semantic pass"),
    })
}

/// Independent Jacobi test on raw constants `c[k][i][j]`.
pub fn jacobi_witness(c: &[Vec<Vec<crate::graded_algebra::Rational>>]) -> Option<(usize, usize, usize)> {
    let d = c.len();
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                for out in 0..d {
                    let mut s = crate::graded_algebra::Rational::zero();
                    for m in 0..d {
                        s += &c[m][j][k] * &c[out][i][m] + &c[m][k][i] * &c[out][j][m] + &c[m][i][j] * &c[out][k][m];
                    }
                    if !s.is_zero() {
                        return Some((i, j, k));
                    }
                }
            }
        }
    }
    None
}
