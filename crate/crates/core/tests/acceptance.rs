//! Acceptance criteria, one PASS/FAIL line each.
//!
//! A criterion is made of named parts. A part listed in `KNOWN_UNATTAINABLE`
//! still runs and still prints FAIL when it fails, but does not fail the
//! process; every other part must pass.

mod common;

use std::collections::{BTreeMap, BTreeSet};
use std::process::Command;
use std::time::Instant;

use common::*;
use gq::apath_integrator::{
    concatenate, integrate, observed_order, reparametrize_check, so3_matrix, APath, Reparametrization,
};
use gq::extensions::{
    affine_cocycle_check, central_extension, derived_symmetry_bracket, fiber_chart, iota_half_square,
    loop_cocycle_failure, non_skew_witness, pair_sum, symmetry_bracket, QuadraticLieAlgebra, SymmetryPair,
};
use gq::graded_algebra::{rat, Chart, GPoly, Rational};
use gq::linalg::QMatrix;
use gq::nq_core::{de_rham, manifold_degree, tangent_shift_chart};
use gq::random::{random_antisymmetric, random_complex, random_lie_algebra_3, random_poly, rng, Rng64};
use gq::sigma_structures::{
    algebroid_to_q, courant_hamiltonian, derived_bracket, master_equation, poisson_hamiltonian, AlgebroidData,
    DarbouxChart, PairSpec,
};
use gq::symplectic_complexes::{
    boundary_lagrangian, cohomology_pairing, lattice_model, lemma3_orthogonality, nmap_space, suspension_check, Fiber,
    GradedComplex, Lemma3Mode, RelativeComplex, Surface, SymplecticComplex,
};
use rand::Rng;

const KNOWN_UNATTAINABLE: &[&str] = &["interval-equality"];

struct Part {
    name: String,
    ok: bool,
    detail: String,
}

fn part(name: &str, ok: bool, detail: impl Into<String>) -> Part {
    Part { name: name.to_string(), ok, detail: detail.into() }
}

type Criterion = (&'static str, fn() -> Vec<Part>);

fn main() {
    let criteria: Vec<Criterion> = vec![
        ("Koszul kernel", koszul),
        ("Q^2 = 0 equivalences", q_squared),
        ("degree 1 structures are Poisson", poisson),
        ("degree 2 structures are Courant", courant),
        ("degree bound on Darboux charts", degree_bound),
        ("central extension", central),
        ("symmetry pairs", symmetry),
        ("A-path integration", apaths),
        ("appendix lemmas", lemmas),
        ("flat-connection moduli", moduli),
        ("N-map spaces", nmaps),
        ("CLI verification suite", cli),
    ];
    let mut hard_failures = 0;
    for (i, (title, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let parts = run();
        let secs = start.elapsed().as_secs_f64();
        let failed: Vec<&Part> = parts.iter().filter(|p| !p.ok).collect();
        hard_failures += failed.iter().filter(|p| !KNOWN_UNATTAINABLE.contains(&p.name.as_str())).count();
        let verdict = if failed.is_empty() { "PASS" } else { "FAIL" };
        let detail = if failed.is_empty() {
            parts.iter().map(|p| p.detail.as_str()).filter(|d| !d.is_empty()).collect::<Vec<_>>().join("; ")
        } else {
            failed.iter().map(|p| format!("{}: {}", p.name, p.detail)).collect::<Vec<_>>().join("; ")
        };
        println!("{verdict} {:>2} {title} ({secs:.1} s): {detail}", i + 1);
        for p in &failed {
            if KNOWN_UNATTAINABLE.contains(&p.name.as_str()) {
                println!("        known unattainable: {}", p.name);
            }
        }
    }
    if hard_failures > 0 {
        eprintln!("{hard_failures} acceptance part(s) failed");
        std::process::exit(1);
    }
}

fn homogeneous(r: &mut Rng64, chart: &std::sync::Arc<Chart>) -> GPoly {
    let p = random_poly(r, chart, 4, 2);
    let parts: Vec<GPoly> = p.homogeneous_parts().into_values().collect();
    if parts.is_empty() {
        return p;
    }
    parts[r.gen_range(0..parts.len())].clone()
}

fn sign(odd: bool) -> Rational {
    rat(if odd { -1 } else { 1 })
}

fn koszul() -> Vec<Part> {
    let chart = Chart::new([("x", 0), ("y", 0), ("a", 1), ("b", 1), ("c", 1), ("u", 2), ("w", 3)]).unwrap();
    let mut r = rng(1);
    let start = Instant::now();
    let n = 10_000;
    let mut bad = [0usize; 3];
    for _ in 0..n {
        let (p, q, s) = (homogeneous(&mut r, &chart), homogeneous(&mut r, &chart), homogeneous(&mut r, &chart));
        let (pp, qp) = (p.parity().unwrap_or(0), q.parity().unwrap_or(0));
        if &p * &q != (&q * &p).scale(&sign(pp * qp == 1)) {
            bad[0] += 1;
        }
        if &(&p * &q) * &s != &p * &(&q * &s) {
            bad[1] += 1;
        }
        let v = r.gen_range(0..chart.len());
        let rhs =
            &(&p.left_derivative(v) * &q) + &(&p * &q.left_derivative(v)).scale(&sign(chart.is_odd(v) && pp == 1));
        if (&p * &q).left_derivative(v) != rhs {
            bad[2] += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    vec![
        part("supercommutativity", bad[0] == 0, format!("{n} samples; supercommutativity violations {}", bad[0])),
        part("associativity", bad[1] == 0, format!("associativity violations {}", bad[1])),
        part("leibniz", bad[2] == 0, format!("Leibniz violations {}", bad[2])),
        part("runtime", secs < 30.0, format!("{secs:.1} s < 30 s")),
    ]
}

fn q_squared() -> Vec<Part> {
    let de_rham_ok = (1..=4).all(|m| {
        let c = tangent_shift_chart(m);
        de_rham(&c, m).unwrap().q_square().unwrap().is_zero()
    });
    let mut r = rng(2);
    let mut algebras =
        vec![QuadraticLieAlgebra::so3().constants().to_vec(), QuadraticLieAlgebra::sl2().constants().to_vec()];
    for i in 0..20 {
        algebras.push(if i % 2 == 0 { random_lie_algebra_3(&mut r) } else { random_antisymmetric(&mut r, 3) });
    }
    let (mut agree, mut lie) = (0, 0);
    for c in &algebras {
        let a = AlgebroidData::from_lie_algebra(&["e1", "e2", "e3"], c).unwrap();
        let q2 = algebroid_to_q(&a).unwrap().q_square().unwrap().is_zero();
        let oracle = jacobi_holds(c);
        agree += (q2 == oracle) as usize;
        lie += oracle as usize;
    }
    let n = algebras.len();
    vec![
        part("de-rham", de_rham_ok, "de Rham Q^2 = 0 for m = 1..4"),
        part("chevalley-eilenberg", agree == n, format!("{agree}/{n} agree with the Jacobi oracle")),
        part("both-outcomes", lie > 0 && lie < n, format!("{lie} Lie, {} not Lie", n - lie)),
    ]
}

fn poisson() -> Vec<Part> {
    let m = 3;
    let s = DarbouxChart::poisson_standard(m);
    let c = s.chart().clone();
    let xs: Vec<usize> = s.pairs().iter().map(|p| p.0).collect();
    let x = |a: usize| GPoly::var(&c, xs[a]);
    let ppp = &(&GPoly::var(&c, s.pairs()[0].1) * &GPoly::var(&c, s.pairs()[1].1)) * &GPoly::var(&c, s.pairs()[2].1);
    let mut r = rng(3);
    let mut kappa: Option<Rational> = None;
    let (mut agree, mut proportional, mut derived_ok, mut poisson_count) = (0, 0, 0, 0);
    let n = 50;
    for i in 0..n {
        let mut upper: BTreeMap<(usize, usize), GPoly> = BTreeMap::new();
        match i % 3 {
            0 => {
                for (a, b) in [(0, 1), (0, 2), (1, 2)] {
                    upper.insert((a, b), random_function(&mut r, &c, &xs, 2, 2));
                }
            }
            1 => {
                upper.insert((0, 1), random_function(&mut r, &c, &xs, 2, 3));
            }
            _ => {
                let k = random_lie_algebra_3(&mut r);
                for (a, b) in [(0, 1), (0, 2), (1, 2)] {
                    let mut f = GPoly::zero(&c);
                    for (t, kt) in k.iter().enumerate() {
                        f = &f + &x(t).scale(&kt[a][b]);
                    }
                    upper.insert((a, b), f);
                }
            }
        }
        let pi = |a: usize, b: usize| -> GPoly {
            match a.cmp(&b) {
                std::cmp::Ordering::Less => upper.get(&(a, b)).cloned().unwrap_or_else(|| GPoly::zero(&c)),
                std::cmp::Ordering::Greater => -upper.get(&(b, a)).cloned().unwrap_or_else(|| GPoly::zero(&c)),
                std::cmp::Ordering::Equal => GPoly::zero(&c),
            }
        };
        let theta = poisson_hamiltonian(&s, &upper).unwrap();
        let master = master_equation(&s, &theta).unwrap();
        let j = &schouten(&xs, &pi, 0, 1, 2) * &ppp;
        agree += (master.is_zero() == j.is_zero()) as usize;
        poisson_count += j.is_zero() as usize;
        if !j.is_zero() && kappa.is_none() {
            let (mono, coeff) = master.terms().next().expect("nonzero");
            kappa = Some(coeff / j.coefficient(mono.exponents()));
        }
        let k = kappa.clone().unwrap_or_else(|| rat(1));
        proportional += (master == j.scale(&k)) as usize;
        derived_ok += [(0, 1), (0, 2), (1, 2)]
            .iter()
            .all(|&(a, b)| derived_bracket(&s, &theta, &x(a), &x(b)).unwrap() == pi(a, b))
            as usize;
    }
    let k = kappa.map(|k| k.to_string()).unwrap_or_default();
    vec![
        part("schouten-agreement", agree == n, format!("{agree}/{n} agree with the Schouten oracle")),
        part("proportionality", proportional == n, format!("{{Θ,Θ}} = {k}·J p1p2p3 on {proportional}/{n}")),
        part("both-outcomes", poisson_count > 0 && poisson_count < n, format!("{poisson_count} Poisson")),
        part("derived-coordinates", derived_ok == n, format!("derived bracket gives π^ab on {derived_ok}/{n}")),
    ]
}

fn courant() -> Vec<Part> {
    let mut r = rng(4);
    let mut dorfman_ok = 0;
    let n = 100;
    for i in 0..n {
        let m = 1 + i % 3;
        let s = DarbouxChart::courant_standard(m);
        let c = s.chart().clone();
        let var = |name: String| s.var(&name).unwrap();
        let xs: Vec<usize> = (1..=m).map(|a| c.index_of(&format!("x{a}")).unwrap()).collect();
        let mut sections = Vec::new();
        for _ in 0..4 {
            sections.push((0..m).map(|_| random_function(&mut r, &c, &xs, 2, 2)).collect::<Vec<_>>());
        }
        let encode = |v: &[GPoly], w: &[GPoly]| -> GPoly {
            let mut e = GPoly::zero(&c);
            for a in 0..m {
                e = &e + &(&v[a] * &var(format!("chi{}", a + 1)));
                e = &e + &(&w[a] * &var(format!("theta{}", a + 1)));
            }
            e
        };
        let theta = courant_hamiltonian(&s, None).unwrap();
        let e1 = encode(&sections[0], &sections[1]);
        let e2 = encode(&sections[2], &sections[3]);
        let got = derived_bracket(&s, &theta, &e1, &e2).unwrap();
        let (v, w) = dorfman(&xs, &sections[0], &sections[1], &sections[2], &sections[3]);
        dorfman_ok += (got == encode(&v, &w)) as usize;
    }

    let s = DarbouxChart::courant_standard(4);
    let c = s.chart().clone();
    let xs: Vec<usize> = (1..=4).map(|a| c.index_of(&format!("x{a}")).unwrap()).collect();
    let th = |a: usize| s.var(&format!("theta{}", a + 1)).unwrap();
    let triples = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)];
    let (mut agree, mut closed) = (0, 0);
    let trials = 50;
    for i in 0..trials {
        let comps: BTreeMap<(usize, usize, usize), GPoly> = if i % 2 == 0 {
            let mut beta = BTreeMap::new();
            for a in 0..4 {
                for b in a + 1..4 {
                    beta.insert((a, b), random_function(&mut r, &c, &xs, 2, 2));
                }
            }
            let p = |a: usize, b: usize, s: usize| beta[&(a, b)].left_derivative(xs[s]);
            triples.iter().map(|&(a, b, d)| ((a, b, d), &(&p(b, d, a) - &p(a, d, b)) + &p(a, b, d))).collect()
        } else {
            triples.iter().map(|&t| (t, random_function(&mut r, &c, &xs, 2, 1))).collect()
        };
        let mut eta = GPoly::zero(&c);
        for (&(a, b, d), f) in &comps {
            eta = &eta + &(&(&(f * &th(a)) * &th(b)) * &th(d));
        }
        let theta = courant_hamiltonian(&s, Some(&eta)).unwrap();
        let master = master_equation(&s, &theta).unwrap().is_zero();
        let deta = d_three_form(&xs, &|a, b, d| comps[&(a, b, d)].clone()).is_zero();
        agree += (master == deta) as usize;
        closed += deta as usize;
    }
    vec![
        part("dorfman", dorfman_ok == n, format!("{dorfman_ok}/{n} derived brackets equal the Dorfman oracle")),
        part("twisted", agree == trials, format!("{agree}/{trials} twists: master = 0 iff dη = 0")),
        part(
            "both-outcomes",
            closed > 0 && closed < trials,
            format!("{closed} closed, {} not closed", trials - closed),
        ),
    ]
}

fn degree_bound() -> Vec<Part> {
    let mut r = rng(5);
    let (mut agree, mut rejected_range, mut bound_ok) = (0, 0, true);
    let n_req = 1000;
    for i in 0..n_req {
        let n: i64 = r.gen_range(0..=4);
        let k = r.gen_range(1..=3);
        let pairs: Vec<PairSpec> = (0..k)
            .map(|j| {
                let wq = r.gen_range(-2..=n + 2);
                let wp = if i % 2 == 0 { n - wq } else { r.gen_range(-2..=n + 2) };
                (format!("q{j}"), wq, format!("p{j}"), wp)
            })
            .collect();
        let in_range = pairs.iter().all(|(_, a, _, b)| (0..=n).contains(a) && (0..=n).contains(b));
        let sums = pairs.iter().all(|(_, a, _, b)| a + b == n);
        let built = DarbouxChart::new(n, &pairs);
        agree += (built.is_ok() == (in_range && sums)) as usize;
        if !in_range {
            rejected_range += 1;
        }
        if let Ok(d) = built {
            bound_ok &= manifold_degree(d.chart()) as i64 <= n;
        }
    }
    vec![
        part("rejection", agree == n_req, format!("{agree}/{n_req} requests accepted iff all weights lie in [0, n]")),
        part("coverage", rejected_range > 0, format!("{rejected_range} out-of-range requests")),
        part("bound", bound_ok, "accepted charts have degree <= n"),
    ]
}

fn central() -> Vec<Part> {
    let mut parts = Vec::new();
    for (name, g) in [("so3", QuadraticLieAlgebra::so3()), ("sl2", QuadraticLieAlgebra::sl2())] {
        let ext = central_extension(&g).unwrap();
        let ok = ext.jacobi_failure().is_none() && ext.derivation_failure().is_none() && ext.q_squares_to_zero();
        parts.push(part(name, ok, format!("{name}: Jacobi, derivation, Q^2 = 0")));
        parts.push(part(
            "affine-cocycle",
            affine_cocycle_check(&g, 4).unwrap(),
            format!("{name}: affine cocycle exact for N = 4"),
        ));
        let broken = loop_cocycle_failure(&g, 4, |m| rat(m.abs())).unwrap();
        parts.push(part(
            "broken-cocycle",
            broken.is_some(),
            format!("{name}: |m| weight fails at {:?}", broken.unwrap_or_default()),
        ));
    }
    parts
}

fn random_pair(r: &mut Rng64, m: usize) -> SymmetryPair {
    let c = fiber_chart(m, 2).unwrap();
    let xs: Vec<usize> = (0..m).collect();
    let v: Vec<GPoly> = (0..m).map(|_| random_function(r, &c, &xs, 2, 2)).collect();
    let mut alpha = GPoly::zero(&c);
    for a in 0..m {
        alpha = &alpha + &(&random_function(r, &c, &xs, 2, 2) * &GPoly::var(&c, m + a));
    }
    SymmetryPair::new(m, 2, &v, &alpha).unwrap()
}

fn form_components(s: &SymmetryPair) -> Vec<GPoly> {
    let m = s.base_dim();
    (0..m).map(|a| s.form().left_derivative(m + a)).collect()
}

fn symmetry() -> Vec<Part> {
    let mut r = rng(7);
    let n = 100;
    let (mut leibniz, mut decoded, mut oracle) = (0, 0, 0);
    for i in 0..n {
        let m = 1 + i % 3;
        let (a, b, c) = (random_pair(&mut r, m), random_pair(&mut r, m), random_pair(&mut r, m));
        let lhs = symmetry_bracket(&a, &symmetry_bracket(&b, &c).unwrap()).unwrap();
        let rhs = pair_sum(
            &symmetry_bracket(&symmetry_bracket(&a, &b).unwrap(), &c).unwrap(),
            &symmetry_bracket(&b, &symmetry_bracket(&a, &c).unwrap()).unwrap(),
        )
        .unwrap();
        leibniz += (lhs == rhs) as usize;
        let direct = symmetry_bracket(&a, &b).unwrap();
        decoded += (derived_symmetry_bracket(&a, &b).unwrap() == direct) as usize;
        let xs: Vec<usize> = (0..m).collect();
        let (v, w) = dorfman(&xs, a.vector(), &form_components(&a), b.vector(), &form_components(&b));
        oracle += (direct.vector() == v.as_slice() && form_components(&direct) == w) as usize;
    }

    let witness = non_skew_witness(2).unwrap();
    let witness_ok = witness.as_ref().is_some_and(|(a, b)| {
        !pair_sum(&symmetry_bracket(a, b).unwrap(), &symmetry_bracket(b, a).unwrap()).unwrap().is_zero()
    });
    let witness_text = witness.map(|(a, b)| format!("non-skew witness {a}, {b}")).unwrap_or_default();

    let c = fiber_chart(2, 2).unwrap();
    let (mut agree, mut vanishing) = (0, 0);
    for i in 0..n {
        let p = random_pair(&mut r, 2);
        let p = if i % 2 == 0 {
            let f = random_function(&mut r, &c, &[0, 1], 1, 2);
            let (v1, v2) = (&p.vector()[0], &p.vector()[1]);
            let alpha = &f * &(&(v2 * &GPoly::var(&c, 2)) - &(v1 * &GPoly::var(&c, 3)));
            SymmetryPair::new(2, 2, p.vector(), &alpha).unwrap()
        } else {
            p
        };
        let w = form_components(&p);
        let contraction = &(&p.vector()[0] * &w[0]) + &(&p.vector()[1] * &w[1]);
        agree += (iota_half_square(&p).unwrap().is_zero() == contraction.is_zero()) as usize;
        vanishing += contraction.is_zero() as usize;
    }
    vec![
        part("leibniz", leibniz == n, format!("Leibniz on {leibniz}/{n} triples")),
        part("component-oracle", oracle == n, format!("bracket matches the component oracle on {oracle}/{n}")),
        part("non-skew-witness", witness_ok, witness_text),
        part("decoded-bracket", decoded == n, format!("[[Q,ι1],ι2] decodes to the bracket on {decoded}/{n}")),
        part(
            "iota-square",
            agree == n && vanishing > 0 && vanishing < n,
            format!("[ι,ι] = 0 iff v⌟α = 0 on {agree}/{n}, {vanishing} vanishing"),
        ),
    ]
}

fn random_axis(r: &mut Rng64, max_norm: f64) -> [f64; 3] {
    let v: [f64; 3] = [r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)];
    let norm = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt().max(1e-12);
    let target = r.gen_range(0.0..=max_norm);
    v.map(|x| x * target / norm)
}

fn random_path(r: &mut Rng64, intervals: usize) -> APath {
    let samples = (0..=intervals).map(|j| (j as f64 / intervals as f64, so3_matrix(random_axis(r, 2.0)))).collect();
    APath::new(samples).unwrap()
}

fn apaths() -> Vec<Part> {
    let start = Instant::now();
    let mut r = rng(8);
    let mut worst: f64 = 0.0;
    for _ in 0..10 {
        let x = random_axis(&mut r, 2.0);
        let g = integrate(&APath::constant(so3_matrix(x)).unwrap(), 10_000).unwrap().holonomy;
        worst = worst.max(max_abs(&(g - rodrigues(x))));
    }
    let norm2 = [0.0, 2.0, 0.0];
    let g = integrate(&APath::constant(so3_matrix(norm2)).unwrap(), 10_000).unwrap().holonomy;
    worst = worst.max(max_abs(&(g - rodrigues(norm2))));

    let steps = 1000;
    let (mut concat, mut reparam, mut orders) = (0.0f64, 0.0f64, Vec::new());
    let phi = Reparametrization::sampled(|t| t * t * (3.0 - 2.0 * t), 33).unwrap();
    for _ in 0..5 {
        let (p, q) = (random_path(&mut r, 8), random_path(&mut r, 8));
        let hp = integrate(&p, steps).unwrap().holonomy;
        let hq = integrate(&q, steps).unwrap().holonomy;
        let hpq = integrate(&concatenate(&p, &q).unwrap(), 2 * steps).unwrap().holonomy;
        concat = concat.max(max_abs(&(hpq - hp * hq)));
        reparam = reparam.max(reparametrize_check(&p, &phi, 4 * steps).unwrap());
        orders.push(observed_order(&p, 32).unwrap());
    }
    let order_ok = orders.iter().all(|k| (k - 4.0).abs() <= 0.3);
    let secs = start.elapsed().as_secs_f64();
    let orders: Vec<String> = orders.iter().map(|k| format!("{k:.2}")).collect();
    vec![
        part("exponential", worst < 1e-8, format!("constant-path error {worst:.1e}")),
        part("concatenation", concat < 1e-6, format!("concat residual {concat:.1e}")),
        part("reparametrization", reparam < 1e-6, format!("reparam residual {reparam:.1e}")),
        part("order", order_ok, format!("orders [{}]", orders.join(", "))),
        part("runtime", secs < 60.0, format!("{secs:.1} s < 60 s")),
    ]
}

fn stokes_holds(r: &RelativeComplex) -> bool {
    r.restriction().transpose().mul(r.boundary().omega()).mul(r.restriction()) == r.total().stokes_form()
}

fn lemmas() -> Vec<Part> {
    let mut r = rng(9);
    let so3 = QuadraticLieAlgebra::so3();
    let bases: Vec<GradedComplex> = vec![
        random_complex(&mut r, -1, 2, 3, 2).unwrap(),
        lattice_model(Surface::Circle(3), &Fiber::scalars()).unwrap().relative.total().complex().clone(),
        lattice_model(Surface::Interval(2), &Fiber::symplectic_pair(1)).unwrap().relative.total().complex().clone(),
    ];
    let mut shift_ok = 0;
    for c in &bases {
        for n in 1..=3 {
            shift_ok += suspension_check(c, n).holds as usize;
        }
    }

    let mut relatives: Vec<(String, RelativeComplex)> = Vec::new();
    for (i, c) in bases.iter().enumerate() {
        for n in 1..=3 {
            relatives
                .push((format!("double {i} [{n}]"), RelativeComplex::closed(SymplecticComplex::double(c, n)).unwrap()));
        }
    }
    let torus = lattice_model(Surface::Torus(3, 3), &Fiber::lie_algebra(&so3)).unwrap().relative;
    relatives.push(("torus".into(), torus));
    let mut strict_ok = 0;
    for (_, rel) in &relatives {
        let rep = lemma3_orthogonality(rel).unwrap();
        strict_ok +=
            (rep.mode == Lemma3Mode::Strict && rep.inclusion && rep.equality && rep.quotient_nondegenerate) as usize;
    }
    let n_strict = relatives.len();

    let interval = lattice_model(Surface::Interval(4), &Fiber::symplectic_pair(1)).unwrap().relative;
    let rep = lemma3_orthogonality(&interval).unwrap();
    let interval_dims = format!(
        "dim Z = {}, dim B0 = {}, dim B0^perp = {}",
        rep.cocycles_dim, rep.sub_coboundaries_dim, rep.annihilator_dim
    );
    let interval_weak = rep.inclusion && rep.duality_nondegenerate;
    let interval_equal = rep.equality;
    relatives.push(("interval".into(), interval));

    let cylinder = lattice_model(Surface::Cylinder(3, 3), &Fiber::lie_algebra(&so3)).unwrap().relative;
    let lag = boundary_lagrangian(&cylinder).unwrap();
    relatives.push(("cylinder".into(), cylinder));
    relatives.push(("disk".into(), lattice_model(Surface::Disk(2, 2), &Fiber::scalars()).unwrap().relative));

    let stokes_ok = relatives.iter().filter(|(_, rel)| stokes_holds(rel)).count();
    vec![
        part("lemma1-shift", shift_ok == 9, format!("shift by n holds on {shift_ok}/9")),
        part(
            "lemma3-strict",
            strict_ok == n_strict,
            format!("Z = B0^perp on {strict_ok}/{n_strict} nondegenerate complexes"),
        ),
        part("interval-inclusion", interval_weak, "interval: Z in B0^perp and cohomology duality"),
        part("interval-equality", interval_equal, format!("interval: {interval_dims}")),
        part(
            "boundary-lagrangian",
            lag.isotropic && lag.lagrangian,
            format!("cylinder x so3: image {} of {}", lag.image_dim, lag.boundary_cohomology_dim),
        ),
        part("stokes", stokes_ok == relatives.len(), format!("Stokes on {stokes_ok}/{}", relatives.len())),
    ]
}

fn moduli() -> Vec<Part> {
    let start = Instant::now();
    let so3 = QuadraticLieAlgebra::so3();
    let mut parts = Vec::new();
    for (a, b) in [(3, 3), (4, 4)] {
        let model = lattice_model(Surface::Torus(a, b), &Fiber::lie_algebra(&so3)).unwrap();
        let p = cohomology_pairing(model.relative.total()).unwrap();
        let betti: Vec<usize> = (0..=2).map(|k| p.cohomology.dim(k)).collect();
        let h1 = p.block(1, 1);
        let ok = betti == [3, 6, 3] && p.nondegenerate && h1.rank() == 6;
        parts.push(part(&format!("torus-{a}x{b}"), ok, format!("T({a},{b}): H = {betti:?}, rank on H1 {}", h1.rank())));
    }
    let secs = start.elapsed().as_secs_f64();
    parts.push(part("runtime", secs < 10.0, format!("{secs:.1} s < 10 s")));
    parts
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn nmaps() -> Vec<Part> {
    let mut cotangent_ok = true;
    for m in 1..=4 {
        let s = nmap_space(&DarbouxChart::poisson_standard(m), 1).unwrap();
        let mut canonical = QMatrix::zeros(2 * m, 2 * m);
        for a in 0..m {
            canonical.set(2 * a, 2 * a + 1, rat(1));
            canonical.set(2 * a + 1, 2 * a, rat(-1));
        }
        cotangent_ok &=
            s.components.len() == 2 * m && s.components.iter().all(|c| c.dim() == 1) && s.pairing == canonical;
    }
    let mut dims_ok = true;
    let mut example = String::new();
    for m in 1..=3 {
        let y = DarbouxChart::courant_standard(m);
        for n in 1..=3 {
            let s = nmap_space(&y, n).unwrap();
            dims_ok &= s.components.iter().all(|c| c.dim() == binomial(n, c.weight as usize));
            if n == 2 {
                dims_ok &= s.is_nondegenerate();
                if m == 1 {
                    let d: Vec<usize> = s.components.iter().map(|c| c.dim()).collect();
                    example = format!("courant m = 1, n = 2 dims {d:?}");
                }
            }
        }
    }
    vec![
        part("cotangent", cotangent_ok, "2m components with the canonical pairing, m = 1..4"),
        part("courant-dims", dims_ok, example),
    ]
}

fn cli() -> Vec<Part> {
    let bin = env!("CARGO_BIN_EXE_gq");
    let suite = concat!(env!("CARGO_MANIFEST_DIR"), "/suite");
    let tmp = std::path::PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let mut files: Vec<_> = std::fs::read_dir(suite)
        .unwrap()
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "gq"))
        .collect();
    files.sort();
    let (mut exit_ok, mut stable) = (0, 0);
    let mut covered = BTreeSet::new();
    for f in &files {
        let stem = f.file_stem().unwrap().to_string_lossy().to_string();
        let mut reports = Vec::new();
        for run in 0..2 {
            let out = tmp.join(format!("{stem}.{run}.json"));
            let status =
                Command::new(bin).arg("run").arg(f).arg("--seed").arg("11").arg("--report").arg(&out).output().unwrap();
            if run == 0 && status.status.code() == Some(0) {
                exit_ok += 1;
            }
            reports.push(std::fs::read(&out).unwrap_or_default());
        }
        stable += (!reports[0].is_empty() && reports[0] == reports[1]) as usize;
        if let Ok(v) = serde_json::from_slice::<serde_json::Value>(&reports[0]) {
            for c in v["checks"].as_array().into_iter().flatten() {
                covered.insert(c["name"].as_str().unwrap_or_default().to_string());
            }
        }
    }
    let missing: Vec<&str> = gq::dsl::checks::CHECKS.iter().map(|c| c.name).filter(|n| !covered.contains(*n)).collect();
    let n = files.len();
    vec![
        part("exit-codes", n > 0 && exit_ok == n, format!("{exit_ok}/{n} programs exit 0")),
        part("byte-stable", stable == n, format!("{stable}/{n} reports identical across runs")),
        part(
            "coverage",
            missing.is_empty(),
            if missing.is_empty() {
                format!("all {} check names exercised", gq::dsl::checks::CHECKS.len())
            } else {
                format!("missing checks {missing:?}")
            },
        ),
    ]
}
