//! Worked examples with frozen values.

mod common;

use std::collections::BTreeMap;

use common::*;
use gq::apath_integrator::{
    action_integrate, integrate, reparametrize_check, reverse, so3_matrix, APath, Reparametrization,
};
use gq::extensions::{central_extension, loop_cocycle_failure, wzw_product, QuadraticLieAlgebra};
use gq::graded_algebra::{rat, Chart, GPoly};
use gq::linalg::QMatrix;
use gq::nq_core::{manifold_degree, Derivation};
use gq::random::{random_grid, rng};
use gq::sigma_structures::{
    algebroid_to_q, courant_hamiltonian, hamiltonian_to_q, lambda_check, master_equation, poisson_hamiltonian,
    AlgebroidData, DarbouxChart,
};
use gq::symplectic_complexes::{
    boundary_lagrangian, cohomology_pairing, lattice_model, lemma2_vanishing, suspension_check, Fiber, GradedComplex,
    Surface, SymplecticComplex,
};
use nalgebra::{DMatrix, RowDVector};
use rand::Rng;

fn so3_with(entries: &[(usize, usize, usize, i64)]) -> Vec<Vec<Vec<gq::graded_algebra::Rational>>> {
    let mut c = QuadraticLieAlgebra::so3().constants().to_vec();
    for &(i, j, k, v) in entries {
        c[k][i][j] = rat(v);
        c[k][j][i] = rat(-v);
    }
    c
}

fn ce_square_vanishes(c: &[Vec<Vec<gq::graded_algebra::Rational>>]) -> bool {
    let a = AlgebroidData::from_lie_algebra(&["e1", "e2", "e3"], c).unwrap();
    algebroid_to_q(&a).unwrap().q_square().unwrap().is_zero()
}

#[test]
fn rescaled_so3_bracket_is_still_lie() {
    let c = so3_with(&[(0, 1, 2, 2)]);
    assert!(jacobi_holds(&c));
    assert!(ce_square_vanishes(&c));
}

#[test]
fn non_lie_perturbation_breaks_q_square() {
    let c = so3_with(&[(0, 1, 0, 1)]);
    assert!(!jacobi_holds(&c));
    assert!(!ce_square_vanishes(&c));
}

#[test]
fn ordinary_manifold_has_degree_zero() {
    let c = Chart::new([("x", 0), ("y", 0)]).unwrap();
    assert_eq!(manifold_degree(&c), 0);
}

#[test]
fn lie_poisson_so3_solves_the_master_equation() {
    let s = DarbouxChart::poisson_standard(3);
    let x = |a: usize| GPoly::var(s.chart(), s.pairs()[a].0);
    let pi = BTreeMap::from([((0, 1), x(2)), ((1, 2), x(0)), ((0, 2), -x(1))]);
    let theta = poisson_hamiltonian(&s, &pi).unwrap();
    assert!(master_equation(&s, &theta).unwrap().is_zero());
}

#[test]
fn abelian_algebroid_with_constant_anchor() {
    let mut a = AlgebroidData::new(&["x", "y"], &["e1", "e2"]).unwrap();
    let one = GPoly::one(a.chart());
    a.set_anchor(0, 0, one.clone()).unwrap();
    a.set_anchor(1, 0, one.scale(&rat(2))).unwrap();
    a.set_anchor(1, 1, one.scale(&rat(-3))).unwrap();
    assert!(algebroid_to_q(&a).unwrap().q_square().unwrap().is_zero());
}

#[test]
fn tangent_bundle_is_dirac() {
    let s = DarbouxChart::courant_standard(2);
    let q = hamiltonian_to_q(&s, &courant_hamiltonian(&s, None).unwrap()).unwrap();
    assert!(lambda_check(&s, &q, &["chi1", "chi2", "p1", "p2"]).unwrap().holds());
    let v = lambda_check(&s, &q, &["x1", "p2", "chi1", "chi2"]).unwrap();
    assert!(v.lagrangian && !v.q_invariant);
}

#[test]
fn central_extension_brackets_and_derivation() {
    let ext = central_extension(&QuadraticLieAlgebra::so3()).unwrap();
    let (d, c) = (3, ext.central());
    for i in 0..d {
        for j in 0..d {
            let b = ext.bracket_basis(d + i, d + j);
            assert_eq!(b[c], *QuadraticLieAlgebra::so3().metric().get(i, j));
            assert!(b.iter().enumerate().all(|(k, x)| k == c || *x == rat(0)));
        }
    }
    let unit = |k: usize| -> Vec<_> { (0..ext.dim()).map(|i| rat((i == k) as i64)).collect() };
    let (u, v1) = (unit(0), unit(d + 1));
    let lhs = ext.q(&ext.bracket(&u, &v1));
    let rhs: Vec<_> =
        ext.bracket(&ext.q(&u), &v1).into_iter().zip(ext.bracket(&u, &ext.q(&v1))).map(|(a, b)| a + b).collect();
    assert_eq!(lhs, rhs);
    assert_eq!(lhs, unit(2));
}

#[test]
fn loop_cocycles() {
    let g = QuadraticLieAlgebra::so3();
    assert_eq!(loop_cocycle_failure(&g, 2, rat).unwrap(), None);
    assert!(loop_cocycle_failure(&g, 2, |m| rat(m * m)).unwrap().is_some());
    assert!(loop_cocycle_failure(&g, 0, rat).is_err());
}

#[test]
fn reversed_path_cancels() {
    let mut r = rng(21);
    let samples = (0..=6).map(|j| (j as f64 / 6.0, so3_matrix([r.gen_range(-2.0..2.0), 0.5, r.gen_range(-1.0..1.0)])));
    let p = APath::new(samples.collect()).unwrap();
    let g = integrate(&p, 2000).unwrap().holonomy * integrate(&reverse(&p), 2000).unwrap().holonomy;
    assert!(max_abs(&(g - DMatrix::identity(3, 3))) < 1e-6);
}

#[test]
fn reparametrizations() {
    let c = APath::constant(so3_matrix([0.4, -1.2, 0.9])).unwrap();
    let square = Reparametrization::sampled(|t| t * t, 65).unwrap();
    assert!(reparametrize_check(&c, &square, 10_000).unwrap() < 1e-6);

    let mut r = rng(22);
    let samples = (0..=5).map(|j| (j as f64 / 5.0, so3_matrix([r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0), 0.3])));
    let p = APath::new(samples.collect()).unwrap();
    let sine = Reparametrization::sampled(|t| (std::f64::consts::FRAC_PI_2 * t).sin(), 129).unwrap();
    assert!(reparametrize_check(&p, &sine, 10_000).unwrap() < 1e-5);
}

fn rotating_base(x: [f64; 3], start: [f64; 3], samples: usize) -> APath {
    let a = so3_matrix(x);
    let mut vals = Vec::new();
    let mut base = Vec::new();
    for j in 0..=samples {
        let t = j as f64 / samples as f64;
        vals.push((t, a.clone()));
        let g = rodrigues(x.map(|v| v * t));
        base.push(RowDVector::from_row_slice(&[start[0], start[1], start[2]]) * g);
    }
    APath::with_base(vals, base).unwrap()
}

#[test]
fn action_algebroid_transports_the_base_point() {
    let x = [0.3, 1.1, -0.7];
    let el = action_integrate(&rotating_base(x, [1.0, 0.0, 0.0], 200), 10_000, 1e-3).unwrap();
    let want = RowDVector::from_row_slice(&[1.0, 0.0, 0.0]) * rodrigues(x);
    assert!((el.target.unwrap() - want).norm() < 1e-8);
}

#[test]
fn loop_in_the_base_with_nontrivial_holonomy() {
    let el = action_integrate(&rotating_base([1.5, 0.0, 0.0], [1.0, 0.0, 0.0], 4), 1000, 1e-12).unwrap();
    assert!((el.target.unwrap() - el.source.unwrap()).norm() < 1e-12);
    assert!(max_abs(&(el.holonomy - DMatrix::identity(3, 3))) > 0.5);
}

fn betti(c: &GradedComplex) -> Vec<(i32, usize)> {
    c.cohomology().betti().into_iter().filter(|&(_, d)| d > 0).collect()
}

#[test]
fn circle_cohomology() {
    let m = lattice_model(Surface::Circle(4), &Fiber::scalars()).unwrap();
    assert_eq!(betti(m.relative.total().complex()), vec![(0, 1), (1, 1)]);
}

#[test]
fn degenerate_chain_pairing_can_be_nondegenerate_on_cohomology() {
    // a: closed in degree 0, paired with itself; b -> c acyclic and null
    let d = QMatrix::from_i64(&[&[0, 0, 0], &[0, 0, 0], &[0, 1, 0]]);
    let c = GradedComplex::new(vec![0, 0, 1], d).unwrap();
    let omega = QMatrix::from_i64(&[&[1, 0, 0], &[0, 0, 0], &[0, 0, 0]]);
    let p = cohomology_pairing(&SymplecticComplex::new(c, omega, 0).unwrap()).unwrap();
    assert!(!p.chain_level_nondegenerate);
    assert!(p.nondegenerate);
}

#[test]
fn disk_with_abelian_fiber_has_lagrangian_boundary_image() {
    let m = lattice_model(Surface::Disk(2, 2), &Fiber::lie_algebra(&QuadraticLieAlgebra::abelian(2))).unwrap();
    let rep = boundary_lagrangian(&m.relative).unwrap();
    assert!(rep.isotropic && rep.lagrangian);
    assert_eq!((rep.image_dim, rep.boundary_cohomology_dim), (2, 4));
}

#[test]
fn suspension_shifts_up() {
    let point = GradedComplex::trivial(vec![0]);
    assert_eq!(suspension_check(&point, 1).shifted, BTreeMap::from([(1, 1)]));
    let torus = lattice_model(Surface::Torus(3, 3), &Fiber::scalars()).unwrap();
    let r = suspension_check(torus.relative.total().complex(), 2);
    assert!(r.holds);
    assert_eq!(r.shifted, BTreeMap::from([(2, 1), (3, 2), (4, 1)]));
    let below = GradedComplex::trivial(vec![-1, 0]);
    assert_eq!(lemma2_vanishing(&below, 2), Some(true));
    assert_eq!(lemma2_vanishing(&below, 1), None);
}

#[test]
fn interval_relative_cochains_are_the_suspended_fiber() {
    let fiber = Fiber::symplectic_pair(1);
    let m = lattice_model(Surface::Interval(3), &fiber).unwrap();
    let sub = m.relative.sub_complex().unwrap();
    let plain = GradedComplex::trivial(fiber.degrees.clone());
    assert_eq!(
        sub.cohomology().betti().into_iter().filter(|&(_, d)| d > 0).collect::<BTreeMap<_, _>>(),
        suspension_check(&plain, 1).shifted
    );
}

#[test]
fn pairing_degree_on_a_surface() {
    let m = lattice_model(Surface::Torus(3, 3), &Fiber::lie_algebra(&QuadraticLieAlgebra::so3())).unwrap();
    assert_eq!(m.omega_degree(), 0);
}

#[test]
fn wzw_inverse_and_refinement() {
    let a = random_grid(&mut rng(23), 9).unwrap();
    let p = wzw_product(&a, &a.inverse()).unwrap();
    assert!(p.total_omega().abs() < 1e-12);

    // associativity of the discrete cross term improves linearly with h
    let residual = |n: usize| {
        let mut r = rng(24);
        let (a, b, c) =
            (random_grid(&mut r, n).unwrap(), random_grid(&mut r, n).unwrap(), random_grid(&mut r, n).unwrap());
        let left = wzw_product(&wzw_product(&a, &b).unwrap(), &c).unwrap().total_omega();
        let right = wzw_product(&a, &wzw_product(&b, &c).unwrap()).unwrap().total_omega();
        (left - right).abs()
    };
    let (coarse, fine) = (residual(33), residual(129));
    assert!(fine < 0.5 * coarse, "{coarse} -> {fine}");
}

#[test]
fn de_rham_bracket_with_itself_vanishes() {
    let c = gq::nq_core::tangent_shift_chart(2);
    let q = gq::nq_core::de_rham(&c, 2).unwrap();
    assert!(q.commutator(&q).unwrap().is_zero());
    let e = gq::nq_core::euler_field(&c);
    let eq = e.commutator(&q).unwrap();
    assert_eq!(eq, q);
    let zero = Derivation::zero(&c, 1);
    assert!(zero.is_nq().unwrap());
}
