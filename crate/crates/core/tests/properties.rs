mod common;

use std::collections::BTreeMap;

use common::*;
use gq::apath_integrator::{integrate, reverse, so3_matrix, APath};
use gq::dsl::{parse, render, run_source, Options, Verdict};
use gq::graded_algebra::{rat, Chart, GPoly, Weight};
use gq::random::{random_complex, random_poly, rng};
use gq::sigma_structures::{
    hamiltonian_to_q, master_equation, poisson_hamiltonian, q_to_hamiltonian, DarbouxChart, PairSpec,
};
use gq::symplectic_complexes::{
    lemma3_orthogonality, suspension_check, Lemma3Mode, RelativeComplex, SymplecticComplex,
};
use num_traits::Zero;
use proptest::prelude::*;
use rand::Rng;

fn odd_chart(k: usize) -> std::sync::Arc<Chart> {
    Chart::new((0..k).map(|i| (format!("e{i}"), 1))).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn odd_products_carry_the_permutation_sign(perm in Just((0..5usize).collect::<Vec<_>>()).prop_shuffle()) {
        let c = odd_chart(5);
        let product = perm.iter().fold(GPoly::one(&c), |acc, &i| &acc * &GPoly::var(&c, i));
        let sorted = (0..5).fold(GPoly::one(&c), |acc, i| &acc * &GPoly::var(&c, i));
        let inversions = (0..5).flat_map(|a| (a + 1..5).map(move |b| (a, b))).filter(|&(a, b)| perm[a] > perm[b]).count();
        prop_assert_eq!(product, sorted.scale(&rat(if inversions % 2 == 1 { -1 } else { 1 })));
    }

    #[test]
    fn odd_squares_vanish(seed in any::<u64>()) {
        let c = Chart::new([("x", 0), ("a", 1), ("b", 1), ("u", 2)]).unwrap();
        let mut r = rng(seed);
        let p = random_poly(&mut r, &c, 4, 2);
        if let Some(part) = p.homogeneous_parts().into_iter().find(|(w, _)| w % 2 == 1).map(|(_, q)| q) {
            prop_assert!((&part * &part).is_zero());
        }
    }

    #[test]
    fn darboux_requests_respect_the_degree_bound(n in 0i64..5, weights in prop::collection::vec(-3i64..8, 1..4)) {
        let pairs: Vec<PairSpec> = weights.iter().enumerate().map(|(i, &w)| (format!("q{i}"), w, format!("p{i}"), n - w)).collect();
        let ok = DarbouxChart::new(n, &pairs).is_ok();
        prop_assert_eq!(ok, weights.iter().all(|&w| (0..=n).contains(&w)));
    }

    #[test]
    fn master_equation_matches_q_square(seed in any::<u64>()) {
        let s = DarbouxChart::poisson_standard(3);
        let c = s.chart().clone();
        let xs: Vec<usize> = s.pairs().iter().map(|p| p.0).collect();
        let mut r = rng(seed);
        let mut upper = BTreeMap::new();
        for (a, b) in [(0, 1), (0, 2), (1, 2)] {
            if r.gen_bool(0.7) {
                upper.insert((a, b), random_function(&mut r, &c, &xs, 2, 2));
            }
        }
        let theta = poisson_hamiltonian(&s, &upper).unwrap();
        let q = hamiltonian_to_q(&s, &theta).unwrap();
        prop_assert_eq!(master_equation(&s, &theta).unwrap().is_zero(), q.q_square().unwrap().is_zero());
        let diff = q_to_hamiltonian(&s, &q).unwrap().poly() - &theta;
        prop_assert!(diff.is_zero() || diff.len() == 1 && !diff.constant_term().is_zero());
    }

    #[test]
    fn random_complexes_have_the_expected_cohomology(seed in any::<u64>(), isolated in 0usize..4, pairs in 0usize..4) {
        let mut r = rng(seed);
        let c = random_complex(&mut r, -1, 2, isolated, pairs).unwrap();
        let h = c.cohomology();
        prop_assert_eq!(h.total_dim(), isolated);
        let chi: i64 = h.betti().iter().map(|(&k, &d)| if k % 2 == 0 { d as i64 } else { -(d as i64) }).sum();
        prop_assert_eq!(chi, c.euler_characteristic());
        for n in 1..=2 {
            prop_assert!(suspension_check(&c, n).holds);
        }
    }

    #[test]
    fn doubles_satisfy_strict_orthogonality(seed in any::<u64>(), n in 0i32..3) {
        let mut r = rng(seed);
        let c = random_complex(&mut r, 0, 2, 2, 2).unwrap();
        let rel = RelativeComplex::closed(SymplecticComplex::double(&c, n)).unwrap();
        let rep = lemma3_orthogonality(&rel).unwrap();
        prop_assert_eq!(rep.mode, Lemma3Mode::Strict);
        prop_assert!(rep.holds() && rep.equality);
    }

    #[test]
    fn holonomy_is_a_rotation_and_reversal_inverts(seed in any::<u64>()) {
        let mut r = rng(seed);
        let samples = (0..=4)
            .map(|j| (j as f64 / 4.0, so3_matrix([r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0), r.gen_range(-2.0..2.0)])))
            .collect();
        let p = APath::new(samples).unwrap();
        let g = integrate(&p, 400).unwrap();
        prop_assert!(g.orthogonality_residual() < 1e-9);
        prop_assert!(g.determinant_residual() < 1e-9);
        let back = integrate(&reverse(&p), 400).unwrap().holonomy;
        prop_assert!(max_abs(&(g.holonomy * back - nalgebra::DMatrix::identity(3, 3))) < 1e-9);
    }

    #[test]
    fn printed_polynomials_reparse_with_their_weight(seed in any::<u64>()) {
        let c = Chart::new([("x", 0), ("y", 0), ("a", 1), ("b", 1), ("u", 2)]).unwrap();
        let mut r = rng(seed);
        let parts: BTreeMap<u32, GPoly> = random_poly(&mut r, &c, 4, 3).homogeneous_parts();
        for (w, p) in parts {
            let src = format!("chart X {{ x:0; y:0; a:1; b:1; u:2; }}\npoly P on X = {p};\ncheck weight P {w};\n");
            let program = parse(&src).unwrap();
            prop_assert!(parse(&render(&program)).unwrap().same_as(&program));
            let report = run_source(&src, &Options::default()).unwrap();
            prop_assert_eq!(report.checks[0].verdict, Verdict::Pass);
        }
    }
}

#[test]
fn suite_programs_round_trip_through_the_printer() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/suite");
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.extension().is_some_and(|e| e == "gq") {
            let src = std::fs::read_to_string(&path).unwrap();
            let program = parse(&src).unwrap();
            let again = parse(&render(&program)).unwrap();
            assert!(again.same_as(&program), "{}", path.display());
        }
    }
}

#[test]
fn weights_of_printed_products_add() {
    let c = Chart::new([("x", 0), ("a", 1), ("u", 2)]).unwrap();
    let p = &GPoly::var(&c, 1) * &GPoly::var(&c, 2);
    assert_eq!(p.weight_of(), Weight::Homogeneous(3));
}
