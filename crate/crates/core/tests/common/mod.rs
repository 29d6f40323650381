//! Independent oracles and input generators shared by the integration tests.
#![allow(dead_code, clippy::needless_range_loop)]

use std::sync::Arc;

use gq::graded_algebra::{rat, Chart, GPoly, Rational};
use gq::random::{small_int, small_rational};
use nalgebra::{DMatrix, Matrix3, Vector3};
use num_traits::Zero;
use rand::Rng;

/// Rodrigues' formula for `exp` of the `so(3)` generator with axis `x`,
/// in the convention `X v = x × v`.
pub fn rodrigues(x: [f64; 3]) -> DMatrix<f64> {
    let v = Vector3::new(x[0], x[1], x[2]);
    let th = v.norm();
    let k = Matrix3::new(0.0, -x[2], x[1], x[2], 0.0, -x[0], -x[1], x[0], 0.0);
    let r = if th < 1e-14 {
        Matrix3::identity() + k
    } else {
        Matrix3::identity() + k * (th.sin() / th) + k * k * ((1.0 - th.cos()) / (th * th))
    };
    DMatrix::from_fn(3, 3, |i, j| r[(i, j)])
}

/// Jacobi identity on raw constants `c[k][i][j]`, by bracketing basis
/// vectors explicitly.
pub fn jacobi_holds(c: &[Vec<Vec<Rational>>]) -> bool {
    let d = c.len();
    let br = |u: &[Rational], v: &[Rational]| -> Vec<Rational> {
        let mut out = vec![Rational::zero(); d];
        for i in 0..d {
            for j in 0..d {
                let s = &u[i] * &v[j];
                if s.is_zero() {
                    continue;
                }
                for (k, o) in out.iter_mut().enumerate() {
                    *o += &s * &c[k][i][j];
                }
            }
        }
        out
    };
    let e = |i: usize| -> Vec<Rational> { (0..d).map(|k| rat((k == i) as i64)).collect() };
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let a = br(&e(i), &br(&e(j), &e(k)));
                let b = br(&e(j), &br(&e(k), &e(i)));
                let cc = br(&e(k), &br(&e(i), &e(j)));
                if (0..d).any(|t| !(&a[t] + &b[t] + &cc[t]).is_zero()) {
                    return false;
                }
            }
        }
    }
    true
}

/// Random polynomial of degree at most `deg` in the chart variables `vars`.
pub fn random_function(r: &mut impl Rng, chart: &Arc<Chart>, vars: &[usize], deg: u32, terms: usize) -> GPoly {
    let mut out = Vec::with_capacity(terms);
    for _ in 0..terms {
        let mut exps = vec![0u32; chart.len()];
        let mut budget = r.gen_range(0..=deg);
        while budget > 0 && !vars.is_empty() {
            exps[vars[r.gen_range(0..vars.len())]] += 1;
            budget -= 1;
        }
        let c = if r.gen_bool(0.7) { small_int(r) } else { small_rational(r) };
        out.push((exps, c));
    }
    GPoly::from_terms(chart, out).expect("exponents fit the chart")
}

/// Dorfman bracket `[X+ξ, Y+ζ] = [X,Y] + L_X ζ − ι_Y dξ` in components;
/// `xs[a]` is the chart index of the coordinate `x^a`.
pub fn dorfman(xs: &[usize], x: &[GPoly], xi: &[GPoly], y: &[GPoly], zeta: &[GPoly]) -> (Vec<GPoly>, Vec<GPoly>) {
    let m = xs.len();
    let d = |f: &GPoly, b: usize| f.left_derivative(xs[b]);
    let chart = x[0].chart().clone();
    let mut v = vec![GPoly::zero(&chart); m];
    let mut w = vec![GPoly::zero(&chart); m];
    for a in 0..m {
        for b in 0..m {
            v[a] = &v[a] + &(&(&x[b] * &d(&y[a], b)) - &(&y[b] * &d(&x[a], b)));
            let lie = &(&x[b] * &d(&zeta[a], b)) + &(&zeta[b] * &d(&x[b], a));
            let contr = &y[b] * &(&d(&xi[a], b) - &d(&xi[b], a));
            w[a] = &w[a] + &(&lie - &contr);
        }
    }
    (v, w)
}

/// `J^{abc} = π^{as}∂_sπ^{bc} + π^{bs}∂_sπ^{ca} + π^{cs}∂_sπ^{ab}`.
pub fn schouten(xs: &[usize], pi: &dyn Fn(usize, usize) -> GPoly, a: usize, b: usize, c: usize) -> GPoly {
    let chart = pi(0, 0).chart().clone();
    let mut out = GPoly::zero(&chart);
    for s in 0..xs.len() {
        for (i, j, k) in [(a, b, c), (b, c, a), (c, a, b)] {
            out = &out + &(&pi(i, s) * &pi(j, k).left_derivative(xs[s]));
        }
    }
    out
}

/// `(dη)_{0123}` for a 3-form on `ℝ^4` given by components `f(a, b, c)`, `a < b < c`.
pub fn d_three_form(xs: &[usize], f: &dyn Fn(usize, usize, usize) -> GPoly) -> GPoly {
    let p = |g: GPoly, s: usize| g.left_derivative(xs[s]);
    &(&p(f(1, 2, 3), 0) - &p(f(0, 2, 3), 1)) + &(&p(f(0, 1, 3), 2) - &p(f(0, 1, 2), 3))
}

pub fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0, |a, x| a.max(x.abs()))
}
