//! Seeded generators for test inputs. Every generator takes the caller's
//! RNG so that a single seed fixes a whole run.

use std::sync::Arc;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::extensions::{GridMap, Quat};
use crate::graded_algebra::{rat, ratio, Chart, GPoly, Rational};
use crate::linalg::QMatrix;
use crate::symplectic_complexes::GradedComplex;

pub type Rng64 = ChaCha8Rng;

pub fn rng(seed: u64) -> Rng64 {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A nonzero rational `p/q` with `|p| ≤ 4`, `1 ≤ q ≤ 3`.
pub fn small_rational(r: &mut impl Rng) -> Rational {
    let mut p = 0;
    while p == 0 {
        p = r.gen_range(-4..=4);
    }
    ratio(p, r.gen_range(1..=3))
}

/// Small integer, possibly zero.
pub fn small_int(r: &mut impl Rng) -> Rational {
    rat(r.gen_range(-3..=3))
}

/// A polynomial with up to `terms` monomials. Even variables of weight zero
/// appear with total degree at most `base_degree`; odd variables at most once;
/// even variables of positive weight at most once.
pub fn random_poly(r: &mut impl Rng, chart: &Arc<Chart>, terms: usize, base_degree: u32) -> GPoly {
    let n = chart.len();
    let mut out = Vec::with_capacity(terms);
    for _ in 0..terms {
        let mut exps = vec![0u32; n];
        let mut budget = r.gen_range(0..=base_degree);
        for (i, e) in exps.iter_mut().enumerate() {
            if chart.weight(i) == 0 {
                if budget > 0 && r.gen_bool(0.5) {
                    let k = r.gen_range(1..=budget);
                    *e = k;
                    budget -= k;
                }
            } else if r.gen_bool(0.3) {
                *e = 1;
            }
        }
        out.push((exps, small_rational(r)));
    }
    GPoly::from_terms(chart, out).expect("exponents fit the chart")
}

/// A random combination of the given polynomials with small integer
/// coefficients.
pub fn random_combination(r: &mut impl Rng, chart: &Arc<Chart>, basis: &[GPoly], terms: usize) -> GPoly {
    let mut p = GPoly::zero(chart);
    for _ in 0..terms {
        if let Some(b) = basis.choose(r) {
            p = &p + &b.scale(&small_rational(r));
        }
    }
    p
}

fn zero_constants(d: usize) -> Vec<Vec<Vec<Rational>>> {
    vec![vec![vec![Rational::zero(); d]; d]; d]
}

/// Antisymmetric structure constants `c[k][i][j]` with small entries; the
/// Jacobi identity generally fails.
pub fn random_antisymmetric(r: &mut impl Rng, d: usize) -> Vec<Vec<Vec<Rational>>> {
    let mut c = zero_constants(d);
    for k in 0..d {
        for i in 0..d {
            for j in i + 1..d {
                let v = small_int(r);
                c[k][j][i] = -v.clone();
                c[k][i][j] = v;
            }
        }
    }
    c
}

/// Matrix that is invertible over `ℚ`: a product of unit triangular factors
/// with a nonzero diagonal.
pub fn random_invertible(r: &mut impl Rng, n: usize) -> QMatrix {
    let mut lower = QMatrix::identity(n);
    let mut upper = QMatrix::identity(n);
    for i in 0..n {
        upper.set(i, i, small_rational(r));
        for j in 0..i {
            lower.set(i, j, small_int(r));
            upper.set(j, i, small_int(r));
        }
    }
    lower.mul(&upper)
}

/// Constants of a random three-dimensional Lie algebra: a standard one
/// (so(3), sl(2), Heisenberg, a solvable `r_λ`, or abelian) in a random basis.
pub fn random_lie_algebra_3(r: &mut impl Rng) -> Vec<Vec<Vec<Rational>>> {
    let mut c = zero_constants(3);
    let mut set = |i: usize, j: usize, k: usize, v: Rational| {
        c[k][j][i] = -v.clone();
        c[k][i][j] = v;
    };
    match r.gen_range(0..5) {
        0 => {
            set(0, 1, 2, rat(1));
            set(1, 2, 0, rat(1));
            set(2, 0, 1, rat(1));
        }
        1 => {
            set(0, 1, 1, rat(2));
            set(0, 2, 2, rat(-2));
            set(1, 2, 0, rat(1));
        }
        2 => set(0, 1, 2, rat(1)),
        3 => {
            set(2, 0, 0, rat(1));
            set(2, 1, 1, small_rational(r));
        }
        _ => {}
    }
    change_basis(&c, &random_invertible(r, 3))
}

/// Constants in the basis `f_i = Σ_a A_ai e_a`.
pub fn change_basis(c: &[Vec<Vec<Rational>>], a: &QMatrix) -> Vec<Vec<Vec<Rational>>> {
    let d = c.len();
    let mut out = zero_constants(d);
    for i in 0..d {
        for j in 0..d {
            let mut image = vec![Rational::zero(); d];
            for p in 0..d {
                for q in 0..d {
                    let s = a.get(p, i) * a.get(q, j);
                    if s.is_zero() {
                        continue;
                    }
                    for (k, x) in image.iter_mut().enumerate() {
                        *x += &s * &c[k][p][q];
                    }
                }
            }
            let coords = a.solve(&image).expect("change of basis is invertible");
            for (k, x) in coords.into_iter().enumerate() {
                out[k][i][j] = x;
            }
        }
    }
    out
}

/// A complex assembled from `isolated` one-dimensional pieces and `pairs`
/// acyclic two-term pieces with degrees in `lo..=hi`, written in a random
/// degree-preserving basis.
pub fn random_complex(r: &mut impl Rng, lo: i32, hi: i32, isolated: usize, pairs: usize) -> Result<GradedComplex> {
    let mut degrees = Vec::new();
    let mut edges = Vec::new();
    for _ in 0..isolated {
        degrees.push(r.gen_range(lo..=hi));
    }
    for _ in 0..pairs {
        let k = r.gen_range(lo..hi.max(lo + 1));
        edges.push((degrees.len(), degrees.len() + 1));
        degrees.push(k);
        degrees.push(k + 1);
    }
    let n = degrees.len();
    let mut d = QMatrix::zeros(n, n);
    for (src, dst) in edges {
        d.set(dst, src, small_rational(r));
    }
    let mut p = QMatrix::zeros(n, n);
    let mut degs: Vec<i32> = degrees.clone();
    degs.sort_unstable();
    degs.dedup();
    for k in degs {
        let idx: Vec<usize> = (0..n).filter(|&i| degrees[i] == k).collect();
        let block = random_invertible(r, idx.len());
        for (a, &i) in idx.iter().enumerate() {
            for (b, &j) in idx.iter().enumerate() {
                p.set(i, j, block.get(a, b).clone());
            }
        }
    }
    let pinv_d = {
        let cols: Vec<Vec<Rational>> =
            d.mul(&p).columns().into_iter().map(|c| p.solve(&c).expect("invertible")).collect();
        QMatrix::from_columns(n, &cols)
    };
    GradedComplex::new(degrees, pinv_d)
}

/// A smooth unit-quaternion map on `[0,1]²` built from random Fourier modes,
/// sampled on an `n × n` grid with `ω = 0`.
pub fn random_grid(r: &mut impl Rng, n: usize) -> Result<GridMap> {
    let coeffs: Vec<[f64; 4]> = (0..3)
        .map(|_| [r.gen_range(-1.0..1.0), r.gen_range(0.5..2.0), r.gen_range(0.5..2.0), r.gen_range(0.0..6.0)])
        .collect();
    GridMap::sample(
        n,
        n,
        move |x, y| {
            let v: Vec<f64> = coeffs.iter().map(|c| c[0] * (c[1] * x + c[2] * y + c[3]).sin()).collect();
            Quat::from_scaled_axis(nalgebra::Vector3::new(v[0], v[1], v[2]))
        },
        |_, _| 0.0,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extensions::QuadraticLieAlgebra;
    use crate::linalg::span_dim;

    #[test]
    fn seeded_streams_repeat() {
        let c = Chart::new([("x", 0), ("y", 0), ("th", 1)]).unwrap();
        let a = random_poly(&mut rng(7), &c, 5, 2);
        let b = random_poly(&mut rng(7), &c, 5, 2);
        assert_eq!(a, b);
    }

    #[test]
    fn random_lie_algebras_satisfy_jacobi() {
        let mut r = rng(3);
        for _ in 0..10 {
            let c = random_lie_algebra_3(&mut r);
            let names = vec!["a".into(), "b".into(), "c".into()];
            let err = QuadraticLieAlgebra::new(names, c, QMatrix::identity(3)).err();
            assert!(!matches!(err, Some(crate::Error::Structure(ref m)) if m.contains("Jacobi")));
        }
    }

    #[test]
    fn invertible_and_complex() {
        let mut r = rng(11);
        let m = random_invertible(&mut r, 4);
        assert_eq!(m.rank(), 4);
        let c = random_complex(&mut r, 0, 2, 3, 2).unwrap();
        assert_eq!(c.cohomology().total_dim(), 3);
        assert_eq!(span_dim(c.len(), &c.coboundaries()), 2);
    }
}
