//! Numerical integration of paths in matrix Lie algebras and linear action
//! algebroids.
//!
//! A path is a piecewise-linear curve `a: [0,1] → gl(m)`. Its holonomy solves
//! `g' = g·a`, `g(0) = I`. Sample times may repeat once to encode a jump in
//! `a`. For an action algebroid the base curve is a row vector with
//! `γ' = γ·a`, so the endpoint is `γ(0)·g(1)`.
//!
//! Text format: a header `dim m` followed by one sample per line,
//! `t a_11 a_12 ... a_mm [γ_1 ... γ_m]`; `#` starts a comment line.

use std::fmt::Write as _;

use nalgebra::{DMatrix, RowDVector};

use crate::error::{domain, Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct APath {
    dim: usize,
    times: Vec<f64>,
    values: Vec<DMatrix<f64>>,
    base: Option<Vec<RowDVector<f64>>>,
}

impl APath {
    pub fn new(samples: Vec<(f64, DMatrix<f64>)>) -> Result<Self> {
        Self::build(samples, None)
    }

    /// Path with base samples `γ_j` for an action algebroid.
    pub fn with_base(samples: Vec<(f64, DMatrix<f64>)>, base: Vec<RowDVector<f64>>) -> Result<Self> {
        Self::build(samples, Some(base))
    }

    fn build(samples: Vec<(f64, DMatrix<f64>)>, base: Option<Vec<RowDVector<f64>>>) -> Result<Self> {
        if samples.len() < 2 {
            return domain("a path needs at least two samples");
        }
        let dim = samples[0].1.nrows();
        let mut times = Vec::with_capacity(samples.len());
        let mut values = Vec::with_capacity(samples.len());
        for (k, (t, a)) in samples.into_iter().enumerate() {
            if !a.is_square() || a.nrows() != dim {
                return domain(format!("sample {k} is not a {dim}x{dim} matrix"));
            }
            if !t.is_finite() || a.iter().any(|x| !x.is_finite()) {
                return domain(format!("sample {k} has non-finite entries"));
            }
            times.push(t);
            values.push(a);
        }
        if times[0] != 0.0 || *times.last().unwrap() != 1.0 {
            return domain("sample times must start at 0 and end at 1");
        }
        for k in 1..times.len() {
            if times[k] < times[k - 1] {
                return domain("sample times must be non-decreasing");
            }
            if k >= 2 && times[k] == times[k - 2] {
                return domain(format!("sample time {} repeated more than twice", times[k]));
            }
        }
        if let Some(b) = &base {
            if b.len() != times.len() || b.iter().any(|g| g.len() != dim) {
                return domain(format!("need one base point in R^{dim} per sample"));
            }
        }
        Ok(APath { dim, times, values, base })
    }

    /// The path with constant value `x`.
    pub fn constant(x: DMatrix<f64>) -> Result<Self> {
        Self::new(vec![(0.0, x.clone()), (1.0, x)])
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn samples(&self) -> impl Iterator<Item = (f64, &DMatrix<f64>)> {
        self.times.iter().copied().zip(&self.values)
    }

    pub fn base(&self) -> Option<&[RowDVector<f64>]> {
        self.base.as_deref()
    }

    /// Limit of `a` at `t` from the left (`right = false`) or from the right.
    pub fn value_at(&self, t: f64, right: bool) -> DMatrix<f64> {
        let last = self.times.len() - 1;
        let hits: Vec<usize> = (0..=last).filter(|&k| self.times[k] == t).collect();
        if let (Some(&first), Some(&end)) = (hits.first(), hits.last()) {
            return self.values[if right { end } else { first }].clone();
        }
        let k = self.times.partition_point(|&s| s < t).clamp(1, last);
        let (t0, t1) = (self.times[k - 1], self.times[k]);
        let s = (t - t0) / (t1 - t0);
        &self.values[k - 1] * (1.0 - s) + &self.values[k] * s
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("dim {}\n", self.dim);
        for (k, (t, a)) in self.samples().enumerate() {
            let _ = write!(s, "{t:e}");
            for i in 0..self.dim {
                for j in 0..self.dim {
                    let _ = write!(s, " {:e}", a[(i, j)]);
                }
            }
            if let Some(b) = &self.base {
                for x in b[k].iter() {
                    let _ = write!(s, " {x:e}");
                }
            }
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<APath> {
        let fail = |line: usize, msg: String| Error::Format { line, msg };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hl, header) = lines.next().ok_or_else(|| fail(1, "missing `dim m` header".into()))?;
        let dim = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
            ["dim", m] => m.parse::<usize>().map_err(|_| fail(hl, format!("bad dimension `{m}`")))?,
            _ => return Err(fail(hl, "expected `dim m`".into())),
        };
        if dim == 0 {
            return Err(fail(hl, "dimension must be positive".into()));
        }
        let mut samples = Vec::new();
        let mut base = Vec::new();
        let mut with_base = None;
        for (l, line) in lines {
            let v: Vec<f64> = line
                .split_whitespace()
                .map(|s| s.parse::<f64>().map_err(|_| fail(l, format!("bad number `{s}`"))))
                .collect::<Result<_>>()?;
            let has_base = match v.len() {
                n if n == 1 + dim * dim => false,
                n if n == 1 + dim * dim + dim => true,
                n => {
                    return Err(fail(
                        l,
                        format!("expected {} or {} fields, got {n}", 1 + dim * dim, 1 + dim * dim + dim),
                    ))
                }
            };
            if *with_base.get_or_insert(has_base) != has_base {
                return Err(fail(l, "either every sample or none carries a base point".into()));
            }
            samples.push((v[0], DMatrix::from_row_slice(dim, dim, &v[1..1 + dim * dim])));
            if has_base {
                base.push(RowDVector::from_row_slice(&v[1 + dim * dim..]));
            }
        }
        let built = if with_base == Some(true) { Self::with_base(samples, base) } else { Self::new(samples) };
        built.map_err(|e| fail(0, e.to_string()))
    }
}

/// Result of integrating a path: holonomy and, for action algebroids, the
/// base endpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupoidElement {
    pub holonomy: DMatrix<f64>,
    pub source: Option<RowDVector<f64>>,
    pub target: Option<RowDVector<f64>>,
}

impl GroupoidElement {
    /// `‖gᵀg − I‖` in the Frobenius norm.
    pub fn orthogonality_residual(&self) -> f64 {
        let n = self.holonomy.nrows();
        (self.holonomy.transpose() * &self.holonomy - DMatrix::identity(n, n)).norm()
    }

    pub fn determinant_residual(&self) -> f64 {
        (self.holonomy.determinant() - 1.0).abs()
    }
}

/// Steps allotted to each sample interval so that step edges fall on sample
/// times.
fn steps_per_interval(p: &APath, steps: usize) -> Vec<usize> {
    p.times
        .windows(2)
        .map(|w| {
            let len = w[1] - w[0];
            if len == 0.0 {
                0
            } else {
                ((len * steps as f64).round() as usize).max(1)
            }
        })
        .collect()
}

fn rk4_interval(g: &mut DMatrix<f64>, a0: &DMatrix<f64>, a1: &DMatrix<f64>, len: f64, n: usize) {
    let h = len / n as f64;
    let at = |s: f64| a0 * (1.0 - s) + a1 * s;
    for k in 0..n {
        let s0 = k as f64 / n as f64;
        let sm = (k as f64 + 0.5) / n as f64;
        let s1 = (k + 1) as f64 / n as f64;
        let (am, ae) = (at(sm), at(s1));
        let k1 = &*g * at(s0);
        let k2 = (&*g + &k1 * (h / 2.0)) * &am;
        let k3 = (&*g + &k2 * (h / 2.0)) * &am;
        let k4 = (&*g + &k3 * h) * &ae;
        *g += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
    }
}

/// Fourth-order Runge–Kutta solution of `g' = g·a`, `g(0) = I`, with about
/// `steps` uniform steps spread over the sample intervals.
pub fn integrate(p: &APath, steps: usize) -> Result<GroupoidElement> {
    if steps == 0 {
        return domain("step count must be positive");
    }
    let mut g = DMatrix::identity(p.dim, p.dim);
    for (k, n) in steps_per_interval(p, steps).into_iter().enumerate() {
        if n > 0 {
            rk4_interval(&mut g, &p.values[k], &p.values[k + 1], p.times[k + 1] - p.times[k], n);
        }
    }
    let source = p.base.as_ref().map(|b| b[0].clone());
    let target = source.as_ref().map(|s| s * &g);
    Ok(GroupoidElement { holonomy: g, source, target })
}

/// `p` on `[0, ½]` followed by `q` on `[½, 1]`, with values doubled.
pub fn concatenate(p: &APath, q: &APath) -> Result<APath> {
    if p.dim != q.dim {
        return Err(Error::Composition(format!("dimensions {} and {} differ", p.dim, q.dim)));
    }
    let mut samples: Vec<(f64, DMatrix<f64>)> = p.samples().map(|(t, a)| (t / 2.0, a * 2.0)).collect();
    samples.extend(q.samples().map(|(t, a)| ((t + 1.0) / 2.0, a * 2.0)));
    match (&p.base, &q.base) {
        (None, None) => APath::new(samples),
        (Some(b1), Some(b2)) => {
            let gap = (b1.last().unwrap() - &b2[0]).norm();
            if gap > 1e-9 {
                return Err(Error::Composition(format!(
                    "endpoint of the first path is {gap:e} away from the start of the second"
                )));
            }
            let mut base = b1.clone();
            base.extend(b2.iter().cloned());
            APath::with_base(samples, base)
        }
        _ => Err(Error::Composition("cannot compose a path with base points and one without".into())),
    }
}

/// `t ↦ 1 − t`, `a ↦ −a`.
pub fn reverse(p: &APath) -> APath {
    let times: Vec<f64> = p.times.iter().rev().map(|t| 1.0 - t).collect();
    let values = p.values.iter().rev().map(|a| -a).collect();
    let base = p.base.as_ref().map(|b| b.iter().rev().cloned().collect());
    APath { dim: p.dim, times, values, base }
}

/// A non-decreasing piecewise-linear map `[0,1] → [0,1]` with `φ(0)=0`,
/// `φ(1)=1`, given by its breakpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct Reparametrization {
    knots: Vec<(f64, f64)>,
}

impl Reparametrization {
    pub fn new(knots: Vec<(f64, f64)>) -> Result<Self> {
        if knots.len() < 2 {
            return domain("a reparametrization needs at least two knots");
        }
        if knots[0] != (0.0, 0.0) || *knots.last().unwrap() != (1.0, 1.0) {
            return domain("a reparametrization must fix 0 and 1");
        }
        for w in knots.windows(2) {
            if w[1].0 <= w[0].0 {
                return domain("knot positions must increase");
            }
            if w[1].1 < w[0].1 {
                return domain("reparametrization is not monotone");
            }
        }
        Ok(Reparametrization { knots })
    }

    pub fn identity() -> Self {
        Reparametrization { knots: vec![(0.0, 0.0), (1.0, 1.0)] }
    }

    /// Samples a smooth monotone map at `n + 1` uniform points.
    pub fn sampled(f: impl Fn(f64) -> f64, n: usize) -> Result<Self> {
        let mut knots: Vec<(f64, f64)> = (0..=n)
            .map(|k| {
                let s = k as f64 / n as f64;
                (s, f(s))
            })
            .collect();
        knots[0] = (0.0, 0.0);
        knots[n] = (1.0, 1.0);
        Self::new(knots)
    }

    fn slope(&self, k: usize) -> f64 {
        let (a, b) = (self.knots[k], self.knots[k + 1]);
        (b.1 - a.1) / (b.0 - a.0)
    }
}

/// The path `s ↦ φ'(s)·a(φ(s))`, built exactly on the merged breakpoints of
/// `φ` and of `p`.
pub fn compose(p: &APath, phi: &Reparametrization) -> Result<APath> {
    if p.base.is_some() {
        return domain("reparametrization of paths with base points is not supported");
    }
    let kn = &phi.knots;
    // (s, knot interval to the left, knot interval to the right)
    let mut points: Vec<(f64, Option<usize>, Option<usize>)> = Vec::new();
    for k in 0..kn.len() {
        let left = k.checked_sub(1);
        let right = (k + 1 < kn.len()).then_some(k);
        points.push((kn[k].0, left, right));
    }
    for k in 0..kn.len() - 1 {
        let slope = phi.slope(k);
        if slope == 0.0 {
            continue;
        }
        for &t in &p.times {
            if t > kn[k].1 && t < kn[k + 1].1 {
                let s = kn[k].0 + (t - kn[k].1) / slope;
                if s > kn[k].0 && s < kn[k + 1].0 {
                    points.push((s, Some(k), Some(k)));
                }
            }
        }
    }
    points.sort_by(|a, b| a.0.total_cmp(&b.0));
    points.dedup_by(|a, b| a.0 == b.0);
    let mut samples = Vec::new();
    for (s, left, right) in points {
        let eval = |k: usize, from_right: bool| -> (f64, DMatrix<f64>) {
            let slope = phi.slope(k);
            let t = if s == kn[k].0 {
                kn[k].1
            } else if s == kn[k + 1].0 {
                kn[k + 1].1
            } else {
                kn[k].1 + (s - kn[k].0) * slope
            };
            let t = t.clamp(0.0, 1.0);
            (s, p.value_at(t, from_right) * slope)
        };
        let l = left.map(|k| eval(k, false));
        let r = right.map(|k| eval(k, true));
        match (l, r) {
            (Some(l), Some(r)) if l.1 == r.1 => samples.push(l),
            (Some(l), Some(r)) => {
                samples.push(l);
                samples.push(r);
            }
            (Some(x), None) | (None, Some(x)) => samples.push(x),
            (None, None) => unreachable!("every knot touches an interval"),
        }
    }
    APath::new(samples)
}

/// Frobenius distance between the holonomies of `p` and `p∘φ`.
pub fn reparametrize_check(p: &APath, phi: &Reparametrization, steps: usize) -> Result<f64> {
    let g = integrate(p, steps)?.holonomy;
    let h = integrate(&compose(p, phi)?, steps)?.holonomy;
    Ok((g - h).norm())
}

/// `max_j ‖(γ_{j+1} − γ_j)/Δt − ½(γ_j a_j + γ_{j+1} a_{j+1})‖` over sample
/// intervals of positive length; jumps in time must not move the base point.
pub fn anchor_residual(p: &APath) -> Result<f64> {
    let Some(b) = &p.base else {
        return domain("path has no base samples");
    };
    let mut worst: f64 = 0.0;
    for k in 0..p.times.len() - 1 {
        let dt = p.times[k + 1] - p.times[k];
        let r = if dt == 0.0 {
            (&b[k + 1] - &b[k]).norm()
        } else {
            let slope = (&b[k + 1] - &b[k]) / dt;
            let avg = (&b[k] * &p.values[k] + &b[k + 1] * &p.values[k + 1]) * 0.5;
            (slope - avg).norm()
        };
        worst = worst.max(r);
    }
    Ok(worst)
}

/// Integrates an action-algebroid path. The base endpoint is computed both as
/// `γ(0)·g(1)` and by integrating `γ' = γ·a` directly; the two must agree.
pub fn action_integrate(p: &APath, steps: usize, anchor_tolerance: f64) -> Result<GroupoidElement> {
    let residual = anchor_residual(p)?;
    if residual.is_nan() || residual > anchor_tolerance {
        return Err(Error::InconsistentPath(format!("anchor residual {residual:e} exceeds {anchor_tolerance:e}")));
    }
    let el = integrate(p, steps)?;
    let b = p.base.as_ref().expect("checked above");
    let mut gamma = DMatrix::from_row_slice(1, p.dim, b[0].as_slice());
    for (k, n) in steps_per_interval(p, steps).into_iter().enumerate() {
        if n > 0 {
            rk4_interval(&mut gamma, &p.values[k], &p.values[k + 1], p.times[k + 1] - p.times[k], n);
        }
    }
    let direct = RowDVector::from_row_slice(gamma.as_slice());
    let via = el.target.clone().expect("base present");
    if (&direct - &via).norm() > 1e-6 * (1.0 + via.norm()) {
        return Err(Error::InconsistentPath("transported base point disagrees with g(1)".into()));
    }
    Ok(el)
}

/// Matrix exponential by scaling and squaring of a truncated Taylor series.
pub fn expm(x: &DMatrix<f64>) -> DMatrix<f64> {
    let n = x.nrows();
    let norm = x.norm();
    let mut s = 0;
    while norm / 2f64.powi(s) > 0.25 {
        s += 1;
    }
    let y = x / 2f64.powi(s);
    let mut term = DMatrix::identity(n, n);
    let mut sum = term.clone();
    for k in 1..=18 {
        term = &term * &y / k as f64;
        sum += &term;
    }
    for _ in 0..s {
        sum = &sum * &sum;
    }
    sum
}

/// Observed order `log2(e(N)/e(2N))` of the holonomy error against a
/// Richardson-extrapolated reference built from `16N` and `32N` steps.
pub fn observed_order(p: &APath, steps: usize) -> Result<f64> {
    let g = |n: usize| integrate(p, n).map(|e| e.holonomy);
    let (fine, finer) = (g(16 * steps)?, g(32 * steps)?);
    let reference = &finer + (&finer - &fine) / 15.0;
    let e1 = (g(steps)? - &reference).norm();
    let e2 = (g(2 * steps)? - &reference).norm();
    Ok((e1 / e2).log2())
}

/// `so(3)` generator `X = x1 L1 + x2 L2 + x3 L3` with `(L_i)_{jk} = −ε_{ijk}`.
pub fn so3_matrix(x: [f64; 3]) -> DMatrix<f64> {
    DMatrix::from_row_slice(3, 3, &[0.0, -x[2], x[1], x[2], 0.0, -x[0], -x[1], x[0], 0.0])
}
