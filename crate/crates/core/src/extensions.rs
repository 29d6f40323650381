//! Twists by closed forms, quadratic Lie algebras and their central
//! extensions, the loop-algebra cocycle, symmetry pairs `(v, α)`, and the
//! WZW product on sampled maps.

use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{domain, precondition, structure, Result};
use crate::graded_algebra::{rat, ratio, Chart, GPoly, Rational};
use crate::linalg::QMatrix;
use crate::nq_core::{de_rham, Derivation};
use crate::sigma_structures::{algebroid_to_q, AlgebroidData};

mod wzw;

pub use wzw::{cross_term_total, wzw_product, GridMap, Quat};

/// Chart `x1..xm, xi1..xim, t` with `t` of weight `n`.
pub fn fiber_chart(m: usize, n: u32) -> Result<Arc<Chart>> {
    let mut vars: Vec<(String, u32)> = (1..=m).map(|a| (format!("x{a}"), 0)).collect();
    vars.extend((1..=m).map(|a| (format!("xi{a}"), 1)));
    vars.push(("t".to_string(), n));
    Chart::new(vars)
}

/// De Rham differential of a form written on a chart containing
/// `x1..xm, xi1..xim`.
pub fn exterior_derivative(form: &GPoly, m: usize) -> Result<GPoly> {
    de_rham(form.chart(), m)?.apply(form)
}

fn check_base_form(p: &GPoly, m: usize, what: &str) -> Result<()> {
    let c = p.chart();
    let t = c.index_of("t");
    if p.support().into_iter().any(|i| Some(i) == t || i >= 2 * m) {
        return domain(format!("{what} must depend on x and xi only, got `{p}`"));
    }
    Ok(())
}

/// The trivialized bundle `T[1]ℝ^m × ℝ[n]` with its twisting form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TwistData {
    m: usize,
    n: u32,
    chart: Arc<Chart>,
    eta: GPoly,
}

impl TwistData {
    /// `eta` may live on any chart whose variables are among
    /// `x1..xm, xi1..xim`; it is moved onto the fiber chart.
    pub fn new(m: usize, n: u32, eta: &GPoly) -> Result<Self> {
        if n == 0 {
            return domain("fiber degree n must be at least 1");
        }
        let chart = fiber_chart(m, n)?;
        let eta = eta.transport(&chart)?;
        check_base_form(&eta, m, "η")?;
        if !eta.is_zero() && !eta.is_homogeneous_of(n as i64 + 1) {
            return domain(format!("η must be a form of degree {}, got `{eta}`", n + 1));
        }
        Ok(TwistData { m, n, chart, eta })
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn eta(&self) -> &GPoly {
        &self.eta
    }

    pub fn base_dim(&self) -> usize {
        self.m
    }

    pub fn fiber_degree(&self) -> u32 {
        self.n
    }
}

/// `Q = ξ^a ∂_{x^a} + η ∂_t`.
pub fn twisted_q(tw: &TwistData) -> Result<Derivation> {
    let d = de_rham(&tw.chart, tw.m)?;
    let mut comps = d.components().to_vec();
    let t = tw.chart.index_of("t").expect("fiber chart has t");
    comps[t] = tw.eta.clone();
    Derivation::new(&tw.chart, 1, comps)
}

/// `η ↦ η + dα`.
pub fn gauge_change(tw: &TwistData, alpha: &GPoly) -> Result<TwistData> {
    let alpha = alpha.transport(&tw.chart)?;
    check_base_form(&alpha, tw.m, "α")?;
    if !alpha.is_zero() && !alpha.is_homogeneous_of(tw.n as i64) {
        return domain(format!("α must be a form of degree {}, got `{alpha}`", tw.n));
    }
    let eta = &tw.eta + &exterior_derivative(&alpha, tw.m)?;
    Ok(TwistData { m: tw.m, n: tw.n, chart: tw.chart.clone(), eta })
}

/// Verifies `Q_η ∘ φ* = φ* ∘ Q_{η+dα}` on every coordinate, where `φ*` is
/// the fiber shift `t ↦ t + α`.
pub fn gauge_conjugation_holds(tw: &TwistData, alpha: &GPoly) -> Result<bool> {
    let moved = gauge_change(tw, alpha)?;
    let alpha = alpha.transport(&tw.chart)?;
    let t = tw.chart.index_of("t").expect("fiber chart has t");
    let images: Vec<GPoly> = (0..tw.chart.len())
        .map(|i| {
            let v = GPoly::var(&tw.chart, i);
            if i == t {
                &v + &alpha
            } else {
                v
            }
        })
        .collect();
    let q = twisted_q(tw)?;
    let q2 = twisted_q(&moved)?;
    for (i, image) in images.iter().enumerate() {
        let lhs = q.apply(image)?;
        let rhs = q2.component(i).substitute(&images)?;
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Lie algebra with an invariant nondegenerate symmetric form, given by
/// structure constants `c[k][i][j]` in `[e_i, e_j] = c^k_ij e_k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticLieAlgebra {
    names: Vec<String>,
    c: Vec<Vec<Vec<Rational>>>,
    metric: QMatrix,
}

impl QuadraticLieAlgebra {
    pub fn new(names: Vec<String>, c: Vec<Vec<Vec<Rational>>>, metric: QMatrix) -> Result<Self> {
        let d = names.len();
        if c.len() != d || c.iter().any(|ck| ck.len() != d || ck.iter().any(|r| r.len() != d)) {
            return domain("structure constants must be d×d×d");
        }
        if metric.rows() != d || metric.cols() != d {
            return domain("metric must be d×d");
        }
        let g = QuadraticLieAlgebra { names, c, metric };
        for k in 0..d {
            for i in 0..d {
                for j in 0..d {
                    if g.c[k][i][j] != -g.c[k][j][i].clone() {
                        return structure("structure constants are not antisymmetric");
                    }
                }
            }
        }
        if let Some((i, j, k)) = g.jacobi_failure() {
            return structure(format!("Jacobi identity fails on ({i}, {j}, {k})"));
        }
        if g.metric != g.metric.transpose() {
            return structure("metric is not symmetric");
        }
        if g.metric.rank() != d {
            return structure("metric is degenerate");
        }
        for u in 0..d {
            for v in 0..d {
                for w in 0..d {
                    let a = g.metric.bilinear(&g.bracket_basis(u, v), &unit(d, w));
                    let b = g.metric.bilinear(&unit(d, v), &g.bracket_basis(u, w));
                    if !(a + b).is_zero() {
                        return structure(format!("metric is not invariant at ({u}, {v}, {w})"));
                    }
                }
            }
        }
        Ok(g)
    }

    /// `so(3)` with `[e_i, e_j] = ε_ijk e_k` and the identity metric.
    pub fn so3() -> Self {
        let mut c = zero_constants(3);
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            c[k][i][j] = rat(1);
            c[k][j][i] = rat(-1);
        }
        Self::new(names(&["e1", "e2", "e3"]), c, QMatrix::identity(3)).expect("so(3) is quadratic")
    }

    /// `sl(2)` in the basis `h, e, f` with the trace form.
    pub fn sl2() -> Self {
        let mut c = zero_constants(3);
        let (h, e, f) = (0, 1, 2);
        let mut set = |i: usize, j: usize, k: usize, v: i64| {
            c[k][i][j] = rat(v);
            c[k][j][i] = rat(-v);
        };
        set(h, e, e, 2);
        set(h, f, f, -2);
        set(e, f, h, 1);
        let metric = QMatrix::from_i64(&[&[2, 0, 0], &[0, 0, 1], &[0, 1, 0]]);
        Self::new(names(&["h", "e", "f"]), c, metric).expect("sl(2) is quadratic")
    }

    pub fn abelian(d: usize) -> Self {
        let labels: Vec<String> = (1..=d).map(|i| format!("e{i}")).collect();
        Self::new(labels, zero_constants(d), QMatrix::identity(d)).expect("abelian algebra is quadratic")
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn structure_constant(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.c[k][i][j]
    }

    pub fn constants(&self) -> &[Vec<Vec<Rational>>] {
        &self.c
    }

    pub fn metric(&self) -> &QMatrix {
        &self.metric
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> Vec<Rational> {
        (0..self.dim()).map(|k| self.c[k][i][j].clone()).collect()
    }

    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let d = self.dim();
        let mut out = vec![Rational::zero(); d];
        for i in 0..d {
            if u[i].is_zero() {
                continue;
            }
            for j in 0..d {
                if v[j].is_zero() {
                    continue;
                }
                let uv = &u[i] * &v[j];
                for (k, o) in out.iter_mut().enumerate() {
                    if !self.c[k][i][j].is_zero() {
                        *o += &uv * &self.c[k][i][j];
                    }
                }
            }
        }
        out
    }

    fn jacobi_failure(&self) -> Option<(usize, usize, usize)> {
        let d = self.dim();
        for i in 0..d {
            for j in 0..d {
                for k in 0..d {
                    let a = self.bracket(&unit(d, i), &self.bracket_basis(j, k));
                    let b = self.bracket(&unit(d, j), &self.bracket_basis(k, i));
                    let c = self.bracket(&unit(d, k), &self.bracket_basis(i, j));
                    if a.iter().zip(&b).zip(&c).any(|((x, y), z)| !(x + y + z).is_zero()) {
                        return Some((i, j, k));
                    }
                }
            }
        }
        None
    }

    /// `⟨e_i, [e_j, e_k]⟩`.
    pub fn cartan_coefficient(&self, i: usize, j: usize, k: usize) -> Rational {
        self.metric.bilinear(&unit(self.dim(), i), &self.bracket_basis(j, k))
    }

    /// Chevalley–Eilenberg differential on the chart `xi1..xid`.
    pub fn ce_differential(&self) -> Derivation {
        let labels: Vec<String> = (1..=self.dim()).map(|i| format!("xi{i}")).collect();
        let refs: Vec<&str> = labels.iter().map(String::as_str).collect();
        let a = AlgebroidData::from_lie_algebra(&refs, &self.c).expect("validated constants");
        algebroid_to_q(&a).expect("validated algebroid")
    }
}

fn names(v: &[&str]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

fn zero_constants(d: usize) -> Vec<Vec<Vec<Rational>>> {
    vec![vec![vec![Rational::zero(); d]; d]; d]
}

fn unit(d: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); d];
    v[i] = Rational::one();
    v
}

/// `η = (1/6) ⟨e_i, [e_j, e_k]⟩ ξ^i ξ^j ξ^k` on the chart of
/// [`QuadraticLieAlgebra::ce_differential`].
pub fn cartan_3form(g: &QuadraticLieAlgebra) -> GPoly {
    let chart = g.ce_differential().chart().clone();
    let d = g.dim();
    let mut eta = GPoly::zero(&chart);
    let sixth = ratio(1, 6);
    for i in 0..d {
        for j in 0..d {
            for k in 0..d {
                let f = g.cartan_coefficient(i, j, k);
                if f.is_zero() {
                    continue;
                }
                let mono = &(&GPoly::var(&chart, i) * &GPoly::var(&chart, j)) * &GPoly::var(&chart, k);
                eta = &eta + &mono.scale(&(f * &sixth));
            }
        }
    }
    eta
}

/// Basis element of `g ⊕ g[1] ⊕ ℝ[2]`: `e_i` (degree 0), `s_i` (degree −1),
/// and the central `c` (degree −2), indexed `0..d`, `d..2d`, `2d`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralExtension {
    g: QuadraticLieAlgebra,
}

impl CentralExtension {
    pub fn dim(&self) -> usize {
        2 * self.g.dim() + 1
    }

    pub fn algebra(&self) -> &QuadraticLieAlgebra {
        &self.g
    }

    pub fn degree(&self, a: usize) -> i32 {
        let d = self.g.dim();
        if a < d {
            0
        } else if a < 2 * d {
            -1
        } else {
            -2
        }
    }

    pub fn central(&self) -> usize {
        2 * self.g.dim()
    }

    /// Bracket of two basis elements.
    pub fn bracket_basis(&self, a: usize, b: usize) -> Vec<Rational> {
        let d = self.g.dim();
        let mut out = vec![Rational::zero(); self.dim()];
        match (self.degree(a), self.degree(b)) {
            (0, 0) => out[..d].clone_from_slice(&self.g.bracket_basis(a, b)),
            (0, -1) => out[d..2 * d].clone_from_slice(&self.g.bracket_basis(a, b - d)),
            (-1, 0) => {
                for (k, x) in self.g.bracket_basis(b, a - d).into_iter().enumerate() {
                    out[d + k] = -x;
                }
            }
            (-1, -1) => out[2 * d] = self.g.metric().get(a - d, b - d).clone(),
            _ => {}
        }
        out
    }

    pub fn bracket(&self, u: &[Rational], v: &[Rational]) -> Vec<Rational> {
        let n = self.dim();
        let mut out = vec![Rational::zero(); n];
        for a in 0..n {
            if u[a].is_zero() {
                continue;
            }
            for b in 0..n {
                if v[b].is_zero() {
                    continue;
                }
                let s = &u[a] * &v[b];
                for (o, x) in out.iter_mut().zip(self.bracket_basis(a, b)) {
                    if !x.is_zero() {
                        *o += &s * x;
                    }
                }
            }
        }
        out
    }

    /// `Q(s_i) = e_i`, zero on `e_i` and `c`.
    pub fn q(&self, u: &[Rational]) -> Vec<Rational> {
        let d = self.g.dim();
        let mut out = vec![Rational::zero(); self.dim()];
        out[..d].clone_from_slice(&u[d..2 * d]);
        out
    }

    fn basis(&self, a: usize) -> Vec<Rational> {
        unit(self.dim(), a)
    }

    /// First basis triple violating
    /// `[a,[b,c]] = [[a,b],c] + (−1)^{|a||b|} [b,[a,c]]`.
    pub fn jacobi_failure(&self) -> Option<(usize, usize, usize)> {
        let n = self.dim();
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let lhs = self.bracket(&self.basis(a), &self.bracket_basis(b, c));
                    let r1 = self.bracket(&self.bracket_basis(a, b), &self.basis(c));
                    let r2 = self.bracket(&self.basis(b), &self.bracket_basis(a, c));
                    let odd = (self.degree(a) * self.degree(b)).rem_euclid(2) == 1;
                    let ok =
                        lhs.iter().zip(&r1).zip(&r2).all(|((l, x), y)| if odd { *l == x - y } else { *l == x + y });
                    if !ok {
                        return Some((a, b, c));
                    }
                }
            }
        }
        None
    }

    /// First basis pair violating `Q[a,b] = [Qa,b] + (−1)^{|a|}[a,Qb]`.
    pub fn derivation_failure(&self) -> Option<(usize, usize)> {
        let n = self.dim();
        for a in 0..n {
            for b in 0..n {
                let lhs = self.q(&self.bracket_basis(a, b));
                let r1 = self.bracket(&self.q(&self.basis(a)), &self.basis(b));
                let r2 = self.bracket(&self.basis(a), &self.q(&self.basis(b)));
                let odd = self.degree(a).rem_euclid(2) == 1;
                let ok = lhs.iter().zip(&r1).zip(&r2).all(|((l, x), y)| if odd { *l == x - y } else { *l == x + y });
                if !ok {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn q_squares_to_zero(&self) -> bool {
        (0..self.dim()).all(|a| self.q(&self.q(&self.basis(a))).iter().all(Zero::is_zero))
    }
}

/// The graded Lie algebra `g ⊕ g[1] ⊕ ℝ[2]` with differential `s_i ↦ e_i`.
pub fn central_extension(g: &QuadraticLieAlgebra) -> Result<CentralExtension> {
    let ext = CentralExtension { g: g.clone() };
    if let Some((a, b, c)) = ext.jacobi_failure() {
        return structure(format!("graded Jacobi fails on basis ({a}, {b}, {c})"));
    }
    if let Some((a, b)) = ext.derivation_failure() {
        return structure(format!("Q is not a derivation on basis ({a}, {b})"));
    }
    Ok(ext)
}

/// Checks `c([x,y],z) + c([y,z],x) + c([z,x],y) = 0` on the loop algebra
/// truncated to modes `|m| ≤ cutoff`, for `c(u z^m, v z^k) = w(m) δ_{m+k,0} ⟨u,v⟩`.
/// Returns the first failing triple `((i, m), (j, k), (l, p))`.
pub fn loop_cocycle_failure(
    g: &QuadraticLieAlgebra,
    cutoff: u32,
    weight: impl Fn(i64) -> Rational,
) -> Result<Option<[(usize, i64); 3]>> {
    if cutoff == 0 {
        return domain("mode cutoff must be at least 1");
    }
    let d = g.dim();
    let n = cutoff as i64;
    // c([x,y],z) with [u z^m, v z^k] = [u,v] z^{m+k}
    let term = |u: usize, m: i64, v: usize, k: i64, w: usize, p: i64| -> Rational {
        let uv = g.bracket_basis(u, v);
        if uv.iter().all(Zero::is_zero) || m + k + p != 0 {
            return Rational::zero();
        }
        let wv = unit(d, w);
        let mk = m + k;
        if mk.abs() > n || p.abs() > n {
            return Rational::zero();
        }
        weight(mk) * g.metric().bilinear(&uv, &wv)
    };
    for i in 0..d {
        for j in 0..d {
            for l in 0..d {
                for m in -n..=n {
                    for k in -n..=n {
                        for p in -n..=n {
                            let s = term(i, m, j, k, l, p) + term(j, k, l, p, i, m) + term(l, p, i, m, j, k);
                            if !s.is_zero() {
                                return Ok(Some([(i, m), (j, k), (l, p)]));
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// The standard affine cocycle `m δ_{m+k,0} ⟨u,v⟩`.
pub fn affine_cocycle_check(g: &QuadraticLieAlgebra, cutoff: u32) -> Result<bool> {
    Ok(loop_cocycle_failure(g, cutoff, rat)?.is_none())
}

/// Infinitesimal symmetry `(v, α)`: a polynomial vector field on `ℝ^m` and a
/// polynomial `(n−1)`-form, both stored on the chart [`fiber_chart`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetryPair {
    m: usize,
    n: u32,
    chart: Arc<Chart>,
    v: Vec<GPoly>,
    alpha: GPoly,
}

impl SymmetryPair {
    pub fn new(m: usize, n: u32, v: &[GPoly], alpha: &GPoly) -> Result<Self> {
        if n == 0 {
            return domain("symmetry pairs need n >= 1");
        }
        if v.len() != m {
            return domain(format!("vector field needs {m} components"));
        }
        let chart = fiber_chart(m, n)?;
        let mut comps = Vec::with_capacity(m);
        for c in v {
            let c = c.transport(&chart)?;
            check_base_form(&c, m, "vector field component")?;
            if !c.is_homogeneous_of(0) && !c.is_zero() {
                return domain(format!("vector field component `{c}` must be a function of x"));
            }
            comps.push(c);
        }
        let alpha = alpha.transport(&chart)?;
        check_base_form(&alpha, m, "α")?;
        if !alpha.is_zero() && !alpha.is_homogeneous_of(n as i64 - 1) {
            return domain(format!("α must be a form of degree {}, got `{alpha}`", n - 1));
        }
        Ok(SymmetryPair { m, n, chart, v: comps, alpha })
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn vector(&self) -> &[GPoly] {
        &self.v
    }

    pub fn form(&self) -> &GPoly {
        &self.alpha
    }

    pub fn base_dim(&self) -> usize {
        self.m
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    fn check_compatible(&self, other: &SymmetryPair) -> Result<()> {
        if self.m != other.m || self.n != other.n {
            return domain("symmetry pairs of different (m, n)");
        }
        Ok(())
    }

    /// Contraction `ι_v` as a degree −1 derivation (`t` untouched).
    fn contraction(&self) -> Derivation {
        let mut comps = vec![GPoly::zero(&self.chart); self.chart.len()];
        for a in 0..self.m {
            comps[self.m + a] = self.v[a].clone();
        }
        Derivation::new(&self.chart, -1, comps).expect("weights checked at construction")
    }

    /// `v⌟β` for a form `β` on the pair's chart.
    pub fn contract(&self, beta: &GPoly) -> Result<GPoly> {
        self.contraction().apply(&beta.transport(&self.chart)?)
    }
}

/// `Q = ξ^a ∂_{x^a}` on the chart of symmetry pairs (`Q t = 0`).
pub fn symmetry_q(m: usize, n: u32) -> Result<Derivation> {
    de_rham(&fiber_chart(m, n)?, m)
}

/// `ι(x) = 0`, `ι(ξ^a) = v^a`, `ι(t) = α`.
pub fn iota_encode(s: &SymmetryPair) -> Derivation {
    let mut comps = s.contraction().components().to_vec();
    let t = s.chart.index_of("t").expect("fiber chart has t");
    comps[t] = s.alpha.clone();
    Derivation::new(&s.chart, -1, comps).expect("weights checked at construction")
}

/// `½[ι, ι]`; its only possibly nonzero component is `t ↦ v⌟α`.
pub fn iota_half_square(s: &SymmetryPair) -> Result<Derivation> {
    let i = iota_encode(s);
    Ok(i.commutator(&i)?.scale(&ratio(1, 2)))
}

/// Reads `(v, α)` back from a degree −1 derivation on the pair chart.
pub fn decode_pair(d: &Derivation, m: usize, n: u32) -> Result<SymmetryPair> {
    if d.degree() != -1 {
        return precondition("only degree -1 derivations encode symmetry pairs");
    }
    let chart = fiber_chart(m, n)?;
    if **d.chart() != *chart {
        return domain("derivation is not on the symmetry-pair chart");
    }
    for a in 0..m {
        if !d.component(a).is_zero() {
            return structure(format!("derivation moves x{}", a + 1));
        }
    }
    let v: Vec<GPoly> = (0..m).map(|a| d.component(m + a).clone()).collect();
    if v.iter().any(|c| c.support().contains(&(2 * m))) {
        return structure("vector part depends on t");
    }
    SymmetryPair::new(m, n, &v, d.component(2 * m))
}

/// `([v1, v2], L_{v1} α2 − v2⌟dα1)` with `L_v = ι_v d + d ι_v`.
pub fn symmetry_bracket(s1: &SymmetryPair, s2: &SymmetryPair) -> Result<SymmetryPair> {
    s1.check_compatible(s2)?;
    let m = s1.m;
    let d = symmetry_q(m, s1.n)?;
    let i1 = s1.contraction();
    let i2 = s2.contraction();
    let mut v = Vec::with_capacity(m);
    for a in 0..m {
        let mut c = GPoly::zero(&s1.chart);
        for b in 0..m {
            c = &c + &(&s1.v[b] * &s2.v[a].left_derivative(b));
            c = &c - &(&s2.v[b] * &s1.v[a].left_derivative(b));
        }
        v.push(c);
    }
    let lie = &i1.apply(&d.apply(&s2.alpha)?)? + &d.apply(&i1.apply(&s2.alpha)?)?;
    let alpha = &lie - &i2.apply(&d.apply(&s1.alpha)?)?;
    SymmetryPair::new(m, s1.n, &v, &alpha)
}

/// Decoding of `[[Q, ι1], ι2]`.
pub fn derived_symmetry_bracket(s1: &SymmetryPair, s2: &SymmetryPair) -> Result<SymmetryPair> {
    s1.check_compatible(s2)?;
    let q = symmetry_q(s1.m, s1.n)?;
    let inner = q.commutator(&iota_encode(s1))?;
    decode_pair(&inner.commutator(&iota_encode(s2))?, s1.m, s1.n)
}

/// Decoding of `[Q, [ι1, ι2]]`, which should equal the symmetrized bracket.
pub fn symmetry_defect(s1: &SymmetryPair, s2: &SymmetryPair) -> Result<SymmetryPair> {
    s1.check_compatible(s2)?;
    let q = symmetry_q(s1.m, s1.n)?;
    let inner = iota_encode(s1).commutator(&iota_encode(s2))?;
    decode_pair(&q.commutator(&inner)?, s1.m, s1.n)
}

/// Componentwise sum of two pairs.
pub fn pair_sum(s1: &SymmetryPair, s2: &SymmetryPair) -> Result<SymmetryPair> {
    s1.check_compatible(s2)?;
    let v: Vec<GPoly> = s1.v.iter().zip(&s2.v).map(|(a, b)| a + b).collect();
    SymmetryPair::new(s1.m, s1.n, &v, &(&s1.alpha + &s2.alpha))
}

/// Searches low-degree pairs on `ℝ^2` for `[s1,s2] ≠ −[s2,s1]`.
pub fn non_skew_witness(n: u32) -> Result<Option<(SymmetryPair, SymmetryPair)>> {
    if n < 2 {
        return Ok(None);
    }
    let m = 2;
    let chart = fiber_chart(m, n)?;
    let x = |a: usize| GPoly::var(&chart, a);
    let fields: Vec<Vec<GPoly>> = vec![
        vec![GPoly::one(&chart), GPoly::zero(&chart)],
        vec![GPoly::zero(&chart), GPoly::one(&chart)],
        vec![x(0), GPoly::zero(&chart)],
        vec![x(1), GPoly::zero(&chart)],
    ];
    let mut forms: Vec<GPoly> = Vec::new();
    for coeff in [GPoly::one(&chart), x(0), x(1)] {
        for mono in odd_monomials(&chart, m, n as usize - 1) {
            forms.push(&coeff * &mono);
        }
    }
    forms.push(GPoly::zero(&chart));
    let mut pairs = Vec::new();
    for v in &fields {
        for a in &forms {
            pairs.push(SymmetryPair::new(m, n, v, a)?);
        }
    }
    for s1 in &pairs {
        for s2 in &pairs {
            let ab = symmetry_bracket(s1, s2)?;
            let ba = symmetry_bracket(s2, s1)?;
            if !pair_sum(&ab, &ba)?.is_zero() {
                return Ok(Some((s1.clone(), s2.clone())));
            }
        }
    }
    Ok(None)
}

fn odd_monomials(chart: &Arc<Chart>, m: usize, k: usize) -> Vec<GPoly> {
    fn rec(chart: &Arc<Chart>, m: usize, start: usize, k: usize, cur: GPoly, out: &mut Vec<GPoly>) {
        if k == 0 {
            out.push(cur);
            return;
        }
        for a in start..m {
            rec(chart, m, a + 1, k - 1, &cur * &GPoly::var(chart, m + a), out);
        }
    }
    let mut out = Vec::new();
    rec(chart, m, 0, k, GPoly::one(chart), &mut out);
    out
}

impl SymmetryPair {
    pub fn is_zero(&self) -> bool {
        self.alpha.is_zero() && self.v.iter().all(GPoly::is_zero)
    }
}

impl std::fmt::Display for SymmetryPair {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let v: Vec<String> = self
            .v
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(a, c)| format!("({c})*d/dx{}", a + 1))
            .collect();
        let v = if v.is_empty() { "0".to_string() } else { v.join(" + ") };
        write!(f, "({v}, {})", self.alpha)
    }
}
