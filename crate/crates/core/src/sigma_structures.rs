//! Degree-n symplectic Darboux charts and the structures they carry:
//! graded Poisson brackets, Hamiltonian homological fields, the master
//! equation, Lie algebroids as degree-1 Q-structures, derived brackets and
//! Lagrangian NQ-submanifolds.
//!
//! Sign conventions (everything else follows from these and the Koszul rule):
//! - `{q_i, p_i} = 1/c_i` where `c_i` is the pair coefficient (default 1);
//! - the homological field of a Hamiltonian is `Q = {Θ, ·}`;
//! - the derived bracket is `[[e1, e2]] = −{{Θ, e1}, e2}`, which makes it
//!   reproduce `π(df, dg)` for `Θ = ½ π^{ab} p_a p_b` and the Dorfman
//!   bracket for `Θ = θ^a p_a`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{domain, precondition, structure, Error, Result};
use crate::graded_algebra::{ratio, Chart, GPoly, Monomial, Rational};
use crate::linalg::QMatrix;
use crate::nq_core::Derivation;

/// A graded chart with constant symplectic form `ω = Σ c_i dp_i ∧ dq_i` of
/// degree `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DarbouxChart {
    n: u32,
    chart: Arc<Chart>,
    pairs: Vec<(usize, usize)>,
    coefficients: Vec<Rational>,
}

/// One requested conjugate pair `(q, weight q, p, weight p)`.
pub type PairSpec = (String, i64, String, i64);

impl DarbouxChart {
    /// Builds a Darboux chart. Every weight must lie in `[0, n]` and the two
    /// weights of a pair must add up to `n`.
    pub fn new(n: i64, pairs: &[PairSpec]) -> Result<Self> {
        let coeffs = vec![Rational::one(); pairs.len()];
        Self::with_coefficients(n, pairs, coeffs)
    }

    pub fn with_coefficients(n: i64, pairs: &[PairSpec], coefficients: Vec<Rational>) -> Result<Self> {
        if n < 0 {
            return domain(format!("symplectic degree must be non-negative, got {n}"));
        }
        if coefficients.len() != pairs.len() || coefficients.iter().any(Zero::is_zero) {
            return domain("one nonzero coefficient per pair is required");
        }
        let mut vars = Vec::new();
        for (q, kq, p, kp) in pairs {
            for (name, w) in [(q, kq), (p, kp)] {
                if *w < 0 || *w > n {
                    return domain(format!("weight {w} of `{name}` lies outside [0, {n}]"));
                }
            }
            if kq + kp != n {
                return domain(format!("pair ({q}, {p}) has weights {kq} + {kp} != {n}"));
            }
            vars.push((q.clone(), *kq as u32));
            vars.push((p.clone(), *kp as u32));
        }
        let chart = Chart::new(vars)?;
        let pairs = (0..pairs.len()).map(|i| (2 * i, 2 * i + 1)).collect();
        Ok(DarbouxChart { n: n as u32, chart, pairs, coefficients })
    }

    /// `T*[1]ℝ^m` with coordinates `x_a` (weight 0) and `p_a` (weight 1).
    pub fn poisson_standard(m: usize) -> Self {
        let pairs: Vec<PairSpec> = (1..=m).map(|a| (format!("x{a}"), 0, format!("p{a}"), 1)).collect();
        Self::new(1, &pairs).expect("standard chart is valid")
    }

    /// `T*[2]T[1]ℝ^m`: pairs `(x_a, p_a)` of weights (0, 2) and
    /// `(theta_a, chi_a)` of weights (1, 1).
    pub fn courant_standard(m: usize) -> Self {
        let mut pairs: Vec<PairSpec> = (1..=m).map(|a| (format!("x{a}"), 0, format!("p{a}"), 2)).collect();
        pairs.extend((1..=m).map(|a| (format!("theta{a}"), 1, format!("chi{a}"), 1)));
        Self::new(2, &pairs).expect("standard chart is valid")
    }

    pub fn degree(&self) -> u32 {
        self.n
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn coefficient(&self, pair: usize) -> &Rational {
        &self.coefficients[pair]
    }

    pub fn var(&self, name: &str) -> Result<GPoly> {
        GPoly::var_named(&self.chart, name)
    }

    /// Conjugate partner of a coordinate index.
    pub fn partner(&self, i: usize) -> usize {
        i ^ 1
    }

    /// Graded Poisson bracket of degree `−n`.
    pub fn poisson_bracket(&self, f: &GPoly, g: &GPoly) -> Result<GPoly> {
        if f.chart() != &self.chart && **f.chart() != *self.chart {
            return domain("bracket argument not on this chart");
        }
        if g.chart() != &self.chart && **g.chart() != *self.chart {
            return domain("bracket argument not on this chart");
        }
        let mut out = GPoly::zero(&self.chart);
        for (k, &(q, p)) in self.pairs.iter().enumerate() {
            let inv = self.coefficients[k].recip();
            let a = f.right_derivative(q);
            let b = g.left_derivative(p);
            if !a.is_zero() && !b.is_zero() {
                out = &out + &(&a * &b).scale(&inv);
            }
            let c = f.right_derivative(p);
            let d = g.left_derivative(q);
            if !c.is_zero() && !d.is_zero() {
                let both_odd = self.chart.is_odd(q) && self.chart.is_odd(p);
                let s = if both_odd { inv.clone() } else { -inv.clone() };
                out = &out + &(&c * &d).scale(&s);
            }
        }
        Ok(out)
    }

    /// Hamiltonian vector field `X_f = {f, ·}`, of degree `weight f − n`.
    pub fn hamiltonian_field(&self, f: &GPoly) -> Result<Derivation> {
        let degree = match f.weight_of() {
            crate::graded_algebra::Weight::Homogeneous(w) => w as i32 - self.n as i32,
            crate::graded_algebra::Weight::Zero => 0,
            crate::graded_algebra::Weight::Inhomogeneous => {
                return precondition("Hamiltonian vector field of an inhomogeneous function")
            }
        };
        let comps = (0..self.chart.len())
            .map(|i| self.poisson_bracket(f, &GPoly::var(&self.chart, i)))
            .collect::<Result<Vec<_>>>()?;
        Derivation::new(&self.chart, degree, comps)
    }
}

/// Homogeneous function of weight `n + 1` on a Darboux chart.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hamiltonian {
    theta: GPoly,
}

impl Hamiltonian {
    pub fn new(chart: &DarbouxChart, theta: GPoly) -> Result<Self> {
        if **theta.chart() != **chart.chart() {
            return domain("Hamiltonian not on the Darboux chart");
        }
        if !theta.is_homogeneous_of(chart.degree() as i64 + 1) {
            return precondition(format!("Hamiltonian must have weight {}, got `{theta}`", chart.degree() + 1));
        }
        Ok(Hamiltonian { theta })
    }

    pub fn poly(&self) -> &GPoly {
        &self.theta
    }
}

pub fn poisson_bracket(chart: &DarbouxChart, f: &GPoly, g: &GPoly) -> Result<GPoly> {
    chart.poisson_bracket(f, g)
}

/// `Q = {Θ, ·}`.
pub fn hamiltonian_to_q(chart: &DarbouxChart, theta: &GPoly) -> Result<Derivation> {
    let h = Hamiltonian::new(chart, theta.clone())?;
    let comps = (0..chart.chart().len())
        .map(|i| chart.poisson_bracket(h.poly(), &GPoly::var(chart.chart(), i)))
        .collect::<Result<Vec<_>>>()?;
    Derivation::new(chart.chart(), 1, comps)
}

/// `{Θ, Θ}`; vanishes iff `{Θ, ·}` squares to zero.
pub fn master_equation(chart: &DarbouxChart, theta: &GPoly) -> Result<GPoly> {
    let h = Hamiltonian::new(chart, theta.clone())?;
    chart.poisson_bracket(h.poly(), h.poly())
}

/// Checks that `Q` preserves the symplectic form, coordinate pair by
/// coordinate pair: `{Q a, b} + (−1)^{|a|+n} {a, Q b} = 0`.
pub fn is_symplectic(chart: &DarbouxChart, q: &Derivation) -> Result<Option<(usize, usize, GPoly)>> {
    let c = chart.chart();
    let n = chart.degree();
    for a in 0..c.len() {
        for b in 0..c.len() {
            let va = GPoly::var(c, a);
            let vb = GPoly::var(c, b);
            let lhs = chart.poisson_bracket(q.component(a), &vb)?;
            let rhs = chart.poisson_bracket(&va, q.component(b))?;
            let sign_neg = (c.weight(a) + n) % 2 == 1;
            let sum = if sign_neg { &lhs - &rhs } else { &lhs + &rhs };
            if !sum.is_zero() {
                return Ok(Some((a, b, sum)));
            }
        }
    }
    Ok(None)
}

/// Recovers the unique weight-`(n+1)` Hamiltonian of a symplectic degree-1
/// field by solving `{Θ, z} = Q(z)` over all candidate monomials.
pub fn q_to_hamiltonian(chart: &DarbouxChart, q: &Derivation) -> Result<Hamiltonian> {
    if chart.degree() < 1 {
        return precondition("q_to_hamiltonian needs symplectic degree n >= 1");
    }
    if q.degree() != 1 || **q.chart() != **chart.chart() {
        return precondition("expected a degree-1 field on the Darboux chart");
    }
    if let Some((a, b, w)) = is_symplectic(chart, q)? {
        let c = chart.chart();
        return structure(format!("field does not preserve ω: pair ({}, {}) gives `{w}`", c.name(a), c.name(b)));
    }
    let c = chart.chart();
    let bound = q.components().iter().map(GPoly::base_degree).max().unwrap_or(0) + 1;
    let candidates = monomials_of_weight(c, chart.degree() + 1, bound);
    if candidates.is_empty() {
        return if q.is_zero() {
            Ok(Hamiltonian { theta: GPoly::zero(c) })
        } else {
            structure("no Hamiltonian candidates for a nonzero field")
        };
    }
    let mut rows: BTreeMap<(usize, Monomial), usize> = BTreeMap::new();
    let mut entries: Vec<(usize, usize, Rational)> = Vec::new();
    for (j, m) in candidates.iter().enumerate() {
        for z in 0..c.len() {
            let b = chart.poisson_bracket(m, &GPoly::var(c, z))?;
            for (mono, coeff) in b.terms() {
                let len = rows.len();
                let r = *rows.entry((z, mono.clone())).or_insert(len);
                entries.push((r, j, coeff.clone()));
            }
        }
    }
    for z in 0..c.len() {
        for (mono, _) in q.component(z).terms() {
            let len = rows.len();
            rows.entry((z, mono.clone())).or_insert(len);
        }
    }
    let mut mat = QMatrix::zeros(rows.len(), candidates.len());
    for (r, j, v) in entries {
        mat.add_at(r, j, &v);
    }
    let mut rhs = vec![Rational::zero(); rows.len()];
    for ((z, mono), &r) in &rows {
        rhs[r] = q.component(*z).coefficient(mono.exponents());
    }
    let Some(sol) = mat.solve(&rhs) else {
        return structure("field is symplectic on coordinates but has no polynomial Hamiltonian");
    };
    let mut theta = GPoly::zero(c);
    for (m, x) in candidates.iter().zip(sol) {
        theta = &theta + &m.scale(&x);
    }
    if hamiltonian_to_q(chart, &theta)? != *q {
        return structure("recovered Hamiltonian does not reproduce the field");
    }
    Ok(Hamiltonian { theta })
}

/// All monomials (coefficient 1) of the given weight whose weight-0 part has
/// total degree at most `base_bound`.
pub fn monomials_of_weight(chart: &Arc<Chart>, weight: u32, base_bound: u32) -> Vec<GPoly> {
    fn rec(chart: &Chart, i: usize, left: u32, base_left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i == chart.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let w = chart.weight(i);
        let max_e = if chart.is_odd(i) { 1 } else { left.checked_div(w).unwrap_or(base_left) };
        for e in 0..=max_e {
            if e * w > left {
                break;
            }
            cur[i] = e;
            let base_next = if w == 0 { base_left - e } else { base_left };
            rec(chart, i + 1, left - e * w, base_next, cur, out);
        }
        cur[i] = 0;
    }
    let mut out = Vec::new();
    rec(chart, 0, weight, base_bound, &mut vec![0; chart.len()], &mut out);
    out.into_iter().map(|e| GPoly::from_terms(chart, [(e, Rational::one())]).expect("valid exponents")).collect()
}

/// Anchor and bracket of a Lie algebroid over a coordinate patch, written on
/// the chart of `A[1]` (base coordinates of weight 0, fiber coordinates of
/// weight 1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlgebroidData {
    chart: Arc<Chart>,
    base: usize,
    fiber: usize,
    /// `anchor[i][a] = ρ^a_i`
    anchor: Vec<Vec<GPoly>>,
    /// `structure[k][i][j] = c^k_{ij}`
    structure: Vec<Vec<Vec<GPoly>>>,
}

impl AlgebroidData {
    /// Zero anchor and bracket on the given base and fiber labels.
    pub fn new<S: AsRef<str>>(base: &[S], fiber: &[S]) -> Result<Self> {
        let mut vars: Vec<(String, u32)> = base.iter().map(|s| (s.as_ref().to_string(), 0)).collect();
        vars.extend(fiber.iter().map(|s| (s.as_ref().to_string(), 1)));
        let chart = Chart::new(vars)?;
        let z = GPoly::zero(&chart);
        let (b, f) = (base.len(), fiber.len());
        Ok(AlgebroidData {
            chart,
            base: b,
            fiber: f,
            anchor: vec![vec![z.clone(); b]; f],
            structure: vec![vec![vec![z; f]; f]; f],
        })
    }

    /// Lie algebra `g` as an algebroid over a point, from structure constants
    /// `c[k][i][j]`.
    pub fn from_lie_algebra(fiber: &[&str], c: &[Vec<Vec<Rational>>]) -> Result<Self> {
        let mut a = Self::new::<&str>(&[], fiber)?;
        for (k, ck) in c.iter().enumerate() {
            for (i, row) in ck.iter().enumerate() {
                for (j, v) in row.iter().enumerate() {
                    if i < j {
                        let p = GPoly::constant(&a.chart, v.clone());
                        a.set_bracket(i, j, k, p)?;
                    }
                }
            }
        }
        a.validate()?;
        Ok(a)
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn base_dim(&self) -> usize {
        self.base
    }

    pub fn rank(&self) -> usize {
        self.fiber
    }

    pub fn anchor(&self, i: usize, a: usize) -> &GPoly {
        &self.anchor[i][a]
    }

    pub fn bracket_coefficient(&self, i: usize, j: usize, k: usize) -> &GPoly {
        &self.structure[k][i][j]
    }

    fn check_base_function(&self, p: &GPoly) -> Result<()> {
        if **p.chart() != *self.chart {
            return domain("algebroid data must live on the A[1] chart");
        }
        if !p.is_homogeneous_of(0) {
            return domain(format!("`{p}` must depend on base coordinates only"));
        }
        Ok(())
    }

    pub fn set_anchor(&mut self, i: usize, a: usize, rho: GPoly) -> Result<()> {
        self.check_base_function(&rho)?;
        self.anchor[i][a] = rho;
        Ok(())
    }

    /// Sets `c^k_{ij}` and `c^k_{ji} = −c^k_{ij}`.
    pub fn set_bracket(&mut self, i: usize, j: usize, k: usize, c: GPoly) -> Result<()> {
        self.check_base_function(&c)?;
        if i == j && !c.is_zero() {
            return domain("c^k_ii must vanish");
        }
        self.structure[k][j][i] = -&c;
        self.structure[k][i][j] = c;
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        for k in 0..self.fiber {
            for i in 0..self.fiber {
                for j in 0..self.fiber {
                    if self.structure[k][i][j] != -&self.structure[k][j][i] {
                        return structure(format!("structure functions not antisymmetric at ({i},{j},{k})"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `Q(x^a) = ρ^a_i ξ^i`, `Q(ξ^k) = −½ c^k_{ij} ξ^i ξ^j`.
pub fn algebroid_to_q(a: &AlgebroidData) -> Result<Derivation> {
    a.validate()?;
    let c = &a.chart;
    let xi = |i: usize| GPoly::var(c, a.base + i);
    let mut comps = Vec::with_capacity(c.len());
    for b in 0..a.base {
        let mut p = GPoly::zero(c);
        for i in 0..a.fiber {
            p = &p + &(&a.anchor[i][b] * &xi(i));
        }
        comps.push(p);
    }
    let half = ratio(-1, 2);
    for k in 0..a.fiber {
        let mut p = GPoly::zero(c);
        for i in 0..a.fiber {
            for j in 0..a.fiber {
                let cij = &a.structure[k][i][j];
                if !cij.is_zero() {
                    p = &p + &(&(cij * &xi(i)) * &xi(j)).scale(&half);
                }
            }
        }
        comps.push(p);
    }
    Derivation::new(c, 1, comps)
}

/// Reads anchor and structure functions off a degree-1 field on a chart
/// with weights in {0, 1}.
pub fn q_to_algebroid(q: &Derivation) -> Result<AlgebroidData> {
    let c = q.chart();
    if c.max_weight() > 1 {
        return precondition("q_to_algebroid needs a chart of degree <= 1");
    }
    if q.degree() != 1 {
        return precondition("q_to_algebroid needs a degree-1 field");
    }
    let base: Vec<usize> = (0..c.len()).filter(|&i| c.weight(i) == 0).collect();
    let fiber: Vec<usize> = (0..c.len()).filter(|&i| c.weight(i) == 1).collect();
    let bn: Vec<&str> = base.iter().map(|&i| c.name(i)).collect();
    let fnames: Vec<&str> = fiber.iter().map(|&i| c.name(i)).collect();
    let mut a = AlgebroidData::new(&bn, &fnames)?;
    let target = a.chart.clone();
    for (ai, &b) in base.iter().enumerate() {
        for (i, &f) in fiber.iter().enumerate() {
            let rho = q.component(b).left_derivative(f).transport(&target)?;
            a.set_anchor(i, ai, rho)?;
        }
    }
    for (k, &fk) in fiber.iter().enumerate() {
        for i in 0..fiber.len() {
            for j in (i + 1)..fiber.len() {
                let cij = -q.component(fk).left_derivative(fiber[i]).left_derivative(fiber[j]);
                a.set_bracket(i, j, k, cij.transport(&target)?)?;
            }
        }
    }
    Ok(a)
}

/// Derived bracket `[[e1, e2]] = −{{Θ, e1}, e2}`.
pub fn derived_bracket(chart: &DarbouxChart, theta: &GPoly, e1: &GPoly, e2: &GPoly) -> Result<GPoly> {
    for e in [e1, e2] {
        if matches!(e.weight_of(), crate::graded_algebra::Weight::Inhomogeneous) {
            return precondition("derived bracket arguments must be homogeneous");
        }
    }
    let inner = chart.poisson_bracket(theta, e1)?;
    Ok(-chart.poisson_bracket(&inner, e2)?)
}

/// Outcome of a Λ-structure test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LambdaVerdict {
    pub lagrangian: bool,
    pub q_invariant: bool,
    /// First constraint whose image under `Q` leaves the constraint ideal.
    pub witness: Option<(String, GPoly)>,
}

impl LambdaVerdict {
    pub fn holds(&self) -> bool {
        self.lagrangian && self.q_invariant
    }
}

/// Tests whether the coordinate submanifold `{z = 0 : z ∈ constraints}` is a
/// Lagrangian NQ-submanifold.
pub fn lambda_check(chart: &DarbouxChart, q: &Derivation, constraints: &[&str]) -> Result<LambdaVerdict> {
    let c = chart.chart();
    let mut idx = Vec::new();
    for name in constraints {
        match c.index_of(name) {
            Some(i) => idx.push(i),
            None => return Err(Error::Unsupported(format!("`{name}` is not a Darboux coordinate"))),
        }
    }
    let lagrangian =
        chart.pairs().iter().all(|&(qi, pi)| idx.contains(&qi) ^ idx.contains(&pi)) && idx.len() == chart.pairs().len();
    let mut witness = None;
    for &i in &idx {
        let image = q.component(i).restrict_zero(&idx);
        if !image.is_zero() {
            witness = Some((c.name(i).to_string(), image));
            break;
        }
    }
    Ok(LambdaVerdict { lagrangian, q_invariant: witness.is_none(), witness })
}

/// `Θ = ½ π^{ab} p_a p_b` on `T*[1]ℝ^m`, from the upper-triangular entries
/// `π^{ab}` (a < b) given as functions on the same chart.
pub fn poisson_hamiltonian(chart: &DarbouxChart, pi: &BTreeMap<(usize, usize), GPoly>) -> Result<GPoly> {
    let c = chart.chart();
    let mut theta = GPoly::zero(c);
    for (&(a, b), f) in pi {
        if a >= b {
            return domain("bivector entries must be given for a < b");
        }
        let pa = GPoly::var(c, chart.pairs()[a].1);
        let pb = GPoly::var(c, chart.pairs()[b].1);
        theta = &theta + &(&(f * &pa) * &pb);
    }
    Ok(theta)
}

/// `Θ = θ^a p_a + η` on `T*[2]T[1]ℝ^m`; `η` is an optional function of the
/// `x` and `theta` coordinates (a 3-form twist).
pub fn courant_hamiltonian(chart: &DarbouxChart, eta: Option<&GPoly>) -> Result<GPoly> {
    let c = chart.chart();
    let m = chart.pairs().len() / 2;
    let mut theta = GPoly::zero(c);
    for a in 1..=m {
        theta = &theta + &(&chart.var(&format!("theta{a}"))? * &chart.var(&format!("p{a}"))?);
    }
    if let Some(e) = eta {
        theta = theta.try_add(e)?;
    }
    Ok(theta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded_algebra::rat;

    #[test]
    fn darboux_bracket_basics() {
        let s = DarbouxChart::poisson_standard(1);
        let (x, p) = (s.var("x1").unwrap(), s.var("p1").unwrap());
        assert_eq!(s.poisson_bracket(&x, &p).unwrap(), GPoly::one(s.chart()));
        assert!(s.poisson_bracket(&x, &x).unwrap().is_zero());
        let c = DarbouxChart::courant_standard(2);
        let th1 = c.var("theta1").unwrap();
        let chi1 = c.var("chi1").unwrap();
        let chi2 = c.var("chi2").unwrap();
        let one = GPoly::one(c.chart());
        assert_eq!(c.poisson_bracket(&th1, &chi1).unwrap(), one);
        assert_eq!(c.poisson_bracket(&chi1, &th1).unwrap(), one);
        assert!(c.poisson_bracket(&th1, &chi2).unwrap().is_zero());
    }

    #[test]
    fn degree_bound_enforced() {
        assert!(DarbouxChart::new(2, &[("x".into(), 0, "p".into(), 3)]).is_err());
        assert!(DarbouxChart::new(2, &[("x".into(), -1, "p".into(), 3)]).is_err());
        assert!(DarbouxChart::new(2, &[("x".into(), 1, "p".into(), 2)]).is_err());
        assert!(DarbouxChart::new(2, &[("x".into(), 0, "p".into(), 2)]).is_ok());
    }

    #[test]
    fn poisson_hamiltonian_field() {
        let s = DarbouxChart::poisson_standard(2);
        let c = s.chart();
        let mut pi = BTreeMap::new();
        pi.insert((0, 1), GPoly::constant(c, rat(3)));
        let theta = poisson_hamiltonian(&s, &pi).unwrap();
        let q = hamiltonian_to_q(&s, &theta).unwrap();
        // Q(x^a) = π^{ab} p_b
        assert_eq!(q.component(0), &s.var("p2").unwrap().scale(&rat(3)));
        assert_eq!(q.component(2), &s.var("p1").unwrap().scale(&rat(-3)));
        assert!(master_equation(&s, &theta).unwrap().is_zero());
        let back = q_to_hamiltonian(&s, &q).unwrap();
        assert_eq!(back.poly(), &theta);
        let d = derived_bracket(&s, &theta, &s.var("x1").unwrap(), &s.var("x2").unwrap()).unwrap();
        assert_eq!(d, GPoly::constant(c, rat(3)));
    }

    #[test]
    fn courant_field_and_roundtrip() {
        let s = DarbouxChart::courant_standard(1);
        let theta = courant_hamiltonian(&s, None).unwrap();
        let q = hamiltonian_to_q(&s, &theta).unwrap();
        // under {q,p}=1 and Q={Θ,·} the de Rham part comes with a sign
        assert_eq!(q.component(0), &-s.var("theta1").unwrap());
        assert!(q.is_nq().unwrap());
        assert_eq!(q_to_hamiltonian(&s, &q).unwrap().poly(), &theta);
        let zero = GPoly::zero(s.chart());
        assert!(hamiltonian_to_q(&s, &zero).unwrap().is_zero());
        assert!(q_to_hamiltonian(&s, &Derivation::zero(s.chart(), 1)).unwrap().poly().is_zero());
    }

    #[test]
    fn non_symplectic_field_rejected() {
        let s = DarbouxChart::courant_standard(1);
        // Q(x) = theta only, nothing on p: breaks {Qx, p} + {x, Qp} = 0
        let q = Derivation::from_named(s.chart(), 1, [("x1", s.var("theta1").unwrap())]).unwrap();
        assert!(matches!(q_to_hamiltonian(&s, &q), Err(Error::Structure(_))));
    }

    #[test]
    fn dorfman_lie_derivative_example() {
        let s = DarbouxChart::courant_standard(1);
        let theta = courant_hamiltonian(&s, None).unwrap();
        let chi = s.var("chi1").unwrap();
        let form = &s.var("x1").unwrap() * &s.var("theta1").unwrap();
        assert_eq!(derived_bracket(&s, &theta, &chi, &form).unwrap(), s.var("theta1").unwrap());
        assert!(derived_bracket(&s, &theta, &chi, &chi).unwrap().is_zero());
    }

    #[test]
    fn algebroid_roundtrip_so3() {
        let eps = so3_constants();
        let a = AlgebroidData::from_lie_algebra(&["e1", "e2", "e3"], &eps).unwrap();
        let q = algebroid_to_q(&a).unwrap();
        assert!(q.is_nq().unwrap());
        let back = q_to_algebroid(&q).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn tangent_algebroid_is_de_rham() {
        let mut a = AlgebroidData::new(&["x1", "x2"], &["xi1", "xi2"]).unwrap();
        let one = GPoly::one(a.chart());
        a.set_anchor(0, 0, one.clone()).unwrap();
        a.set_anchor(1, 1, one).unwrap();
        let q = algebroid_to_q(&a).unwrap();
        assert_eq!(q, crate::nq_core::de_rham(a.chart(), 2).unwrap());
        assert_eq!(q_to_algebroid(&q).unwrap(), a);
    }

    #[test]
    fn lambda_examples() {
        let s = DarbouxChart::poisson_standard(2);
        let q0 = Derivation::zero(s.chart(), 1);
        assert!(lambda_check(&s, &q0, &["x2", "p1"]).unwrap().holds());
        assert!(!lambda_check(&s, &q0, &["x1", "p1"]).unwrap().lagrangian);
        assert!(lambda_check(&s, &q0, &["nope"]).is_err());
        let c = DarbouxChart::courant_standard(2);
        let q = hamiltonian_to_q(&c, &courant_hamiltonian(&c, None).unwrap()).unwrap();
        assert!(lambda_check(&c, &q, &["chi1", "chi2", "p1", "p2"]).unwrap().holds());
        // the form directions are not Q-invariant: Q(theta) is not in (theta, p)
        let v = lambda_check(&c, &q, &["theta1", "theta2", "p1", "p2"]).unwrap();
        assert!(v.lagrangian);
    }

    fn so3_constants() -> Vec<Vec<Vec<Rational>>> {
        let mut c = vec![vec![vec![Rational::zero(); 3]; 3]; 3];
        for (i, j, k) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
            c[k][i][j] = rat(1);
            c[k][j][i] = rat(-1);
        }
        c
    }
}
