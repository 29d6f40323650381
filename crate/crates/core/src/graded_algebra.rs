//! Supercommutative polynomials over weighted coordinates.
//!
//! A [`Chart`] lists the coordinates of an N-manifold chart, each with a
//! non-negative weight; the parity of a coordinate is its weight mod 2. A
//! [`GPoly`] is a polynomial in those coordinates with exact rational
//! coefficients. Odd coordinates anticommute and square to zero, and every
//! monomial stores its odd factors in the chart's declaration order, so the
//! representation is canonical and equality is structural.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, precondition, Error, Result};

/// Exact rational coefficient.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// A graded coordinate.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GVar {
    pub name: String,
    pub weight: u32,
}

impl GVar {
    pub fn new(name: impl Into<String>, weight: u32) -> Self {
        GVar { name: name.into(), weight }
    }

    pub fn is_odd(&self) -> bool {
        self.weight % 2 == 1
    }

    pub fn parity(&self) -> u32 {
        self.weight % 2
    }
}

/// Ordered coordinate system of an N-manifold chart.
///
/// The declaration order is the canonical order of odd coordinates; all
/// Koszul signs are taken relative to it.
#[derive(Debug, Clone)]
pub struct Chart {
    vars: Vec<GVar>,
    index: HashMap<String, usize>,
}

impl PartialEq for Chart {
    fn eq(&self, other: &Self) -> bool {
        self.vars == other.vars
    }
}

impl Eq for Chart {}

impl Chart {
    pub fn new<S: Into<String>>(vars: impl IntoIterator<Item = (S, u32)>) -> Result<Arc<Chart>> {
        let vars: Vec<GVar> = vars.into_iter().map(|(n, w)| GVar::new(n, w)).collect();
        Self::from_vars(vars)
    }

    /// Builds a chart from signed weight requests, rejecting negative weights.
    pub fn from_signed<S: Into<String>>(vars: impl IntoIterator<Item = (S, i64)>) -> Result<Arc<Chart>> {
        let mut out = Vec::new();
        for (name, w) in vars {
            let name = name.into();
            if w < 0 {
                return domain(format!("negative weight {w} for coordinate `{name}`"));
            }
            out.push(GVar::new(name, w as u32));
        }
        Self::from_vars(out)
    }

    pub fn from_vars(vars: Vec<GVar>) -> Result<Arc<Chart>> {
        let mut index = HashMap::new();
        for (i, v) in vars.iter().enumerate() {
            if v.name.is_empty() {
                return domain("empty coordinate name");
            }
            if index.insert(v.name.clone(), i).is_some() {
                return domain(format!("duplicate coordinate `{}`", v.name));
            }
        }
        Ok(Arc::new(Chart { vars, index }))
    }

    /// The chart of a point (no coordinates).
    pub fn point() -> Arc<Chart> {
        Arc::new(Chart { vars: Vec::new(), index: HashMap::new() })
    }

    pub fn vars(&self) -> &[GVar] {
        &self.vars
    }

    pub fn len(&self) -> usize {
        self.vars.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vars.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn weight(&self, i: usize) -> u32 {
        self.vars[i].weight
    }

    pub fn is_odd(&self, i: usize) -> bool {
        self.vars[i].is_odd()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.vars[i].name
    }

    /// Highest coordinate weight, 0 for the point chart.
    pub fn max_weight(&self) -> u32 {
        self.vars.iter().map(|v| v.weight).max().unwrap_or(0)
    }
}

pub(crate) fn same_chart(a: &Arc<Chart>, b: &Arc<Chart>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Exponent vector aligned with the chart; odd exponents are 0 or 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn unit(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.0[i]
    }

    /// Odd factors, in canonical order.
    pub fn odd_part(&self, chart: &Chart) -> Vec<usize> {
        (0..self.0.len()).filter(|&i| chart.is_odd(i) && self.0[i] == 1).collect()
    }

    /// Even factors with their exponents.
    pub fn even_part(&self, chart: &Chart) -> Vec<(usize, u32)> {
        (0..self.0.len()).filter(|&i| !chart.is_odd(i) && self.0[i] > 0).map(|i| (i, self.0[i])).collect()
    }

    pub fn weight(&self, chart: &Chart) -> u32 {
        self.0.iter().enumerate().map(|(i, e)| e * chart.weight(i)).sum()
    }

    pub fn parity(&self, chart: &Chart) -> u32 {
        self.0.iter().enumerate().filter(|(i, _)| chart.is_odd(*i)).map(|(_, e)| *e).sum::<u32>() % 2
    }

    /// Product of two monomials with its Koszul sign, or `None` if an odd
    /// coordinate repeats.
    fn product(&self, other: &Monomial, chart: &Chart) -> Option<(Monomial, bool)> {
        let mut exps = self.0.clone();
        let mut swaps = 0u32;
        // odd factors of `self` that sit after each odd factor of `other`
        let mut odd_after = 0u32;
        for i in (0..exps.len()).rev() {
            if chart.is_odd(i) {
                if other.0[i] == 1 {
                    if self.0[i] == 1 {
                        return None;
                    }
                    swaps += odd_after;
                }
                if self.0[i] == 1 {
                    odd_after += 1;
                }
            }
            exps[i] += other.0[i];
        }
        Some((Monomial(exps), swaps % 2 == 1))
    }
}

/// Degree information returned by [`GPoly::weight_of`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Weight {
    /// The zero polynomial, homogeneous of every weight.
    Zero,
    Homogeneous(u32),
    Inhomogeneous,
}

/// Supercommutative polynomial with rational coefficients on a chart.
#[derive(Debug, Clone)]
pub struct GPoly {
    chart: Arc<Chart>,
    terms: BTreeMap<Monomial, Rational>,
}

impl PartialEq for GPoly {
    fn eq(&self, other: &Self) -> bool {
        same_chart(&self.chart, &other.chart) && self.terms == other.terms
    }
}

impl Eq for GPoly {}

impl GPoly {
    pub fn zero(chart: &Arc<Chart>) -> Self {
        GPoly { chart: chart.clone(), terms: BTreeMap::new() }
    }

    pub fn one(chart: &Arc<Chart>) -> Self {
        Self::constant(chart, Rational::one())
    }

    pub fn constant(chart: &Arc<Chart>, c: Rational) -> Self {
        let mut p = Self::zero(chart);
        if !c.is_zero() {
            p.terms.insert(Monomial::unit(chart.len()), c);
        }
        p
    }

    pub fn var(chart: &Arc<Chart>, i: usize) -> Self {
        let mut e = vec![0; chart.len()];
        e[i] = 1;
        let mut p = Self::zero(chart);
        p.terms.insert(Monomial(e), Rational::one());
        p
    }

    pub fn var_named(chart: &Arc<Chart>, name: &str) -> Result<Self> {
        chart
            .index_of(name)
            .map(|i| Self::var(chart, i))
            .ok_or_else(|| Error::Domain(format!("unknown coordinate `{name}`")))
    }

    /// Builds a polynomial from raw exponent vectors, normalizing: odd
    /// exponents above one vanish and zero coefficients are dropped.
    pub fn from_terms(chart: &Arc<Chart>, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Result<Self> {
        let mut p = Self::zero(chart);
        for (e, c) in terms {
            if e.len() != chart.len() {
                return domain("exponent vector does not match chart");
            }
            if (0..e.len()).any(|i| chart.is_odd(i) && e[i] > 1) {
                continue;
            }
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    /// Coefficient of the monomial with the given exponents.
    pub fn coefficient(&self, exps: &[u32]) -> Rational {
        self.terms.get(&Monomial(exps.to_vec())).cloned().unwrap_or_else(Rational::zero)
    }

    /// Constant term.
    pub fn constant_term(&self) -> Rational {
        self.coefficient(&vec![0; self.chart.len()])
    }

    fn check_chart(&self, other: &GPoly) -> Result<()> {
        if same_chart(&self.chart, &other.chart) {
            Ok(())
        } else {
            domain("polynomials live on different coordinate universes")
        }
    }

    pub fn try_add(&self, other: &GPoly) -> Result<GPoly> {
        self.check_chart(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rational) -> GPoly {
        if c.is_zero() {
            return GPoly::zero(&self.chart);
        }
        GPoly { chart: self.chart.clone(), terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    /// Supercommutative product.
    pub fn multiply(&self, other: &GPoly) -> Result<GPoly> {
        self.check_chart(other)?;
        let mut out = GPoly::zero(&self.chart);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                if let Some((m, neg)) = ma.product(mb, &self.chart) {
                    let c = ca * cb;
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> GPoly {
        let mut out = GPoly::one(&self.chart);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Left derivative: `∂_v(ab) = (∂_v a) b + (-1)^{|v||a|} a ∂_v b`.
    pub fn left_derivative(&self, v: usize) -> GPoly {
        let chart = &self.chart;
        let mut out = GPoly::zero(chart);
        for (m, c) in &self.terms {
            let e = m.0[v];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[v] -= 1;
            let coeff = if chart.is_odd(v) {
                let before = (0..v).filter(|&i| chart.is_odd(i) && m.0[i] == 1).count();
                if before % 2 == 1 {
                    -c.clone()
                } else {
                    c.clone()
                }
            } else {
                c * rat(e as i64)
            };
            out.add_term(Monomial(exps), coeff);
        }
        out
    }

    /// Right derivative; only used internally by the Poisson bracket.
    pub(crate) fn right_derivative(&self, v: usize) -> GPoly {
        let chart = &self.chart;
        if !chart.is_odd(v) {
            return self.left_derivative(v);
        }
        let mut out = GPoly::zero(chart);
        for (m, c) in &self.terms {
            if m.0[v] == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[v] = 0;
            let after = (v + 1..m.0.len()).filter(|&i| chart.is_odd(i) && m.0[i] == 1).count();
            out.add_term(Monomial(exps), if after % 2 == 1 { -c.clone() } else { c.clone() });
        }
        out
    }

    pub fn weight_of(&self) -> Weight {
        let mut w = None;
        for m in self.terms.keys() {
            let mw = m.weight(&self.chart);
            match w {
                None => w = Some(mw),
                Some(x) if x != mw => return Weight::Inhomogeneous,
                _ => {}
            }
        }
        w.map_or(Weight::Zero, Weight::Homogeneous)
    }

    /// True for the zero polynomial or a polynomial homogeneous of weight `w`.
    pub fn is_homogeneous_of(&self, w: i64) -> bool {
        match self.weight_of() {
            Weight::Zero => true,
            Weight::Homogeneous(x) => x as i64 == w,
            Weight::Inhomogeneous => false,
        }
    }

    /// Parity of a homogeneous (in parity) polynomial; `None` if mixed.
    pub fn parity(&self) -> Option<u32> {
        let mut par = None;
        for m in self.terms.keys() {
            let p = m.parity(&self.chart);
            match par {
                None => par = Some(p),
                Some(x) if x != p => return None,
                _ => {}
            }
        }
        Some(par.unwrap_or(0))
    }

    /// Splits into weight-homogeneous components.
    pub fn homogeneous_parts(&self) -> BTreeMap<u32, GPoly> {
        let mut out: BTreeMap<u32, GPoly> = BTreeMap::new();
        for (m, c) in &self.terms {
            out.entry(m.weight(&self.chart)).or_insert_with(|| GPoly::zero(&self.chart)).add_term(m.clone(), c.clone());
        }
        out
    }

    /// Substitutes `images[i]` for coordinate `i`. Images live on the target
    /// chart; odd coordinates must map to odd polynomials for the result to
    /// be meaningful.
    pub fn substitute(&self, images: &[GPoly]) -> Result<GPoly> {
        if images.len() != self.chart.len() {
            return domain("substitution needs one image per coordinate");
        }
        let target = match images.first() {
            Some(p) => p.chart.clone(),
            None => self.chart.clone(),
        };
        if images.iter().any(|p| !same_chart(&p.chart, &target)) {
            return domain("substitution images on different charts");
        }
        let mut out = GPoly::zero(&target);
        for (m, c) in &self.terms {
            let mut term = GPoly::constant(&target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    term = term.multiply(&images[i])?;
                }
            }
            out = out.try_add(&term)?;
        }
        Ok(out)
    }

    /// Checks `p(λ·x) = λ^{deg p} p(x)` by explicit substitution
    /// `v ↦ λ^{weight v} v`.
    pub fn scaling_check(&self, lambda: &Rational) -> Result<bool> {
        let deg = match self.weight_of() {
            Weight::Inhomogeneous => return precondition("scaling check needs a homogeneous polynomial"),
            Weight::Zero => 0,
            Weight::Homogeneous(w) => w,
        };
        let images: Vec<GPoly> = (0..self.chart.len())
            .map(|i| {
                let k = num_traits::pow(lambda.clone(), self.chart.weight(i) as usize);
                GPoly::var(&self.chart, i).scale(&k)
            })
            .collect();
        let lhs = self.substitute(&images)?;
        let rhs = self.scale(&num_traits::pow(lambda.clone(), deg as usize));
        Ok(lhs == rhs)
    }

    /// Sets the listed coordinates to zero.
    pub fn restrict_zero(&self, vars: &[usize]) -> GPoly {
        let mut out = GPoly::zero(&self.chart);
        for (m, c) in &self.terms {
            if vars.iter().all(|&v| m.0[v] == 0) {
                out.add_term(m.clone(), c.clone());
            }
        }
        out
    }

    /// Re-expresses this polynomial on another chart containing all of its
    /// variables (matched by name, same weight). Odd reordering is accounted for.
    pub fn transport(&self, target: &Arc<Chart>) -> Result<GPoly> {
        let mut images = Vec::with_capacity(self.chart.len());
        for v in self.chart.vars() {
            match target.index_of(&v.name) {
                Some(j) if target.weight(j) == v.weight => images.push(GPoly::var(target, j)),
                _ => return domain(format!("coordinate `{}` missing from target chart", v.name)),
            }
        }
        if images.is_empty() {
            return Ok(GPoly::constant(target, self.constant_term()));
        }
        self.substitute(&images)
    }

    /// Variables that actually occur.
    pub fn support(&self) -> Vec<usize> {
        (0..self.chart.len()).filter(|&i| self.terms.keys().any(|m| m.0[i] > 0)).collect()
    }

    /// Largest total exponent of weight-0 coordinates over all terms.
    pub fn base_degree(&self) -> u32 {
        self.terms
            .keys()
            .map(|m| (0..m.0.len()).filter(|&i| self.chart.weight(i) == 0).map(|i| m.0[i]).sum())
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Display for GPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let mut factors = Vec::new();
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.chart.name(i).to_string()),
                    _ => factors.push(format!("{}^{}", self.chart.name(i), e)),
                }
            }
            let neg = c.is_negative();
            let a = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            let coeff = if a.is_integer() { a.numer().to_string() } else { format!("{}/{}", a.numer(), a.denom()) };
            if factors.is_empty() {
                write!(f, "{coeff}")?;
            } else {
                if !a.is_one() {
                    write!(f, "{coeff}*")?;
                }
                write!(f, "{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

// Operator sugar. These panic when the operands live on different charts;
// use the `try_*`/`multiply` methods where that can happen.
impl Add for &GPoly {
    type Output = GPoly;
    fn add(self, rhs: &GPoly) -> GPoly {
        self.try_add(rhs).expect("GPoly addition across charts")
    }
}

impl Sub for &GPoly {
    type Output = GPoly;
    fn sub(self, rhs: &GPoly) -> GPoly {
        self.try_add(&-rhs).expect("GPoly subtraction across charts")
    }
}

impl Mul for &GPoly {
    type Output = GPoly;
    fn mul(self, rhs: &GPoly) -> GPoly {
        self.multiply(rhs).expect("GPoly product across charts")
    }
}

impl Neg for &GPoly {
    type Output = GPoly;
    fn neg(self) -> GPoly {
        GPoly { chart: self.chart.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

impl Add for GPoly {
    type Output = GPoly;
    fn add(self, rhs: GPoly) -> GPoly {
        &self + &rhs
    }
}

impl Sub for GPoly {
    type Output = GPoly;
    fn sub(self, rhs: GPoly) -> GPoly {
        &self - &rhs
    }
}

impl Mul for GPoly {
    type Output = GPoly;
    fn mul(self, rhs: GPoly) -> GPoly {
        &self * &rhs
    }
}

impl Neg for GPoly {
    type Output = GPoly;
    fn neg(self) -> GPoly {
        -&self
    }
}
