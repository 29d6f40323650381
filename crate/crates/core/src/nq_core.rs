//! Graded vector fields on a chart, their graded commutator, and the
//! homological condition `Q² = 0`.

use std::sync::Arc;

use crate::error::{domain, precondition, Result};
use crate::graded_algebra::{rat, same_chart, Chart, GPoly};

/// A homogeneous derivation of the function algebra, stored by its values on
/// the coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    chart: Arc<Chart>,
    degree: i32,
    components: Vec<GPoly>,
}

impl Derivation {
    /// Builds a derivation from its coordinate images. Each image must be
    /// homogeneous of weight `weight(v) + degree` (zero if that is negative).
    pub fn new(chart: &Arc<Chart>, degree: i32, components: Vec<GPoly>) -> Result<Self> {
        if components.len() != chart.len() {
            return domain("derivation needs one component per coordinate");
        }
        for (i, c) in components.iter().enumerate() {
            if !same_chart(c.chart(), chart) {
                return domain("derivation component on a different chart");
            }
            let target = chart.weight(i) as i64 + degree as i64;
            if !c.is_zero() && (target < 0 || !c.is_homogeneous_of(target)) {
                return domain(format!("component for `{}` must have weight {target}, got `{c}`", chart.name(i)));
            }
        }
        Ok(Derivation { chart: chart.clone(), degree, components })
    }

    pub fn zero(chart: &Arc<Chart>, degree: i32) -> Self {
        Derivation { chart: chart.clone(), degree, components: vec![GPoly::zero(chart); chart.len()] }
    }

    /// Builds a derivation from `(coordinate name, image)` pairs; unnamed
    /// coordinates map to zero.
    pub fn from_named<'a>(
        chart: &Arc<Chart>,
        degree: i32,
        images: impl IntoIterator<Item = (&'a str, GPoly)>,
    ) -> Result<Self> {
        let mut comps = vec![GPoly::zero(chart); chart.len()];
        for (name, p) in images {
            let Some(i) = chart.index_of(name) else {
                return domain(format!("unknown coordinate `{name}`"));
            };
            comps[i] = p;
        }
        Self::new(chart, degree, comps)
    }

    pub fn chart(&self) -> &Arc<Chart> {
        &self.chart
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn parity(&self) -> u32 {
        self.degree.rem_euclid(2) as u32
    }

    pub fn components(&self) -> &[GPoly] {
        &self.components
    }

    pub fn component(&self, i: usize) -> &GPoly {
        &self.components[i]
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(GPoly::is_zero)
    }

    /// `D(p) = Σ_v D(v) · ∂_v p`.
    pub fn apply(&self, p: &GPoly) -> Result<GPoly> {
        if !same_chart(p.chart(), &self.chart) {
            return domain("derivation applied to a polynomial on another chart");
        }
        let mut out = GPoly::zero(&self.chart);
        for (i, c) in self.components.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let dp = p.left_derivative(i);
            if !dp.is_zero() {
                out = &out + &(c * &dp);
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Derivation) -> Result<Derivation> {
        if !same_chart(&self.chart, &other.chart) || self.degree != other.degree {
            return domain("adding derivations of different chart or degree");
        }
        let components = self.components.iter().zip(&other.components).map(|(a, b)| a + b).collect();
        Ok(Derivation { chart: self.chart.clone(), degree: self.degree, components })
    }

    pub fn scale(&self, c: &crate::graded_algebra::Rational) -> Derivation {
        Derivation {
            chart: self.chart.clone(),
            degree: self.degree,
            components: self.components.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// Graded commutator `D1∘D2 − (−1)^{deg D1 · deg D2} D2∘D1`.
    pub fn commutator(&self, other: &Derivation) -> Result<Derivation> {
        if !same_chart(&self.chart, &other.chart) {
            return domain("commutator of derivations on different charts");
        }
        let sign_neg = (self.degree * other.degree).rem_euclid(2) == 0;
        let mut comps = Vec::with_capacity(self.chart.len());
        for i in 0..self.chart.len() {
            let a = self.apply(&other.components[i])?;
            let b = other.apply(&self.components[i])?;
            comps.push(if sign_neg { &a - &b } else { &a + &b });
        }
        Derivation::new(&self.chart, self.degree + other.degree, comps)
    }

    /// `½[Q,Q] = Q∘Q` for a degree-one field, returned whole so a failure can
    /// be inspected.
    pub fn q_square(&self) -> Result<Derivation> {
        if self.degree != 1 {
            return precondition(format!("q_square needs a degree-1 field, got degree {}", self.degree));
        }
        let comps = self.components.iter().map(|c| self.apply(c)).collect::<Result<Vec<_>>>()?;
        Derivation::new(&self.chart, 2, comps)
    }

    pub fn is_nq(&self) -> Result<bool> {
        Ok(self.q_square()?.is_zero())
    }

    /// Transports the derivation to a larger chart containing every
    /// coordinate of this one; extra coordinates are sent to zero.
    pub fn transport(&self, target: &Arc<Chart>) -> Result<Derivation> {
        let mut comps = vec![GPoly::zero(target); target.len()];
        for (i, v) in self.chart.vars().iter().enumerate() {
            let Some(j) = target.index_of(&v.name) else {
                return domain(format!("coordinate `{}` missing from target chart", v.name));
            };
            comps[j] = self.components[i].transport(target)?;
        }
        Derivation::new(target, self.degree, comps)
    }
}

impl std::fmt::Display for Derivation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| format!("{} -> {}", self.chart.name(i), c))
            .collect();
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{{ {} }}", parts.join("; "))
        }
    }
}

/// Highest coordinate weight; 0 means an ordinary manifold.
pub fn manifold_degree(chart: &Chart) -> u32 {
    chart.max_weight()
}

/// The degree-0 field generating the weight scaling, `E(v) = weight(v)·v`.
pub fn euler_field(chart: &Arc<Chart>) -> Derivation {
    let comps = (0..chart.len()).map(|i| GPoly::var(chart, i).scale(&rat(chart.weight(i) as i64))).collect();
    Derivation { chart: chart.clone(), degree: 0, components: comps }
}

/// The chart of `T[1]ℝ^m`: coordinates `x1..xm` (weight 0) then `xi1..xim`.
pub fn tangent_shift_chart(m: usize) -> Arc<Chart> {
    let mut vars: Vec<(String, u32)> = (1..=m).map(|a| (format!("x{a}"), 0)).collect();
    vars.extend((1..=m).map(|a| (format!("xi{a}"), 1)));
    Chart::new(vars).expect("fixed chart is valid")
}

/// De Rham differential `Σ ξ^a ∂_{x^a}` on a chart that contains the
/// coordinates `x1..xm`, `xi1..xim` (other coordinates are left alone).
pub fn de_rham(chart: &Arc<Chart>, m: usize) -> Result<Derivation> {
    let images: Vec<(String, GPoly)> =
        (1..=m).map(|a| Ok((format!("x{a}"), GPoly::var_named(chart, &format!("xi{a}"))?))).collect::<Result<_>>()?;
    Derivation::from_named(chart, 1, images.iter().map(|(n, p)| (n.as_str(), p.clone())))
}
