//! Cubical lattice models: products of subdivided intervals and circles,
//! with cochains valued in a paired fiber.
//!
//! On a one-dimensional factor the cup product is `f ∪ α = f(start)·α` and
//! `α ∪ g = α·g(end)`; products of factors use the Koszul rule. Integration
//! sums top cells, and the boundary functional of an interval is
//! `f ↦ f(m) − f(0)`. These choices make Leibniz, and therefore Stokes,
//! exact.

use num_traits::{One, Zero};

use super::{GradedComplex, RelativeComplex, SymplecticComplex};
use crate::error::{domain, Result};
use crate::extensions::QuadraticLieAlgebra;
use crate::graded_algebra::{rat, Rational};
use crate::linalg::QMatrix;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CellFactor {
    /// `[0,1]` cut into `m` segments.
    Interval(usize),
    /// An `m`-gon.
    Circle(usize),
    /// `[0,1]` cut into `m` segments, cochains vanishing at both ends.
    RelativeInterval(usize),
}

#[derive(Debug, Clone)]
struct OneDim {
    kind: CellFactor,
    /// vertex positions
    verts: Vec<usize>,
    /// (start, end) positions
    edges: Vec<(usize, usize)>,
}

impl OneDim {
    fn new(kind: CellFactor) -> Result<Self> {
        let (verts, edges) = match kind {
            CellFactor::Interval(m) => {
                if m == 0 {
                    return domain("an interval needs at least one segment");
                }
                ((0..=m).collect(), (0..m).map(|k| (k, k + 1)).collect())
            }
            CellFactor::Circle(m) => {
                if m < 3 {
                    return domain(format!("a circle needs at least 3 segments, got {m}"));
                }
                ((0..m).collect(), (0..m).map(|k| (k, (k + 1) % m)).collect())
            }
            CellFactor::RelativeInterval(m) => {
                if m == 0 {
                    return domain("an interval needs at least one segment");
                }
                ((1..m).collect(), (0..m).map(|k| (k, k + 1)).collect())
            }
        };
        Ok(OneDim { kind, verts, edges })
    }

    fn len(&self) -> usize {
        self.verts.len() + self.edges.len()
    }

    fn degree(&self, c: usize) -> i32 {
        i32::from(c >= self.verts.len())
    }

    fn edge(&self, c: usize) -> Option<(usize, usize)> {
        c.checked_sub(self.verts.len()).map(|e| self.edges[e])
    }

    fn vertex(&self, c: usize) -> Option<usize> {
        (c < self.verts.len()).then(|| self.verts[c])
    }

    /// Coboundary of a cell: `(cell, coefficient)` pairs.
    fn d(&self, c: usize) -> Vec<(usize, i64)> {
        let Some(v) = self.vertex(c) else {
            return Vec::new();
        };
        let mut out = Vec::new();
        for (k, &(s, e)) in self.edges.iter().enumerate() {
            let coeff = i64::from(e == v) - i64::from(s == v);
            if coeff != 0 {
                out.push((self.verts.len() + k, coeff));
            }
        }
        out
    }

    fn cup(&self, a: usize, b: usize) -> Option<usize> {
        match (self.vertex(a), self.vertex(b)) {
            (Some(x), Some(y)) => (x == y).then_some(a),
            (Some(x), None) => (self.edge(b).unwrap().0 == x).then_some(b),
            (None, Some(y)) => (self.edge(a).unwrap().1 == y).then_some(a),
            (None, None) => None,
        }
    }

    fn integral(&self, c: usize) -> i64 {
        i64::from(self.edge(c).is_some())
    }

    fn boundary_integral(&self, c: usize) -> i64 {
        match (self.kind, self.vertex(c)) {
            (CellFactor::Interval(m), Some(v)) if v == m => 1,
            (CellFactor::Interval(_), Some(0)) => -1,
            _ => 0,
        }
    }

    fn on_boundary(&self, c: usize) -> bool {
        matches!((self.kind, self.vertex(c)), (CellFactor::Interval(m), Some(v)) if v == 0 || v == m)
    }
}

/// Product of one-dimensional factors; cells are multi-indices.
#[derive(Debug, Clone)]
struct Cubical {
    factors: Vec<OneDim>,
}

impl Cubical {
    fn len(&self) -> usize {
        self.factors.iter().map(OneDim::len).product()
    }

    fn split(&self, mut idx: usize) -> Vec<usize> {
        let mut out = vec![0; self.factors.len()];
        for (f, slot) in self.factors.iter().zip(out.iter_mut()).rev() {
            *slot = idx % f.len();
            idx /= f.len();
        }
        out
    }

    fn join(&self, cells: &[usize]) -> usize {
        self.factors.iter().zip(cells).fold(0, |acc, (f, &c)| acc * f.len() + c)
    }

    fn degree(&self, idx: usize) -> i32 {
        self.split(idx).iter().zip(&self.factors).map(|(&c, f)| f.degree(c)).sum()
    }

    fn d(&self, idx: usize) -> Vec<(usize, i64)> {
        let cells = self.split(idx);
        let mut out = Vec::new();
        let mut before = 0;
        for (k, f) in self.factors.iter().enumerate() {
            let s = if before % 2 == 1 { -1 } else { 1 };
            for (c, coeff) in f.d(cells[k]) {
                let mut next = cells.clone();
                next[k] = c;
                out.push((self.join(&next), s * coeff));
            }
            before += f.degree(cells[k]);
        }
        out
    }

    fn cup(&self, a: usize, b: usize) -> Option<(usize, i64)> {
        let (ca, cb) = (self.split(a), self.split(b));
        let mut cells = Vec::with_capacity(ca.len());
        for (k, f) in self.factors.iter().enumerate() {
            cells.push(f.cup(ca[k], cb[k])?);
        }
        let mut parity = 0;
        for i in 0..ca.len() {
            for j in i + 1..ca.len() {
                parity += self.factors[j].degree(ca[j]) * self.factors[i].degree(cb[i]);
            }
        }
        Some((self.join(&cells), if parity % 2 == 1 { -1 } else { 1 }))
    }

    fn integral(&self, idx: usize) -> i64 {
        self.split(idx).iter().zip(&self.factors).map(|(&c, f)| f.integral(c)).product()
    }

    fn boundary_integral(&self, idx: usize) -> i64 {
        let cells = self.split(idx);
        let mut total = 0;
        let mut before = 0;
        for (k, f) in self.factors.iter().enumerate() {
            let b = f.boundary_integral(cells[k]);
            if b != 0 {
                let rest: i64 =
                    (0..cells.len()).filter(|&g| g != k).map(|g| self.factors[g].integral(cells[g])).product();
                let s = if before % 2 == 1 { -1 } else { 1 };
                total += s * b * rest;
            }
            before += f.degree(cells[k]);
        }
        total
    }

    fn on_boundary(&self, idx: usize) -> bool {
        self.split(idx).iter().zip(&self.factors).any(|(&c, f)| f.on_boundary(c))
    }
}

/// Graded coefficient space with a pairing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fiber {
    pub degrees: Vec<i32>,
    pub metric: QMatrix,
    /// Degree of the symplectic structure the fiber models (2 for `g[1]`).
    pub symplectic_degree: i32,
}

impl Fiber {
    /// `g` in degree 0 with its invariant form.
    pub fn lie_algebra(g: &QuadraticLieAlgebra) -> Self {
        Fiber { degrees: vec![0; g.dim()], metric: g.metric().clone(), symplectic_degree: 2 }
    }

    /// `e` in degree 0 and `f` in degree `n` with `⟨e,f⟩ = 1 = −⟨f,e⟩`.
    pub fn symplectic_pair(n: i32) -> Self {
        Fiber { degrees: vec![0, n], metric: QMatrix::from_i64(&[&[0, 1], &[-1, 0]]), symplectic_degree: n }
    }

    pub fn scalars() -> Self {
        Fiber { degrees: vec![0], metric: QMatrix::identity(1), symplectic_degree: 0 }
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    fn pairing_degree(&self) -> i32 {
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                if !self.metric.get(i, j).is_zero() {
                    return self.degrees[i] + self.degrees[j];
                }
            }
        }
        0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Surface {
    Torus(usize, usize),
    Circle(usize),
    Interval(usize),
    Cylinder(usize, usize),
    Disk(usize, usize),
}

impl Surface {
    pub fn factors(&self) -> Vec<CellFactor> {
        use CellFactor::*;
        match *self {
            Surface::Torus(a, b) => vec![Circle(a), Circle(b)],
            Surface::Circle(a) => vec![Circle(a)],
            Surface::Interval(a) => vec![Interval(a)],
            Surface::Cylinder(a, b) => vec![Interval(a), Circle(b)],
            Surface::Disk(a, b) => vec![Interval(a), Interval(b)],
        }
    }
}

/// A cochain model with its Stokes data and degree bookkeeping.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeModel {
    pub relative: RelativeComplex,
    /// Dimension of the underlying cell complex.
    pub dim: usize,
    pub symplectic_degree: i32,
}

impl LatticeModel {
    /// Degree of the mapping-space form, `n − dim M`.
    pub fn omega_degree(&self) -> i32 {
        self.symplectic_degree - self.dim as i32
    }
}

/// Cochains of the product of `factors` valued in `fiber`, graded by form
/// degree plus fiber degree, with the restriction to the boundary cells.
pub fn product_model(factors: &[CellFactor], fiber: &Fiber) -> Result<LatticeModel> {
    if factors.is_empty() {
        return domain("need at least one factor");
    }
    let cube = Cubical { factors: factors.iter().map(|&f| OneDim::new(f)).collect::<Result<_>>()? };
    let (nc, nf) = (cube.len(), fiber.dim());
    let n = nc * nf;
    let cell_deg: Vec<i32> = (0..nc).map(|c| cube.degree(c)).collect();
    let degrees: Vec<i32> = (0..n).map(|i| cell_deg[i / nf] + fiber.degrees[i % nf]).collect();

    let mut d = QMatrix::zeros(n, n);
    for c in 0..nc {
        for (t, coeff) in cube.d(c) {
            for f in 0..nf {
                d.set(t * nf + f, c * nf + f, rat(coeff));
            }
        }
    }

    let pairing = |functional: &dyn Fn(usize) -> i64, cells: &[usize]| {
        let m = cells.len() * nf;
        let mut omega = QMatrix::zeros(m, m);
        for (a, &ca) in cells.iter().enumerate() {
            for (b, &cb) in cells.iter().enumerate() {
                let Some((prod, s)) = cube.cup(ca, cb) else { continue };
                let val = functional(prod) * s;
                if val == 0 {
                    continue;
                }
                for p in 0..nf {
                    for q in 0..nf {
                        let g = fiber.metric.get(p, q);
                        if g.is_zero() {
                            continue;
                        }
                        let koszul = (fiber.degrees[p] * cell_deg[cb]).rem_euclid(2) == 1;
                        let v = g * rat(if koszul { -val } else { val });
                        omega.set(a * nf + p, b * nf + q, v);
                    }
                }
            }
        }
        omega
    };

    let all: Vec<usize> = (0..nc).collect();
    let omega = pairing(&|c| cube.integral(c), &all);
    let pdeg = factors.len() as i32 + fiber.pairing_degree();
    let total = SymplecticComplex::new(GradedComplex::new(degrees.clone(), d.clone())?, omega, pdeg)?;

    let bcells: Vec<usize> = (0..nc).filter(|&c| cube.on_boundary(c)).collect();
    let m = bcells.len() * nf;
    let mut r = QMatrix::zeros(m, n);
    for (a, &c) in bcells.iter().enumerate() {
        for f in 0..nf {
            r.set(a * nf + f, c * nf + f, Rational::one());
        }
    }
    let bdeg: Vec<i32> = (0..m).map(|i| degrees[bcells[i / nf] * nf + i % nf]).collect();
    let bd = r.mul(&d).mul(&r.transpose());
    let bomega = pairing(&|c| cube.boundary_integral(c), &bcells);
    let boundary = SymplecticComplex::new(GradedComplex::new(bdeg, bd)?, bomega, pdeg - 1)?;
    let relative = RelativeComplex::new(total, boundary, r)?;
    Ok(LatticeModel { relative, dim: factors.len(), symplectic_degree: fiber.symplectic_degree })
}

/// The standard lattice models; circle directions need at least 3 segments.
pub fn lattice_model(surface: Surface, fiber: &Fiber) -> Result<LatticeModel> {
    product_model(&surface.factors(), fiber)
}

#[cfg(test)]
mod tests {
    use super::super::*;
    use super::*;

    #[test]
    fn circle_and_torus_cohomology() {
        let c = lattice_model(Surface::Circle(5), &Fiber::scalars()).unwrap();
        assert_eq!(c.relative.total().complex().cohomology().betti(), BTreeMap::from([(0, 1), (1, 1)]));
        let g = QuadraticLieAlgebra::so3();
        let t = lattice_model(Surface::Torus(3, 3), &Fiber::lie_algebra(&g)).unwrap();
        let p = cohomology_pairing(t.relative.total()).unwrap();
        assert_eq!(p.cohomology.betti(), BTreeMap::from([(0, 3), (1, 6), (2, 3)]));
        assert!(p.nondegenerate && p.graded_symmetric);
        assert!(p.chain_level_nondegenerate);
        assert_eq!(t.relative.total().complex().euler_characteristic(), 0);
        assert_eq!(t.omega_degree(), 0);
    }

    #[test]
    fn boundary_models_satisfy_stokes_and_lagrangian() {
        let g = QuadraticLieAlgebra::so3();
        let cyl = lattice_model(Surface::Cylinder(3, 3), &Fiber::lie_algebra(&g)).unwrap();
        let rep = boundary_lagrangian(&cyl.relative).unwrap();
        assert_eq!((rep.image_dim, rep.boundary_cohomology_dim), (6, 12));
        assert!(rep.lagrangian);
        let disk = lattice_model(Surface::Disk(3, 3), &Fiber::lie_algebra(&QuadraticLieAlgebra::abelian(2))).unwrap();
        assert!(boundary_lagrangian(&disk.relative).unwrap().lagrangian);
    }

    #[test]
    fn interval_model_lemma3() {
        let iv = lattice_model(Surface::Interval(4), &Fiber::symplectic_pair(1)).unwrap();
        let rep = lemma3_orthogonality(&iv.relative).unwrap();
        assert_eq!(rep.mode, Lemma3Mode::Degraded);
        assert!(rep.inclusion && rep.duality_nondegenerate);
        // the chain-level annihilator is strictly larger than Z here
        assert!(!rep.equality);
        assert_eq!(rep.annihilator_dim, rep.cocycles_dim + 2);
    }

    #[test]
    fn circle_needs_three_segments() {
        assert!(lattice_model(Surface::Circle(2), &Fiber::scalars()).is_err());
    }
}
