//! Cochain complexes with degree-n pairings over exact rationals: cohomology,
//! induced pairings, relative complexes with a Stokes identity, and the
//! orthogonality, Lagrangian and suspension statements about them.
//!
//! A complex is stored on its total space: a degree per basis vector and one
//! square matrix `D` acting on column vectors, `D e_j = Σ_i D_ij e_i`.
//! Pairings are matrices `Ω` with `⟨u, v⟩ = uᵀ Ω v`.
//!
//! Sign conventions:
//! - closed compatibility: `⟨Du, v⟩ + (−1)^{|u|} ⟨u, Dv⟩ = 0`;
//! - Stokes: `⟨Ru, Rv⟩_∂ = ⟨Du, v⟩ + (−1)^{|u|} ⟨u, Dv⟩`;
//! - graded symmetry is expected on cohomology only:
//!   `⟨u, v⟩ = (−1)^{|u||v|} ⟨v, u⟩`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::error::{domain, precondition, structure, Result};
use crate::graded_algebra::{rat, Rational};
use crate::linalg::{complement_in_span, span_dim, QMatrix};

mod cells;
mod nmap;
mod text;

pub use cells::{lattice_model, CellFactor, Fiber, LatticeModel, Surface};
pub use nmap::{nmap_space, NMapComponent, NMapSpace};
pub use text::{parse_complex, write_complex, ComplexFile};

type Vector = Vec<Rational>;

fn sign(odd: bool) -> Rational {
    if odd {
        rat(-1)
    } else {
        rat(1)
    }
}

fn is_zero_vec(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedComplex {
    degrees: Vec<i32>,
    d: QMatrix,
}

impl GradedComplex {
    /// Checks that `D` raises degree by one and squares to zero.
    pub fn new(degrees: Vec<i32>, d: QMatrix) -> Result<Self> {
        let n = degrees.len();
        if d.rows() != n || d.cols() != n {
            return domain(format!("differential must be {n}x{n}"));
        }
        for i in 0..n {
            for j in 0..n {
                if !d.get(i, j).is_zero() && degrees[i] != degrees[j] + 1 {
                    return domain(format!("D[{i}][{j}] maps degree {} to {}", degrees[j], degrees[i]));
                }
            }
        }
        if !d.mul(&d).is_zero() {
            return structure("differential does not square to zero");
        }
        Ok(GradedComplex { degrees, d })
    }

    /// The zero complex on the given degrees.
    pub fn trivial(degrees: Vec<i32>) -> Self {
        let n = degrees.len();
        GradedComplex { degrees, d: QMatrix::zeros(n, n) }
    }

    pub fn len(&self) -> usize {
        self.degrees.len()
    }

    pub fn is_empty(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn degrees(&self) -> &[i32] {
        &self.degrees
    }

    pub fn differential(&self) -> &QMatrix {
        &self.d
    }

    pub fn indices(&self, k: i32) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.degrees[i] == k).collect()
    }

    pub fn dims(&self) -> BTreeMap<i32, usize> {
        let mut m = BTreeMap::new();
        for &k in &self.degrees {
            *m.entry(k).or_insert(0) += 1;
        }
        m
    }

    /// `d_k`: degree-k component to degree-(k+1) component.
    pub fn differential_block(&self, k: i32) -> QMatrix {
        self.d.submatrix(&self.indices(k + 1), &self.indices(k))
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees.iter().map(|k| if k.rem_euclid(2) == 0 { 1 } else { -1 }).sum()
    }

    pub fn apply(&self, v: &[Rational]) -> Vector {
        self.d.mul_vec(v)
    }

    /// `(C ⊗ C')` with `D(a ⊗ b) = Da ⊗ b + (−1)^{|a|} a ⊗ D'b`; basis
    /// `a_i ⊗ b_j` at index `i * len(C') + j`.
    pub fn tensor(&self, other: &GradedComplex) -> GradedComplex {
        let (n, m) = (self.len(), other.len());
        let mut degrees = Vec::with_capacity(n * m);
        for i in 0..n {
            for j in 0..m {
                degrees.push(self.degrees[i] + other.degrees[j]);
            }
        }
        let mut d = QMatrix::zeros(n * m, n * m);
        for i in 0..n {
            for j in 0..m {
                let col = i * m + j;
                for k in 0..n {
                    let x = self.d.get(k, i);
                    if !x.is_zero() {
                        d.add_at(k * m + j, col, x);
                    }
                }
                let s = sign(self.degrees[i].rem_euclid(2) == 1);
                for l in 0..m {
                    let x = other.d.get(l, j);
                    if !x.is_zero() {
                        d.add_at(i * m + l, col, &(x * &s));
                    }
                }
            }
        }
        GradedComplex { degrees, d }
    }

    /// Restriction to a subcomplex spanned by the columns of `basis`
    /// (which must be `D`-stable); returns the complex in those coordinates.
    pub fn restrict_to(&self, basis: &[Vector]) -> Result<GradedComplex> {
        let k = basis.len();
        let mut degrees = Vec::with_capacity(k);
        for b in basis {
            let ds: Vec<i32> = (0..self.len()).filter(|&i| !b[i].is_zero()).map(|i| self.degrees[i]).collect();
            match ds.first() {
                Some(&d0) if ds.iter().all(|&d| d == d0) => degrees.push(d0),
                _ => return domain("subcomplex basis vectors must be nonzero and homogeneous"),
            }
        }
        let b = QMatrix::from_columns(self.len(), basis);
        let mut d = QMatrix::zeros(k, k);
        for (j, v) in basis.iter().enumerate() {
            let image = self.apply(v);
            let Some(x) = b.solve(&image) else {
                return structure("basis does not span a subcomplex");
            };
            for (i, c) in x.into_iter().enumerate() {
                d.set(i, j, c);
            }
        }
        GradedComplex::new(degrees, d)
    }

    pub fn cohomology(&self) -> Cohomology {
        let n = self.len();
        let mut dims = BTreeMap::new();
        let mut reps = BTreeMap::new();
        for &k in self.dims().keys() {
            let idx = self.indices(k);
            let embed = |v: Vec<Rational>, idx: &[usize]| {
                let mut out = vec![Rational::zero(); n];
                for (x, &i) in v.into_iter().zip(idx) {
                    out[i] = x;
                }
                out
            };
            let next = self.indices(k + 1);
            let cycles: Vec<Vector> = if next.is_empty() {
                idx.iter().map(|&i| embed(vec![Rational::one()], &[i])).collect()
            } else {
                self.differential_block(k).nullspace().into_iter().map(|v| embed(v, &idx)).collect()
            };
            let prev = self.indices(k - 1);
            let boundaries: Vec<Vector> = if prev.is_empty() {
                Vec::new()
            } else {
                self.differential_block(k - 1).column_basis().into_iter().map(|v| embed(v, &idx)).collect()
            };
            let classes = complement_in_span(n, &boundaries, &cycles);
            dims.insert(k, classes.len());
            reps.insert(k, classes);
        }
        Cohomology { dims, reps }
    }

    /// All cocycles (kernel of `D`).
    pub fn cocycles(&self) -> Vec<Vector> {
        if self.is_empty() {
            return Vec::new();
        }
        self.d.nullspace()
    }

    /// A basis of the image of `D`.
    pub fn coboundaries(&self) -> Vec<Vector> {
        if self.is_empty() {
            return Vec::new();
        }
        self.d.column_basis()
    }
}

/// Cohomology dimensions and representative cocycles, degree by degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cohomology {
    pub dims: BTreeMap<i32, usize>,
    pub reps: BTreeMap<i32, Vec<Vector>>,
}

impl Cohomology {
    pub fn dim(&self, k: i32) -> usize {
        self.dims.get(&k).copied().unwrap_or(0)
    }

    pub fn total_dim(&self) -> usize {
        self.dims.values().sum()
    }

    /// Nonzero dimensions only.
    pub fn betti(&self) -> BTreeMap<i32, usize> {
        self.dims.iter().filter(|(_, &v)| v > 0).map(|(&k, &v)| (k, v)).collect()
    }

    /// `(degree, representative)` pairs in degree order.
    pub fn all_reps(&self) -> Vec<(i32, Vector)> {
        self.reps.iter().flat_map(|(&k, vs)| vs.iter().map(move |v| (k, v.clone()))).collect()
    }
}

pub fn cohomology(c: &GradedComplex) -> Cohomology {
    c.cohomology()
}

/// A complex with a pairing of degree `degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticComplex {
    complex: GradedComplex,
    omega: QMatrix,
    degree: i32,
}

impl SymplecticComplex {
    pub fn new(complex: GradedComplex, omega: QMatrix, degree: i32) -> Result<Self> {
        let n = complex.len();
        if omega.rows() != n || omega.cols() != n {
            return domain(format!("pairing must be {n}x{n}"));
        }
        let deg = complex.degrees();
        for i in 0..n {
            for j in 0..n {
                if !omega.get(i, j).is_zero() && deg[i] + deg[j] != degree {
                    return domain(format!("pairing entry ({i}, {j}) has degree {} != {degree}", deg[i] + deg[j]));
                }
            }
        }
        Ok(SymplecticComplex { complex, omega, degree })
    }

    pub fn empty(degree: i32) -> Self {
        SymplecticComplex { complex: GradedComplex::trivial(Vec::new()), omega: QMatrix::zeros(0, 0), degree }
    }

    pub fn complex(&self) -> &GradedComplex {
        &self.complex
    }

    pub fn omega(&self) -> &QMatrix {
        &self.omega
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.complex.len()
    }

    pub fn is_empty(&self) -> bool {
        self.complex.is_empty()
    }

    pub fn pair(&self, u: &[Rational], v: &[Rational]) -> Rational {
        self.omega.bilinear(u, v)
    }

    /// `DᵀΩ + SΩD` with `S = diag((−1)^{deg})`; zero in the closed case.
    pub fn stokes_form(&self) -> QMatrix {
        let d = self.complex.differential();
        let lhs = d.transpose().mul(&self.omega);
        let mut rhs = self.omega.mul(d);
        for (i, &k) in self.complex.degrees().iter().enumerate() {
            if k.rem_euclid(2) == 1 {
                for j in 0..self.len() {
                    let v = -rhs.get(i, j).clone();
                    rhs.set(i, j, v);
                }
            }
        }
        lhs.add(&rhs)
    }

    /// First basis pair `(i, j)` with `⟨De_i, e_j⟩ + (−1)^{|e_i|}⟨e_i, De_j⟩ ≠ 0`.
    pub fn compatibility_defect(&self) -> Option<(usize, usize)> {
        let s = self.stokes_form();
        for i in 0..self.len() {
            for j in 0..self.len() {
                if !s.get(i, j).is_zero() {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.omega.rank() == self.len()
    }

    /// `C ⊕ C*[n]` with the canonical pairing `⟨c_i, φ_j⟩ = δ_ij`, its graded
    /// symmetric partner, and the dual differential fixed by compatibility.
    pub fn double(c: &GradedComplex, n: i32) -> SymplecticComplex {
        let k = c.len();
        let mut degrees = c.degrees().to_vec();
        degrees.extend(c.degrees().iter().map(|d| n - d));
        let mut d = QMatrix::zeros(2 * k, 2 * k);
        let mut omega = QMatrix::zeros(2 * k, 2 * k);
        let dc = c.differential();
        for i in 0..k {
            for j in 0..k {
                let x = dc.get(i, j);
                if !x.is_zero() {
                    d.set(i, j, x.clone());
                    // D'(φ_i) = −Σ_j (−1)^{deg j} D_ij φ_j
                    let s = sign(c.degrees()[j].rem_euclid(2) == 0);
                    d.set(k + j, k + i, x * s);
                }
            }
            let di = c.degrees()[i];
            omega.set(i, k + i, Rational::one());
            omega.set(k + i, i, sign((di * (n - di)).rem_euclid(2) == 1));
        }
        let complex = GradedComplex { degrees, d };
        SymplecticComplex { complex, omega, degree: n }
    }
}

/// Induced pairing on cohomology.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyPairing {
    pub cohomology: Cohomology,
    /// Entry `(a, b)` is `⟨h_a, h_b⟩` for the representatives in
    /// [`Cohomology::all_reps`] order.
    pub matrix: QMatrix,
    pub degrees: Vec<i32>,
    pub nondegenerate: bool,
    pub graded_symmetric: bool,
    pub chain_level_nondegenerate: bool,
}

impl CohomologyPairing {
    /// The block pairing `H^k × H^{n−k}`.
    pub fn block(&self, k: i32, l: i32) -> QMatrix {
        let rows: Vec<usize> = (0..self.degrees.len()).filter(|&a| self.degrees[a] == k).collect();
        let cols: Vec<usize> = (0..self.degrees.len()).filter(|&a| self.degrees[a] == l).collect();
        self.matrix.submatrix(&rows, &cols)
    }
}

/// Pairing of cocycles with coboundaries; must vanish in the closed case.
fn pairs_cocycles_with_coboundaries(s: &SymplecticComplex, z: &[Vector], b: &[Vector]) -> bool {
    if z.is_empty() || b.is_empty() {
        return true;
    }
    let n = s.len();
    let zm = QMatrix::from_columns(n, z);
    let bm = QMatrix::from_columns(n, b);
    zm.transpose().mul(&s.omega).mul(&bm).is_zero() && bm.transpose().mul(&s.omega).mul(&zm).is_zero()
}

pub fn cohomology_pairing(s: &SymplecticComplex) -> Result<CohomologyPairing> {
    if let Some((i, j)) = s.compatibility_defect() {
        return structure(format!("pairing is not compatible with D on basis pair ({i}, {j})"));
    }
    let z = s.complex.cocycles();
    let b = s.complex.coboundaries();
    if !pairs_cocycles_with_coboundaries(s, &z, &b) {
        return structure("pairing of a cocycle with a coboundary is nonzero");
    }
    let h = s.complex.cohomology();
    let reps = h.all_reps();
    let m = reps.len();
    let mut matrix = QMatrix::zeros(m, m);
    for (a, (_, u)) in reps.iter().enumerate() {
        for (c, (_, v)) in reps.iter().enumerate() {
            matrix.set(a, c, s.pair(u, v));
        }
    }
    let degrees: Vec<i32> = reps.iter().map(|(k, _)| *k).collect();
    // graded symmetry is a statement about classes, and the representatives
    // are exact cocycles, so it can be checked on the matrix directly
    let mut graded_symmetric = true;
    for a in 0..m {
        for c in 0..m {
            let s = sign((degrees[a] * degrees[c]).rem_euclid(2) == 1);
            if *matrix.get(a, c) != matrix.get(c, a) * s {
                graded_symmetric = false;
            }
        }
    }
    Ok(CohomologyPairing {
        nondegenerate: matrix.rank() == m,
        chain_level_nondegenerate: s.is_nondegenerate(),
        cohomology: h,
        matrix,
        degrees,
        graded_symmetric,
    })
}

/// A complex with a possibly degenerate pairing, its boundary complex, and
/// the restriction map between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelativeComplex {
    total: SymplecticComplex,
    boundary: SymplecticComplex,
    restriction: QMatrix,
}

impl RelativeComplex {
    /// Verifies degree preservation, the chain-map property and the Stokes
    /// identity exactly.
    pub fn new(total: SymplecticComplex, boundary: SymplecticComplex, restriction: QMatrix) -> Result<Self> {
        let (n, m) = (total.len(), boundary.len());
        if restriction.rows() != m || restriction.cols() != n {
            return domain(format!("restriction must be {m}x{n}"));
        }
        for i in 0..m {
            for j in 0..n {
                if !restriction.get(i, j).is_zero() && boundary.complex.degrees[i] != total.complex.degrees[j] {
                    return domain("restriction must preserve degree");
                }
            }
        }
        let rd = restriction.mul(total.complex.differential());
        let dr = boundary.complex.differential().mul(&restriction);
        if rd != dr {
            return structure("restriction is not a chain map");
        }
        let lhs = restriction.transpose().mul(&boundary.omega).mul(&restriction);
        if lhs != total.stokes_form() {
            return structure("Stokes identity fails");
        }
        Ok(RelativeComplex { total, boundary, restriction })
    }

    /// A closed complex seen as a relative one with empty boundary.
    pub fn closed(total: SymplecticComplex) -> Result<Self> {
        let boundary = SymplecticComplex::empty(total.degree - 1);
        let r = QMatrix::zeros(0, total.len());
        Self::new(total, boundary, r)
    }

    pub fn total(&self) -> &SymplecticComplex {
        &self.total
    }

    pub fn boundary(&self) -> &SymplecticComplex {
        &self.boundary
    }

    pub fn restriction(&self) -> &QMatrix {
        &self.restriction
    }

    /// Basis of `Γ₀ = ker R`, homogeneous vectors.
    pub fn sub_basis(&self) -> Vec<Vector> {
        let n = self.total.len();
        if self.boundary.is_empty() {
            return (0..n)
                .map(|i| {
                    let mut v = vec![Rational::zero(); n];
                    v[i] = Rational::one();
                    v
                })
                .collect();
        }
        let mut out = Vec::new();
        for &k in self.total.complex.dims().keys() {
            let idx = self.total.complex.indices(k);
            let block = self.restriction.submatrix(&(0..self.boundary.len()).collect::<Vec<_>>(), &idx);
            for v in block.nullspace() {
                let mut e = vec![Rational::zero(); n];
                for (x, &i) in v.into_iter().zip(&idx) {
                    e[i] = x;
                }
                out.push(e);
            }
        }
        out
    }

    /// `Γ₀` as a complex in the coordinates of [`Self::sub_basis`].
    pub fn sub_complex(&self) -> Result<GradedComplex> {
        self.total.complex.restrict_to(&self.sub_basis())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Lemma3Mode {
    /// Chain-level pairing nondegenerate: the equality is asserted.
    Strict,
    /// Chain-level pairing degenerate: inclusion and duality on cohomology.
    Degraded,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma3Report {
    pub mode: Lemma3Mode,
    pub cocycles_dim: usize,
    pub sub_coboundaries_dim: usize,
    pub annihilator_dim: usize,
    /// `Z ⊆ B₀^⊥`
    pub inclusion: bool,
    /// `Z = B₀^⊥`
    pub equality: bool,
    pub quotient_dim: usize,
    /// Induced form on `Z/B₀` nondegenerate.
    pub quotient_nondegenerate: bool,
    /// Pairing `H(Γ) × H(Γ₀)` nondegenerate.
    pub duality_nondegenerate: bool,
}

impl Lemma3Report {
    pub fn holds(&self) -> bool {
        match self.mode {
            Lemma3Mode::Strict => self.inclusion && self.equality && self.quotient_nondegenerate,
            Lemma3Mode::Degraded => self.inclusion && self.duality_nondegenerate,
        }
    }
}

/// Compares the cocycles `Z` of the total complex with the annihilator of
/// the coboundaries `B₀` of the vanishing-on-boundary subcomplex.
pub fn lemma3_orthogonality(r: &RelativeComplex) -> Result<Lemma3Report> {
    let s = &r.total;
    let n = s.len();
    let z = s.complex.cocycles();
    let sub = r.sub_basis();
    let b0_all: Vec<Vector> = sub.iter().map(|v| s.complex.apply(v)).filter(|v| !is_zero_vec(v)).collect();
    let b0: Vec<Vector> = if b0_all.is_empty() { Vec::new() } else { QMatrix::from_columns(n, &b0_all).column_basis() };
    let annihilator: Vec<Vector> = if b0.is_empty() {
        (0..n)
            .map(|i| {
                let mut v = vec![Rational::zero(); n];
                v[i] = Rational::one();
                v
            })
            .collect()
    } else {
        s.omega.mul(&QMatrix::from_columns(n, &b0)).transpose().nullspace()
    };
    let inclusion = z.is_empty()
        || b0.is_empty()
        || QMatrix::from_columns(n, &z).transpose().mul(&s.omega).mul(&QMatrix::from_columns(n, &b0)).is_zero();
    let equality = inclusion && z.len() == annihilator.len();

    let classes = complement_in_span(n, &b0, &z);
    let quotient_nondegenerate = gram(s, &classes, &classes).rank() == classes.len();

    let h = s.complex.cohomology().all_reps().into_iter().map(|(_, v)| v).collect::<Vec<_>>();
    let z0: Vec<Vector> = if sub.is_empty() {
        Vec::new()
    } else {
        let sm = QMatrix::from_columns(n, &sub);
        s.complex.differential().mul(&sm).nullspace().into_iter().map(|c| sm.mul_vec(&c)).collect()
    };
    let h0 = complement_in_span(n, &b0, &z0);
    let duality_nondegenerate = h.len() == h0.len() && gram(s, &h, &h0).rank() == h.len();

    Ok(Lemma3Report {
        mode: if s.is_nondegenerate() { Lemma3Mode::Strict } else { Lemma3Mode::Degraded },
        cocycles_dim: z.len(),
        sub_coboundaries_dim: b0.len(),
        annihilator_dim: annihilator.len(),
        inclusion,
        equality,
        quotient_dim: classes.len(),
        quotient_nondegenerate,
        duality_nondegenerate,
    })
}

fn gram(s: &SymplecticComplex, us: &[Vector], vs: &[Vector]) -> QMatrix {
    let mut m = QMatrix::zeros(us.len(), vs.len());
    for (a, u) in us.iter().enumerate() {
        for (b, v) in vs.iter().enumerate() {
            m.set(a, b, s.pair(u, v));
        }
    }
    m
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LagrangianReport {
    pub image_dim: usize,
    pub boundary_cohomology_dim: usize,
    pub isotropic: bool,
    pub lagrangian: bool,
}

/// Image of `H(total) → H(boundary)`: isotropy is checked on
/// representatives, maximality by dimension.
pub fn boundary_lagrangian(r: &RelativeComplex) -> Result<LagrangianReport> {
    if r.boundary.is_empty() {
        return Ok(LagrangianReport { image_dim: 0, boundary_cohomology_dim: 0, isotropic: true, lagrangian: true });
    }
    let bp = cohomology_pairing(&r.boundary)?;
    if !bp.nondegenerate {
        return precondition("boundary pairing is degenerate on cohomology");
    }
    let m = r.boundary.len();
    let images: Vec<Vector> =
        r.total.complex.cohomology().all_reps().into_iter().map(|(_, z)| r.restriction.mul_vec(&z)).collect();
    let bb = r.boundary.complex.coboundaries();
    let mut all = bb.clone();
    all.extend(images.iter().cloned());
    let image_dim = span_dim(m, &all) - span_dim(m, &bb);
    let isotropic = gram(&r.boundary, &images, &images).is_zero();
    let total = bp.cohomology.total_dim();
    Ok(LagrangianReport {
        image_dim,
        boundary_cohomology_dim: total,
        isotropic,
        lagrangian: isotropic && 2 * image_dim == total,
    })
}

/// `(Bⁿ, S^{n−1})` relative cochains as the `n`-fold tensor power of the
/// interval with two segments relative to its endpoints.
pub fn relative_ball(n: usize) -> GradedComplex {
    // interior vertex v (degree 0), edges e0, e1 (degree 1); d v = e0 − e1
    let unit = GradedComplex::new(vec![0, 1, 1], QMatrix::from_i64(&[&[0, 0, 0], &[1, 0, 0], &[-1, 0, 0]]))
        .expect("relative interval is a complex");
    let mut out = GradedComplex::trivial(vec![0]);
    for _ in 0..n {
        out = out.tensor(&unit);
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuspensionReport {
    pub n: usize,
    pub base: BTreeMap<i32, usize>,
    pub shifted: BTreeMap<i32, usize>,
    pub holds: bool,
}

/// Compares `H(C₀ ⊗ (Bⁿ, S^{n−1}))` with `H(C₀)` moved up by `n`.
pub fn suspension_check(c0: &GradedComplex, n: usize) -> SuspensionReport {
    let base = c0.cohomology().betti();
    let shifted = c0.tensor(&relative_ball(n)).cohomology().betti();
    let expected: BTreeMap<i32, usize> = base.iter().map(|(&k, &v)| (k + n as i32, v)).collect();
    SuspensionReport { n, holds: shifted == expected, base, shifted }
}

/// For `C₀` bounded below by `−d` and `n > d`, degree 0 of the shifted
/// cohomology must vanish. Returns `None` when `n ≤ d`.
pub fn lemma2_vanishing(c0: &GradedComplex, n: usize) -> Option<bool> {
    let d = -c0.degrees().iter().copied().min().unwrap_or(0);
    if (n as i32) <= d {
        return None;
    }
    Some(suspension_check(c0, n).shifted.get(&0).copied().unwrap_or(0) == 0)
}
