//! Maps from the unit square into SU(2), sampled on a grid, with a per-cell
//! 2-form, and their WZW product.
//!
//! Group elements are unit quaternions; the Lie algebra is identified with
//! pure quaternions and the inner product is the Euclidean one on imaginary
//! parts. Cell values of ω are integrals over the cell.
//!
//! Text format:
//!
//! ```text
//! grid NX NY
//! i j q0 q1 q2 q3     (one line per node, 0 <= i < NX, 0 <= j < NY)
//! i j omega           (one line per cell, 0 <= i < NX-1, 0 <= j < NY-1)
//! ```
//!
//! Blank lines and lines starting with `#` are ignored.

use std::fmt::Write as _;

use nalgebra::{Quaternion, UnitQuaternion, Vector3};

use crate::error::{domain, Error, Result};

pub type Quat = UnitQuaternion<f64>;

const NORM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq)]
pub struct GridMap {
    nx: usize,
    ny: usize,
    nodes: Vec<Quat>,
    omega: Vec<f64>,
}

impl GridMap {
    /// Nodes are indexed `i * ny + j`, cells `i * (ny - 1) + j`.
    pub fn new(nx: usize, ny: usize, nodes: Vec<Quaternion<f64>>, omega: Vec<f64>) -> Result<Self> {
        if nx < 2 || ny < 2 {
            return domain(format!("grid must be at least 2x2, got {nx}x{ny}"));
        }
        if nodes.len() != nx * ny || omega.len() != (nx - 1) * (ny - 1) {
            return domain("node or cell count does not match the grid size");
        }
        let mut units = Vec::with_capacity(nodes.len());
        for (k, q) in nodes.into_iter().enumerate() {
            if (q.norm() - 1.0).abs() > NORM_TOL {
                return domain(format!("node {k} is not a unit quaternion (norm {})", q.norm()));
            }
            units.push(UnitQuaternion::new_unchecked(q));
        }
        Ok(GridMap { nx, ny, nodes: units, omega })
    }

    /// Samples `f` at the nodes of the uniform grid on `[0,1]²` and `omega`
    /// (a density) at cell centres, multiplied by the cell area.
    pub fn sample(nx: usize, ny: usize, f: impl Fn(f64, f64) -> Quat, omega: impl Fn(f64, f64) -> f64) -> Result<Self> {
        if nx < 2 || ny < 2 {
            return domain(format!("grid must be at least 2x2, got {nx}x{ny}"));
        }
        let (hx, hy) = (1.0 / (nx - 1) as f64, 1.0 / (ny - 1) as f64);
        let mut nodes = Vec::with_capacity(nx * ny);
        for i in 0..nx {
            for j in 0..ny {
                nodes.push(f(i as f64 * hx, j as f64 * hy));
            }
        }
        let mut om = Vec::with_capacity((nx - 1) * (ny - 1));
        for i in 0..nx - 1 {
            for j in 0..ny - 1 {
                om.push(omega((i as f64 + 0.5) * hx, (j as f64 + 0.5) * hy) * hx * hy);
            }
        }
        Ok(GridMap { nx, ny, nodes, omega: om })
    }

    pub fn size(&self) -> (usize, usize) {
        (self.nx, self.ny)
    }

    pub fn node(&self, i: usize, j: usize) -> &Quat {
        &self.nodes[i * self.ny + j]
    }

    pub fn omega(&self, i: usize, j: usize) -> f64 {
        self.omega[i * (self.ny - 1) + j]
    }

    pub fn omega_values(&self) -> &[f64] {
        &self.omega
    }

    pub fn total_omega(&self) -> f64 {
        self.omega.iter().sum()
    }

    /// Pointwise inverse with ω negated.
    pub fn inverse(&self) -> GridMap {
        GridMap {
            nx: self.nx,
            ny: self.ny,
            nodes: self.nodes.iter().map(|q| q.inverse()).collect(),
            omega: self.omega.iter().map(|w| -w).collect(),
        }
    }

    /// Same map with the cell values replaced.
    pub fn with_omega(&self, omega: Vec<f64>) -> Result<GridMap> {
        if omega.len() != self.omega.len() {
            return domain("cell count mismatch");
        }
        Ok(GridMap { omega, ..self.clone() })
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("grid {} {}\n", self.nx, self.ny);
        for i in 0..self.nx {
            for j in 0..self.ny {
                let q = self.node(i, j);
                let _ = writeln!(s, "{i} {j} {:e} {:e} {:e} {:e}", q.w, q.i, q.j, q.k);
            }
        }
        for i in 0..self.nx - 1 {
            for j in 0..self.ny - 1 {
                let _ = writeln!(s, "{i} {j} {:e}", self.omega(i, j));
            }
        }
        s
    }

    pub fn from_text(text: &str) -> Result<GridMap> {
        let fail = |line: usize, msg: String| Error::Format { line, msg };
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(k, l)| (k + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (hl, header) = lines.next().ok_or_else(|| fail(1, "missing `grid NX NY` header".into()))?;
        let h: Vec<&str> = header.split_whitespace().collect();
        if h.len() != 3 || h[0] != "grid" {
            return Err(fail(hl, "expected `grid NX NY`".into()));
        }
        let parse_usize = |s: &str, l: usize| s.parse::<usize>().map_err(|_| fail(l, format!("bad integer `{s}`")));
        let parse_f64 = |s: &str, l: usize| s.parse::<f64>().map_err(|_| fail(l, format!("bad number `{s}`")));
        let (nx, ny) = (parse_usize(h[1], hl)?, parse_usize(h[2], hl)?);
        if nx < 2 || ny < 2 {
            return Err(fail(hl, format!("grid must be at least 2x2, got {nx}x{ny}")));
        }
        let mut nodes: Vec<Option<Quaternion<f64>>> = vec![None; nx * ny];
        let mut omega: Vec<Option<f64>> = vec![None; (nx - 1) * (ny - 1)];
        for (l, line) in lines {
            let f: Vec<&str> = line.split_whitespace().collect();
            let (i, j) = match f.as_slice() {
                [a, b, ..] => (parse_usize(a, l)?, parse_usize(b, l)?),
                _ => return Err(fail(l, "expected `i j ...`".into())),
            };
            match f.len() {
                6 => {
                    if i >= nx || j >= ny {
                        return Err(fail(l, format!("node ({i}, {j}) outside the grid")));
                    }
                    let v: Vec<f64> = f[2..].iter().map(|s| parse_f64(s, l)).collect::<Result<_>>()?;
                    let slot = &mut nodes[i * ny + j];
                    if slot.is_some() {
                        return Err(fail(l, format!("node ({i}, {j}) given twice")));
                    }
                    *slot = Some(Quaternion::new(v[0], v[1], v[2], v[3]));
                }
                3 => {
                    if i + 1 >= nx || j + 1 >= ny {
                        return Err(fail(l, format!("cell ({i}, {j}) outside the grid")));
                    }
                    let slot = &mut omega[i * (ny - 1) + j];
                    if slot.is_some() {
                        return Err(fail(l, format!("cell ({i}, {j}) given twice")));
                    }
                    *slot = Some(parse_f64(f[2], l)?);
                }
                _ => return Err(fail(l, "expected 3 or 6 fields".into())),
            }
        }
        let nodes: Option<Vec<_>> = nodes.into_iter().collect();
        let omega: Option<Vec<_>> = omega.into_iter().collect();
        match (nodes, omega) {
            (Some(n), Some(o)) => GridMap::new(nx, ny, n, o),
            _ => Err(fail(0, "some nodes or cells are missing".into())),
        }
    }

    fn check_same_grid(&self, other: &GridMap) -> Result<()> {
        if self.size() != other.size() {
            return domain(format!("grid mismatch: {:?} vs {:?}", self.size(), other.size()));
        }
        Ok(())
    }
}

/// Lie algebra element of a unit quaternion via the principal logarithm.
pub fn log(q: &Quat) -> Vector3<f64> {
    let v = q.imag();
    let s = v.norm();
    if s < 1e-300 {
        return v;
    }
    v * (s.atan2(q.w) / s)
}

/// Discrete `⟨f1*θ_l ∧ f2*θ_r⟩` on cell `(i, j)`: with edge logarithms
/// `A = log(f1(p)⁻¹ f1(p'))` and `B = log(f2(p') f2(p)⁻¹)` along the x and y
/// edges leaving the lower-left corner, the value is `⟨A_x,B_y⟩ − ⟨A_y,B_x⟩`.
pub fn cross_term(a: &GridMap, b: &GridMap, i: usize, j: usize) -> f64 {
    let left =
        |g: &GridMap, p: (usize, usize), q: (usize, usize)| log(&(g.node(p.0, p.1).inverse() * g.node(q.0, q.1)));
    let right =
        |g: &GridMap, p: (usize, usize), q: (usize, usize)| log(&(g.node(q.0, q.1) * g.node(p.0, p.1).inverse()));
    let o = (i, j);
    let ax = left(a, o, (i + 1, j));
    let ay = left(a, o, (i, j + 1));
    let bx = right(b, o, (i + 1, j));
    let by = right(b, o, (i, j + 1));
    ax.dot(&by) - ay.dot(&bx)
}

/// Sum of [`cross_term`] over all cells.
pub fn cross_term_total(a: &GridMap, b: &GridMap) -> Result<f64> {
    a.check_same_grid(b)?;
    let mut s = 0.0;
    for i in 0..a.nx - 1 {
        for j in 0..a.ny - 1 {
            s += cross_term(a, b, i, j);
        }
    }
    Ok(s)
}

/// `f = f1 f2`, `ω = ω1 + ω2 + ⟨f1*θ_l, f2*θ_r⟩` cell by cell.
pub fn wzw_product(a: &GridMap, b: &GridMap) -> Result<GridMap> {
    a.check_same_grid(b)?;
    let nodes = a.nodes.iter().zip(&b.nodes).map(|(p, q)| p * q).collect();
    let mut omega = Vec::with_capacity(a.omega.len());
    for i in 0..a.nx - 1 {
        for j in 0..a.ny - 1 {
            omega.push(a.omega(i, j) + b.omega(i, j) + cross_term(a, b, i, j));
        }
    }
    Ok(GridMap { nx: a.nx, ny: a.ny, nodes, omega })
}
