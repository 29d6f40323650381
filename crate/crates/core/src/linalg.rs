//! Dense matrices over exact rationals: row reduction, rank, kernels.

use std::fmt;

use num_traits::{One, Zero};

use crate::graded_algebra::{rat, Rational};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl QMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix rows");
        QMatrix { rows: r, cols: c, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
    }

    /// Matrix whose columns are the given vectors (all of length `len`).
    pub fn from_columns(len: usize, cols: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(len, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn add_at(&mut self, i: usize, j: usize, v: &Rational) {
        self.data[i * self.cols + j] += v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn row(&self, i: usize) -> Vec<Rational> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<Rational>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> QMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &QMatrix) -> QMatrix {
        assert_eq!(self.cols, other.rows, "matrix product dimension mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut s = Rational::zero();
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        s += a * x;
                    }
                }
                s
            })
            .collect()
    }

    pub fn add(&self, other: &QMatrix) -> QMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> QMatrix {
        QMatrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| a * c).collect() }
    }

    /// Bilinear form `uᵀ M v`.
    pub fn bilinear(&self, u: &[Rational], v: &[Rational]) -> Rational {
        let mv = self.mul_vec(v);
        u.iter().zip(&mv).fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (QMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r {
                    continue;
                }
                let f = m.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..m.cols {
                    let sub = &f * m.get(r, j);
                    if !sub.is_zero() {
                        m.data[i * m.cols + j] -= sub;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right kernel `{v : M v = 0}`.
    pub fn nullspace(&self) -> Vec<Vec<Rational>> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r.get(row, f).clone();
                }
                v
            })
            .collect()
    }

    /// A basis of the column space, chosen among the columns.
    pub fn column_basis(&self) -> Vec<Vec<Rational>> {
        let (_, pivots) = self.rref();
        pivots.iter().map(|&j| self.column(j)).collect()
    }

    /// Solves `M x = b`, returning one solution if it exists.
    pub fn solve(&self, b: &[Rational]) -> Option<Vec<Rational>> {
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, b[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return None;
        }
        let mut x = vec![Rational::zero(); self.cols];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, self.cols).clone();
        }
        Some(x)
    }

    /// Selects rows and columns.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> QMatrix {
        let mut m = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j).clone());
            }
        }
        m
    }
}

/// Dimension of the span of a set of vectors of length `len`.
pub fn span_dim(len: usize, vecs: &[Vec<Rational>]) -> usize {
    if vecs.is_empty() {
        return 0;
    }
    QMatrix::from_columns(len, vecs).rank()
}

/// Picks vectors from `candidates` that extend `base` to a basis of their
/// joint span; returns the picked candidates.
pub fn complement_in_span(len: usize, base: &[Vec<Rational>], candidates: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut all: Vec<Vec<Rational>> = base.to_vec();
    all.extend_from_slice(candidates);
    if all.is_empty() {
        return Vec::new();
    }
    let (_, pivots) = QMatrix::from_columns(len, &all).rref();
    pivots.into_iter().filter(|&p| p >= base.len()).map(|p| all[p].clone()).collect()
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}
