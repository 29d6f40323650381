//! Spaces of N-maps `V[1] → Y` from an `n`-dimensional odd space into a
//! Darboux chart. A coordinate of weight `k` pulls back to an element of
//! `Λ^k V*`; the pairing is the Berezin integral of `ω_Y` over `V[1]`.

use super::QMatrix;
use crate::error::{domain, Result};
use crate::graded_algebra::rat;
use crate::sigma_structures::DarbouxChart;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NMapComponent {
    pub name: String,
    pub weight: u32,
    /// Basis of `Λ^weight V*` as sorted index sets.
    pub basis: Vec<Vec<usize>>,
    pub offset: usize,
}

impl NMapComponent {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NMapSpace {
    pub n: usize,
    pub components: Vec<NMapComponent>,
    pub pairing: QMatrix,
}

impl NMapSpace {
    pub fn dim(&self) -> usize {
        self.components.iter().map(NMapComponent::dim).sum()
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.pairing.rank() == self.dim()
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(n, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(n, k, 0, &mut Vec::new(), &mut out);
    }
    out
}

/// `∫ ε_I ε_J` over `V[1]` with `∫ ε_1⋯ε_n = 1`.
fn berezin(n: usize, i: &[usize], j: &[usize]) -> i64 {
    if i.len() + j.len() != n {
        return 0;
    }
    let mut seq: Vec<usize> = i.iter().chain(j).copied().collect();
    let mut inversions = 0;
    for a in 0..seq.len() {
        for b in a + 1..seq.len() {
            if seq[a] == seq[b] {
                return 0;
            }
            if seq[a] > seq[b] {
                inversions += 1;
            }
        }
    }
    seq.sort_unstable();
    if inversions % 2 == 1 {
        -1
    } else {
        1
    }
}

pub fn nmap_space(y: &DarbouxChart, n: usize) -> Result<NMapSpace> {
    if n == 0 {
        return domain("source dimension n must be at least 1");
    }
    let chart = y.chart();
    let mut components = Vec::with_capacity(chart.len());
    let mut offset = 0;
    for i in 0..chart.len() {
        let basis = subsets(n, chart.weight(i) as usize);
        let c = NMapComponent { name: chart.name(i).to_string(), weight: chart.weight(i), basis, offset };
        offset += c.dim();
        components.push(c);
    }
    let mut pairing = QMatrix::zeros(offset, offset);
    for (k, &(q, p)) in y.pairs().iter().enumerate() {
        let coeff = y.coefficient(k);
        let (cq, cp) = (&components[q], &components[p]);
        for (a, i) in cq.basis.iter().enumerate() {
            for (b, j) in cp.basis.iter().enumerate() {
                let s = berezin(n, i, j);
                if s != 0 {
                    let v = coeff * rat(s);
                    pairing.set(cq.offset + a, cp.offset + b, v.clone());
                    pairing.set(cp.offset + b, cq.offset + a, -v);
                }
            }
        }
    }
    Ok(NMapSpace { n, components, pairing })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cotangent_is_canonical() {
        let y = DarbouxChart::poisson_standard(1);
        let s = nmap_space(&y, 1).unwrap();
        assert_eq!(s.components.iter().map(NMapComponent::dim).collect::<Vec<_>>(), vec![1, 1]);
        assert_eq!(s.pairing, QMatrix::from_i64(&[&[0, 1], &[-1, 0]]));
    }

    #[test]
    fn courant_dims() {
        let y = DarbouxChart::courant_standard(1);
        let s = nmap_space(&y, 2).unwrap();
        let dims: Vec<(String, usize)> = s.components.iter().map(|c| (c.name.clone(), c.dim())).collect();
        let want = [("x1", 1), ("p1", 1), ("theta1", 2), ("chi1", 2)];
        assert_eq!(dims, want.map(|(a, b)| (a.to_string(), b)).to_vec());
        assert!(s.is_nondegenerate());
        assert!(nmap_space(&y, 0).is_err());
    }

    #[test]
    fn empty_target() {
        let y = DarbouxChart::new(1, &[]).unwrap();
        let s = nmap_space(&y, 3).unwrap();
        assert_eq!(s.dim(), 0);
        assert!(s.is_nondegenerate());
    }
}
