//! Enumerative invariants of the cell decomposition.
//!
//! Cell dimensions are real dimensions: a symbol `sigma` contributes a cell
//! of dimension `real_dim(K) * d(sigma)`.

use std::fmt;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::klinalg::Field;
use crate::symbols::{
    enumerate_elementary, enumerate_general, is_boundary_candidate, top_symbol, FlagSignature,
    GeneralSymbol,
};

/// `sum_j c_j t^j` with `c_j` the number of cells of real dimension `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellPolynomial {
    coefficients: Vec<u64>,
}

impl CellPolynomial {
    /// Trailing zeros are dropped.
    pub fn new(mut coefficients: Vec<u64>) -> Self {
        while coefficients.last() == Some(&0) {
            coefficients.pop();
        }
        CellPolynomial { coefficients }
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.coefficients
    }

    pub fn coefficient(&self, j: usize) -> u64 {
        self.coefficients.get(j).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len().saturating_sub(1)
    }

    /// Value at `t = 1`, the total cell count.
    pub fn total(&self) -> u64 {
        self.coefficients.iter().sum()
    }

    /// Value at `t = -1`.
    pub fn alternating_sum(&self) -> i64 {
        self.coefficients
            .iter()
            .enumerate()
            .map(|(j, &c)| if j % 2 == 0 { c as i64 } else { -(c as i64) })
            .sum()
    }

    /// `p(t^k)`.
    pub fn substitute_power(&self, k: usize) -> CellPolynomial {
        let mut out = vec![0; self.degree() * k + 1];
        for (j, &c) in self.coefficients.iter().enumerate() {
            out[j * k] = c;
        }
        CellPolynomial::new(out)
    }

    fn mul(&self, other: &CellPolynomial) -> CellPolynomial {
        let mut out = vec![0; self.degree() + other.degree() + 1];
        for (i, &a) in self.coefficients.iter().enumerate() {
            for (j, &b) in other.coefficients.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        CellPolynomial::new(out)
    }
}

impl fmt::Display for CellPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (j, &c) in self.coefficients.iter().enumerate().filter(|(_, &c)| c != 0) {
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (j, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => f.write_str("t")?,
                (1, c) => write!(f, "{c}t")?,
                (j, 1) => write!(f, "t^{j}")?,
                (j, c) => write!(f, "{c}t^{j}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Cell counts by real dimension.
///
/// Dimensions are additive over the parts of a general symbol and the parts
/// range independently, so the polynomial is the product of the per-part
/// distributions of `d` over `S(n_k, n_{k+1})`.
pub fn cell_polynomial(sig: &FlagSignature, field: Field) -> CellPolynomial {
    let r = field.real_dim();
    (0..sig.len())
        .map(|k| {
            let (n, m) = sig.part_type(k);
            let mut counts = vec![0u64; n * (m - n) + 1];
            for s in enumerate_elementary(n, m) {
                counts[s.dim()] += 1;
            }
            CellPolynomial::new(counts)
        })
        .fold(CellPolynomial::new(vec![1]), |acc, p| acc.mul(&p))
        .substitute_power(r)
}

/// Betti numbers `b_j` for `j = 0..=dim`; all cells are even-dimensional
/// over `C` and `H`, so they are the cell counts.
pub fn betti_numbers(sig: &FlagSignature, field: Field) -> Result<Vec<u64>> {
    if field == Field::Real {
        return Err(Error::BettiOverReals);
    }
    Ok(cell_polynomial(sig, field).coefficients().to_vec())
}

/// `sum_sigma (-1)^{real_dim * d(sigma)}`.
pub fn euler_characteristic(sig: &FlagSignature, field: Field) -> i64 {
    cell_polynomial(sig, field).alternating_sum()
}

/// `((n_1 n_2 + ... + n_{q-1} n_q + n_q n) - (n_1^2 + ... + n_q^2)) * real_dim`.
pub fn manifold_dimension(sig: &FlagSignature, field: Field) -> usize {
    let d = sig.dims();
    let mut products: usize = d.windows(2).map(|w| w[0] * w[1]).sum();
    products += d.last().unwrap() * sig.ambient();
    let squares: usize = d.iter().map(|x| x * x).sum();
    let value = (products - squares) * field.real_dim();
    debug_assert_eq!(value, field.real_dim() * top_symbol(sig).dim());
    value
}

/// Default cap on the number of poset nodes.
pub const DEFAULT_POSET_CAP: usize = 10_000;

/// Covering graph of the boundary-candidate relation.
#[derive(Debug, Clone)]
pub struct Poset {
    pub signature: FlagSignature,
    pub nodes: Vec<GeneralSymbol>,
    /// `(upper, lower)` node indices: the lower cell is a maximal boundary
    /// candidate of the upper one.
    pub edges: Vec<(usize, usize)>,
}

impl Poset {
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph schubert_cells {{");
        let _ = writeln!(out, "  rankdir=TB;");
        let _ = writeln!(out, "  node [shape=box];");
        for (i, s) in self.nodes.iter().enumerate() {
            let _ = writeln!(out, "  n{i} [label=\"{s}\\nd={}\"];", s.dim());
        }
        for (a, b) in &self.edges {
            let _ = writeln!(out, "  n{a} -> n{b};");
        }
        out.push_str("}\n");
        out
    }

    pub fn sources(&self) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&i| self.edges.iter().all(|&(_, b)| b != i)).collect()
    }

    pub fn sinks(&self) -> Vec<usize> {
        (0..self.nodes.len()).filter(|&i| self.edges.iter().all(|&(a, _)| a != i)).collect()
    }
}

/// Builds the covering graph of [`is_boundary_candidate`] over all symbols of `sig`.
pub fn export_poset(sig: &FlagSignature, cap: usize) -> Result<Poset> {
    let count = sig.symbol_count();
    if count > cap as u128 {
        return Err(Error::CapExceeded { count, cap });
    }
    let mut nodes: Vec<GeneralSymbol> = enumerate_general(sig).collect();
    nodes.sort_by_key(|s| std::cmp::Reverse(s.dim()));
    let n = nodes.len();
    let words = n.div_ceil(64);

    // below[i] = bitset of j with is_boundary_candidate(nodes[j], nodes[i])
    let below: Vec<Vec<u64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut row = vec![0u64; words];
            for j in 0..n {
                if nodes[j].dim() < nodes[i].dim()
                    && is_boundary_candidate(&nodes[j], &nodes[i]).expect("same signature")
                {
                    row[j / 64] |= 1 << (j % 64);
                }
            }
            row
        })
        .collect();

    // Transitive reduction: nodes are sorted by decreasing d, so scanning a
    // row left to right meets every candidate before anything below it.
    let edges: Vec<(usize, usize)> = (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut reach = vec![0u64; words];
            let mut covers = Vec::new();
            for j in 0..n {
                let bit = 1 << (j % 64);
                if below[i][j / 64] & bit == 0 || reach[j / 64] & bit != 0 {
                    continue;
                }
                covers.push((i, j));
                for (r, b) in reach.iter_mut().zip(&below[j]) {
                    *r |= *b;
                }
            }
            covers
        })
        .collect();

    Ok(Poset { signature: sig.clone(), nodes, edges })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(d: &[usize], n: usize) -> FlagSignature {
        FlagSignature::new(d.to_vec(), n).unwrap()
    }

    #[test]
    fn polynomials() {
        assert_eq!(cell_polynomial(&sig(&[1], 2), Field::Complex).coefficients(), &[1, 0, 1]);
        assert_eq!(
            cell_polynomial(&sig(&[1, 2], 3), Field::Complex).coefficients(),
            &[1, 0, 2, 0, 2, 0, 1]
        );
        assert_eq!(
            cell_polynomial(&sig(&[2], 4), Field::Complex).coefficients(),
            &[1, 0, 1, 0, 2, 0, 1, 0, 1]
        );
        assert_eq!(cell_polynomial(&sig(&[1, 2], 3), Field::Real).coefficients(), &[1, 2, 2, 1]);
        assert_eq!(cell_polynomial(&sig(&[1, 2], 3), Field::Complex).to_string(), "1 + 2t^2 + 2t^4 + t^6");
    }

    #[test]
    fn betti() {
        assert_eq!(betti_numbers(&sig(&[1], 2), Field::Complex).unwrap(), vec![1, 0, 1]);
        let b = betti_numbers(&sig(&[1, 2], 3), Field::Quaternion).unwrap();
        assert_eq!(b.len(), 13);
        for (j, &v) in b.iter().enumerate() {
            let expected = match j {
                0 | 12 => 1,
                4 | 8 => 2,
                _ => 0,
            };
            assert_eq!(v, expected, "b_{j}");
        }
        assert_eq!(betti_numbers(&sig(&[2], 5), Field::Real), Err(Error::BettiOverReals));
    }

    #[test]
    fn euler() {
        assert_eq!(euler_characteristic(&sig(&[2], 4), Field::Complex), 6);
        assert_eq!(euler_characteristic(&sig(&[1, 2], 3), Field::Real), 0);
        let s = sig(&[1, 3], 5);
        assert_eq!(
            euler_characteristic(&s, Field::Complex),
            euler_characteristic(&s, Field::Quaternion)
        );
    }

    #[test]
    fn dimensions() {
        assert_eq!(manifold_dimension(&sig(&[2], 4), Field::Complex), 8);
        assert_eq!(manifold_dimension(&sig(&[1, 2], 3), Field::Real), 3);
        assert_eq!(manifold_dimension(&sig(&[1, 2], 3), Field::Quaternion), 12);
    }

    #[test]
    fn posets() {
        let p = export_poset(&sig(&[1], 2), DEFAULT_POSET_CAP).unwrap();
        assert_eq!((p.nodes.len(), p.edges.len()), (2, 1));
        let p = export_poset(&sig(&[1, 2], 3), DEFAULT_POSET_CAP).unwrap();
        assert_eq!(p.nodes.len(), 6);
        let sources = p.sources();
        let sinks = p.sinks();
        assert_eq!(sources.len(), 1);
        assert_eq!(sinks.len(), 1);
        assert_eq!(p.nodes[sources[0]], top_symbol(&p.signature));
        assert_eq!(p.nodes[sinks[0]].dim(), 0);
        for &(a, b) in &p.edges {
            assert!(p.nodes[a].dim() > p.nodes[b].dim());
        }
        let dot = p.to_dot();
        assert!(dot.starts_with("digraph"));
        assert_eq!(dot.matches("->").count(), p.edges.len());
        assert!(matches!(
            export_poset(&FlagSignature::complete(6).unwrap(), 100),
            Err(Error::CapExceeded { count: 720, cap: 100 })
        ));
    }
}
