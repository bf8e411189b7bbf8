//! Elementary and general Schubert symbols.
//!
//! An elementary symbol of type `(n, m)` is a strictly increasing map
//! `{1..n} -> {1..m}`, stored with the 1-based values it takes. A general
//! symbol for the signature `(n_1 < ... < n_q < n)` is a tuple of elementary
//! symbols of types `(n_1, n_2), ..., (n_q, n)`.

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementarySymbol {
    m: usize,
    values: Vec<usize>,
}

impl ElementarySymbol {
    pub fn new(m: usize, values: Vec<usize>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidSymbol("a symbol needs n >= 1 values".into()));
        }
        if values.len() > m {
            return Err(Error::InvalidSymbol(format!("{} values into {{1..{m}}}", values.len())));
        }
        if values[0] < 1 || *values.last().unwrap() > m {
            return Err(Error::InvalidSymbol(format!("values {values:?} outside 1..={m}")));
        }
        if values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSymbol(format!("values {values:?} not strictly increasing")));
        }
        Ok(ElementarySymbol { m, values })
    }

    /// `k -> k`, the symbol of the zero-dimensional cell.
    pub fn identity(n: usize, m: usize) -> Result<Self> {
        ElementarySymbol::new(m, (1..=n).collect())
    }

    /// `k -> m - n + k`, the symbol of the top cell.
    pub fn top(n: usize, m: usize) -> Result<Self> {
        if n > m {
            return Err(Error::InvalidSymbol(format!("no symbols of type ({n}, {m})")));
        }
        ElementarySymbol::new(m, (1..=n).map(|k| m - n + k).collect())
    }

    /// Domain size `n`.
    pub fn n(&self) -> usize {
        self.values.len()
    }

    /// Codomain size `m`.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    /// `sigma(k)` for 1-based `k`.
    pub fn at(&self, k: usize) -> usize {
        self.values[k - 1]
    }

    /// `d(sigma) = sum_k sigma(k) - k`.
    pub fn dim(&self) -> usize {
        self.values.iter().enumerate().map(|(i, &v)| v - (i + 1)).sum()
    }

    fn check_same_type(&self, other: &Self) -> Result<()> {
        if self.n() != other.n() || self.m != other.m {
            return Err(Error::DimensionMismatch(format!(
                "symbols of type ({}, {}) and ({}, {})",
                self.n(),
                self.m,
                other.n(),
                other.m
            )));
        }
        Ok(())
    }

    /// `sigma <= tau` iff `sigma(k) <= tau(k)` for every `k`.
    pub fn leq(&self, other: &Self) -> Result<bool> {
        self.check_same_type(other)?;
        Ok(self.values.iter().zip(&other.values).all(|(a, b)| a <= b))
    }

    pub fn lt(&self, other: &Self) -> Result<bool> {
        Ok(self.leq(other)? && self != other)
    }

    /// Whether `value` lies in the image.
    pub fn hits(&self, value: usize) -> bool {
        self.values.binary_search(&value).is_ok()
    }

    /// 1-based preimage of `value`, if any.
    pub fn preimage(&self, value: usize) -> Option<usize> {
        self.values.binary_search(&value).ok().map(|i| i + 1)
    }
}

impl fmt::Display for ElementarySymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.values.iter().join(","))
    }
}

/// All `C(m, n)` symbols of type `(n, m)` in lexicographic order; empty when `n > m`.
pub fn enumerate_elementary(n: usize, m: usize) -> Vec<ElementarySymbol> {
    if n == 0 || n > m {
        return Vec::new();
    }
    (1..=m)
        .combinations(n)
        .map(|values| ElementarySymbol { m, values })
        .collect()
}

/// `outer ∘ inner`, for `inner` of type `(p, q)` and `outer` of type `(q, r)`.
pub fn compose(outer: &ElementarySymbol, inner: &ElementarySymbol) -> Result<ElementarySymbol> {
    if inner.m != outer.n() {
        return Err(Error::DimensionMismatch(format!(
            "cannot compose type ({}, {}) after type ({}, {})",
            outer.n(),
            outer.m,
            inner.n(),
            inner.m
        )));
    }
    Ok(ElementarySymbol {
        m: outer.m,
        values: inner.values.iter().map(|&k| outer.at(k)).collect(),
    })
}

/// Dimensions `n_1 < n_2 < ... < n_q` of a flag, strictly between 0 and the
/// ambient dimension.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FlagSignature {
    dims: Vec<usize>,
    ambient: usize,
}

impl FlagSignature {
    pub fn new(dims: Vec<usize>, ambient: usize) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidSignature("at least one dimension is required".into()));
        }
        if dims[0] < 1 || *dims.last().unwrap() >= ambient {
            return Err(Error::InvalidSignature(format!(
                "dimensions {dims:?} must lie strictly between 0 and {ambient}"
            )));
        }
        if dims.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidSignature(format!("dimensions {dims:?} not strictly increasing")));
        }
        Ok(FlagSignature { dims, ambient })
    }

    /// The complete-flag signature `(1, 2, ..., n-1)`.
    pub fn complete(ambient: usize) -> Result<Self> {
        FlagSignature::new((1..ambient).collect(), ambient)
    }

    /// Parses a comma list such as `"1,2"`.
    pub fn parse(dims: &str, ambient: usize) -> Result<Self> {
        let dims = dims
            .split(',')
            .map(|s| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad signature entry '{s}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        FlagSignature::new(dims, ambient)
    }

    /// Every signature in the given ambient dimension (nonempty subsets of `1..n-1`).
    pub fn all(ambient: usize) -> Vec<FlagSignature> {
        if ambient < 2 {
            return Vec::new();
        }
        (1..ambient)
            .powerset()
            .filter(|s| !s.is_empty())
            .map(|dims| FlagSignature { dims, ambient })
            .collect()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    /// Number of subspaces in the flag.
    pub fn len(&self) -> usize {
        self.dims.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dims.is_empty()
    }

    /// `(n_k, n_{k+1})` for 0-based `k`, with `n_{q+1}` the ambient dimension.
    pub fn part_type(&self, k: usize) -> (usize, usize) {
        let upper = self.dims.get(k + 1).copied().unwrap_or(self.ambient);
        (self.dims[k], upper)
    }

    /// `prod_k C(n_{k+1}, n_k)`.
    pub fn symbol_count(&self) -> u128 {
        (0..self.len())
            .map(|k| {
                let (n, m) = self.part_type(k);
                binomial(m as u128, n as u128)
            })
            .product()
    }
}

impl fmt::Display for FlagSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {})", self.dims.iter().join(","), self.ambient)
    }
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GeneralSymbol {
    signature: FlagSignature,
    parts: Vec<ElementarySymbol>,
}

impl GeneralSymbol {
    pub fn new(signature: FlagSignature, parts: Vec<ElementarySymbol>) -> Result<Self> {
        if parts.len() != signature.len() {
            return Err(Error::InvalidSymbol(format!(
                "{} parts for a signature of length {}",
                parts.len(),
                signature.len()
            )));
        }
        for (k, p) in parts.iter().enumerate() {
            let (n, m) = signature.part_type(k);
            if p.n() != n || p.m() != m {
                return Err(Error::InvalidSymbol(format!(
                    "part {} is of type ({}, {}), expected ({n}, {m})",
                    k + 1,
                    p.n(),
                    p.m()
                )));
            }
        }
        Ok(GeneralSymbol { signature, parts })
    }

    /// Builds a symbol from raw part values.
    pub fn from_values(signature: FlagSignature, parts: Vec<Vec<usize>>) -> Result<Self> {
        let parts = parts
            .into_iter()
            .enumerate()
            .map(|(k, v)| {
                let (_, m) = signature
                    .dims
                    .get(k)
                    .map(|_| signature.part_type(k))
                    .ok_or_else(|| Error::InvalidSymbol("too many parts".into()))?;
                ElementarySymbol::new(m, v)
            })
            .collect::<Result<Vec<_>>>()?;
        GeneralSymbol::new(signature, parts)
    }

    pub fn signature(&self) -> &FlagSignature {
        &self.signature
    }

    pub fn parts(&self) -> &[ElementarySymbol] {
        &self.parts
    }

    /// `d(sigma) = sum_i d(sigma_i)`.
    pub fn dim(&self) -> usize {
        self.parts.iter().map(ElementarySymbol::dim).sum()
    }

    /// Componentwise order.
    pub fn leq(&self, other: &Self) -> Result<bool> {
        self.check_same_signature(other)?;
        for (a, b) in self.parts.iter().zip(&other.parts) {
            if !a.leq(b)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn check_same_signature(&self, other: &Self) -> Result<()> {
        if self.signature != other.signature {
            return Err(Error::DimensionMismatch(format!(
                "signatures {} and {}",
                self.signature, other.signature
            )));
        }
        Ok(())
    }
}

impl fmt::Display for GeneralSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.parts.iter().join(","))
    }
}

/// Lazily enumerates `S(n_1, n_2) x ... x S(n_q, n)` in lexicographic order
/// of the part tuples.
pub fn enumerate_general(sig: &FlagSignature) -> impl Iterator<Item = GeneralSymbol> + '_ {
    (0..sig.len())
        .map(|k| {
            let (n, m) = sig.part_type(k);
            enumerate_elementary(n, m)
        })
        .multi_cartesian_product()
        .map(move |parts| GeneralSymbol { signature: sig.clone(), parts })
}

/// Alias of [`GeneralSymbol::dim`].
pub fn dim_general(sigma: &GeneralSymbol) -> usize {
    sigma.dim()
}

/// `c_k = sigma_q ∘ ... ∘ sigma_k` for `k = 1..q`; each `c_k` has type `(n_k, n)`.
pub fn composed_tower(sigma: &GeneralSymbol) -> Vec<ElementarySymbol> {
    let q = sigma.parts.len();
    let mut tower = vec![sigma.parts[q - 1].clone(); q];
    for k in (0..q - 1).rev() {
        tower[k] = compose(&tower[k + 1], &sigma.parts[k]).expect("consecutive parts compose");
    }
    tower
}

/// Inverse of [`composed_tower`]: `sigma_k(i)` is the index `j` with
/// `c_{k+1}(j) = c_k(i)`.
pub fn factor_tower(tower: &[ElementarySymbol], sig: &FlagSignature) -> Result<GeneralSymbol> {
    if tower.len() != sig.len() {
        return Err(Error::IncoherentTower(format!(
            "{} levels for a signature of length {}",
            tower.len(),
            sig.len()
        )));
    }
    for (k, c) in tower.iter().enumerate() {
        if c.n() != sig.dims[k] || c.m() != sig.ambient {
            return Err(Error::IncoherentTower(format!(
                "level {} has type ({}, {}), expected ({}, {})",
                k + 1,
                c.n(),
                c.m(),
                sig.dims[k],
                sig.ambient
            )));
        }
    }
    let q = tower.len();
    let mut parts = Vec::with_capacity(q);
    for k in 0..q - 1 {
        let upper = &tower[k + 1];
        let values = tower[k]
            .values()
            .iter()
            .map(|&v| {
                upper.preimage(v).ok_or_else(|| {
                    Error::IncoherentTower(format!(
                        "value {v} of level {} is not in the image of level {}",
                        k + 1,
                        k + 2
                    ))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        parts.push(ElementarySymbol::new(upper.n(), values)?);
    }
    parts.push(tower[q - 1].clone());
    GeneralSymbol::new(sig.clone(), parts)
}

/// Evaluates the dimension through composed images:
///
/// `sum_{k<=n_1} (sigma_q...sigma_1(k) - k)
///   + sum_{j=2..q} sum_{k ∉ Im sigma_{j-1}} (sigma_q...sigma_j(k) - k)`.
///
/// The composites are evaluated pointwise here, independent of
/// [`composed_tower`] and of the part dimensions.
pub fn d_decomposition(sigma: &GeneralSymbol) -> usize {
    let parts = &sigma.parts;
    let q = parts.len();
    let eval_from = |j: usize, k: usize| parts[j..].iter().fold(k, |v, p| p.at(v));
    let mut total: usize = (1..=parts[0].n()).map(|k| eval_from(0, k) - k).sum();
    for j in 1..q {
        total += (1..=parts[j].n())
            .filter(|&k| !parts[j - 1].hits(k))
            .map(|k| eval_from(j, k) - k)
            .sum::<usize>();
    }
    total
}

/// The necessary conditions for the `tau` cell to meet the boundary of the
/// `sigma` cell: componentwise `c'_k <= c_k` on composed towers, strict at
/// some level.
///
/// This is only a candidate test; it does not decide actual incidence.
pub fn is_boundary_candidate(tau: &GeneralSymbol, sigma: &GeneralSymbol) -> Result<bool> {
    tau.check_same_signature(sigma)?;
    let lower = composed_tower(tau);
    let upper = composed_tower(sigma);
    let mut strict = false;
    for (a, b) in lower.iter().zip(&upper) {
        if !a.leq(b)? {
            return Ok(false);
        }
        strict |= a != b;
    }
    debug_assert!(!strict || tau.dim() < sigma.dim(), "candidate pair must drop dimension");
    Ok(strict)
}

/// `sigma_k(i) = n_{k+1} - n_k + i`, the top-dimensional cell.
pub fn top_symbol(sig: &FlagSignature) -> GeneralSymbol {
    let parts = (0..sig.len())
        .map(|k| {
            let (n, m) = sig.part_type(k);
            ElementarySymbol::top(n, m).expect("valid part type")
        })
        .collect();
    GeneralSymbol { signature: sig.clone(), parts }
}

/// `sigma_k(i) = i`, the zero-dimensional cell.
pub fn bottom_symbol(sig: &FlagSignature) -> GeneralSymbol {
    let parts = (0..sig.len())
        .map(|k| {
            let (n, m) = sig.part_type(k);
            ElementarySymbol::identity(n, m).expect("valid part type")
        })
        .collect();
    GeneralSymbol { signature: sig.clone(), parts }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn el(m: usize, v: &[usize]) -> ElementarySymbol {
        ElementarySymbol::new(m, v.to_vec()).unwrap()
    }

    fn sig(d: &[usize], n: usize) -> FlagSignature {
        FlagSignature::new(d.to_vec(), n).unwrap()
    }

    fn gen(d: &[usize], n: usize, parts: &[&[usize]]) -> GeneralSymbol {
        GeneralSymbol::from_values(sig(d, n), parts.iter().map(|p| p.to_vec()).collect()).unwrap()
    }

    #[test]
    fn symbol_validation() {
        assert!(ElementarySymbol::new(3, vec![2, 2]).is_err());
        assert!(ElementarySymbol::new(3, vec![0, 2]).is_err());
        assert!(ElementarySymbol::new(3, vec![1, 4]).is_err());
        assert!(ElementarySymbol::new(3, vec![]).is_err());
        assert!(FlagSignature::new(vec![1, 3], 3).is_err());
        assert!(FlagSignature::new(vec![2, 1], 3).is_err());
        assert!(FlagSignature::new(vec![], 3).is_err());
        assert!(FlagSignature::parse("1,x", 3).is_err());
        assert!(GeneralSymbol::from_values(sig(&[1, 2], 3), vec![vec![2], vec![1]]).is_err());
    }

    #[test]
    fn elementary_enumeration() {
        assert_eq!(enumerate_elementary(2, 3), vec![el(3, &[1, 2]), el(3, &[1, 3]), el(3, &[2, 3])]);
        assert_eq!(enumerate_elementary(1, 1), vec![el(1, &[1])]);
        assert_eq!(enumerate_elementary(2, 4).len(), 6);
        assert!(enumerate_elementary(3, 2).is_empty());
    }

    #[test]
    fn elementary_dimension() {
        assert_eq!(ElementarySymbol::identity(4, 7).unwrap().dim(), 0);
        assert_eq!(ElementarySymbol::top(3, 7).unwrap().dim(), 3 * 4);
        assert_eq!(el(3, &[1, 3]).dim(), 1);
    }

    #[test]
    fn elementary_order() {
        assert!(el(3, &[1, 3]).leq(&el(3, &[2, 3])).unwrap());
        assert!(!el(4, &[1, 4]).leq(&el(4, &[2, 3])).unwrap());
        let s = el(5, &[2, 4]);
        assert!(s.leq(&s).unwrap());
        assert!(el(3, &[1]).leq(&el(4, &[1])).is_err());
    }

    #[test]
    fn composition() {
        assert_eq!(compose(&el(5, &[1, 3, 4]), &el(3, &[2, 3])).unwrap(), el(5, &[3, 4]));
        let inner = el(4, &[1, 3]);
        assert_eq!(compose(&ElementarySymbol::identity(4, 4).unwrap(), &inner).unwrap(), inner);
        assert_eq!(compose(&el(3, &[2, 3]), &el(2, &[1])).unwrap(), el(3, &[2]));
        assert!(compose(&el(3, &[2, 3]), &el(3, &[1])).is_err());
    }

    #[test]
    fn general_enumeration_counts() {
        let s = sig(&[1, 2], 3);
        assert_eq!(enumerate_general(&s).count(), 6);
        assert_eq!(s.symbol_count(), 6);
        assert_eq!(enumerate_general(&sig(&[1], 2)).count(), 2);
        assert_eq!(enumerate_general(&sig(&[2], 4)).count(), 6);
        assert_eq!(FlagSignature::complete(5).unwrap().symbol_count(), 120);
        assert_eq!(FlagSignature::all(4).len(), 7);
    }

    #[test]
    fn general_dimension() {
        assert_eq!(bottom_symbol(&sig(&[1, 3], 5)).dim(), 0);
        assert_eq!(gen(&[1, 2], 3, &[&[2], &[1, 3]]).dim(), 2);
        assert_eq!(top_symbol(&sig(&[1, 2], 3)).dim(), 3);
    }

    #[test]
    fn towers() {
        let s = gen(&[1, 2], 3, &[&[2], &[1, 3]]);
        assert_eq!(composed_tower(&s), vec![el(3, &[3]), el(3, &[1, 3])]);
        let single = gen(&[2], 5, &[&[2, 5]]);
        assert_eq!(composed_tower(&single), vec![el(5, &[2, 5])]);
        let b = bottom_symbol(&sig(&[1, 2, 3], 4));
        assert_eq!(composed_tower(&b), vec![el(4, &[1]), el(4, &[1, 2]), el(4, &[1, 2, 3])]);
    }

    #[test]
    fn tower_factorization() {
        let s = sig(&[1, 2], 3);
        assert_eq!(
            factor_tower(&[el(3, &[3]), el(3, &[1, 3])], &s).unwrap(),
            gen(&[1, 2], 3, &[&[2], &[1, 3]])
        );
        let b = bottom_symbol(&s);
        assert_eq!(factor_tower(&composed_tower(&b), &s).unwrap(), b);
        assert!(matches!(
            factor_tower(&[el(3, &[2]), el(3, &[1, 3])], &s),
            Err(Error::IncoherentTower(_))
        ));
        assert!(factor_tower(&[el(3, &[1])], &s).is_err());
    }

    #[test]
    fn dimension_decomposition() {
        let s = gen(&[1, 2], 3, &[&[2], &[1, 3]]);
        assert_eq!(d_decomposition(&s), 2);
        let single = gen(&[2], 5, &[&[2, 5]]);
        assert_eq!(d_decomposition(&single), (2 - 1) + (5 - 2));
        assert_eq!(d_decomposition(&top_symbol(&sig(&[1, 2], 3))), 3);
    }

    #[test]
    fn boundary_candidates() {
        let top = top_symbol(&sig(&[1, 2], 3));
        assert_eq!(top, gen(&[1, 2], 3, &[&[2], &[2, 3]]));
        assert!(!is_boundary_candidate(&top, &top).unwrap());
        let tau = gen(&[1, 2], 3, &[&[1], &[2, 3]]);
        assert!(is_boundary_candidate(&tau, &top).unwrap());
        assert!(!is_boundary_candidate(&top, &tau).unwrap());
        assert!(is_boundary_candidate(&tau, &bottom_symbol(&sig(&[1], 3))).is_err());
    }

    #[test]
    fn top_symbols() {
        assert_eq!(top_symbol(&sig(&[2], 5)), gen(&[2], 5, &[&[4, 5]]));
        assert_eq!(top_symbol(&sig(&[1], 2)), gen(&[1], 2, &[&[2]]));
    }
}
