use super::schubert::{canonical_representative, schubert_symbol_subspace};
use crate::error::{Error, Result};
use crate::klinalg::{Field, KMatrix, KVector, StiefelElement, Subspace, Tolerances};
use crate::symbols::{factor_tower, ElementarySymbol, FlagSignature, GeneralSymbol};

/// A point `X^1 ⊂ X^2 ⊂ ... ⊂ X^q` of a flag manifold.
#[derive(Debug, Clone)]
pub struct FlagPoint {
    signature: FlagSignature,
    subspaces: Vec<Subspace>,
}

impl FlagPoint {
    pub fn new(signature: FlagSignature, subspaces: Vec<Subspace>, tol: &Tolerances) -> Result<Self> {
        if subspaces.len() != signature.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} subspaces for a signature of length {}",
                subspaces.len(),
                signature.len()
            )));
        }
        let field = subspaces[0].field();
        for (k, x) in subspaces.iter().enumerate() {
            if x.field() != field {
                return Err(Error::FieldMismatch { expected: field, found: x.field() });
            }
            if x.ambient() != signature.ambient() || x.dim() != signature.dims()[k] {
                return Err(Error::DimensionMismatch(format!(
                    "subspace {} has dimension {} in K^{}, expected {} in K^{}",
                    k + 1,
                    x.dim(),
                    x.ambient(),
                    signature.dims()[k],
                    signature.ambient()
                )));
            }
        }
        for (k, pair) in subspaces.windows(2).enumerate() {
            let residual = pair[1].containment_residual(&pair[0]);
            if residual > tol.rank {
                return Err(Error::NotNested { level: k + 1, residual });
            }
        }
        Ok(FlagPoint { signature, subspaces })
    }

    /// The coordinate flag whose subspaces are spanned by the listed
    /// standard basis vectors, innermost first.
    pub fn coordinate(field: Field, signature: FlagSignature, indices: &[Vec<usize>], tol: &Tolerances) -> Result<Self> {
        let subspaces = indices
            .iter()
            .map(|ix| Subspace::coordinate_span(field, signature.ambient(), ix))
            .collect();
        FlagPoint::new(signature, subspaces, tol)
    }

    pub fn signature(&self) -> &FlagSignature {
        &self.signature
    }

    pub fn subspaces(&self) -> &[Subspace] {
        &self.subspaces
    }

    pub fn field(&self) -> Field {
        self.subspaces[0].field()
    }
}

/// A point `(v_1, ..., v_q)` of the generalized Stiefel manifold:
/// `v_k : K^{n_k} -> K^n` isometric with nested images.
#[derive(Debug, Clone)]
pub struct GeneralStiefelPoint {
    signature: FlagSignature,
    maps: Vec<StiefelElement>,
}

impl GeneralStiefelPoint {
    pub fn new(signature: FlagSignature, maps: Vec<StiefelElement>, tol: &Tolerances) -> Result<Self> {
        let point = GeneralStiefelPoint { signature, maps };
        // FlagPoint::new performs the shape and nesting checks on the images.
        point.to_flag(tol)?;
        Ok(point)
    }

    pub fn signature(&self) -> &FlagSignature {
        &self.signature
    }

    pub fn maps(&self) -> &[StiefelElement] {
        &self.maps
    }

    /// Images of the maps.
    pub fn to_flag(&self, tol: &Tolerances) -> Result<FlagPoint> {
        let subspaces = self.maps.iter().cloned().map(Subspace::from_basis).collect();
        FlagPoint::new(self.signature.clone(), subspaces, tol)
    }
}

/// `v_k = u_q ∘ ... ∘ u_{k+1} ∘ u_k` for factors `u_k : K^{n_k} -> K^{n_{k+1}}`
/// (the last one into the ambient space).
pub fn assemble_flag(
    factors: &[StiefelElement],
    sig: &FlagSignature,
    tol: &Tolerances,
) -> Result<GeneralStiefelPoint> {
    if factors.len() != sig.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} factors for a signature of length {}",
            factors.len(),
            sig.len()
        )));
    }
    for (k, u) in factors.iter().enumerate() {
        let (n, m) = sig.part_type(k);
        if u.dim() != n || u.ambient() != m {
            return Err(Error::DimensionMismatch(format!(
                "factor {} is {}x{}, expected {m}x{n}",
                k + 1,
                u.ambient(),
                u.dim()
            )));
        }
    }
    let q = factors.len();
    let mut maps = vec![factors[q - 1].clone(); q];
    for k in (0..q - 1).rev() {
        maps[k] = maps[k + 1].compose(&factors[k])?;
    }
    GeneralStiefelPoint::new(sig.clone(), maps, tol)
}

/// Symbol of each part relative to the induced flag of the next subspace,
/// computed from the top down. Also returns the adapted bases, which are the
/// canonical representatives of every `X^k`.
pub fn flag_symbol_recursive(f: &FlagPoint, tol: &Tolerances) -> Result<(GeneralSymbol, Vec<StiefelElement>)> {
    let q = f.subspaces.len();
    let field = f.field();
    let mut parts: Vec<ElementarySymbol> = vec![];
    let mut bases: Vec<StiefelElement> = vec![];

    let top = &f.subspaces[q - 1];
    parts.push(schubert_symbol_subspace(top, tol)?);
    bases.push(canonical_representative(top, tol)?);

    for level in (0..q - 1).rev() {
        let adapted = bases.last().unwrap();
        let inner = &f.subspaces[level];
        // coordinates of X^level in the adapted basis of X^{level+1}
        let coords: Vec<KVector> = inner.basis().columns().iter().map(|y| adapted.coordinates(y)).collect();
        let mat = KMatrix::from_columns(field, adapted.dim(), &coords)?;
        let local = Subspace::from_columns(&mat, tol)?;
        parts.push(schubert_symbol_subspace(&local, tol)?);
        let rep = canonical_representative(&local, tol)?;
        bases.push(adapted.compose(&rep)?);
    }
    parts.reverse();
    bases.reverse();
    Ok((GeneralSymbol::new(f.signature.clone(), parts)?, bases))
}

/// Ambient symbols `sigma_{X^k}` of every subspace, factored through
/// [`factor_tower`].
pub fn flag_symbol_factored(f: &FlagPoint, tol: &Tolerances) -> Result<GeneralSymbol> {
    let tower = f
        .subspaces
        .iter()
        .map(|x| schubert_symbol_subspace(x, tol))
        .collect::<Result<Vec<_>>>()?;
    factor_tower(&tower, &f.signature)
}

/// The Schubert symbol of a flag, computed by both routes; they must agree.
pub fn schubert_symbol_flag(f: &FlagPoint, tol: &Tolerances) -> Result<GeneralSymbol> {
    let (recursive, _) = flag_symbol_recursive(f, tol)?;
    let factored = flag_symbol_factored(f, tol).map_err(|e| Error::ToleranceBreakdown {
        recursive: recursive.to_string(),
        factored: e.to_string(),
    })?;
    if recursive != factored {
        return Err(Error::ToleranceBreakdown {
            recursive: recursive.to_string(),
            factored: factored.to_string(),
        });
    }
    Ok(recursive)
}
