use rand::Rng;

use super::scalar::{Field, KScalar};
use crate::error::{Error, Result};

/// A coordinate vector over `field`.
///
/// Vectors form a left module: `scaled_left(l)` multiplies every entry by
/// `l` on the left, which makes the inner product linear in its first
/// argument.
#[derive(Debug, Clone, PartialEq)]
pub struct KVector {
    field: Field,
    entries: Vec<KScalar>,
}

impl KVector {
    pub fn new(field: Field, entries: Vec<KScalar>) -> Result<Self> {
        if let Some(bad) = entries.iter().find(|s| !field.contains(**s)) {
            return Err(Error::FieldMismatch { expected: field, found: bad.field() });
        }
        Ok(KVector { field, entries })
    }

    pub(crate) fn from_entries_unchecked(field: Field, entries: Vec<KScalar>) -> Self {
        KVector { field, entries }
    }

    pub fn zeros(field: Field, len: usize) -> Self {
        KVector { field, entries: vec![KScalar::ZERO; len] }
    }

    /// Standard basis vector `h_index` (1-based).
    pub fn basis(field: Field, len: usize, index: usize) -> Self {
        assert!((1..=len).contains(&index), "basis index {index} out of 1..={len}");
        let mut v = KVector::zeros(field, len);
        v.entries[index - 1] = KScalar::ONE;
        v
    }

    pub fn from_reals(field: Field, values: &[f64]) -> Self {
        KVector {
            field,
            entries: values.iter().map(|&r| KScalar::real(r)).collect(),
        }
    }

    /// Componentwise standard Gaussian entries in the first `support` coordinates.
    pub fn random<R: Rng + ?Sized>(field: Field, len: usize, support: usize, rng: &mut R) -> Self {
        let mut v = KVector::zeros(field, len);
        for e in v.entries.iter_mut().take(support) {
            *e = field.random_scalar(rng);
        }
        v
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[KScalar] {
        &self.entries
    }

    pub fn entries_mut(&mut self) -> &mut [KScalar] {
        &mut self.entries
    }

    /// Entry at 1-based coordinate `index`.
    pub fn coord(&self, index: usize) -> KScalar {
        self.entries[index - 1]
    }

    fn check_compatible(&self, other: &KVector) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch { expected: self.field, found: other.field });
        }
        if self.len() != other.len() {
            return Err(Error::DimensionMismatch(format!(
                "vector lengths {} and {}",
                self.len(),
                other.len()
            )));
        }
        Ok(())
    }

    /// `<x, y> = sum x_n conj(y_n)`.
    pub fn inner(&self, other: &KVector) -> Result<KScalar> {
        self.check_compatible(other)?;
        Ok(self.inner_unchecked(other))
    }

    pub(crate) fn inner_unchecked(&self, other: &KVector) -> KScalar {
        self.entries
            .iter()
            .zip(&other.entries)
            .fold(KScalar::ZERO, |acc, (a, b)| acc + *a * b.conj())
    }

    pub fn norm_sqr(&self) -> f64 {
        self.entries.iter().map(|s| s.norm_sqr()).sum()
    }

    pub fn norm(&self) -> f64 {
        self.norm_sqr().sqrt()
    }

    pub fn scaled_left(&self, l: KScalar) -> KVector {
        KVector {
            field: self.field,
            entries: self.entries.iter().map(|e| l * *e).collect(),
        }
    }

    pub fn scaled(&self, r: f64) -> KVector {
        KVector {
            field: self.field,
            entries: self.entries.iter().map(|e| e.scale(r)).collect(),
        }
    }

    /// `self -= l * other`.
    pub(crate) fn sub_scaled_left(&mut self, l: KScalar, other: &KVector) {
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            *a -= l * *b;
        }
    }

    /// `self += l * other`.
    pub(crate) fn add_scaled_left(&mut self, l: KScalar, other: &KVector) {
        for (a, b) in self.entries.iter_mut().zip(&other.entries) {
            *a += l * *b;
        }
    }

    pub fn add(&self, other: &KVector) -> Result<KVector> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        out.add_scaled_left(KScalar::ONE, other);
        Ok(out)
    }

    pub fn sub(&self, other: &KVector) -> Result<KVector> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        out.sub_scaled_left(KScalar::ONE, other);
        Ok(out)
    }

    pub fn distance(&self, other: &KVector) -> Result<f64> {
        Ok(self.sub(other)?.norm())
    }
}

/// Free-function form of [`KVector::inner`].
pub fn inner_product(x: &KVector, y: &KVector) -> Result<KScalar> {
    x.inner(y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn q1(s: KScalar) -> KVector {
        KVector::new(Field::Quaternion, vec![s]).unwrap()
    }

    #[test]
    fn coordinate_vectors_are_orthogonal() {
        let x = KVector::from_reals(Field::Real, &[1.0, 0.0]);
        let y = KVector::from_reals(Field::Real, &[0.0, 1.0]);
        assert_eq!(inner_product(&x, &y).unwrap(), KScalar::ZERO);
    }

    #[test]
    fn quaternion_pairings() {
        // i * conj(j) = i * (-j) = -k
        assert_eq!(inner_product(&q1(KScalar::I), &q1(KScalar::J)).unwrap(), -KScalar::K);
        assert_eq!(inner_product(&q1(KScalar::I), &q1(KScalar::I)).unwrap(), KScalar::ONE);
    }

    #[test]
    fn mismatches_are_errors() {
        let x = KVector::from_reals(Field::Real, &[1.0, 0.0]);
        let y = KVector::from_reals(Field::Real, &[1.0]);
        let z = KVector::from_reals(Field::Complex, &[1.0, 0.0]);
        assert!(matches!(x.inner(&y), Err(Error::DimensionMismatch(_))));
        assert!(matches!(x.inner(&z), Err(Error::FieldMismatch { .. })));
        assert!(KVector::new(Field::Complex, vec![KScalar::J]).is_err());
    }

    fn close(a: KScalar, b: KScalar) -> bool {
        (a - b).norm() <= 1e-12
    }

    proptest! {
        #[test]
        fn inner_product_axioms(seed in any::<u64>(), len in 1usize..8, f in 0usize..3) {
            let field = Field::ALL[f];
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let x = KVector::random(field, len, len, &mut rng);
            let y = KVector::random(field, len, len, &mut rng);
            let lambda = field.random_scalar(&mut rng);
            let xy = x.inner(&y).unwrap();
            // left linearity
            prop_assert!(close(x.scaled_left(lambda).inner(&y).unwrap(), lambda * xy));
            // conjugate symmetry
            prop_assert!(close(y.inner(&x).unwrap(), xy.conj()));
            // positive definiteness
            let xx = x.inner(&x).unwrap();
            prop_assert!(xx.imag_norm() <= 1e-12);
            prop_assert!(xx.w >= 0.0);
            prop_assert!((xx.w - x.norm_sqr()).abs() <= 1e-12 * x.norm_sqr().max(1.0));
            prop_assert_eq!(KVector::zeros(field, len).inner(&KVector::zeros(field, len)).unwrap(), KScalar::ZERO);
        }
    }
}
