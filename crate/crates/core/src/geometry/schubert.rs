use crate::error::{Error, Result};
use crate::klinalg::{
    intersection_basis, intersection_dim_with_coordinate_flag, KScalar, KVector, StiefelElement,
    Subspace, Tolerances,
};
use crate::symbols::ElementarySymbol;

/// `omega(k) = dim X ∩ H_k` for `k = 0..=m`.
///
/// The profile must start at 0, end at `dim X`, and climb by at most one
/// per step; anything else means the rank decisions were unreliable.
pub fn schubert_function(x: &Subspace, tol: &Tolerances) -> Result<Vec<usize>> {
    let m = x.ambient();
    let omega = (0..=m)
        .map(|k| intersection_dim_with_coordinate_flag(x, k, tol))
        .collect::<Result<Vec<_>>>()?;
    let well_formed = omega[0] == 0
        && omega[m] == x.dim()
        && omega.windows(2).all(|w| w[1] == w[0] || w[1] == w[0] + 1);
    if !well_formed {
        return Err(Error::IllConditioned(format!("Schubert function {omega:?} is not a valid profile")));
    }
    Ok(omega)
}

/// `sigma(k) = min { i : dim X ∩ H_i = k }`.
pub fn schubert_symbol_subspace(x: &Subspace, tol: &Tolerances) -> Result<ElementarySymbol> {
    if x.dim() == 0 {
        return Err(Error::InvalidSymbol("the zero subspace has no Schubert symbol".into()));
    }
    let omega = schubert_function(x, tol)?;
    symbol_from_function(&omega)
}

pub(crate) fn symbol_from_function(omega: &[usize]) -> Result<ElementarySymbol> {
    let n = *omega.last().unwrap();
    let values = (1..=n)
        .map(|k| omega.iter().position(|&w| w == k).expect("surjective profile"))
        .collect();
    ElementarySymbol::new(omega.len() - 1, values)
}

/// The induced complete flag `X_k = X ∩ H_{sigma(k)}`, `k = 1..=n`.
pub fn induced_flag(x: &Subspace, tol: &Tolerances) -> Result<Vec<Subspace>> {
    let sigma = schubert_symbol_subspace(x, tol)?;
    induced_flag_for(x, &sigma, tol)
}

fn induced_flag_for(x: &Subspace, sigma: &ElementarySymbol, tol: &Tolerances) -> Result<Vec<Subspace>> {
    (1..=sigma.n())
        .map(|k| {
            let h = Subspace::coordinate(x.field(), x.ambient(), sigma.at(k));
            let level = intersection_basis(x, &h, tol)?;
            if level.dim() != k {
                return Err(Error::IllConditioned(format!(
                    "dim X ∩ H_{} came out as {}, expected {k}",
                    sigma.at(k),
                    level.dim()
                )));
            }
            Ok(level)
        })
        .collect()
}

/// The unique `u` in the open cell `V_sigma` whose image is `X`.
///
/// Column `k` is the unit vector of `X ∩ H_{sigma(k)}` orthogonal to
/// `X ∩ H_{sigma(k)-1}`, turned by a unit scalar on the left so that its
/// `sigma(k)`-th coordinate is a positive real.
pub fn canonical_representative(x: &Subspace, tol: &Tolerances) -> Result<StiefelElement> {
    let sigma = schubert_symbol_subspace(x, tol)?;
    let flag = induced_flag_for(x, &sigma, tol)?;
    let field = x.field();
    let m = x.ambient();
    let mut cols: Vec<KVector> = Vec::with_capacity(sigma.n());
    for (k, level) in flag.iter().enumerate() {
        let mut best: Option<(KVector, f64)> = None;
        for v in level.basis().columns() {
            let mut r = v;
            for _ in 0..2 {
                for c in &cols {
                    let mu = r.inner_unchecked(c);
                    r.sub_scaled_left(mu, c);
                }
            }
            let norm = r.norm();
            if best.as_ref().is_none_or(|(_, b)| norm > *b) {
                best = Some((r, norm));
            }
        }
        let (r, norm) = best.expect("level has dimension k + 1 >= 1");
        if norm <= tol.orth {
            return Err(Error::IllConditioned("induced flag level adds no new direction".into()));
        }
        let pivot = sigma.at(k + 1);
        let mut r = r.scaled(1.0 / norm);
        for e in &mut r.entries_mut()[pivot..m] {
            *e = KScalar::ZERO;
        }
        let r = r.scaled(1.0 / r.norm());
        let c = r.coord(pivot);
        if c.norm() <= tol.orth {
            return Err(Error::IllConditioned(format!("pivot coordinate {pivot} vanishes")));
        }
        let mut r = r.scaled_left(c.conj().unit().expect("nonzero pivot"));
        let p = r.coord(pivot);
        r.entries_mut()[pivot - 1] = KScalar::real(p.w);
        cols.push(r);
    }
    let mat = crate::klinalg::KMatrix::from_columns(field, m, &cols)?;
    StiefelElement::new(mat, tol)
}

/// Membership of `u` in the open cell `V_sigma` (`closed = false`) or in its
/// closure (`closed = true`).
///
/// Column `k` must vanish below `h_{sigma(k)}` and its `sigma(k)`-th
/// coordinate must be real, positive in the open case and nonnegative in
/// the closed case.
pub fn membership_v_sigma(
    u: &StiefelElement,
    sigma: &ElementarySymbol,
    closed: bool,
    tol: &Tolerances,
) -> Result<bool> {
    if u.ambient() != sigma.m() || u.dim() != sigma.n() {
        return Err(Error::DimensionMismatch(format!(
            "Stiefel element {}x{} vs symbol of type ({}, {})",
            u.ambient(),
            u.dim(),
            sigma.n(),
            sigma.m()
        )));
    }
    for k in 1..=sigma.n() {
        let col = u.column(k - 1);
        let pivot = sigma.at(k);
        if col.entries()[pivot..].iter().any(|e| e.norm() > tol.orth) {
            return Ok(false);
        }
        let c = col.coord(pivot);
        if c.imag_norm() > tol.orth {
            return Ok(false);
        }
        let sign_ok = if closed { c.w >= -tol.orth } else { c.w > tol.orth };
        if !sign_ok {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::klinalg::{Field, KMatrix};

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn span_reals(field: Field, m: usize, cols: &[Vec<f64>]) -> Subspace {
        let vs: Vec<KVector> = cols.iter().map(|c| KVector::from_reals(field, c)).collect();
        Subspace::from_columns(&KMatrix::from_columns(field, m, &vs).unwrap(), &tol()).unwrap()
    }

    fn el(m: usize, v: &[usize]) -> ElementarySymbol {
        ElementarySymbol::new(m, v.to_vec()).unwrap()
    }

    #[test]
    fn schubert_functions() {
        for field in Field::ALL {
            let x = Subspace::coordinate_span(field, 4, &[2, 3]);
            assert_eq!(schubert_function(&x, &tol()).unwrap(), vec![0, 0, 1, 2, 2]);
            let y = span_reals(field, 3, &[vec![1.0, 0.0, 1.0]]);
            assert_eq!(schubert_function(&y, &tol()).unwrap(), vec![0, 0, 0, 1]);
            let z = Subspace::coordinate(field, 4, 4);
            assert_eq!(schubert_function(&z, &tol()).unwrap(), vec![0, 1, 2, 3, 4]);
        }
    }

    #[test]
    fn subspace_symbols() {
        for field in Field::ALL {
            let x = Subspace::coordinate_span(field, 4, &[2, 3]);
            assert_eq!(schubert_symbol_subspace(&x, &tol()).unwrap(), el(4, &[2, 3]));
            let y = span_reals(field, 3, &[vec![1.0, 0.0, 1.0]]);
            assert_eq!(schubert_symbol_subspace(&y, &tol()).unwrap(), el(3, &[3]));
        }
        let zero = Subspace::coordinate(Field::Real, 3, 0);
        assert!(schubert_symbol_subspace(&zero, &tol()).is_err());
    }

    #[test]
    fn induced_flags() {
        let t = tol();
        let x = Subspace::coordinate_span(Field::Complex, 4, &[2, 3]);
        let flag = induced_flag(&x, &t).unwrap();
        assert_eq!(flag.len(), 2);
        assert!(flag[0].same_span(&Subspace::coordinate_span(Field::Complex, 4, &[2]), &t));
        assert!(flag[1].same_span(&x, &t));
        // span{h3 + h4, h4} in K^4: symbol (3, 4), X_1 = X ∩ H_3 = span{h3}
        let y = span_reals(Field::Quaternion, 4, &[vec![0.0, 0.0, 1.0, 1.0], vec![0.0, 0.0, 0.0, 1.0]]);
        let flag = induced_flag(&y, &t).unwrap();
        for (k, level) in flag.iter().enumerate() {
            assert_eq!(level.dim(), k + 1);
        }
        assert!(flag[0].same_span(&Subspace::coordinate_span(Field::Quaternion, 4, &[3]), &t));
    }

    #[test]
    fn canonical_representatives() {
        let t = tol();
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let x = span_reals(Field::Real, 3, &[vec![1.0, 1.0, 0.0]]);
        let u = canonical_representative(&x, &t).unwrap();
        let expected = KVector::from_reals(Field::Real, &[s, s, 0.0]);
        assert!(u.column(0).distance(&expected).unwrap() < 1e-15);

        // the left span of i*h_1 contains h_1, so the phase is normalized away
        let v = KVector::new(Field::Quaternion, vec![KScalar::I, KScalar::ZERO, KScalar::ZERO]).unwrap();
        let x = Subspace::from_columns(&KMatrix::from_columns(Field::Quaternion, 3, &[v]).unwrap(), &t).unwrap();
        let u = canonical_representative(&x, &t).unwrap();
        assert!(u.column(0).distance(&KVector::basis(Field::Quaternion, 3, 1)).unwrap() < 1e-15);

        // a column with a quaternionic pivot is rotated to a positive real one
        let w = KVector::new(
            Field::Quaternion,
            vec![KScalar::new(0.0, 1.0, 2.0, 0.0), KScalar::new(0.5, 0.0, 0.0, -1.5), KScalar::ZERO],
        )
        .unwrap();
        let x = Subspace::from_columns(&KMatrix::from_columns(Field::Quaternion, 3, &[w]).unwrap(), &t).unwrap();
        let u = canonical_representative(&x, &t).unwrap();
        assert!(membership_v_sigma(&u, &el(3, &[2]), false, &t).unwrap());
        assert!(Subspace::from_basis(u).same_span(&x, &t));
    }

    #[test]
    fn membership_modes() {
        let t = tol();
        for field in Field::ALL {
            let inc = StiefelElement::inclusion(field, 4, 2);
            assert!(membership_v_sigma(&inc, &el(4, &[1, 2]), false, &t).unwrap());
            assert!(membership_v_sigma(&inc, &el(4, &[1, 2]), true, &t).unwrap());
            // column 2 is h_1-free h_2, tested against sigma(2) = 3: pivot <u(e_2), h_3> = 0
            assert!(!membership_v_sigma(&inc, &el(4, &[1, 3]), false, &t).unwrap());
            assert!(membership_v_sigma(&inc, &el(4, &[1, 3]), true, &t).unwrap());
            // coordinates beyond sigma(k) are not allowed in either mode
            let swapped = StiefelElement::new(
                KMatrix::from_columns(field, 4, &[KVector::basis(field, 4, 2), KVector::basis(field, 4, 1)]).unwrap(),
                &t,
            )
            .unwrap();
            assert!(!membership_v_sigma(&swapped, &el(4, &[1, 2]), true, &t).unwrap());
            assert!(membership_v_sigma(&inc, &el(3, &[1, 2]), true, &t).is_err());
        }
        let q = KVector::new(Field::Quaternion, vec![KScalar::J, KScalar::ZERO]).unwrap();
        let u = StiefelElement::new(KMatrix::from_columns(Field::Quaternion, 2, &[q]).unwrap(), &t).unwrap();
        assert!(!membership_v_sigma(&u, &el(2, &[1]), false, &t).unwrap());
        assert!(!membership_v_sigma(&u, &el(2, &[1]), true, &t).unwrap());
        let neg = StiefelElement::new(
            KMatrix::from_columns(Field::Real, 2, &[KVector::from_reals(Field::Real, &[0.0, -1.0])]).unwrap(),
            &t,
        )
        .unwrap();
        assert!(!membership_v_sigma(&neg, &el(2, &[2]), true, &t).unwrap());
        assert!(!membership_v_sigma(&neg, &el(2, &[1]), true, &t).unwrap());
    }
}
