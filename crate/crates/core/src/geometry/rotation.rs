use crate::error::{Error, Result};
use crate::klinalg::{KScalar, KVector, Tolerances};

/// The rotation `T(u, v)` carrying the unit vector `u` to the unit vector `v`:
///
/// `T(u,v)(x) = x - (<x, u+v> / (1 + <u,v>)) (u+v) + 2 <x,u> v`
///
/// Scalars act on the left. `<u, v>` has to be a positive real, which is
/// what keeps the map inner-product preserving over `C` and `H`.
pub fn rotation_apply(u: &KVector, v: &KVector, x: &KVector, tol: &Tolerances) -> Result<KVector> {
    for (name, w) in [("u", u), ("v", v)] {
        if (w.norm() - 1.0).abs() > tol.orth {
            return Err(Error::NotAdmissible(format!("|{name}| = {} is not 1", w.norm())));
        }
    }
    let uv = u.inner(v)?;
    if uv.imag_norm() > tol.orth || uv.w <= tol.orth {
        return Err(Error::NotAdmissible(format!("<u, v> = {uv} is not a positive real")));
    }
    let sum = u.add(v)?;
    let alpha = x.inner(&sum)?.scale(1.0 / (1.0 + uv.w));
    let beta = x.inner(u)?.scale(2.0);
    let mut out = x.clone();
    out.sub_scaled_left(alpha, &sum);
    out.add_scaled_left(beta, v);
    Ok(out)
}

/// Rotation by a unit scalar that turns `w` into a vector `v` with `<u, v>`
/// positive real; `None` when `w` is orthogonal to `u`.
pub fn align_phase(u: &KVector, w: &KVector) -> Option<KVector> {
    // <u, l w> = <u, w> conj(l), so l = <u, w> / |<u, w>|
    let uw = u.inner_unchecked(w);
    let l: KScalar = uw.unit()?;
    Some(w.scaled_left(l))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::klinalg::Field;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    #[test]
    fn identity_when_equal() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for field in Field::ALL {
            let u = KVector::random(field, 4, 4, &mut rng);
            let u = u.scaled(1.0 / u.norm());
            let x = KVector::random(field, 4, 4, &mut rng);
            let y = rotation_apply(&u, &u, &x, &tol()).unwrap();
            assert!(y.distance(&x).unwrap() < 1e-14);
        }
    }

    #[test]
    fn planar_example() {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        let u = KVector::from_reals(Field::Real, &[1.0, 0.0]);
        let v = KVector::from_reals(Field::Real, &[s, s]);
        let y = rotation_apply(&u, &v, &u, &tol()).unwrap();
        assert!(y.distance(&v).unwrap() < 1e-15);
        // x = e_2 goes to (-1/√2, 1/√2)
        let e2 = KVector::from_reals(Field::Real, &[0.0, 1.0]);
        let y = rotation_apply(&u, &v, &e2, &tol()).unwrap();
        assert!(y.distance(&KVector::from_reals(Field::Real, &[-s, s])).unwrap() < 1e-15);
    }

    #[test]
    fn inadmissible_pairs() {
        let e1 = KVector::basis(Field::Complex, 2, 1);
        let e2 = KVector::basis(Field::Complex, 2, 2);
        assert!(rotation_apply(&e1, &e2, &e1, &tol()).is_err());
        assert!(rotation_apply(&e1, &e1.scaled(-1.0), &e1, &tol()).is_err());
        let phased = e1.scaled_left(KScalar::I);
        assert!(rotation_apply(&e1, &phased, &e1, &tol()).is_err());
        assert!(rotation_apply(&e1, &e1.scaled(2.0), &e1, &tol()).is_err());
    }

    #[test]
    fn random_isometries() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for field in Field::ALL {
            for _ in 0..200 {
                let u = KVector::random(field, 5, 5, &mut rng);
                let u = u.scaled(1.0 / u.norm());
                let w = KVector::random(field, 5, 5, &mut rng);
                let v = align_phase(&u, &w.scaled(1.0 / w.norm())).unwrap();
                let x = KVector::random(field, 5, 5, &mut rng);
                let y = KVector::random(field, 5, 5, &mut rng);
                let tx = rotation_apply(&u, &v, &x, &tol()).unwrap();
                let ty = rotation_apply(&u, &v, &y, &tol()).unwrap();
                let d = tx.inner(&ty).unwrap() - x.inner(&y).unwrap();
                assert!(d.norm() < 1e-12 * (1.0 + x.norm() * y.norm()), "{field}: {}", d.norm());
                let tu = rotation_apply(&u, &v, &u, &tol()).unwrap();
                assert!(tu.distance(&v).unwrap() < 1e-12);
            }
        }
    }
}
