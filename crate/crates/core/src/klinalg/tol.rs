use crate::error::{Error, Result};

/// Numerical thresholds shared by every rank and membership decision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    /// Relative rank threshold; multiplied by the largest column norm.
    pub rank: f64,
    /// Absolute orthonormality and sign threshold.
    pub orth: f64,
    /// Pivot norms within this factor of the rank threshold are refused.
    pub margin: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { rank: 1e-9, orth: 1e-10, margin: 10.0 }
    }
}

impl Tolerances {
    /// Name of the environment variable read by [`Tolerances::from_env`].
    pub const ENV_VAR: &'static str = "SCHUBERT_TOL";

    /// Parses `"RANK"` or `"RANK,ORTH"`. A single value sets the
    /// orthonormality threshold to a tenth of the rank threshold.
    pub fn parse(text: &str) -> Result<Self> {
        let parse_one = |s: &str| -> Result<f64> {
            let v: f64 = s
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad tolerance '{s}'")))?;
            if !(v.is_finite() && v > 0.0) {
                return Err(Error::Parse(format!("tolerance must be positive, got {v}")));
            }
            Ok(v)
        };
        let parts: Vec<&str> = text.split(',').collect();
        let (rank, orth) = match parts.as_slice() {
            [r] => {
                let r = parse_one(r)?;
                (r, r / 10.0)
            }
            [r, o] => (parse_one(r)?, parse_one(o)?),
            _ => return Err(Error::Parse(format!("bad tolerance value '{text}'"))),
        };
        Ok(Tolerances { rank, orth, ..Tolerances::default() })
    }

    /// Defaults, overridden by `SCHUBERT_TOL` when it is set.
    pub fn from_env() -> Result<Self> {
        match std::env::var(Self::ENV_VAR) {
            Ok(s) => Tolerances::parse(&s),
            Err(_) => Ok(Tolerances::default()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        let t = Tolerances::parse("1e-8").unwrap();
        assert_eq!(t.rank, 1e-8);
        assert!((t.orth - 1e-9).abs() < 1e-24);
        let t = Tolerances::parse("1e-7, 1e-11").unwrap();
        assert_eq!((t.rank, t.orth), (1e-7, 1e-11));
        assert!(Tolerances::parse("-1").is_err());
        assert!(Tolerances::parse("a,b,c").is_err());
    }
}
