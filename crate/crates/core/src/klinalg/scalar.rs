use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The ground (skew) field.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    #[serde(rename = "R")]
    Real,
    #[serde(rename = "C")]
    Complex,
    #[serde(rename = "H")]
    Quaternion,
}

impl Field {
    pub const ALL: [Field; 3] = [Field::Real, Field::Complex, Field::Quaternion];

    /// Dimension of the field as a real vector space.
    pub fn real_dim(self) -> usize {
        match self {
            Field::Real => 1,
            Field::Complex => 2,
            Field::Quaternion => 4,
        }
    }

    pub fn letter(self) -> &'static str {
        match self {
            Field::Real => "R",
            Field::Complex => "C",
            Field::Quaternion => "H",
        }
    }

    pub fn parse(s: &str) -> Result<Field> {
        match s.trim() {
            "R" | "r" | "real" | "Real" => Ok(Field::Real),
            "C" | "c" | "complex" | "Complex" => Ok(Field::Complex),
            "H" | "h" | "quaternion" | "Quaternion" => Ok(Field::Quaternion),
            other => Err(Error::Parse(format!("unknown field '{other}' (expected R, C or H)"))),
        }
    }

    /// Whether `s` has no components outside this field.
    pub fn contains(self, s: KScalar) -> bool {
        self.real_dim() >= s.field().real_dim()
    }

    /// Standard Gaussian draw in each real component the field uses.
    pub fn random_scalar<R: Rng + ?Sized>(self, rng: &mut R) -> KScalar {
        let mut c = [0.0; 4];
        for slot in c.iter_mut().take(self.real_dim()) {
            *slot = rng.sample(StandardNormal);
        }
        KScalar::new(c[0], c[1], c[2], c[3])
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.letter())
    }
}

/// One element of `R`, `C` or `H`, stored as a quaternion `w + xi + yj + zk`.
///
/// Reals and complexes are the embedded subfields, so every field shares
/// the quaternion arithmetic below.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct KScalar {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl KScalar {
    pub const ZERO: KScalar = KScalar::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: KScalar = KScalar::new(1.0, 0.0, 0.0, 0.0);
    pub const I: KScalar = KScalar::new(0.0, 1.0, 0.0, 0.0);
    pub const J: KScalar = KScalar::new(0.0, 0.0, 1.0, 0.0);
    pub const K: KScalar = KScalar::new(0.0, 0.0, 0.0, 1.0);

    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        KScalar { w, x, y, z }
    }

    pub const fn real(w: f64) -> Self {
        KScalar::new(w, 0.0, 0.0, 0.0)
    }

    pub const fn complex(re: f64, im: f64) -> Self {
        KScalar::new(re, im, 0.0, 0.0)
    }

    pub fn components(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    /// Smallest field containing this value (exact zero test).
    pub fn field(self) -> Field {
        if self.y != 0.0 || self.z != 0.0 {
            Field::Quaternion
        } else if self.x != 0.0 {
            Field::Complex
        } else {
            Field::Real
        }
    }

    pub fn conj(self) -> Self {
        KScalar::new(self.w, -self.x, -self.y, -self.z)
    }

    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    pub fn norm(self) -> f64 {
        self.norm_sqr().sqrt()
    }

    /// Norm of the imaginary part.
    pub fn imag_norm(self) -> f64 {
        (self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    pub fn scale(self, r: f64) -> Self {
        KScalar::new(self.w * r, self.x * r, self.y * r, self.z * r)
    }

    /// Multiplicative inverse, `conj(a) / |a|^2`.
    pub fn inv(self) -> Option<Self> {
        let n = self.norm_sqr();
        (n > 0.0).then(|| self.conj().scale(1.0 / n))
    }

    /// The unit scalar `a / |a|`.
    pub fn unit(self) -> Option<Self> {
        let n = self.norm();
        (n > 0.0).then(|| self.scale(1.0 / n))
    }
}

/// Field multiplication with a membership check on both operands.
pub fn scalar_mul(field: Field, a: KScalar, b: KScalar) -> Result<KScalar> {
    for s in [a, b] {
        if !field.contains(s) {
            return Err(Error::FieldMismatch { expected: field, found: s.field() });
        }
    }
    Ok(a * b)
}

impl Add for KScalar {
    type Output = KScalar;
    fn add(self, o: KScalar) -> KScalar {
        KScalar::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl AddAssign for KScalar {
    fn add_assign(&mut self, o: KScalar) {
        *self = *self + o;
    }
}

impl Sub for KScalar {
    type Output = KScalar;
    fn sub(self, o: KScalar) -> KScalar {
        KScalar::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl SubAssign for KScalar {
    fn sub_assign(&mut self, o: KScalar) {
        *self = *self - o;
    }
}

impl Neg for KScalar {
    type Output = KScalar;
    fn neg(self) -> KScalar {
        KScalar::new(-self.w, -self.x, -self.y, -self.z)
    }
}

// Hamilton product: ij = k, jk = i, ki = j.
impl Mul for KScalar {
    type Output = KScalar;
    fn mul(self, o: KScalar) -> KScalar {
        let (a1, b1, c1, d1) = (self.w, self.x, self.y, self.z);
        let (a2, b2, c2, d2) = (o.w, o.x, o.y, o.z);
        KScalar::new(
            a1 * a2 - b1 * b2 - c1 * c2 - d1 * d2,
            a1 * b2 + b1 * a2 + c1 * d2 - d1 * c2,
            a1 * c2 - b1 * d2 + c1 * a2 + d1 * b2,
            a1 * d2 + b1 * c2 - c1 * b2 + d1 * a2,
        )
    }
}

impl fmt::Display for KScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.field() {
            Field::Real => write!(f, "{}", self.w),
            Field::Complex => write!(f, "{}{:+}i", self.w, self.x),
            Field::Quaternion => {
                write!(f, "{}{:+}i{:+}j{:+}k", self.w, self.x, self.y, self.z)
            }
        }
    }
}
