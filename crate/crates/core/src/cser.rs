//! Serialize complex numbers as `{"re": .., "im": ..}`.

use num_complex::Complex64;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ComplexScalar {
    pub re: f64,
    pub im: f64,
}

impl From<Complex64> for ComplexScalar {
    fn from(z: Complex64) -> Self {
        ComplexScalar { re: z.re, im: z.im }
    }
}

impl From<ComplexScalar> for Complex64 {
    fn from(z: ComplexScalar) -> Self {
        Complex64::new(z.re, z.im)
    }
}

pub fn serialize<S: Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    ComplexScalar::from(*z).serialize(s)
}

pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Complex64, D::Error> {
    Ok(ComplexScalar::deserialize(d)?.into())
}
