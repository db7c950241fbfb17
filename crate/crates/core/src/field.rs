//! Scalar fields: real (`f64`) and complex (`Complex64`) signals share one
//! generic code path through the [`Field`] trait.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

pub use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

/// Which scalar field an experiment runs over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FieldTag {
    Real,
    Complex,
}

impl FieldTag {
    pub fn as_str(self) -> &'static str {
        match self {
            FieldTag::Real => "real",
            FieldTag::Complex => "complex",
        }
    }

    /// Byte used in the binary dump header.
    pub fn code(self) -> u8 {
        match self {
            FieldTag::Real => 0,
            FieldTag::Complex => 1,
        }
    }

    pub fn from_code(code: u8) -> Option<Self> {
        match code {
            0 => Some(FieldTag::Real),
            1 => Some(FieldTag::Complex),
            _ => None,
        }
    }
}

impl std::fmt::Display for FieldTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for FieldTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "real" => Ok(FieldTag::Real),
            "complex" => Ok(FieldTag::Complex),
            other => Err(format!("unknown field `{other}` (expected real|complex)")),
        }
    }
}

/// Scalar type of signals and sensing vectors.
pub trait Field:
    Copy
    + Debug
    + PartialEq
    + Send
    + Sync
    + Add<Output = Self>
    + AddAssign
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    const TAG: FieldTag;
    /// Number of f64 words per scalar in the interleaved layout.
    const WORDS: usize;

    fn zero() -> Self;
    fn from_real(x: f64) -> Self;
    fn conj(self) -> Self;
    fn re(self) -> f64;
    fn abs(self) -> f64;
    fn norm_sqr(self) -> f64;
    fn scale(self, s: f64) -> Self;
    fn is_finite(self) -> bool;

    /// `w / |w|`, or zero when `w == 0`. For reals this is the sign.
    fn phase(self) -> Self;

    /// A Gaussian draw whose real (and imaginary) part has standard deviation `std`.
    fn gaussian<R: Rng + ?Sized>(rng: &mut R, std: f64) -> Self;

    fn push_words(self, out: &mut Vec<f64>);
    fn from_words(words: &[f64]) -> Self;
}

impl Field for f64 {
    const TAG: FieldTag = FieldTag::Real;
    const WORDS: usize = 1;

    #[inline]
    fn zero() -> Self {
        0.0
    }
    #[inline]
    fn from_real(x: f64) -> Self {
        x
    }
    #[inline]
    fn conj(self) -> Self {
        self
    }
    #[inline]
    fn re(self) -> f64 {
        self
    }
    #[inline]
    fn abs(self) -> f64 {
        f64::abs(self)
    }
    #[inline]
    fn norm_sqr(self) -> f64 {
        self * self
    }
    #[inline]
    fn scale(self, s: f64) -> Self {
        self * s
    }
    #[inline]
    fn is_finite(self) -> bool {
        f64::is_finite(self)
    }
    #[inline]
    fn phase(self) -> Self {
        if self > 0.0 {
            1.0
        } else if self < 0.0 {
            -1.0
        } else {
            0.0
        }
    }
    fn gaussian<R: Rng + ?Sized>(rng: &mut R, std: f64) -> Self {
        let g: f64 = rng.sample(StandardNormal);
        std * g
    }
    fn push_words(self, out: &mut Vec<f64>) {
        out.push(self);
    }
    fn from_words(words: &[f64]) -> Self {
        words[0]
    }
}

impl Field for Complex64 {
    const TAG: FieldTag = FieldTag::Complex;
    const WORDS: usize = 2;

    #[inline]
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    #[inline]
    fn from_real(x: f64) -> Self {
        Complex64::new(x, 0.0)
    }
    #[inline]
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
    #[inline]
    fn re(self) -> f64 {
        self.re
    }
    #[inline]
    fn abs(self) -> f64 {
        self.norm()
    }
    #[inline]
    fn norm_sqr(self) -> f64 {
        Complex64::norm_sqr(&self)
    }
    #[inline]
    fn scale(self, s: f64) -> Self {
        Complex64::new(self.re * s, self.im * s)
    }
    #[inline]
    fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
    #[inline]
    fn phase(self) -> Self {
        let r = self.norm();
        if r == 0.0 {
            Self::zero()
        } else {
            Complex64::new(self.re / r, self.im / r)
        }
    }
    fn gaussian<R: Rng + ?Sized>(rng: &mut R, std: f64) -> Self {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(std * re, std * im)
    }
    fn push_words(self, out: &mut Vec<f64>) {
        out.push(self.re);
        out.push(self.im);
    }
    fn from_words(words: &[f64]) -> Self {
        Complex64::new(words[0], words[1])
    }
}

/// `⟨a, z⟩ = Σ conj(a_j) z_j`.
#[inline]
pub fn inner<T: Field>(a: &[T], z: &[T]) -> T {
    let mut acc = T::zero();
    for (&ai, &zi) in a.iter().zip(z) {
        acc += ai.conj() * zi;
    }
    acc
}

#[inline]
pub fn norm_sqr<T: Field>(v: &[T]) -> f64 {
    v.iter().map(|x| x.norm_sqr()).sum()
}

#[inline]
pub fn norm<T: Field>(v: &[T]) -> f64 {
    norm_sqr(v).sqrt()
}

/// `y += alpha * x`
#[inline]
pub fn axpy<T: Field>(alpha: T, x: &[T], y: &mut [T]) {
    for (yi, &xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}
