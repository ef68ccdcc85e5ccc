//! Quaternion scalars.
//!
//! A quaternion is stored scalar-first as `w + xi + yj + zk`. Multiplication
//! is the Hamilton product and does not commute, so every product in this
//! crate keeps its operands in the order the algebra requires.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

use crate::error::{Error, Result};
use crate::format::fmt_f64;

#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Quaternion {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Quaternion {
    pub const ZERO: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 0.0);
    pub const ONE: Quaternion = Quaternion::new(1.0, 0.0, 0.0, 0.0);
    pub const I: Quaternion = Quaternion::new(0.0, 1.0, 0.0, 0.0);
    pub const J: Quaternion = Quaternion::new(0.0, 0.0, 1.0, 0.0);
    pub const K: Quaternion = Quaternion::new(0.0, 0.0, 0.0, 1.0);

    #[inline]
    pub const fn new(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self { w, x, y, z }
    }

    /// Real quaternion `w + 0i + 0j + 0k`.
    #[inline]
    pub const fn real(w: f64) -> Self {
        Self::new(w, 0.0, 0.0, 0.0)
    }

    #[inline]
    pub fn components(self) -> [f64; 4] {
        [self.w, self.x, self.y, self.z]
    }

    #[inline]
    pub fn conj(self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    /// Squared modulus without scaling; may overflow for huge components.
    #[inline]
    pub fn norm_sqr(self) -> f64 {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    /// Modulus `|q|`, scaled by the largest component so that it neither
    /// overflows nor underflows prematurely.
    pub fn modulus(self) -> f64 {
        let c = self.components();
        let m = c.iter().fold(0.0_f64, |acc, v| acc.max(v.abs()));
        if m == 0.0 || !m.is_finite() {
            // m is 0, inf or NaN here.
            return if c.iter().any(|v| v.is_nan()) { f64::NAN } else { m };
        }
        let s: f64 = c.iter().map(|v| (v / m) * (v / m)).sum();
        m * s.sqrt()
    }

    /// Magnitude of the vector part.
    pub fn vector_modulus(self) -> f64 {
        Self::new(0.0, self.x, self.y, self.z).modulus()
    }

    #[inline]
    pub fn is_real(self) -> bool {
        self.x == 0.0 && self.y == 0.0 && self.z == 0.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.w == 0.0 && self.is_real()
    }

    /// Multiplicative inverse `conj(q) / |q|²`.
    pub fn inv(self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroDivision);
        }
        // Scale first so |q|² cannot overflow or underflow.
        let m = self.modulus();
        let unit = self / m;
        Ok(unit.conj() / m)
    }

    #[inline]
    pub fn scale(self, s: f64) -> Self {
        Self::new(self.w * s, self.x * s, self.y * s, self.z * s)
    }
}

pub fn qmul(p: Quaternion, q: Quaternion) -> Quaternion {
    p * q
}

pub fn qconj(q: Quaternion) -> Quaternion {
    q.conj()
}

pub fn qmod(q: Quaternion) -> f64 {
    q.modulus()
}

pub fn qinv(q: Quaternion) -> Result<Quaternion> {
    q.inv()
}

impl Mul for Quaternion {
    type Output = Quaternion;

    #[inline]
    fn mul(self, q: Quaternion) -> Quaternion {
        let p = self;
        Quaternion::new(
            p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
            p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
            p.w * q.y - p.x * q.z + p.y * q.w + p.z * q.x,
            p.w * q.z + p.x * q.y - p.y * q.x + p.z * q.w,
        )
    }
}

impl Mul<f64> for Quaternion {
    type Output = Quaternion;

    #[inline]
    fn mul(self, s: f64) -> Quaternion {
        self.scale(s)
    }
}

impl Mul<Quaternion> for f64 {
    type Output = Quaternion;

    #[inline]
    fn mul(self, q: Quaternion) -> Quaternion {
        q.scale(self)
    }
}

impl Div<f64> for Quaternion {
    type Output = Quaternion;

    #[inline]
    fn div(self, s: f64) -> Quaternion {
        Quaternion::new(self.w / s, self.x / s, self.y / s, self.z / s)
    }
}

impl Add for Quaternion {
    type Output = Quaternion;

    #[inline]
    fn add(self, q: Quaternion) -> Quaternion {
        Quaternion::new(self.w + q.w, self.x + q.x, self.y + q.y, self.z + q.z)
    }
}

impl Sub for Quaternion {
    type Output = Quaternion;

    #[inline]
    fn sub(self, q: Quaternion) -> Quaternion {
        Quaternion::new(self.w - q.w, self.x - q.x, self.y - q.y, self.z - q.z)
    }
}

impl AddAssign for Quaternion {
    #[inline]
    fn add_assign(&mut self, q: Quaternion) {
        *self = *self + q;
    }
}

impl SubAssign for Quaternion {
    #[inline]
    fn sub_assign(&mut self, q: Quaternion) {
        *self = *self - q;
    }
}

impl Neg for Quaternion {
    type Output = Quaternion;

    #[inline]
    fn neg(self) -> Quaternion {
        Quaternion::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl From<f64> for Quaternion {
    fn from(w: f64) -> Self {
        Quaternion::real(w)
    }
}

/// Renders `w x y z` with shortest round-trip formatting.
impl fmt::Display for Quaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} {} {} {}",
            fmt_f64(self.w),
            fmt_f64(self.x),
            fmt_f64(self.y),
            fmt_f64(self.z)
        )
    }
}
