//! Left and right quaternion Householder transformations.
//!
//! A left reflector is `H = z(I − uūᵀ)` and maps a column `a` to `‖a‖v`;
//! a right reflector is `G = (I − uūᵀ)z` and maps a row `aᵀ` to `‖a‖vᵀ`.
//! In both cases `v` is a real unit vector, `‖u‖ = √2` (or `u = 0` for the
//! identity), and `z = ζ⁻¹ = ζ̄` for the stored unit quaternion `ζ`.
//!
//! The two sides differ because `z` does not commute with the entries of
//! `u` or `a`. The right reflector is obtained from the left one applied to
//! the conjugated row, then conjugate-transposed.

use std::ops::Range;

use crate::error::{Error, Result};
use crate::qmat::{outer_hermitian, vec_norm, QMatrix, QVector};
use crate::quat::Quaternion;

/// Largest allowed deviation of the target vector's norm from 1.
const TARGET_NORM_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, PartialEq)]
pub struct HouseholderReflector {
    /// Householder vector; `‖u‖ = √2`, or exactly zero for the identity.
    pub u: QVector,
    /// Unit quaternion ζ; the reflector scales by `z = ζ̄`.
    pub zeta: Quaternion,
    pub side: Side,
}

impl HouseholderReflector {
    pub fn identity(len: usize, side: Side) -> Self {
        Self { u: QVector::zeros(len), zeta: Quaternion::ONE, side }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.u.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    /// The scalar `z = ζ⁻¹`, equal to `ζ̄` since `|ζ| = 1`.
    #[inline]
    pub fn z(&self) -> Quaternion {
        self.zeta.conj()
    }

    pub fn is_identity(&self) -> bool {
        self.u.is_zero() && self.zeta == Quaternion::ONE
    }

    /// In place: rows `row0..` of `m` restricted to `cols` become
    /// `z · (X − u(ūᵀX))`.
    pub(crate) fn apply_left_in_place(&self, m: &mut QMatrix, row0: usize, cols: Range<usize>) {
        debug_assert_eq!(self.u.len(), m.rows() - row0);
        if self.is_identity() {
            return;
        }
        let u = self.u.as_slice();
        let z = self.z();
        for j in cols {
            let mut s = Quaternion::ZERO;
            for (k, uk) in u.iter().enumerate() {
                s += uk.conj() * m[(row0 + k, j)];
            }
            for (k, uk) in u.iter().enumerate() {
                let x = m[(row0 + k, j)] - *uk * s;
                m[(row0 + k, j)] = z * x;
            }
        }
    }

    /// In place: columns `col0..` of `m` restricted to `rows` become
    /// `(X − (Xu)ūᵀ) · z`.
    pub(crate) fn apply_right_in_place(&self, m: &mut QMatrix, rows: Range<usize>, col0: usize) {
        debug_assert_eq!(self.u.len(), m.cols() - col0);
        if self.is_identity() {
            return;
        }
        let u = self.u.as_slice();
        let z = self.z();
        for i in rows {
            let mut t = Quaternion::ZERO;
            for (k, uk) in u.iter().enumerate() {
                t += m[(i, col0 + k)] * *uk;
            }
            for (k, uk) in u.iter().enumerate() {
                let x = m[(i, col0 + k)] - t * uk.conj();
                m[(i, col0 + k)] = x * z;
            }
        }
    }
}

/// Checks that `v` is a real unit vector of the same length as `a`.
fn check_target(a: &QVector, v: &QVector) -> Result<()> {
    if a.len() != v.len() {
        return Err(Error::ShapeMismatch(format!(
            "vector has length {} but target has length {}",
            a.len(),
            v.len()
        )));
    }
    if let Some(i) = v.iter().position(|q| !q.is_real()) {
        return Err(Error::BadTarget(format!("entry {i} of the target is not real")));
    }
    let norm = vec_norm(v);
    let dev = (norm - 1.0).abs();
    if dev.is_nan() || dev > TARGET_NORM_TOL {
        return Err(Error::BadTarget(format!("target norm is {norm}, expected 1")));
    }
    Ok(())
}

/// Threshold below which `r = |aᵀv|` is treated as zero.
#[inline]
fn r_zero_threshold(alpha: f64, len: usize) -> f64 {
    f64::EPSILON * len as f64 * alpha
}

/// Builds `H = z(I − uūᵀ)` with `H·a = ‖a‖·v`.
pub fn left_householder(a: &QVector, v: &QVector) -> Result<HouseholderReflector> {
    check_target(a, v)?;
    let n = a.len();
    let alpha = vec_norm(a);
    if alpha == 0.0 {
        return Ok(HouseholderReflector::identity(n, Side::Left));
    }

    // v is real, so aᵀv needs no care over operand order.
    let atv = a.dot_plain(v);
    let r = atv.modulus();
    let (zeta, r) = if r <= r_zero_threshold(alpha, n) {
        (Quaternion::ONE, 0.0)
    } else {
        (-(atv / r), r)
    };
    let mu = (alpha * (alpha + r)).sqrt();

    let u: Vec<Quaternion> = a
        .iter()
        .zip(v.iter())
        .map(|(ai, vi)| (*ai - zeta * (vi.w * alpha)) / mu)
        .collect();
    Ok(HouseholderReflector { u: QVector::new(u)?, zeta, side: Side::Left })
}

/// Builds `G = (I − uūᵀ)z` with `a_rowᵀ·G = ‖a‖·vᵀ`.
///
/// The left reflector for the conjugated row satisfies `H·ā = ‖a‖v`;
/// conjugate-transposing gives `aᵀ·H̄ᵀ = ‖a‖vᵀ`, and
/// `H̄ᵀ = (I − uūᵀ)·ζ_L`, so the right reflector keeps `u` and stores
/// `ζ = ζ̄_L`.
pub fn right_householder(a_row: &QVector, v: &QVector) -> Result<HouseholderReflector> {
    let left = left_householder(&a_row.conj(), v)?;
    Ok(HouseholderReflector { u: left.u, zeta: left.zeta.conj(), side: Side::Right })
}

/// Right reflector from the closed-form recipe, used to cross-check
/// [`right_householder`]. The Householder vector is
/// `uᵀ = (α vᵀ ζ̄ − āᵀ) / μ` with `ζ = −vᵀa / r`.
pub fn right_householder_direct(a_row: &QVector, v: &QVector) -> Result<HouseholderReflector> {
    check_target(a_row, v)?;
    let n = a_row.len();
    let alpha = vec_norm(a_row);
    if alpha == 0.0 {
        return Ok(HouseholderReflector::identity(n, Side::Right));
    }
    let vta = v.dot_plain(a_row);
    let r = vta.modulus();
    let (zeta, r) = if r <= r_zero_threshold(alpha, n) {
        (Quaternion::ONE, 0.0)
    } else {
        (-(vta / r), r)
    };
    let mu = (alpha * (alpha + r)).sqrt();
    let u: Vec<Quaternion> = a_row
        .iter()
        .zip(v.iter())
        .map(|(ai, vi)| (zeta.conj() * (vi.w * alpha) - ai.conj()) / mu)
        .collect();
    Ok(HouseholderReflector { u: QVector::new(u)?, zeta, side: Side::Right })
}

/// `H·A` for a left reflector, without forming `H`.
pub fn apply_left(h: &HouseholderReflector, a: &QMatrix) -> Result<QMatrix> {
    if h.side != Side::Left {
        return Err(Error::ShapeMismatch("right reflector applied on the left".into()));
    }
    if h.len() != a.rows() {
        return Err(Error::ShapeMismatch(format!(
            "reflector of length {} cannot act on {} rows",
            h.len(),
            a.rows()
        )));
    }
    let mut out = a.clone();
    h.apply_left_in_place(&mut out, 0, 0..a.cols());
    Ok(out)
}

/// `A·G` for a right reflector, without forming `G`.
pub fn apply_right(h: &HouseholderReflector, a: &QMatrix) -> Result<QMatrix> {
    if h.side != Side::Right {
        return Err(Error::ShapeMismatch("left reflector applied on the right".into()));
    }
    if h.len() != a.cols() {
        return Err(Error::ShapeMismatch(format!(
            "reflector of length {} cannot act on {} columns",
            h.len(),
            a.cols()
        )));
    }
    let mut out = a.clone();
    h.apply_right_in_place(&mut out, 0..a.rows(), 0);
    Ok(out)
}

/// `I − uūᵀ` as an explicit matrix.
pub fn projector_complement(u: &QVector) -> QMatrix {
    let mut m = outer_hermitian(u);
    let n = u.len();
    for i in 0..n {
        for j in 0..n {
            let delta = if i == j { Quaternion::ONE } else { Quaternion::ZERO };
            m[(i, j)] = delta - m[(i, j)];
        }
    }
    m
}

/// Explicit reflector matrix: `z(I − uūᵀ)` on the left, `(I − uūᵀ)z` on the right.
pub fn form_matrix(h: &HouseholderReflector) -> QMatrix {
    let m = projector_complement(&h.u);
    match h.side {
        Side::Left => m.scale_left(h.z()),
        Side::Right => m.scale_right(h.z()),
    }
}
