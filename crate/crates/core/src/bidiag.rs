//! Reduction of a quaternion matrix to a real bidiagonal matrix.
//!
//! For `A ∈ H^{r×c}` this finds unitary `L` (r×r) and `R` (c×c) with
//! `L·A·R = B`, `B` real. When `c ≤ r`, `B` is upper bidiagonal; otherwise
//! the routine reduces `Āᵀ` and transposes, so `B` is lower bidiagonal.
//!
//! Reflectors are applied implicitly, alternating a left reflector on the
//! trailing part of column `k` with a right reflector on the trailing part
//! of row `k`. Entries that the reflectors annihilate, and the vector parts
//! of band entries, are snapped to exact zero; the largest discarded
//! magnitude is reported as `snap_residue`.

use crate::error::{Error, Result};
use crate::householder::{left_householder, right_householder};
use crate::qmat::{conj_transpose, QMatrix, QVector, RMatrix};
use crate::quat::Quaternion;
use crate::rsvd::BidiagonalBand;

#[derive(Debug, Clone, PartialEq)]
pub struct BidiagResult {
    /// r×r unitary.
    pub l: QMatrix,
    /// r×c real bidiagonal; upper iff `c ≤ r`.
    pub b: RMatrix,
    /// c×c unitary.
    pub r: QMatrix,
    /// Largest magnitude discarded when snapping to the real band.
    pub snap_residue: f64,
}

impl BidiagResult {
    pub fn is_upper(&self) -> bool {
        self.b.cols() <= self.b.rows()
    }
}

/// Bidiagonal form without the unitary factors.
#[derive(Debug, Clone, PartialEq)]
pub struct BidiagValues {
    pub b: RMatrix,
    pub snap_residue: f64,
}

impl BidiagValues {
    pub fn is_upper(&self) -> bool {
        self.b.cols() <= self.b.rows()
    }
}

struct Reduction {
    b: RMatrix,
    factors: Option<(QMatrix, QMatrix)>,
    snap_residue: f64,
}

/// Snaps `m[(i, j)]` to its real part, returning the discarded magnitude.
fn snap_real(m: &mut QMatrix, i: usize, j: usize) -> f64 {
    let q = m[(i, j)];
    m[(i, j)] = Quaternion::real(q.w);
    q.vector_modulus()
}

fn snap_zero(m: &mut QMatrix, i: usize, j: usize) -> f64 {
    let q = m[(i, j)];
    m[(i, j)] = Quaternion::ZERO;
    q.modulus()
}

/// Upper bidiagonalization of a matrix with `rows ≥ cols`.
fn reduce_tall(a: &QMatrix, accumulate: bool) -> Reduction {
    let (rows, cols) = a.shape();
    debug_assert!(rows >= cols);
    let mut work = a.clone();
    let mut left = accumulate.then(|| QMatrix::identity(rows));
    let mut right = accumulate.then(|| QMatrix::identity(cols));
    let mut residue = 0.0_f64;

    for k in 0..cols {
        let column = QVector::new((k..rows).map(|i| work[(i, k)]).collect())
            .expect("non-empty column");
        let h = left_householder(&column, &QVector::unit(rows - k, 0))
            .expect("unit target of matching length");
        h.apply_left_in_place(&mut work, k, k..cols);
        if let Some(l) = left.as_mut() {
            h.apply_left_in_place(l, k, 0..rows);
        }
        residue = residue.max(snap_real(&mut work, k, k));
        for i in k + 1..rows {
            residue = residue.max(snap_zero(&mut work, i, k));
        }

        if k + 1 < cols {
            let row = QVector::new((k + 1..cols).map(|j| work[(k, j)]).collect())
                .expect("non-empty row");
            let g = right_householder(&row, &QVector::unit(cols - k - 1, 0))
                .expect("unit target of matching length");
            g.apply_right_in_place(&mut work, k..rows, k + 1);
            if let Some(r) = right.as_mut() {
                g.apply_right_in_place(r, 0..cols, k + 1);
            }
            residue = residue.max(snap_real(&mut work, k, k + 1));
            for j in k + 2..cols {
                residue = residue.max(snap_zero(&mut work, k, j));
            }
        }
    }

    Reduction {
        b: work.real_part(),
        factors: left.zip(right),
        snap_residue: residue,
    }
}

fn reduce(a: &QMatrix, accumulate: bool) -> Reduction {
    if a.cols() <= a.rows() {
        return reduce_tall(a, accumulate);
    }
    // L'·Āᵀ·R' = B'  ⇒  R̄'ᵀ·A·L̄'ᵀ = B'ᵀ.
    let red = reduce_tall(&conj_transpose(a), accumulate);
    Reduction {
        b: red.b.transpose(),
        factors: red
            .factors
            .map(|(l, r)| (conj_transpose(&r), conj_transpose(&l))),
        snap_residue: red.snap_residue,
    }
}

/// `L·A·R = B` with `B` real bidiagonal and `L`, `R` unitary.
pub fn bidiagonalize(a: &QMatrix) -> BidiagResult {
    let red = reduce(a, true);
    let (l, r) = red.factors.expect("factors were accumulated");
    BidiagResult { l, b: red.b, r, snap_residue: red.snap_residue }
}

/// Bidiagonal form only; skips accumulating `L` and `R`.
pub fn bidiagonal_values(a: &QMatrix) -> BidiagValues {
    let red = reduce(a, false);
    BidiagValues { b: red.b, snap_residue: red.snap_residue }
}

#[inline]
fn in_band(i: usize, j: usize, upper: bool) -> bool {
    if upper {
        j == i || j == i + 1
    } else {
        j == i || i == j + 1
    }
}

/// True iff every entry outside the upper (or lower) band has magnitude at
/// most `tol`; pass `tol = 0` to require exact zeros.
pub fn check_bidiagonal(b: &RMatrix, upper: bool, tol: f64) -> bool {
    (0..b.rows()).all(|i| (0..b.cols()).all(|j| in_band(i, j, upper) || b[(i, j)].abs() <= tol))
}

/// Reads `(d, e)` from an upper bidiagonal matrix, or from the transpose of
/// a lower one when `upper` is false.
///
/// A wide upper matrix (rows < cols) carries one more superdiagonal entry,
/// at `(n−1, n)`, than an `n × n` band can hold; it must be zero.
pub fn extract_band(b: &RMatrix, upper: bool) -> Result<BidiagonalBand> {
    let m = if upper { b.clone() } else { b.transpose() };
    if !check_bidiagonal(&m, true, 0.0) {
        return Err(Error::NotBidiagonal(format!(
            "nonzero entries outside the {} band",
            if upper { "upper" } else { "lower" }
        )));
    }
    let n = m.rows().min(m.cols());
    if n == 0 {
        return Err(Error::ShapeMismatch("empty matrix has no band".into()));
    }
    if m.cols() > n && m[(n - 1, n)] != 0.0 {
        return Err(Error::NotBidiagonal(format!(
            "entry ({}, {}) lies outside the square band",
            n - 1,
            n
        )));
    }
    let d = (0..n).map(|i| m[(i, i)]).collect();
    let e = (0..n - 1).map(|i| m[(i, i + 1)]).collect();
    BidiagonalBand::new(d, e)
}
