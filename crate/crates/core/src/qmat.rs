//! Dense row-major quaternion and real matrices.

use std::ops::{Index, IndexMut};

use crate::error::{Error, Result};
use crate::quat::Quaternion;

/// Running `sqrt(sum of squares)` that rescales as it goes, so large or tiny
/// entries neither overflow nor flush to zero.
#[derive(Debug, Clone, Copy)]
pub(crate) struct ScaledSumSq {
    scale: f64,
    ssq: f64,
}

impl ScaledSumSq {
    pub(crate) fn new() -> Self {
        Self { scale: 0.0, ssq: 1.0 }
    }

    pub(crate) fn push(&mut self, v: f64) {
        let a = v.abs();
        if a == 0.0 {
            return;
        }
        if a.is_nan() || self.scale.is_nan() {
            self.scale = f64::NAN;
            return;
        }
        if self.scale < a {
            let r = self.scale / a;
            self.ssq = 1.0 + self.ssq * r * r;
            self.scale = a;
        } else {
            let r = a / self.scale;
            self.ssq += r * r;
        }
    }

    pub(crate) fn push_quat(&mut self, q: Quaternion) {
        for c in q.components() {
            self.push(c);
        }
    }

    pub(crate) fn sqrt(&self) -> f64 {
        if self.scale.is_infinite() {
            return f64::INFINITY;
        }
        self.scale * self.ssq.sqrt()
    }
}

/// Quaternion column vector.
#[derive(Debug, Clone, PartialEq)]
pub struct QVector {
    data: Vec<Quaternion>,
}

impl QVector {
    pub fn new(data: Vec<Quaternion>) -> Result<Self> {
        if data.is_empty() {
            return Err(Error::ShapeMismatch("vector must have at least one entry".into()));
        }
        Ok(Self { data })
    }

    pub fn zeros(len: usize) -> Self {
        assert!(len >= 1, "vector length must be at least 1");
        Self { data: vec![Quaternion::ZERO; len] }
    }

    /// Real vector with the given entries.
    pub fn from_reals(values: &[f64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| Quaternion::real(v)).collect())
    }

    /// Unit vector `e_index` of length `len`.
    pub fn unit(len: usize, index: usize) -> Self {
        assert!(index < len);
        let mut v = Self::zeros(len);
        v.data[index] = Quaternion::ONE;
        v
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.data.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn as_slice(&self) -> &[Quaternion] {
        &self.data
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Quaternion> {
        self.data.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|q| q.is_zero())
    }

    /// Componentwise conjugate.
    pub fn conj(&self) -> Self {
        Self { data: self.data.iter().map(|q| q.conj()).collect() }
    }

    /// Unconjugated bilinear product `aᵀ b` with `a` = self on the left.
    pub fn dot_plain(&self, other: &QVector) -> Quaternion {
        self.data
            .iter()
            .zip(&other.data)
            .fold(Quaternion::ZERO, |acc, (a, b)| acc + *a * *b)
    }

    /// Inner product `āᵀ b`.
    pub fn inner(&self, other: &QVector) -> Quaternion {
        self.data
            .iter()
            .zip(&other.data)
            .fold(Quaternion::ZERO, |acc, (a, b)| acc + a.conj() * *b)
    }

    pub fn norm(&self) -> f64 {
        vec_norm(self)
    }

    pub fn as_column(&self) -> QMatrix {
        QMatrix { rows: self.len(), cols: 1, data: self.data.clone() }
    }
}

impl Index<usize> for QVector {
    type Output = Quaternion;

    fn index(&self, i: usize) -> &Quaternion {
        &self.data[i]
    }
}

impl IndexMut<usize> for QVector {
    fn index_mut(&mut self, i: usize) -> &mut Quaternion {
        &mut self.data[i]
    }
}

/// Dense quaternion matrix, row-major, at least 1×1.
#[derive(Debug, Clone, PartialEq)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Quaternion>,
}

impl QMatrix {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<Quaternion>) -> Result<Self> {
        if rows == 0 || cols == 0 {
            return Err(Error::ShapeMismatch(format!(
                "quaternion matrix must be at least 1x1, got {rows}x{cols}"
            )));
        }
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from nested rows; panics on ragged or empty input.
    pub fn from_rows(rows: &[Vec<Quaternion>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self::from_vec(r, c, rows.concat()).expect("non-empty matrix")
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Quaternion) -> Self {
        assert!(rows >= 1 && cols >= 1, "quaternion matrix must be at least 1x1");
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self::from_fn(rows, cols, |_, _| Quaternion::ZERO)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Quaternion::ONE } else { Quaternion::ZERO })
    }

    /// Diagonal matrix with the given entries.
    pub fn diag(entries: &[Quaternion]) -> Self {
        let n = entries.len();
        Self::from_fn(n, n, |i, j| if i == j { entries[i] } else { Quaternion::ZERO })
    }

    /// Promotes a real matrix to a quaternion matrix with zero vector parts.
    pub fn from_real(m: &RMatrix) -> Self {
        Self::from_fn(m.rows(), m.cols(), |i, j| Quaternion::real(m[(i, j)]))
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn as_slice(&self) -> &[Quaternion] {
        &self.data
    }

    pub fn column(&self, j: usize) -> QVector {
        QVector { data: (0..self.rows).map(|i| self[(i, j)]).collect() }
    }

    pub fn row(&self, i: usize) -> QVector {
        QVector { data: self.data[i * self.cols..(i + 1) * self.cols].to_vec() }
    }

    /// Copy of the block `rows × cols` starting at `(row0, col0)`.
    pub fn submatrix(&self, row0: usize, col0: usize, rows: usize, cols: usize) -> QMatrix {
        assert!(row0 + rows <= self.rows && col0 + cols <= self.cols);
        Self::from_fn(rows, cols, |i, j| self[(row0 + i, col0 + j)])
    }

    pub fn conj_transpose(&self) -> QMatrix {
        conj_transpose(self)
    }

    /// `z · A`, scaling every entry on the left.
    pub fn scale_left(&self, z: Quaternion) -> QMatrix {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|q| z * *q).collect() }
    }

    /// `A · z`, scaling every entry on the right.
    pub fn scale_right(&self, z: Quaternion) -> QMatrix {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(|q| *q * z).collect() }
    }

    pub fn sub(&self, other: &QMatrix) -> Result<QMatrix> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch(format!(
                "cannot subtract {}x{} from {}x{}",
                other.rows, other.cols, self.rows, self.cols
            )));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| *a - *b).collect(),
        })
    }

    pub fn frobenius_norm(&self) -> f64 {
        frobenius_norm(self)
    }

    /// Largest vector-part magnitude over all entries.
    pub fn max_vector_part(&self) -> f64 {
        self.data.iter().map(|q| q.vector_modulus()).fold(0.0, f64::max)
    }

    /// Real parts as a real matrix.
    pub fn real_part(&self) -> RMatrix {
        RMatrix::from_fn(self.rows, self.cols, |i, j| self[(i, j)].w)
    }

    /// `self · m` with the real matrix promoted.
    pub fn mul_real(&self, m: &RMatrix) -> Result<QMatrix> {
        if self.cols != m.rows() {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows,
                self.cols,
                m.rows(),
                m.cols()
            )));
        }
        Ok(Self::from_fn(self.rows, m.cols(), |i, j| {
            (0..self.cols).fold(Quaternion::ZERO, |acc, k| acc + self[(i, k)] * m[(k, j)])
        }))
    }

    /// `m · self` with the real matrix promoted.
    pub fn real_mul(m: &RMatrix, q: &QMatrix) -> Result<QMatrix> {
        if m.cols() != q.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                m.rows(),
                m.cols(),
                q.rows,
                q.cols
            )));
        }
        Ok(Self::from_fn(m.rows(), q.cols, |i, j| {
            (0..m.cols()).fold(Quaternion::ZERO, |acc, k| acc + q[(k, j)] * m[(i, k)])
        }))
    }
}

impl Index<(usize, usize)> for QMatrix {
    type Output = Quaternion;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Quaternion {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for QMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Quaternion {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

/// Dense real matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct RMatrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl RMatrix {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<f64>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        Self { rows: r, cols: c, data: rows.concat() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0.0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { 1.0 } else { 0.0 })
    }

    /// `rows × cols` matrix with `values` on the leading diagonal.
    pub fn rect_diag(rows: usize, cols: usize, values: &[f64]) -> Self {
        assert!(values.len() <= rows.min(cols));
        let mut m = Self::zeros(rows, cols);
        for (i, &v) in values.iter().enumerate() {
            m[(i, i)] = v;
        }
        m
    }

    /// Embeds `self` as the leading block of an `n × n` identity.
    pub fn embed_in_identity(&self, n: usize) -> Self {
        assert!(self.rows <= n && self.cols <= n);
        let mut m = Self::identity(n);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)];
            }
        }
        m
    }

    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }

    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn transpose(&self) -> RMatrix {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)])
    }

    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.rows.min(self.cols)).map(|i| self[(i, i)]).collect()
    }

    pub fn matmul(&self, other: &RMatrix) -> Result<RMatrix> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).map(|k| self[(i, k)] * other[(k, j)]).sum()
        }))
    }

    pub fn sub(&self, other: &RMatrix) -> Result<RMatrix> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch(format!(
                "cannot subtract {}x{} from {}x{}",
                other.rows, other.cols, self.rows, self.cols
            )));
        }
        Ok(Self {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        })
    }

    pub fn frobenius_norm(&self) -> f64 {
        let mut acc = ScaledSumSq::new();
        self.data.iter().for_each(|&v| acc.push(v));
        acc.sqrt()
    }

    /// `‖MᵀM − I‖_F`.
    pub fn orthogonality_residual(&self) -> f64 {
        let gram = self.transpose().matmul(self).expect("conformable");
        gram.sub(&Self::identity(self.cols)).expect("same shape").frobenius_norm()
    }

    /// Plane rotation of columns `p` and `q`: `(c·p + s·q, −s·p + c·q)`.
    pub(crate) fn rotate_cols(&mut self, p: usize, q: usize, c: f64, s: f64) {
        for i in 0..self.rows {
            let a = self[(i, p)];
            let b = self[(i, q)];
            self[(i, p)] = c * a + s * b;
            self[(i, q)] = -s * a + c * b;
        }
    }
}

impl Index<(usize, usize)> for RMatrix {
    type Output = f64;

    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut f64 {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

pub fn conj_transpose(a: &QMatrix) -> QMatrix {
    QMatrix::from_fn(a.cols, a.rows, |i, j| a[(j, i)].conj())
}

/// Row-by-column product; each term is `A[i][k] · B[k][j]` in that order.
pub fn matmul(a: &QMatrix, b: &QMatrix) -> Result<QMatrix> {
    if a.cols != b.rows {
        return Err(Error::ShapeMismatch(format!(
            "cannot multiply {}x{} by {}x{}",
            a.rows, a.cols, b.rows, b.cols
        )));
    }
    let mut out = QMatrix::zeros(a.rows, b.cols);
    for i in 0..a.rows {
        for k in 0..a.cols {
            let aik = a[(i, k)];
            if aik.is_zero() {
                continue;
            }
            for j in 0..b.cols {
                out[(i, j)] += aik * b[(k, j)];
            }
        }
    }
    Ok(out)
}

pub fn vec_norm(u: &QVector) -> f64 {
    let mut acc = ScaledSumSq::new();
    u.iter().for_each(|&q| acc.push_quat(q));
    acc.sqrt()
}

pub fn frobenius_norm(a: &QMatrix) -> f64 {
    let mut acc = ScaledSumSq::new();
    a.data.iter().for_each(|&q| acc.push_quat(q));
    acc.sqrt()
}

/// Larger of `‖ĀᵀA − I‖_F` and `‖AĀᵀ − I‖_F`.
pub fn unitarity_residual(a: &QMatrix) -> Result<f64> {
    if !a.is_square() {
        return Err(Error::ShapeMismatch(format!(
            "unitarity needs a square matrix, got {}x{}",
            a.rows, a.cols
        )));
    }
    let id = QMatrix::identity(a.rows);
    let ah = conj_transpose(a);
    let left = matmul(&ah, a)?.sub(&id)?.frobenius_norm();
    let right = matmul(a, &ah)?.sub(&id)?.frobenius_norm();
    Ok(left.max(right))
}

/// `‖ĀᵀA − I‖_F` for a matrix with orthonormal columns (need not be square).
pub fn column_orthonormality_residual(a: &QMatrix) -> f64 {
    let gram = matmul(&conj_transpose(a), a).expect("conformable");
    gram.sub(&QMatrix::identity(a.cols)).expect("same shape").frobenius_norm()
}

pub fn is_unitary(a: &QMatrix, tol: f64) -> Result<bool> {
    Ok(unitarity_residual(a)? <= tol)
}

/// `u ūᵀ`. The diagonal is the exact real `|u_i|²` and the upper triangle
/// mirrors the lower one, so the result is Hermitian to the bit.
pub fn outer_hermitian(u: &QVector) -> QMatrix {
    let n = u.len();
    QMatrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Equal => Quaternion::real(u[i].norm_sqr()),
        std::cmp::Ordering::Greater => u[i] * u[j].conj(),
        std::cmp::Ordering::Less => (u[j] * u[i].conj()).conj(),
    })
}
