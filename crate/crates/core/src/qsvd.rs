//! Quaternion SVD: bidiagonalize, diagonalize the real core, and carry the
//! real singular vectors back through the unitary factors.
//!
//! With `L·A·R = B` and `B = W·Σ·Xᵀ`, the factorization is
//! `A = (L̄ᵀW)·Σ·(XᵀR̄ᵀ)`, so `U = L̄ᵀW` and `V = R·X`.

use std::fmt;

use crate::bidiag::{bidiagonal_values, bidiagonalize, extract_band};
use crate::error::{Error, Result};
use crate::oracle::adjoint_singular_values;
use crate::qmat::{
    column_orthonormality_residual, conj_transpose, frobenius_norm, matmul, unitarity_residual,
    QMatrix, RMatrix,
};
use crate::rsvd::bidiag_svd;

#[derive(Debug, Clone, PartialEq)]
pub struct QsvdResult {
    /// r×r unitary (r×n for the thin form); `None` when only values were requested.
    pub u: Option<QMatrix>,
    /// Nonnegative, descending, length `min(r, c)`.
    pub sigma: Vec<f64>,
    /// c×c unitary (c×n for the thin form).
    pub v: Option<QMatrix>,
}

/// Full SVD `A = U·Σ·V̄ᵀ` with square `U`, `V`; values only when
/// `want_vectors` is false.
pub fn qsvd(a: &QMatrix, want_vectors: bool) -> Result<QsvdResult> {
    if !want_vectors {
        let bv = bidiagonal_values(a);
        let band = extract_band(&bv.b, bv.is_upper())?;
        let svd = bidiag_svd(&band, false)?;
        return Ok(QsvdResult { u: None, sigma: svd.sigma, v: None });
    }

    let (rows, cols) = a.shape();
    let bd = bidiagonalize(a);
    let upper = bd.is_upper();
    // For lower B the band is read from Bᵀ, whose SVD swaps the roles of
    // the left and right real factors.
    let band = extract_band(&bd.b, upper)?;
    let svd = bidiag_svd(&band, true)?;
    let (w, x) = if upper { (svd.w, svd.x) } else { (svd.x, svd.w) };
    let w = w.embed_in_identity(rows);
    let x = x.embed_in_identity(cols);

    let u = conj_transpose(&bd.l).mul_real(&w)?;
    let v = bd.r.mul_real(&x)?;
    Ok(QsvdResult { u: Some(u), sigma: svd.sigma, v: Some(v) })
}

/// Economy SVD: `U` is r×n and `V` is c×n with `n = min(r, c)`.
pub fn qsvd_thin(a: &QMatrix) -> Result<QsvdResult> {
    let full = qsvd(a, true)?;
    let n = full.sigma.len();
    let u = full.u.expect("vectors requested");
    let v = full.v.expect("vectors requested");
    Ok(QsvdResult {
        u: Some(u.submatrix(0, 0, u.rows(), n)),
        sigma: full.sigma,
        v: Some(v.submatrix(0, 0, v.rows(), n)),
    })
}

/// Singular values only.
pub fn singular_values(a: &QMatrix) -> Result<Vec<f64>> {
    Ok(qsvd(a, false)?.sigma)
}

fn factors(res: &QsvdResult) -> Result<(&QMatrix, &QMatrix)> {
    match (&res.u, &res.v) {
        (Some(u), Some(v)) => Ok((u, v)),
        _ => Err(Error::ShapeMismatch("result carries no singular vectors".into())),
    }
}

/// `U·Σ·V̄ᵀ` for an `r × c` source.
pub fn reconstruct(res: &QsvdResult, r: usize, c: usize) -> Result<QMatrix> {
    let (u, v) = factors(res)?;
    if u.rows() != r || v.rows() != c || res.sigma.len() > u.cols().min(v.cols()) {
        return Err(Error::ShapeMismatch(format!(
            "factors U {}x{}, V {}x{} with {} values do not compose to {r}x{c}",
            u.rows(),
            u.cols(),
            v.rows(),
            v.cols(),
            res.sigma.len()
        )));
    }
    let sigma = RMatrix::rect_diag(u.cols(), v.cols(), &res.sigma);
    let us = u.mul_real(&sigma)?;
    matmul(&us, &conj_transpose(v))
}

/// One named residual and the bound it must not exceed.
#[derive(Debug, Clone, PartialEq)]
pub struct Check {
    pub name: String,
    pub value: f64,
    pub bound: f64,
    pub passed: bool,
    pub note: Option<String>,
}

impl Check {
    pub fn new(name: &str, value: f64, bound: f64) -> Self {
        Self { name: name.to_string(), value, bound, passed: value <= bound, note: None }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct VerifyReport {
    pub checks: Vec<Check>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            write!(
                f,
                "{:<16} {:<4} value={:e} bound={:e}",
                c.name,
                if c.passed { "ok" } else { "FAIL" },
                c.value,
                c.bound
            )?;
            if let Some(note) = &c.note {
                write!(f, " ({note})")?;
            }
            writeln!(f)?;
        }
        write!(f, "{}", if self.passed() { "PASS" } else { "FAIL" })
    }
}

fn orthonormality(m: &QMatrix) -> f64 {
    if m.is_square() {
        unitarity_residual(m).expect("square")
    } else {
        column_orthonormality_residual(m)
    }
}

/// Runs the invariant suite on a decomposition of `a`.
///
/// Bounds scale with `tol`: reconstruction `tol·max(r,c)·‖A‖_F`, unitarity
/// `tol·max(r,c)`, oracle deviation `tol·σ_max`; ordering and
/// nonnegativity are exact.
pub fn verify(a: &QMatrix, res: &QsvdResult, tol: f64) -> Result<VerifyReport> {
    let (r, c) = a.shape();
    let n = r.min(c);
    let (u, v) = factors(res)?;
    let square = u.cols() == r && v.cols() == c;
    let thin = u.cols() == n && v.cols() == n;
    if u.rows() != r || v.rows() != c || !(square || thin) || res.sigma.len() != n {
        return Err(Error::ShapeMismatch(format!(
            "U {}x{}, V {}x{} and {} values do not match a {r}x{c} source",
            u.rows(),
            u.cols(),
            v.rows(),
            v.cols(),
            res.sigma.len()
        )));
    }

    let scale = r.max(c) as f64;
    let a_norm = frobenius_norm(a);
    let mut checks = Vec::new();

    let recon = reconstruct(res, r, c)?;
    checks.push(Check::new(
        "reconstruction",
        a.sub(&recon)?.frobenius_norm(),
        tol * scale * a_norm,
    ));
    checks.push(Check::new("unitarity(U)", orthonormality(u), tol * scale));
    checks.push(Check::new("unitarity(V)", orthonormality(v), tol * scale));

    let disorder = res
        .sigma
        .windows(2)
        .map(|w| w[1] - w[0])
        .fold(0.0_f64, |acc, d| if d.is_nan() { f64::NAN } else { acc.max(d) });
    checks.push(Check::new("ordering", disorder, 0.0));
    let negative = res
        .sigma
        .iter()
        .fold(0.0_f64, |acc, s| if s.is_nan() { f64::NAN } else { acc.max(-s) });
    checks.push(Check::new("nonnegativity", negative, 0.0));

    match adjoint_singular_values(a) {
        Ok(expected) => {
            let dev = expected
                .iter()
                .zip(&res.sigma)
                .map(|(e, s)| (e - s).abs())
                .fold(0.0_f64, |acc, d| if d.is_nan() { f64::NAN } else { acc.max(d) });
            let smax = expected.first().copied().unwrap_or(0.0);
            checks.push(Check::new("oracle", dev, tol * smax));
        }
        Err(err) => {
            let mut check = Check::new("oracle", 0.0, 0.0);
            check.note = Some(format!("not evaluated: {err}"));
            checks.push(check);
        }
    }
    Ok(VerifyReport { checks })
}
