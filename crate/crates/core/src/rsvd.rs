//! SVD of a real upper bidiagonal matrix by Golub–Kahan implicit-shift QR.
//!
//! The band is diagonalized in place by chasing a bulge with Givens
//! rotations. Left rotations accumulate into `W`, right rotations into `X`,
//! keeping `B = W · diag(d) · Xᵀ` throughout.

use crate::error::{Error, Result};
use crate::qmat::RMatrix;

const EPS: f64 = f64::EPSILON;

/// Sweep budget per unit of dimension.
const SWEEPS_PER_ROW: usize = 30;

#[derive(Debug, Clone, PartialEq)]
pub struct BidiagonalBand {
    /// Diagonal, length `n ≥ 1`.
    pub d: Vec<f64>,
    /// Superdiagonal, length `n − 1`.
    pub e: Vec<f64>,
}

impl BidiagonalBand {
    pub fn new(d: Vec<f64>, e: Vec<f64>) -> Result<Self> {
        if d.is_empty() {
            return Err(Error::ShapeMismatch("bidiagonal band needs n >= 1".into()));
        }
        if e.len() + 1 != d.len() {
            return Err(Error::ShapeMismatch(format!(
                "diagonal of length {} needs {} superdiagonal entries, got {}",
                d.len(),
                d.len() - 1,
                e.len()
            )));
        }
        Ok(Self { d, e })
    }

    pub fn n(&self) -> usize {
        self.d.len()
    }

    /// Dense `n × n` upper bidiagonal matrix.
    pub fn to_dense(&self) -> RMatrix {
        let n = self.n();
        let mut m = RMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = self.d[i];
            if i + 1 < n {
                m[(i, i + 1)] = self.e[i];
            }
        }
        m
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.to_dense().frobenius_norm()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RealSvdResult {
    pub w: RMatrix,
    /// Nonnegative and descending.
    pub sigma: Vec<f64>,
    pub x: RMatrix,
}

impl RealSvdResult {
    /// `W · diag(σ) · Xᵀ`.
    pub fn reconstruct(&self) -> RMatrix {
        let n = self.sigma.len();
        let mut ws = self.w.clone();
        for i in 0..n {
            for j in 0..n {
                ws[(i, j)] *= self.sigma[j];
            }
        }
        ws.matmul(&self.x.transpose()).expect("square factors")
    }
}

/// Plane rotation with `c·a + s·b = r` and `−s·a + c·b = 0`.
///
/// `r = hypot(a, b) ≥ 0`; `(0, 0)` maps to `(1, 0, 0)`.
pub fn givens(a: f64, b: f64) -> (f64, f64, f64) {
    if b == 0.0 {
        if a == 0.0 {
            return (1.0, 0.0, 0.0);
        }
        return (a.signum(), 0.0, a.abs());
    }
    // Scaling keeps subnormal inputs from losing precision in the quotient.
    let scale = a.abs().max(b.abs());
    let (a, b) = (a / scale, b / scale);
    let h = a.hypot(b);
    (a / h, b / h, scale * h)
}

struct Workspace {
    d: Vec<f64>,
    e: Vec<f64>,
    w: Option<RMatrix>,
    x: Option<RMatrix>,
}

impl Workspace {
    fn rotate_w(&mut self, p: usize, q: usize, c: f64, s: f64) {
        if let Some(w) = self.w.as_mut() {
            w.rotate_cols(p, q, c, s);
        }
    }

    fn rotate_x(&mut self, p: usize, q: usize, c: f64, s: f64) {
        if let Some(x) = self.x.as_mut() {
            x.rotate_cols(p, q, c, s);
        }
    }

    /// `d[i] = 0` with `i < hi`: push `e[i]` along row `i` into oblivion
    /// with left rotations against rows `i+1..=hi`.
    fn chase_row(&mut self, i: usize, hi: usize) {
        let mut f = self.e[i];
        self.e[i] = 0.0;
        for j in i + 1..=hi {
            if f == 0.0 {
                break;
            }
            let (c, s, r) = givens(self.d[j], f);
            self.d[j] = r;
            if j < hi {
                f = -s * self.e[j];
                self.e[j] *= c;
            }
            self.rotate_w(j, i, c, s);
        }
    }

    /// `d[hi] = 0`: push `e[hi−1]` up column `hi` with right rotations
    /// against columns `hi−1, …, lo`.
    fn chase_column(&mut self, lo: usize, hi: usize) {
        let mut f = self.e[hi - 1];
        self.e[hi - 1] = 0.0;
        for j in (lo..hi).rev() {
            if f == 0.0 {
                break;
            }
            let (c, s, r) = givens(self.d[j], f);
            self.d[j] = r;
            if j > lo {
                f = -s * self.e[j - 1];
                self.e[j - 1] *= c;
            }
            self.rotate_x(j, hi, c, s);
        }
    }

    /// One implicit-shift QR step on the unreduced block `lo..=hi`.
    fn qr_step(&mut self, lo: usize, hi: usize) {
        let shift = self.wilkinson_shift(lo, hi);
        let mut y = self.d[lo] * self.d[lo] - shift;
        let mut z = self.d[lo] * self.e[lo];
        for k in lo..hi {
            // Right rotation on columns k, k+1.
            let (c, s, r) = givens(y, z);
            if k > lo {
                self.e[k - 1] = r;
            }
            let (dk, ek, dk1) = (self.d[k], self.e[k], self.d[k + 1]);
            self.d[k] = c * dk + s * ek;
            self.e[k] = -s * dk + c * ek;
            let bulge = s * dk1;
            self.d[k + 1] = c * dk1;
            self.rotate_x(k, k + 1, c, s);

            // Left rotation on rows k, k+1.
            let (c, s, r) = givens(self.d[k], bulge);
            self.d[k] = r;
            let (ek, dk1) = (self.e[k], self.d[k + 1]);
            self.e[k] = c * ek + s * dk1;
            self.d[k + 1] = -s * ek + c * dk1;
            self.rotate_w(k, k + 1, c, s);
            if k + 1 < hi {
                y = self.e[k];
                z = s * self.e[k + 1];
                self.e[k + 1] *= c;
            }
        }
    }

    /// Eigenvalue of the trailing 2×2 of `BᵀB` (block `lo..=hi`) closer to
    /// its last diagonal entry.
    fn wilkinson_shift(&self, lo: usize, hi: usize) -> f64 {
        let dm = self.d[hi - 1];
        let dn = self.d[hi];
        let em = self.e[hi - 1];
        let el = if hi - 1 > lo { self.e[hi - 2] } else { 0.0 };
        let t11 = dm * dm + el * el;
        let t12 = dm * em;
        let t22 = dn * dn + em * em;
        if t12 == 0.0 {
            return t22;
        }
        let delta = 0.5 * (t11 - t22);
        let root = delta.hypot(t12);
        let denom = if delta >= 0.0 { delta + root } else { delta - root };
        t22 - t12 * t12 / denom
    }
}

/// SVD of the upper bidiagonal matrix described by `band`.
///
/// With `want_vectors = false` only `sigma` is meaningful and `W`, `X` are
/// identities.
pub fn bidiag_svd(band: &BidiagonalBand, want_vectors: bool) -> Result<RealSvdResult> {
    let n = band.n();
    if band.e.len() + 1 != n {
        return Err(Error::ShapeMismatch("superdiagonal length must be n - 1".into()));
    }
    let norm = band.frobenius_norm();
    let mut ws = Workspace {
        d: band.d.clone(),
        e: band.e.clone(),
        w: want_vectors.then(|| RMatrix::identity(n)),
        x: want_vectors.then(|| RMatrix::identity(n)),
    };

    let max_sweeps = SWEEPS_PER_ROW * n;
    let mut sweeps = 0;
    loop {
        for i in 0..n.saturating_sub(1) {
            if ws.e[i].abs() <= EPS * (ws.d[i].abs() + ws.d[i + 1].abs()) {
                ws.e[i] = 0.0;
            }
        }
        // Trailing unreduced block lo..=hi.
        let mut hi = n - 1;
        while hi > 0 && ws.e[hi - 1] == 0.0 {
            hi -= 1;
        }
        if hi == 0 {
            break;
        }
        let mut lo = hi - 1;
        while lo > 0 && ws.e[lo - 1] != 0.0 {
            lo -= 1;
        }

        if sweeps >= max_sweeps {
            return Err(Error::NoConvergence { routine: "bidiagonal QR", iterations: sweeps });
        }
        sweeps += 1;

        let tiny = EPS * norm;
        if let Some(i) = (lo..hi).find(|&i| ws.d[i].abs() <= tiny) {
            ws.d[i] = 0.0;
            ws.chase_row(i, hi);
        } else if ws.d[hi].abs() <= tiny {
            ws.d[hi] = 0.0;
            ws.chase_column(lo, hi);
        } else {
            ws.qr_step(lo, hi);
        }
    }

    // Fold signs into X, then sort descending (stable).
    for i in 0..n {
        if ws.d[i] < 0.0 {
            ws.d[i] = -ws.d[i];
            if let Some(x) = ws.x.as_mut() {
                for r in 0..n {
                    x[(r, i)] = -x[(r, i)];
                }
            }
        } else if ws.d[i] == 0.0 {
            ws.d[i] = 0.0; // clears -0.0
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| ws.d[b].partial_cmp(&ws.d[a]).unwrap_or(std::cmp::Ordering::Equal));
    let sigma: Vec<f64> = order.iter().map(|&i| ws.d[i]).collect();
    let permute = |m: Option<RMatrix>| match m {
        Some(m) => RMatrix::from_fn(n, n, |r, c| m[(r, order[c])]),
        None => RMatrix::identity(n),
    };
    let w = permute(ws.w.take());
    let x = permute(ws.x.take());
    Ok(RealSvdResult { w, sigma, x })
}
