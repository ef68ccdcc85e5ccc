//! Independent singular values through the real adjoint.
//!
//! Each quaternion `q = w + xi + yj + zk` becomes the 4×4 real matrix of
//! left multiplication by `q`. The map is a ring homomorphism, so the
//! adjoint of an `r×c` quaternion matrix is a `4r×4c` real matrix whose
//! singular values are those of the quaternion matrix, each repeated four
//! times. Eigenvalues of the Gram matrix come from cyclic Jacobi, a
//! different algorithm family from the bidiagonal QR in `rsvd`.
//!
//! The Gram route squares the condition number; it is only reliable when
//! `σ_min / σ_max` is well above `1e-7`.

use crate::error::{Error, Result};
use crate::qmat::{QMatrix, RMatrix};
use crate::quat::Quaternion;

const JACOBI_MAX_SWEEPS: usize = 50;
const JACOBI_OFF_TOL: f64 = 1e-14;
const SYMMETRY_TOL: f64 = 1e-12;
const GROUP_SPREAD_TOL: f64 = 1e-8;

/// Left-multiplication block of `q`.
pub fn adjoint_block(q: Quaternion) -> [[f64; 4]; 4] {
    let Quaternion { w, x, y, z } = q;
    [
        [w, -x, -y, -z],
        [x, w, -z, y],
        [y, z, w, -x],
        [z, -y, x, w],
    ]
}

pub fn real_adjoint(a: &QMatrix) -> RMatrix {
    let mut m = RMatrix::zeros(4 * a.rows(), 4 * a.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let block = adjoint_block(a[(i, j)]);
            for (bi, row) in block.iter().enumerate() {
                for (bj, v) in row.iter().enumerate() {
                    m[(4 * i + bi, 4 * j + bj)] = *v;
                }
            }
        }
    }
    m
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations, ascending.
pub fn jacobi_eigen(s: &RMatrix) -> Result<Vec<f64>> {
    let n = s.rows();
    if s.cols() != n {
        return Err(Error::ShapeMismatch(format!(
            "eigenvalues need a square matrix, got {}x{}",
            s.rows(),
            s.cols()
        )));
    }
    let norm = s.frobenius_norm();
    let asym = s.sub(&s.transpose())?.frobenius_norm();
    if asym > SYMMETRY_TOL * norm {
        return Err(Error::NotSymmetric { asymmetry: asym });
    }

    let mut a = s.clone();
    let off_norm = |a: &RMatrix| {
        let mut sum = 0.0;
        for p in 0..n {
            for q in p + 1..n {
                sum += a[(p, q)] * a[(p, q)];
            }
        }
        (2.0 * sum).sqrt()
    };

    let mut sweeps = 0;
    while off_norm(&a) > JACOBI_OFF_TOL * norm {
        if sweeps == JACOBI_MAX_SWEEPS {
            return Err(Error::NoConvergence { routine: "Jacobi eigensolver", iterations: sweeps });
        }
        sweeps += 1;
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = if theta.abs() > 1e150 {
                    0.5 / theta
                } else {
                    theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                let tau = s / (1.0 + c);

                a[(p, p)] -= t * apq;
                a[(q, q)] += t * apq;
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;
                for r in 0..n {
                    if r == p || r == q {
                        continue;
                    }
                    let g = a[(r, p)];
                    let h = a[(r, q)];
                    let rp = g - s * (h + g * tau);
                    let rq = h + s * (g - h * tau);
                    a[(r, p)] = rp;
                    a[(p, r)] = rp;
                    a[(r, q)] = rq;
                    a[(q, r)] = rq;
                }
            }
        }
    }

    let mut eig = a.diagonal();
    eig.sort_by(|x, y| x.total_cmp(y));
    Ok(eig)
}

/// Singular values of `a` from the real adjoint, one per fourfold run,
/// descending.
pub fn adjoint_singular_values(a: &QMatrix) -> Result<Vec<f64>> {
    let n = a.rows().min(a.cols());
    let chi = real_adjoint(a);
    // The smaller Gram matrix has the same nonzero spectrum.
    let gram = if a.rows() >= a.cols() {
        chi.transpose().matmul(&chi)?
    } else {
        chi.matmul(&chi.transpose())?
    };
    let eig = jacobi_eigen(&gram)?;
    let mut values: Vec<f64> = eig.iter().rev().take(4 * n).map(|&l| l.max(0.0).sqrt()).collect();
    values.sort_by(|x, y| y.total_cmp(x));

    group_fourfold(&values)
}

/// Splits a descending list of `4n` values into `n` adjacent runs of four
/// and returns each run's mean.
fn group_fourfold(values: &[f64]) -> Result<Vec<f64>> {
    debug_assert_eq!(values.len() % 4, 0);
    let max = values.first().copied().unwrap_or(0.0);
    let mut out = Vec::with_capacity(values.len() / 4);
    for (g, group) in values.chunks(4).enumerate() {
        let spread = group[0] - group[3];
        if spread > GROUP_SPREAD_TOL * max {
            return Err(Error::GroupingFailure(format!(
                "group {g} spans [{}, {}], spread {spread:e} exceeds {:e}",
                group[3],
                group[0],
                GROUP_SPREAD_TOL * max
            )));
        }
        out.push(group.iter().sum::<f64>() / 4.0);
    }
    Ok(out)
}
