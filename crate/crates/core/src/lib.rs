//! Quaternion singular value decomposition.
//!
//! A quaternion matrix is reduced to a *real* bidiagonal matrix by left and
//! right quaternion Householder transformations; the real bidiagonal core is
//! diagonalized by implicit-shift QR, and the quaternion singular vectors are
//! the unitary factors times the real ones.
//!
//! ```
//! use quatsvd::{qsvd, reconstruct, QMatrix, Quaternion};
//!
//! let a = QMatrix::from_rows(&[
//!     vec![Quaternion::new(1.0, 2.0, 0.0, -1.0), Quaternion::J],
//!     vec![Quaternion::K, Quaternion::real(0.5)],
//! ]);
//! let svd = qsvd(&a, true).unwrap();
//! assert!(svd.sigma[0] >= svd.sigma[1]);
//! let back = reconstruct(&svd, 2, 2).unwrap();
//! assert!(a.sub(&back).unwrap().frobenius_norm() < 1e-13);
//! ```

pub mod bidiag;
pub mod cli;
pub mod error;
pub mod format;
pub mod householder;
pub mod oracle;
pub mod qmat;
pub mod qsvd;
pub mod quat;
pub mod random;
pub mod rsvd;

pub use bidiag::{bidiagonal_values, bidiagonalize, check_bidiagonal, extract_band, BidiagResult};
pub use error::{Error, Result};
pub use householder::{
    apply_left, apply_right, form_matrix, left_householder, right_householder, HouseholderReflector, Side,
};
pub use oracle::{adjoint_singular_values, jacobi_eigen, real_adjoint};
pub use qmat::{conj_transpose, frobenius_norm, is_unitary, matmul, outer_hermitian, vec_norm, QMatrix, QVector, RMatrix};
pub use qsvd::{qsvd, qsvd_thin, reconstruct, singular_values, verify, QsvdResult, VerifyReport};
pub use quat::Quaternion;
pub use rsvd::{bidiag_svd, givens, BidiagonalBand, RealSvdResult};
