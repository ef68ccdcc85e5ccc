//! Seeded random quaternion matrices.
//!
//! Everything random in the crate and its CLI flows through one
//! xoshiro256++ stream seeded from a `u64`; there is no other entropy.

use rand::{Rng, SeedableRng};
use rand_xoshiro::Xoshiro256PlusPlus;

use crate::householder::{form_matrix, left_householder};
use crate::qmat::{matmul, QMatrix, QVector};
use crate::quat::Quaternion;

pub type QRng = Xoshiro256PlusPlus;

pub fn seeded(seed: u64) -> QRng {
    Xoshiro256PlusPlus::seed_from_u64(seed)
}

/// Components uniform on `[-1, 1]`.
pub fn random_quaternion(rng: &mut QRng) -> Quaternion {
    Quaternion::new(
        rng.random_range(-1.0..=1.0),
        rng.random_range(-1.0..=1.0),
        rng.random_range(-1.0..=1.0),
        rng.random_range(-1.0..=1.0),
    )
}

/// Row-major fill, four components per entry.
pub fn random_qmatrix(rows: usize, cols: usize, rng: &mut QRng) -> QMatrix {
    QMatrix::from_fn(rows, cols, |_, _| random_quaternion(rng))
}

pub fn random_qvector(len: usize, rng: &mut QRng) -> QVector {
    QVector::new((0..len).map(|_| random_quaternion(rng)).collect()).expect("len >= 1")
}

/// Unit quaternion drawn from the random stream.
pub fn random_unit_quaternion(rng: &mut QRng) -> Quaternion {
    loop {
        let q = random_quaternion(rng);
        let m = q.modulus();
        if m > 1e-3 {
            return q / m;
        }
    }
}

/// Unitary `n × n` matrix built as a product of `n` random left reflectors.
pub fn random_unitary(n: usize, rng: &mut QRng) -> QMatrix {
    let e1 = QVector::unit(n, 0);
    let mut acc = QMatrix::identity(n);
    for _ in 0..n {
        let h = left_householder(&random_qvector(n, rng), &e1).expect("unit target");
        acc = matmul(&form_matrix(&h), &acc).expect("square");
    }
    acc
}
