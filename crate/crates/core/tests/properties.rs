use proptest::prelude::*;

use quatsvd::bidiag::{bidiagonal_values, bidiagonalize, check_bidiagonal, extract_band};
use quatsvd::format::{parse_qmat, parse_rmat, write_qmat_string, write_rmat_string};
use quatsvd::householder::{
    apply_left, apply_right, form_matrix, left_householder, projector_complement, right_householder,
    right_householder_direct,
};
use quatsvd::oracle::{adjoint_singular_values, jacobi_eigen, real_adjoint};
use quatsvd::qmat::{conj_transpose, matmul, outer_hermitian, unitarity_residual};
use quatsvd::random::{random_qmatrix, random_qvector, random_unit_quaternion, random_unitary, seeded};
use quatsvd::rsvd::{bidiag_svd, BidiagonalBand};
use quatsvd::{qsvd, reconstruct, singular_values, QMatrix, QVector, Quaternion, RMatrix};

fn quat() -> impl Strategy<Value = Quaternion> {
    prop::array::uniform4(-10.0..10.0f64).prop_map(|[w, x, y, z]| Quaternion::new(w, x, y, z))
}

fn qvector(max_len: usize) -> impl Strategy<Value = QVector> {
    prop::collection::vec(quat(), 1..=max_len).prop_map(|v| QVector::new(v).unwrap())
}

fn qvector_of(len: usize) -> impl Strategy<Value = QVector> {
    prop::collection::vec(quat(), len).prop_map(|v| QVector::new(v).unwrap())
}

fn qmatrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = QMatrix> {
    (1..=max_rows, 1..=max_cols, any::<u64>()).prop_map(|(r, c, seed)| random_qmatrix(r, c, &mut seeded(seed)))
}

fn qdiff(a: &QMatrix, b: &QMatrix) -> f64 {
    a.sub(b).unwrap().frobenius_norm()
}

fn qclose(a: Quaternion, b: Quaternion, tol: f64) -> bool {
    (a - b).modulus() <= tol * (1.0 + a.modulus().max(b.modulus()))
}

proptest! {
    #[test]
    fn product_conjugate_reverses(p in quat(), q in quat()) {
        prop_assert!(qclose((p * q).conj(), q.conj() * p.conj(), 1e-14));
    }

    #[test]
    fn modulus_is_multiplicative(p in quat(), q in quat()) {
        let lhs = (p * q).modulus();
        let rhs = p.modulus() * q.modulus();
        prop_assert!((lhs - rhs).abs() <= 1e-13 * (1.0 + rhs));
    }

    #[test]
    fn inverse_is_two_sided(q in quat()) {
        prop_assume!(q.modulus() > 1e-6);
        let inv = q.inv().unwrap();
        prop_assert!(qclose(q * inv, Quaternion::ONE, 1e-13));
        prop_assert!(qclose(inv * q, Quaternion::ONE, 1e-13));
    }

    #[test]
    fn conjugate_transpose_of_product(seed in any::<u64>(), r in 1usize..5, k in 1usize..5, c in 1usize..5) {
        let mut rng = seeded(seed);
        let a = random_qmatrix(r, k, &mut rng);
        let b = random_qmatrix(k, c, &mut rng);
        let lhs = conj_transpose(&matmul(&a, &b).unwrap());
        let rhs = matmul(&conj_transpose(&b), &conj_transpose(&a)).unwrap();
        prop_assert!(qdiff(&lhs, &rhs) <= 1e-13);
    }

    #[test]
    fn outer_product_is_hermitian(u in qvector(8)) {
        let m = outer_hermitian(&u);
        prop_assert!(qdiff(&m, &conj_transpose(&m)) <= 1e-13 * (1.0 + u.norm() * u.norm()));
    }

    #[test]
    fn unitaries_closed_under_product(seed in any::<u64>(), n in 1usize..7) {
        let mut rng = seeded(seed);
        let p = matmul(&random_unitary(n, &mut rng), &random_unitary(n, &mut rng)).unwrap();
        prop_assert!(unitarity_residual(&p).unwrap() <= 1e-12);
    }

    #[test]
    fn unit_scalar_times_unitary_is_unitary(seed in any::<u64>(), n in 1usize..7) {
        let mut rng = seeded(seed);
        let u = random_unitary(n, &mut rng);
        let z = random_unit_quaternion(&mut rng);
        prop_assert!(unitarity_residual(&u.scale_left(z)).unwrap() <= 1e-12);
        prop_assert!(unitarity_residual(&u.scale_right(z)).unwrap() <= 1e-12);
    }

    #[test]
    fn left_householder_hits_target(a in qvector(12), idx in 0usize..12) {
        let n = a.len();
        let v = QVector::unit(n, idx % n);
        let h = left_householder(&a, &v).unwrap();
        prop_assert!(h.u.is_zero() || (h.u.norm().powi(2) - 2.0).abs() <= 1e-12);
        prop_assert!((h.zeta.modulus() - 1.0).abs() <= 1e-14);
        let ha = apply_left(&h, &a.as_column()).unwrap();
        let expected = v.as_column().scale_left(Quaternion::real(a.norm()));
        prop_assert!(qdiff(&ha, &expected) <= 1e-13 * a.norm().max(1.0));
        prop_assert!(unitarity_residual(&form_matrix(&h)).unwrap() <= 1e-13 * n as f64);
    }

    #[test]
    fn right_householder_hits_target(a in qvector(12)) {
        let n = a.len();
        let row = conj_transpose(&a.conj().as_column());
        let v = QVector::unit(n, 0);
        let g = right_householder(&a, &v).unwrap();
        let ag = apply_right(&g, &row).unwrap();
        let expected = conj_transpose(&v.as_column()).scale_left(Quaternion::real(a.norm()));
        prop_assert!(qdiff(&ag, &expected) <= 1e-13 * a.norm().max(1.0));
        prop_assert!(unitarity_residual(&form_matrix(&g)).unwrap() <= 1e-13 * n as f64);
    }

    #[test]
    fn direct_and_reduced_right_reflectors_agree(a in qvector(10)) {
        let v = QVector::unit(a.len(), 0);
        let g1 = right_householder(&a, &v).unwrap();
        let g2 = right_householder_direct(&a, &v).unwrap();
        prop_assert!(qclose(g1.zeta, g2.zeta, 1e-13));
        let d = qdiff(&projector_complement(&g1.u), &projector_complement(&g2.u));
        prop_assert!(d <= 1e-12);
    }

    #[test]
    fn householder_preserves_norm(pair in (1usize..10).prop_flat_map(|n| (qvector_of(n), qvector_of(n)))) {
        let (a, b) = pair;
        let h = left_householder(&a, &QVector::unit(a.len(), 0)).unwrap();
        let hb = apply_left(&h, &b.as_column()).unwrap();
        prop_assert!((hb.frobenius_norm() - b.norm()).abs() <= 1e-13 * (1.0 + b.norm()));
    }

    #[test]
    fn bidiagonalization_invariants(a in qmatrix(9, 9)) {
        let (r, c) = a.shape();
        let scale = r.max(c) as f64;
        let norm = a.frobenius_norm();
        let bd = bidiagonalize(&a);
        let lar = matmul(&matmul(&bd.l, &a).unwrap(), &bd.r).unwrap();
        prop_assert!(qdiff(&lar, &QMatrix::from_real(&bd.b)) <= 1e-12 * scale * norm);
        prop_assert!(unitarity_residual(&bd.l).unwrap() <= 1e-11 * scale);
        prop_assert!(unitarity_residual(&bd.r).unwrap() <= 1e-11 * scale);
        prop_assert!(check_bidiagonal(&bd.b, bd.is_upper(), 0.0));
        prop_assert!(bd.snap_residue <= 1e-12 * norm);
        prop_assert!((bd.b.frobenius_norm() - norm).abs() <= 1e-12 * scale * norm);
        let values = bidiagonal_values(&a);
        prop_assert_eq!(values.b, bd.b);
    }

    #[test]
    fn band_svd_invariants(
        d in prop::collection::vec(-5.0..5.0f64, 1..16),
        e_seed in prop::collection::vec(-5.0..5.0f64, 16),
    ) {
        let n = d.len();
        let band = BidiagonalBand::new(d, e_seed[..n - 1].to_vec()).unwrap();
        let dense = band.to_dense();
        let norm = band.frobenius_norm();
        let svd = bidiag_svd(&band, true).unwrap();
        prop_assert!(svd.w.orthogonality_residual() <= 1e-13 * n as f64);
        prop_assert!(svd.x.orthogonality_residual() <= 1e-13 * n as f64);
        prop_assert!(svd.reconstruct().sub(&dense).unwrap().frobenius_norm() <= 1e-13 * n as f64 * norm.max(1.0));
        prop_assert!(svd.sigma.windows(2).all(|w| w[0] >= w[1]));
        prop_assert!(svd.sigma.iter().all(|&s| s >= 0.0));
        let sum_sq: f64 = svd.sigma.iter().map(|s| s * s).sum();
        prop_assert!((sum_sq.sqrt() - norm).abs() <= 1e-13 * n as f64 * norm.max(1.0));

        let mut eig = jacobi_eigen(&dense.transpose().matmul(&dense).unwrap()).unwrap();
        eig.reverse();
        for (s, l) in svd.sigma.iter().zip(&eig) {
            prop_assert!((s * s - l.max(0.0)).abs() <= 1e-10 * norm * norm);
        }
    }

    #[test]
    fn adjoint_is_homomorphism(seed in any::<u64>(), r in 1usize..4, k in 1usize..4, c in 1usize..4) {
        let mut rng = seeded(seed);
        let a = random_qmatrix(r, k, &mut rng);
        let b = random_qmatrix(k, c, &mut rng);
        let lhs = real_adjoint(&matmul(&a, &b).unwrap());
        let rhs = real_adjoint(&a).matmul(&real_adjoint(&b)).unwrap();
        prop_assert!(lhs.sub(&rhs).unwrap().frobenius_norm() <= 1e-13);
        let t = real_adjoint(&conj_transpose(&a));
        prop_assert_eq!(t, real_adjoint(&a).transpose());
    }

    #[test]
    fn qsvd_matches_adjoint(a in qmatrix(6, 6)) {
        let sigma = singular_values(&a).unwrap();
        let oracle = adjoint_singular_values(&a).unwrap();
        let smax = oracle[0];
        for (s, o) in sigma.iter().zip(&oracle) {
            prop_assert!((s - o).abs() <= 1e-10 * smax);
        }
    }

    #[test]
    fn qsvd_reconstructs(a in qmatrix(8, 8)) {
        let (r, c) = a.shape();
        let scale = r.max(c) as f64;
        let res = qsvd(&a, true).unwrap();
        let back = reconstruct(&res, r, c).unwrap();
        prop_assert!(qdiff(&a, &back) <= 1e-12 * scale * a.frobenius_norm());
        prop_assert!(unitarity_residual(res.u.as_ref().unwrap()).unwrap() <= 1e-11 * scale);
        prop_assert!(unitarity_residual(res.v.as_ref().unwrap()).unwrap() <= 1e-11 * scale);
        let sum_sq: f64 = res.sigma.iter().map(|s| s * s).sum();
        prop_assert!((sum_sq.sqrt() - a.frobenius_norm()).abs() <= 1e-12 * scale * a.frobenius_norm());
    }

    #[test]
    fn singular_values_are_unitarily_invariant(seed in any::<u64>(), r in 1usize..6, c in 1usize..6) {
        let mut rng = seeded(seed);
        let a = random_qmatrix(r, c, &mut rng);
        let p = random_unitary(r, &mut rng);
        let q = random_unitary(c, &mut rng);
        let paq = matmul(&matmul(&p, &a).unwrap(), &q).unwrap();
        let s1 = singular_values(&a).unwrap();
        let s2 = singular_values(&paq).unwrap();
        for (x, y) in s1.iter().zip(&s2) {
            prop_assert!((x - y).abs() <= 1e-12 * s1[0].max(1.0));
        }
    }

    #[test]
    fn real_input_matches_real_band_svd(seed in any::<u64>(), n in 1usize..6) {
        let mut rng = seeded(seed);
        let reals = random_qmatrix(n, n, &mut rng).real_part();
        let a = QMatrix::from_real(&reals);
        let sigma = singular_values(&a).unwrap();
        let mut eig = jacobi_eigen(&reals.transpose().matmul(&reals).unwrap()).unwrap();
        eig.reverse();
        for (s, l) in sigma.iter().zip(&eig) {
            prop_assert!((s * s - l.max(0.0)).abs() <= 1e-10 * (1.0 + eig[0]));
        }
    }

    #[test]
    fn rank_one_has_one_nonzero_value(u in qvector(6), v in qvector(6)) {
        let a = matmul(&u.as_column(), &conj_transpose(&v.as_column())).unwrap();
        let sigma = singular_values(&a).unwrap();
        let expected = u.norm() * v.norm();
        prop_assert!((sigma[0] - expected).abs() <= 1e-12 * expected.max(1.0));
        prop_assert!(sigma[1..].iter().all(|&s| s <= 1e-12 * expected.max(1.0)));
    }

    #[test]
    fn qmat_round_trip_is_bit_exact(a in qmatrix(5, 5), q in quat()) {
        let mut a = a;
        a = a.scale_left(q);
        let back = parse_qmat(&write_qmat_string(&a)).unwrap();
        prop_assert_eq!(
            a.as_slice().iter().flat_map(|q| q.components().map(f64::to_bits)).collect::<Vec<_>>(),
            back.as_slice().iter().flat_map(|q| q.components().map(f64::to_bits)).collect::<Vec<_>>()
        );
    }

    #[test]
    fn rmat_round_trip_is_bit_exact(v in prop::collection::vec(any::<f64>().prop_filter("finite", |x| x.is_finite()), 1..30)) {
        let m = RMatrix::from_vec(1, v.len(), v).unwrap();
        let back = parse_rmat(&write_rmat_string(&m)).unwrap();
        prop_assert_eq!(
            m.as_slice().iter().map(|x| x.to_bits()).collect::<Vec<_>>(),
            back.as_slice().iter().map(|x| x.to_bits()).collect::<Vec<_>>()
        );
    }
}

#[test]
fn extracted_band_matches_bidiagonal_form() {
    let mut rng = seeded(11);
    for (r, c) in [(5, 3), (3, 5), (4, 4), (1, 6), (6, 1)] {
        let a = random_qmatrix(r, c, &mut rng);
        let bd = bidiagonalize(&a);
        let band = extract_band(&bd.b, bd.is_upper()).unwrap();
        let dense = band.to_dense();
        let n = r.min(c);
        for i in 0..n {
            for j in 0..n {
                let b = if bd.is_upper() { bd.b[(i, j)] } else { bd.b[(j, i)] };
                assert_eq!(dense[(i, j)], b);
            }
        }
    }
}

#[test]
fn random_vectors_have_requested_length() {
    let mut rng = seeded(3);
    for n in 1..10 {
        assert_eq!(random_qvector(n, &mut rng).len(), n);
    }
}
