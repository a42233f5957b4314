mod common;

use ccnr::linalg::{eig_hermitian, hs_inner, kron, svd, trace_norm, unvec_r, vec_r, ComplexMatrix};
use ccnr::rng::Sampler;
use common::{column_gram_deviation, random_hermitian, random_matrix, random_unitary};
use num_complex::Complex64;
use proptest::prelude::*;

fn check_svd(a: &ComplexMatrix) {
    let r = svd(a).unwrap();
    let scale = a.hs_norm().max(1.0);
    assert!(r.s.windows(2).all(|w| w[0] >= w[1]), "not sorted: {:?}", r.s);
    assert!(r.s.iter().all(|&x| x >= 0.0));
    let resid = (&r.reconstruct() - a).hs_norm();
    assert!(resid <= 1e-10 * scale, "reconstruction residual {resid:e}");
    assert!(column_gram_deviation(&r.u) <= 1e-10);
    assert!(column_gram_deviation(&r.vdag.adjoint()) <= 1e-10);
}

#[test]
fn svd_invariants_on_random_matrices() {
    let mut sampler = Sampler::new(2024);
    for t in 0..200 {
        let rows = 1 + (sampler.uniform() * 16.0) as usize;
        let cols = 1 + (sampler.uniform() * 16.0) as usize;
        let mut a = random_matrix(rows, cols, &mut sampler);
        // Every fourth case is rank deficient.
        if t % 4 == 0 && rows > 1 && cols > 1 {
            let k = 1 + t % rows.min(cols);
            let left = random_matrix(rows, k.min(rows - 1).max(1), &mut sampler);
            let right = random_matrix(left.cols(), cols, &mut sampler);
            a = left.matmul(&right);
        }
        check_svd(&a);
    }
}

#[test]
fn svd_recovers_planted_singular_values() {
    let mut sampler = Sampler::new(5);
    for _ in 0..20 {
        let u = random_unitary(2, &mut sampler);
        let v = random_unitary(2, &mut sampler);
        let a = u
            .matmul(&ComplexMatrix::from_real_diag(&[5.0, 1.0]))
            .matmul(&v.adjoint());
        let s = svd(&a).unwrap().s;
        assert!((s[0] - 5.0).abs() < 1e-10 && (s[1] - 1.0).abs() < 1e-10, "{s:?}");
    }
    // Larger planted spectrum with a degenerate pair and a zero.
    let planted = [7.0, 3.0, 3.0, 0.5, 0.0];
    let u = random_unitary(5, &mut sampler);
    let v = random_unitary(5, &mut sampler);
    let a = u.matmul(&ComplexMatrix::from_real_diag(&planted)).matmul(&v.adjoint());
    let s = svd(&a).unwrap().s;
    for (got, want) in s.iter().zip(planted) {
        assert!((got - want).abs() < 1e-10, "{s:?}");
    }
}

#[test]
fn svd_is_deterministic() {
    let mut sampler = Sampler::new(9);
    let a = random_matrix(7, 5, &mut sampler);
    let x = svd(&a).unwrap();
    let y = svd(&a).unwrap();
    assert_eq!(x.s, y.s);
    assert_eq!(x.u, y.u);
    assert_eq!(x.vdag, y.vdag);
}

#[test]
fn trace_norm_is_unitarily_invariant() {
    let mut sampler = Sampler::new(77);
    for n in [2, 3, 5, 8] {
        let a = random_matrix(n, n, &mut sampler);
        let u = random_unitary(n, &mut sampler);
        let v = random_unitary(n, &mut sampler);
        let base = trace_norm(&a).unwrap();
        let rotated = trace_norm(&u.matmul(&a).matmul(&v)).unwrap();
        assert!((base - rotated).abs() <= 1e-9);
    }
}

#[test]
fn trace_norm_bounds_trace_of_hermitian() {
    let mut sampler = Sampler::new(13);
    for n in 1..9 {
        let h = random_hermitian(n, &mut sampler);
        assert!(trace_norm(&h).unwrap() >= h.trace().norm() - 1e-12);
    }
}

#[test]
fn eig_invariants_on_random_hermitian() {
    let mut sampler = Sampler::new(31);
    for n in [1, 2, 3, 6, 10, 17] {
        let a = random_hermitian(n, &mut sampler);
        let e = eig_hermitian(&a).unwrap();
        let scale = a.hs_norm().max(1.0);
        assert!(e.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
        let sum: f64 = e.eigenvalues.iter().sum();
        assert!((sum - a.trace().re).abs() <= 1e-10 * scale);
        let av = a.matmul(&e.eigenvectors);
        for k in 0..n {
            let resid: f64 = (0..n)
                .map(|i| (av[(i, k)] - e.eigenvectors[(i, k)] * e.eigenvalues[k]).norm_sqr())
                .sum::<f64>()
                .sqrt();
            assert!(resid <= 1e-10 * scale);
        }
        assert!(column_gram_deviation(&e.eigenvectors) <= 1e-10);
    }
}

#[test]
fn eig_of_degenerate_spectrum() {
    let mut sampler = Sampler::new(3);
    let u = random_unitary(6, &mut sampler);
    let d = ComplexMatrix::from_real_diag(&[-1.0, 2.0, 2.0, 2.0, 0.0, 0.0]);
    let a = u.matmul(&d).matmul(&u.adjoint());
    let a = ComplexMatrix::from_fn(6, 6, |i, j| 0.5 * (a[(i, j)] + a[(j, i)].conj()));
    let e = eig_hermitian(&a).unwrap();
    for (got, want) in e.eigenvalues.iter().zip([-1.0, 0.0, 0.0, 2.0, 2.0, 2.0]) {
        assert!((got - want).abs() < 1e-12, "{:?}", e.eigenvalues);
    }
}

#[test]
fn kron_mixed_product_property() {
    let mut sampler = Sampler::new(8);
    let a = random_matrix(2, 3, &mut sampler);
    let b = random_matrix(3, 2, &mut sampler);
    let c = random_matrix(3, 2, &mut sampler);
    let d = random_matrix(2, 2, &mut sampler);
    let lhs = kron(&a, &b).unwrap().matmul(&kron(&c, &d).unwrap());
    let rhs = kron(&a.matmul(&c), &b.matmul(&d)).unwrap();
    assert!(lhs.max_abs_diff(&rhs) < 1e-12);
}

fn complex_entries(len: usize) -> impl Strategy<Value = Vec<Complex64>> {
    prop::collection::vec(
        (-10.0f64..10.0, -10.0f64..10.0).prop_map(|(r, i)| Complex64::new(r, i)),
        len,
    )
}

proptest! {
    #[test]
    fn vec_unvec_are_inverse(rows in 1usize..6, cols in 1usize..6, seed in any::<u64>()) {
        let mut sampler = Sampler::new(seed);
        let m = random_matrix(rows, cols, &mut sampler);
        let v = vec_r(&m);
        prop_assert_eq!(&unvec_r(&v, rows, cols).unwrap(), &m);
        prop_assert_eq!(vec_r(&unvec_r(&v, rows, cols).unwrap()), v);
    }

    #[test]
    fn hs_inner_is_conjugate_symmetric(a in complex_entries(9), b in complex_entries(9)) {
        let a = ComplexMatrix::from_vec(3, 3, a).unwrap();
        let b = ComplexMatrix::from_vec(3, 3, b).unwrap();
        let ab = hs_inner(&a, &b).unwrap();
        let ba = hs_inner(&b, &a).unwrap();
        prop_assert!((ab - ba.conj()).norm() <= 1e-12 * (1.0 + ab.norm()));
        let aa = hs_inner(&a, &a).unwrap();
        prop_assert!((aa.re.sqrt() - a.hs_norm()).abs() <= 1e-12 * (1.0 + a.hs_norm()));
    }

    #[test]
    fn kron_index_formula(a in complex_entries(6), b in complex_entries(4)) {
        let a = ComplexMatrix::from_vec(2, 3, a).unwrap();
        let b = ComplexMatrix::from_vec(4, 1, b).unwrap();
        let k = kron(&a, &b).unwrap();
        prop_assert_eq!(k.shape(), (8, 3));
        for i in 0..2 { for j in 0..3 { for p in 0..4 {
            prop_assert_eq!(k[(i * 4 + p, j)], a[(i, j)] * b[(p, 0)]);
        }}}
    }
}
