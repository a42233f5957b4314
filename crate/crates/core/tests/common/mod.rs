#![allow(dead_code)]

use ccnr::linalg::ComplexMatrix;
use ccnr::rng::Sampler;
use num_complex::Complex64;

pub fn random_matrix(rows: usize, cols: usize, sampler: &mut Sampler) -> ComplexMatrix {
    ComplexMatrix::from_fn(rows, cols, |_, _| sampler.complex_normal())
}

pub fn random_hermitian(n: usize, sampler: &mut Sampler) -> ComplexMatrix {
    let g = random_matrix(n, n, sampler);
    ComplexMatrix::from_fn(n, n, |i, j| 0.5 * (g[(i, j)] + g[(j, i)].conj()))
}

/// Haar-ish unitary from Gram-Schmidt on a Ginibre matrix.
pub fn random_unitary(n: usize, sampler: &mut Sampler) -> ComplexMatrix {
    let g = random_matrix(n, n, sampler);
    let mut cols: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for j in 0..n {
        let mut v = g.col(j);
        for _ in 0..2 {
            for q in &cols {
                let coeff: Complex64 = q.iter().zip(&v).map(|(a, b)| a.conj() * b).sum();
                for (vi, qi) in v.iter_mut().zip(q) {
                    *vi -= coeff * qi;
                }
            }
        }
        let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        cols.push(v.into_iter().map(|z| z / norm).collect());
    }
    ComplexMatrix::from_fn(n, n, |i, j| cols[j][i])
}

/// `Tr_B` of an operator on `C^dim_a ⊗ C^dim_b`.
pub fn partial_trace_b(x: &ComplexMatrix, dim_a: usize, dim_b: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(dim_a, dim_a, |i, j| {
        (0..dim_b).map(|k| x[(i * dim_b + k, j * dim_b + k)]).sum()
    })
}

/// `max_k |(A^H A - I)|` style deviation of the columns of `a` from orthonormality.
pub fn column_gram_deviation(a: &ComplexMatrix) -> f64 {
    a.adjoint().matmul(a).max_abs_diff(&ComplexMatrix::identity(a.cols()))
}
