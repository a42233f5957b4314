//! The realignment map and the separability tests built on it.
//!
//! Realignment rearranges the entries of an operator on `C^m ⊗ C^n` into an
//! `m² × n²` matrix. It is a linear isometry for the Hilbert-Schmidt norm, and
//! the singular value decomposition of the realigned matrix is exactly the
//! operator Schmidt decomposition of the original operator. Consequently the
//! realignment statistic `‖R(ρ)‖₁` and the cross-norm statistic `Σ σ_k` are
//! the same number, and for separable states both are at most one.

use serde::{Deserialize, Serialize};

use crate::linalg::{eig_hermitian, svd, trace_norm, unvec_r, ComplexMatrix, LinalgError};
use crate::states::{DensityMatrix, PureState};

/// Default one-sided tolerance for the entanglement verdicts.
pub const DEFAULT_TOL: f64 = 1e-9;

type Result<T> = std::result::Result<T, LinalgError>;

/// Image of an operator under the realignment map.
#[derive(Debug, Clone, PartialEq)]
pub struct RealignedMatrix {
    dim_a: usize,
    dim_b: usize,
    mat: ComplexMatrix,
}

impl RealignedMatrix {
    /// Wraps an arbitrary `dim_a² × dim_b²` matrix.
    pub fn new(dim_a: usize, dim_b: usize, mat: ComplexMatrix) -> Result<Self> {
        let expected = (dim_a * dim_a, dim_b * dim_b);
        if mat.shape() != expected {
            return Err(LinalgError::ShapeMismatch {
                expected,
                found: mat.shape(),
            });
        }
        Ok(Self { dim_a, dim_b, mat })
    }

    pub fn dims(&self) -> (usize, usize) {
        (self.dim_a, self.dim_b)
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.mat
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.mat
    }
}

/// Realigns any `(m·n) × (m·n)` operator, not necessarily a state.
///
/// `R[(i·m + j), (k·n + l)] = X[(i·n + k), (j·n + l)]`: block `(i, j)` of `X`
/// becomes row `i·m + j` of the result, flattened row-major.
pub fn realign_operator(x: &ComplexMatrix, dim_a: usize, dim_b: usize) -> Result<RealignedMatrix> {
    let n = dim_a * dim_b;
    if x.shape() != (n, n) {
        return Err(LinalgError::ShapeMismatch {
            expected: (n, n),
            found: x.shape(),
        });
    }
    let mut r = ComplexMatrix::zeros(dim_a * dim_a, dim_b * dim_b);
    for i in 0..dim_a {
        for j in 0..dim_a {
            for k in 0..dim_b {
                for l in 0..dim_b {
                    r[(i * dim_a + j, k * dim_b + l)] = x[(i * dim_b + k, j * dim_b + l)];
                }
            }
        }
    }
    Ok(RealignedMatrix { dim_a, dim_b, mat: r })
}

pub fn realign(rho: &DensityMatrix) -> RealignedMatrix {
    realign_operator(rho.matrix(), rho.dim_a(), rho.dim_b()).expect("density matrix has shape (m·n)×(m·n)")
}

/// Undoes [`realign`]. The result need not be a state, so it is returned as
/// a bare matrix.
pub fn inverse_realign(r: &RealignedMatrix) -> ComplexMatrix {
    let (dim_a, dim_b) = r.dims();
    let n = dim_a * dim_b;
    let mut x = ComplexMatrix::zeros(n, n);
    for i in 0..dim_a {
        for j in 0..dim_a {
            for k in 0..dim_b {
                for l in 0..dim_b {
                    x[(i * dim_b + k, j * dim_b + l)] = r.mat[(i * dim_a + j, k * dim_b + l)];
                }
            }
        }
    }
    x
}

/// `‖R(ρ)‖₁`.
pub fn ccnr_value(rho: &DensityMatrix) -> Result<f64> {
    trace_norm(realign(rho).matrix())
}

/// True iff the realignment statistic exceeds `1 + tol`, which certifies
/// entanglement. False means the test is inconclusive, not that the state is
/// separable.
pub fn ccnr_verdict(rho: &DensityMatrix, tol: f64) -> Result<bool> {
    Ok(ccnr_value(rho)? > 1.0 + tol)
}

/// `ρ = Σ_k σ_k G_k ⊗ H_k` with Hilbert-Schmidt orthonormal `{G_k}` and `{H_k}`.
#[derive(Debug, Clone)]
pub struct OperatorSchmidt {
    /// Descending.
    pub sigmas: Vec<f64>,
    pub g_factors: Vec<ComplexMatrix>,
    pub h_factors: Vec<ComplexMatrix>,
}

impl OperatorSchmidt {
    /// The cross-norm statistic `Σ σ_k`.
    pub fn sum(&self) -> f64 {
        self.sigmas.iter().sum()
    }

    pub fn reconstruct(&self) -> ComplexMatrix {
        let (ga, hb) = (self.g_factors[0].rows(), self.h_factors[0].rows());
        let n = ga * hb;
        let mut acc = ComplexMatrix::zeros(n, n);
        for ((s, g), h) in self.sigmas.iter().zip(&self.g_factors).zip(&self.h_factors) {
            let term = crate::linalg::kron(g, h).expect("local factors are small");
            acc = &acc + &term.scale_real(*s);
        }
        acc
    }
}

/// Operator Schmidt decomposition read off the SVD of the realigned matrix.
///
/// With `R = U·diag(s)·V^H`, `G_k` is column `k` of `U` and `H_k` is row `k`
/// of `V^H`, each unflattened row-major.
pub fn operator_schmidt(rho: &DensityMatrix) -> Result<OperatorSchmidt> {
    operator_schmidt_of(rho.matrix(), rho.dim_a(), rho.dim_b())
}

/// [`operator_schmidt`] for an arbitrary operator on `C^m ⊗ C^n`.
pub fn operator_schmidt_of(x: &ComplexMatrix, dim_a: usize, dim_b: usize) -> Result<OperatorSchmidt> {
    let r = realign_operator(x, dim_a, dim_b)?;
    let dec = svd(r.matrix())?;
    let rank = dec.s.len();
    let mut g_factors = Vec::with_capacity(rank);
    let mut h_factors = Vec::with_capacity(rank);
    for k in 0..rank {
        let u_col = ComplexMatrix::column(&dec.u.col(k));
        g_factors.push(unvec_r(&u_col, dim_a, dim_a)?);
        let v_row = ComplexMatrix::column(dec.vdag.row(k));
        h_factors.push(unvec_r(&v_row, dim_b, dim_b)?);
    }
    Ok(OperatorSchmidt {
        sigmas: dec.s,
        g_factors,
        h_factors,
    })
}

/// Transpose on the second tensor factor:
/// `ρ^{T_B}[(i,k),(j,l)] = ρ[(i,l),(j,k)]`.
pub fn partial_transpose(rho: &DensityMatrix) -> ComplexMatrix {
    partial_transpose_operator(rho.matrix(), rho.dim_a(), rho.dim_b())
}

pub fn partial_transpose_operator(x: &ComplexMatrix, dim_a: usize, dim_b: usize) -> ComplexMatrix {
    let n = dim_a * dim_b;
    assert_eq!(x.shape(), (n, n), "partial transpose: operator is not (m·n)×(m·n)");
    ComplexMatrix::from_fn(n, n, |row, col| {
        let (i, k) = (row / dim_b, row % dim_b);
        let (j, l) = (col / dim_b, col % dim_b);
        x[(i * dim_b + l, j * dim_b + k)]
    })
}

/// Smallest eigenvalue of `ρ^{T_B}` and whether it is below `-tol`.
pub fn ppt_verdict(rho: &DensityMatrix, tol: f64) -> Result<(f64, bool)> {
    let min_eig = eig_hermitian(&partial_transpose(rho))?.min();
    Ok((min_eig, min_eig < -tol))
}

/// Vector Schmidt coefficients of a pure state, descending.
pub fn schmidt_coefficients(psi: &PureState) -> Result<Vec<f64>> {
    Ok(svd(&psi.coefficient_matrix())?.s)
}

/// Closed form of the realignment statistic for `|ψ⟩⟨ψ|`: `(Σ_i √μ_i)²`,
/// where `√μ_i` are the Schmidt coefficients of `ψ`.
pub fn pure_state_value(psi: &PureState) -> Result<f64> {
    let total: f64 = schmidt_coefficients(psi)?.iter().sum();
    Ok(total * total)
}

/// Both criteria evaluated on one state.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CriterionReport {
    pub ccnr_value: f64,
    pub ccnr_entangled: bool,
    pub ppt_min_eig: f64,
    pub ppt_entangled: bool,
    pub tolerance: f64,
}

pub fn evaluate(rho: &DensityMatrix, tol: f64) -> Result<CriterionReport> {
    let ccnr_value = ccnr_value(rho)?;
    let (ppt_min_eig, ppt_entangled) = ppt_verdict(rho, tol)?;
    Ok(CriterionReport {
        ccnr_value,
        ccnr_entangled: ccnr_value > 1.0 + tol,
        ppt_min_eig,
        ppt_entangled,
        tolerance: tol,
    })
}

/// `(U ⊗ V)·X·(U ⊗ V)^H`.
pub fn local_unitary_conjugate(x: &ComplexMatrix, u: &ComplexMatrix, v: &ComplexMatrix) -> Result<ComplexMatrix> {
    let w = crate::linalg::kron(u, v)?;
    Ok(w.matmul(x).matmul(&w.adjoint()))
}
