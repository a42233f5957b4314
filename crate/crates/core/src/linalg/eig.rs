use num_complex::Complex64;

use super::{ComplexMatrix, LinalgError, Result, HERMITIAN_TOL};

/// Spectral decomposition of a Hermitian matrix.
#[derive(Debug, Clone)]
pub struct EigResult {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Eigenvector `k` is column `k`.
    pub eigenvectors: ComplexMatrix,
}

impl EigResult {
    pub fn min(&self) -> f64 {
        self.eigenvalues[0]
    }
}

const MAX_SWEEPS: usize = 100;

/// Cyclic Jacobi eigensolver for Hermitian matrices.
///
/// Input whose `||A - A^H||_HS` exceeds `1e-10·max(1, ||A||_HS)` is rejected.
/// Only the upper triangle is read; the lower one is assumed to mirror it.
pub fn eig_hermitian(a: &ComplexMatrix) -> Result<EigResult> {
    let (rows, cols) = a.shape();
    if rows != cols {
        return Err(LinalgError::NotSquare { rows, cols });
    }
    let scale = a.hs_norm();
    let defect = a.hermitian_defect();
    if defect > HERMITIAN_TOL * scale.max(1.0) {
        return Err(LinalgError::NotHermitian(defect));
    }

    let n = rows;
    // Symmetrize from the upper triangle so rotations act on an exactly
    // Hermitian matrix.
    let mut m = ComplexMatrix::from_fn(n, n, |i, j| match i.cmp(&j) {
        std::cmp::Ordering::Less => a[(i, j)],
        std::cmp::Ordering::Equal => Complex64::new(a[(i, i)].re, 0.0),
        std::cmp::Ordering::Greater => a[(j, i)].conj(),
    });
    let mut vecs = ComplexMatrix::identity(n);

    let target = (f64::EPSILON * n as f64).min(1e-13) * scale;
    let mut converged = false;
    for _ in 0..MAX_SWEEPS {
        if off_norm(&m) <= target {
            converged = true;
            break;
        }
        let mut rotated = false;
        for p in 0..n.saturating_sub(1) {
            for q in p + 1..n {
                let g = m[(p, q)];
                let gabs = g.norm();
                if gabs < f64::MIN_POSITIVE {
                    continue;
                }
                let app = m[(p, p)].re;
                let aqq = m[(q, q)].re;
                // Negligible against both diagonal entries: zero it outright.
                if gabs <= 0.25 * f64::EPSILON * app.abs().min(aqq.abs()) {
                    m[(p, q)] = Complex64::new(0.0, 0.0);
                    m[(q, p)] = Complex64::new(0.0, 0.0);
                    continue;
                }
                rotated = true;
                let phase = g / gabs;
                let theta = (aqq - app) / (2.0 * gabs);
                let t = if theta == 0.0 {
                    1.0
                } else {
                    theta.signum() / (theta.abs() + (1.0 + theta * theta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                let sm = phase.conj() * s;
                let sp = phase * s;

                // A ← U^H·A·U with U = [[c, s·e^{iφ}], [−s·e^{−iφ}, c]] on (p, q).
                for k in 0..n {
                    let akp = m[(k, p)];
                    let akq = m[(k, q)];
                    m[(k, p)] = akp * c - sm * akq;
                    m[(k, q)] = sp * akp + akq * c;
                }
                for k in 0..n {
                    let apk = m[(p, k)];
                    let aqk = m[(q, k)];
                    m[(p, k)] = apk * c - sp * aqk;
                    m[(q, k)] = sm * apk + aqk * c;
                }
                for k in 0..n {
                    let vkp = vecs[(k, p)];
                    let vkq = vecs[(k, q)];
                    vecs[(k, p)] = vkp * c - sm * vkq;
                    vecs[(k, q)] = sp * vkp + vkq * c;
                }
                m[(p, q)] = Complex64::new(0.0, 0.0);
                m[(q, p)] = Complex64::new(0.0, 0.0);
                m[(p, p)] = Complex64::new(m[(p, p)].re, 0.0);
                m[(q, q)] = Complex64::new(m[(q, q)].re, 0.0);
            }
        }
        if !rotated {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(LinalgError::NoConvergence {
            method: "Hermitian Jacobi",
            sweeps: MAX_SWEEPS,
        });
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.total_cmp(&m[(j, j)].re));
    let eigenvalues = order.iter().map(|&k| m[(k, k)].re).collect();
    let eigenvectors = ComplexMatrix::from_fn(n, n, |i, k| vecs[(i, order[k])]);
    Ok(EigResult {
        eigenvalues,
        eigenvectors,
    })
}

fn off_norm(m: &ComplexMatrix) -> f64 {
    let n = m.rows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += m[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}
