use num_complex::Complex64;

use super::{ComplexMatrix, LinalgError, Result};

/// Thin singular value decomposition `A = U · diag(s) · V^H`.
///
/// With `r = min(rows, cols)`, `u` is `rows × r`, `vdag` is `r × cols`, and
/// `s` is sorted in descending order. Under degenerate singular values only
/// the spanned subspaces are meaningful, not the individual vectors.
#[derive(Debug, Clone)]
pub struct SvdResult {
    pub u: ComplexMatrix,
    pub s: Vec<f64>,
    pub vdag: ComplexMatrix,
}

impl SvdResult {
    /// `U · diag(s) · V^H`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        let mut us = self.u.clone();
        for i in 0..us.rows() {
            for (k, &sk) in self.s.iter().enumerate() {
                us[(i, k)] *= sk;
            }
        }
        us.matmul(&self.vdag)
    }
}

const MAX_SWEEPS_PER_DIM: usize = 100;

/// One-sided (Hestenes) Jacobi SVD.
///
/// Column pairs are rotated until every pair is orthogonal to within machine
/// precision relative to the column norms. Columns whose norm is below
/// `rows·ε·‖A‖_HS` are left alone. Fails with
/// [`LinalgError::NoConvergence`] after `100·min(rows, cols)` sweeps.
pub fn svd(a: &ComplexMatrix) -> Result<SvdResult> {
    if a.rows() >= a.cols() {
        tall_svd(a)
    } else {
        // A^H = U' S V'^H  =>  A = V' S U'^H
        let t = tall_svd(&a.adjoint())?;
        Ok(SvdResult {
            u: t.vdag.adjoint(),
            s: t.s,
            vdag: t.u.adjoint(),
        })
    }
}

/// Sum of singular values.
pub fn trace_norm(a: &ComplexMatrix) -> Result<f64> {
    Ok(svd(a)?.s.iter().sum())
}

fn dot(x: &[Complex64], y: &[Complex64]) -> Complex64 {
    x.iter().zip(y).map(|(a, b)| a.conj() * b).sum()
}

fn norm_sqr(x: &[Complex64]) -> f64 {
    x.iter().map(|z| z.norm_sqr()).sum()
}

/// Applies the column transform
/// `p' = c·p − s·e^{-iφ}·q`, `q' = s·e^{iφ}·p + c·q`.
fn rotate(p: &mut [Complex64], q: &mut [Complex64], c: f64, s: f64, phase: Complex64) {
    let sp = phase * s;
    let sm = phase.conj() * s;
    for (x, y) in p.iter_mut().zip(q.iter_mut()) {
        let (xp, yq) = (*x, *y);
        *x = xp * c - sm * yq;
        *y = sp * xp + yq * c;
    }
}

fn tall_svd(a: &ComplexMatrix) -> Result<SvdResult> {
    let (m, n) = a.shape();
    debug_assert!(m >= n);

    // Column-major working copies.
    let mut w: Vec<Vec<Complex64>> = (0..n).map(|j| a.col(j)).collect();
    let mut v: Vec<Vec<Complex64>> = (0..n)
        .map(|j| {
            let mut e = vec![Complex64::new(0.0, 0.0); n];
            e[j] = Complex64::new(1.0, 0.0);
            e
        })
        .collect();

    // Columns at roundoff level relative to the whole matrix cannot be made
    // orthogonal to working precision; they count as converged.
    let floor = m as f64 * f64::EPSILON * a.hs_norm();
    let floor_sq = floor * floor;

    let max_sweeps = MAX_SWEEPS_PER_DIM * n;
    let mut converged = n == 1;
    for _ in 0..max_sweeps {
        if converged {
            break;
        }
        let mut rotated = false;
        for p in 0..n - 1 {
            for q in p + 1..n {
                let alpha = norm_sqr(&w[p]);
                let beta = norm_sqr(&w[q]);
                if alpha <= floor_sq || beta <= floor_sq {
                    continue;
                }
                let gamma = dot(&w[p], &w[q]);
                let g = gamma.norm();
                if g <= f64::EPSILON * (alpha * beta).sqrt() || g < f64::MIN_POSITIVE {
                    continue;
                }
                rotated = true;
                let phase = gamma / g;
                let zeta = (beta - alpha) / (2.0 * g);
                let t = if zeta == 0.0 {
                    1.0
                } else {
                    zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                let (lo, hi) = w.split_at_mut(q);
                rotate(&mut lo[p], &mut hi[0], c, s, phase);
                let (lo, hi) = v.split_at_mut(q);
                rotate(&mut lo[p], &mut hi[0], c, s, phase);
            }
        }
        converged = !rotated;
    }
    if !converged {
        return Err(LinalgError::NoConvergence {
            method: "one-sided Jacobi SVD",
            sweeps: max_sweeps,
        });
    }

    let norms: Vec<f64> = w.iter().map(|col| norm_sqr(col).sqrt()).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| norms[j].total_cmp(&norms[i]));

    let s: Vec<f64> = order.iter().map(|&k| norms[k]).collect();
    let mut basis: Vec<Vec<Complex64>> = Vec::with_capacity(n);
    for &k in &order {
        let candidate = if norms[k] > 0.0 {
            Some(w[k].iter().map(|z| z / norms[k]).collect())
        } else {
            None
        };
        let col = orthonormalize(candidate, &basis, m);
        basis.push(col);
    }

    let u = ComplexMatrix::from_fn(m, n, |i, k| basis[k][i]);
    let vdag = ComplexMatrix::from_fn(n, n, |k, j| v[order[k]][j].conj());
    Ok(SvdResult { u, s, vdag })
}

/// Orthonormalizes `candidate` against `basis` (two Gram-Schmidt passes).
/// When the candidate is missing or mostly inside the span already, the
/// standard basis vector with the largest residual takes its place.
fn orthonormalize(candidate: Option<Vec<Complex64>>, basis: &[Vec<Complex64>], m: usize) -> Vec<Complex64> {
    let project_out = |mut x: Vec<Complex64>| -> (Vec<Complex64>, f64) {
        for _ in 0..2 {
            for b in basis {
                let coeff = dot(b, &x);
                for (xi, bi) in x.iter_mut().zip(b) {
                    *xi -= coeff * bi;
                }
            }
        }
        let nrm = norm_sqr(&x).sqrt();
        (x, nrm)
    };

    if let Some(x) = candidate {
        let (x, nrm) = project_out(x);
        if nrm > 0.5 {
            return x.into_iter().map(|z| z / nrm).collect();
        }
    }
    let mut best: Option<(Vec<Complex64>, f64)> = None;
    for i in 0..m {
        let mut e = vec![Complex64::new(0.0, 0.0); m];
        e[i] = Complex64::new(1.0, 0.0);
        let (x, nrm) = project_out(e);
        if best.as_ref().is_none_or(|(_, b)| nrm > *b) {
            best = Some((x, nrm));
        }
        if nrm > 0.7 {
            break;
        }
    }
    let (x, nrm) = best.expect("basis is smaller than the ambient dimension");
    x.into_iter().map(|z| z / nrm).collect()
}
