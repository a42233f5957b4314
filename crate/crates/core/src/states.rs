//! Bipartite density matrices and the example state families.

use num_complex::Complex64;
use thiserror::Error;

use crate::linalg::{eig_hermitian, kron, ComplexMatrix, LinalgError};
use crate::rng::Sampler;

/// Tolerance for the Hermitian, trace and positivity checks.
pub const VALIDATION_TOL: f64 = 1e-10;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StateError {
    #[error("ShapeMismatch: expected {expected}x{expected} for dims ({dim_a}, {dim_b}), got {rows}x{cols}")]
    ShapeMismatch {
        dim_a: usize,
        dim_b: usize,
        expected: usize,
        rows: usize,
        cols: usize,
    },
    #[error("NotHermitian({0:?})")]
    NotHermitian(f64),
    #[error("TraceNotOne({0:?})")]
    TraceNotOne(f64),
    #[error("NotPSD({0:?})")]
    NotPsd(f64),
    #[error("NotNormalized({0:?})")]
    NotNormalized(f64),
    #[error("InvalidParameter: {name} = {value} outside {domain}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        domain: &'static str,
    },
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

pub type Result<T> = std::result::Result<T, StateError>;

/// A validated state on `C^dim_a ⊗ C^dim_b`.
///
/// Basis order is `|i⟩⊗|k⟩ ↦ i·dim_b + k`.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    dim_a: usize,
    dim_b: usize,
    mat: ComplexMatrix,
}

impl DensityMatrix {
    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
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

    /// `Tr(ρ²)`.
    pub fn purity(&self) -> f64 {
        // ρ is Hermitian, so Tr(ρ²) = Σ|ρ_ij|².
        self.mat.hs_norm().powi(2)
    }
}

/// Checks shape, hermiticity, unit trace and positivity, in that order.
pub fn validate_density(m: ComplexMatrix, dim_a: usize, dim_b: usize) -> Result<DensityMatrix> {
    let n = dim_a * dim_b;
    if dim_a == 0 || dim_b == 0 || m.rows() != n || m.cols() != n {
        return Err(StateError::ShapeMismatch {
            dim_a,
            dim_b,
            expected: n,
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    let defect = m.hermitian_defect();
    if defect > VALIDATION_TOL {
        return Err(StateError::NotHermitian(defect));
    }
    let trace_err = m.trace().re - 1.0;
    if trace_err.abs() > VALIDATION_TOL {
        return Err(StateError::TraceNotOne(trace_err));
    }
    let min_eig = eig_hermitian(&m)?.min();
    if min_eig < -VALIDATION_TOL {
        return Err(StateError::NotPsd(min_eig));
    }
    Ok(DensityMatrix { dim_a, dim_b, mat: m })
}

/// Unit vector on `C^dim_a ⊗ C^dim_b`.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    dim_a: usize,
    dim_b: usize,
    amplitudes: Vec<Complex64>,
}

impl PureState {
    /// Requires `‖amplitudes‖₂ = 1 ± 1e-10`.
    pub fn new(dim_a: usize, dim_b: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        let n = dim_a * dim_b;
        if n == 0 || amplitudes.len() != n {
            return Err(StateError::ShapeMismatch {
                dim_a,
                dim_b,
                expected: n,
                rows: amplitudes.len(),
                cols: 1,
            });
        }
        if amplitudes.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(StateError::NotNormalized(f64::NAN));
        }
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if (norm - 1.0).abs() > VALIDATION_TOL {
            return Err(StateError::NotNormalized(norm - 1.0));
        }
        Ok(Self {
            dim_a,
            dim_b,
            amplitudes,
        })
    }

    /// Rescales `amplitudes` to unit norm first.
    pub fn normalized(dim_a: usize, dim_b: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        let norm = amplitudes.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if !(norm > 0.0 && norm.is_finite()) {
            return Err(StateError::NotNormalized(norm - 1.0));
        }
        Self::new(dim_a, dim_b, amplitudes.into_iter().map(|z| z / norm).collect())
    }

    /// Haar-random pure state.
    pub fn random(dim_a: usize, dim_b: usize, seed: u64) -> Result<Self> {
        let amps = Sampler::new(seed).unit_vector(dim_a * dim_b);
        Self::new(dim_a, dim_b, amps)
    }

    /// `|a⟩ ⊗ |b⟩`.
    pub fn product(a: &[Complex64], b: &[Complex64]) -> Result<Self> {
        let amps = a.iter().flat_map(|&x| b.iter().map(move |&y| x * y)).collect();
        Self::normalized(a.len(), b.len(), amps)
    }

    pub fn dim_a(&self) -> usize {
        self.dim_a
    }

    pub fn dim_b(&self) -> usize {
        self.dim_b
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    /// Amplitudes reshaped to the `dim_a × dim_b` coefficient matrix.
    pub fn coefficient_matrix(&self) -> ComplexMatrix {
        ComplexMatrix::from_vec(self.dim_a, self.dim_b, self.amplitudes.clone())
            .expect("amplitudes are finite and sized dim_a·dim_b")
    }
}

/// `|ψ⟩⟨ψ|`.
pub fn pure_density(psi: &PureState) -> DensityMatrix {
    let amps = psi.amplitudes();
    let n = amps.len();
    let mat = ComplexMatrix::from_fn(n, n, |i, j| amps[i] * amps[j].conj());
    DensityMatrix {
        dim_a: psi.dim_a,
        dim_b: psi.dim_b,
        mat,
    }
}

fn check_unit_interval(name: &'static str, x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(StateError::InvalidParameter {
            name,
            value: x,
            domain: "[0, 1]",
        })
    }
}

fn check_local_dim(d: usize) -> Result<()> {
    if d >= 2 {
        Ok(())
    } else {
        Err(StateError::InvalidParameter {
            name: "d",
            value: d as f64,
            domain: "d >= 2",
        })
    }
}

fn mixture(terms: &[(f64, &ComplexMatrix)]) -> ComplexMatrix {
    let (_, first) = terms[0];
    let mut acc = ComplexMatrix::zeros(first.rows(), first.cols());
    for &(w, m) in terms {
        acc = &acc + &m.scale_real(w);
    }
    acc
}

/// Projector onto `(1/√d) Σ_i |ii⟩`.
pub fn max_entangled(d: usize) -> Result<DensityMatrix> {
    check_local_dim(d)?;
    let amp = 1.0 / (d as f64).sqrt();
    let mut amps = vec![Complex64::new(0.0, 0.0); d * d];
    for i in 0..d {
        amps[i * d + i] = Complex64::new(amp, 0.0);
    }
    Ok(pure_density(&PureState::new(d, d, amps)?))
}

/// `I / (dim_a·dim_b)`.
pub fn max_mixed(dim_a: usize, dim_b: usize) -> Result<DensityMatrix> {
    if dim_a == 0 || dim_b == 0 {
        return Err(StateError::InvalidParameter {
            name: "dim",
            value: 0.0,
            domain: "dim >= 1",
        });
    }
    let n = dim_a * dim_b;
    let mat = ComplexMatrix::identity(n).scale_real(1.0 / n as f64);
    validate_density(mat, dim_a, dim_b)
}

/// Two-qubit Werner state `p·|ψ⁻⟩⟨ψ⁻| + (1−p)·I/4`.
pub fn werner_qubit(p: f64) -> Result<DensityMatrix> {
    check_unit_interval("p", p)?;
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let singlet = PureState::new(
        2,
        2,
        vec![
            Complex64::new(0.0, 0.0),
            Complex64::new(h, 0.0),
            Complex64::new(-h, 0.0),
            Complex64::new(0.0, 0.0),
        ],
    )?;
    let proj = pure_density(&singlet).into_matrix();
    let id = ComplexMatrix::identity(4).scale_real(0.25);
    validate_density(mixture(&[(p, &proj), (1.0 - p, &id)]), 2, 2)
}

/// Isotropic state `F·P₊ + (1−F)·(I − P₊)/(d²−1)` on `d ⊗ d`.
pub fn isotropic(d: usize, fidelity: f64) -> Result<DensityMatrix> {
    check_local_dim(d)?;
    check_unit_interval("F", fidelity)?;
    let p_plus = max_entangled(d)?.into_matrix();
    let complement = &ComplexMatrix::identity(d * d) - &p_plus;
    let rest = (1.0 - fidelity) / ((d * d - 1) as f64);
    validate_density(mixture(&[(fidelity, &p_plus), (rest, &complement)]), d, d)
}

/// The one-parameter 3⊗3 family of PPT states (P. Horodecki, 1997).
///
/// Rows and columns are ordered `|00⟩, |01⟩, …, |22⟩`.
pub fn horodecki_3x3(a: f64) -> Result<DensityMatrix> {
    check_unit_interval("a", a)?;
    let norm = 1.0 / (8.0 * a + 1.0);
    let mut m = ComplexMatrix::zeros(9, 9);
    let set = |m: &mut ComplexMatrix, i: usize, j: usize, x: f64| m[(i, j)] = Complex64::new(x * norm, 0.0);
    for i in [0, 1, 2, 3, 4, 5, 7] {
        set(&mut m, i, i, a);
    }
    for (i, j) in [(0, 4), (0, 8), (4, 8)] {
        set(&mut m, i, j, a);
        set(&mut m, j, i, a);
    }
    let off = (1.0 - a * a).sqrt() / 2.0;
    set(&mut m, 6, 6, (1.0 + a) / 2.0);
    set(&mut m, 8, 8, (1.0 + a) / 2.0);
    set(&mut m, 6, 8, off);
    set(&mut m, 8, 6, off);
    validate_density(m, 3, 3)
}

/// `GG†/Tr(GG†)` for a `(dim_a·dim_b) × rank` complex Ginibre matrix `G`.
pub fn random_ginibre(dim_a: usize, dim_b: usize, rank: usize, seed: u64) -> Result<DensityMatrix> {
    let n = dim_a * dim_b;
    if dim_a == 0 || dim_b == 0 {
        return Err(StateError::InvalidParameter {
            name: "dim",
            value: 0.0,
            domain: "dim >= 1",
        });
    }
    if rank == 0 || rank > n {
        return Err(StateError::InvalidParameter {
            name: "rank",
            value: rank as f64,
            domain: "1 <= rank <= dim_a·dim_b",
        });
    }
    let mut sampler = Sampler::new(seed);
    let g = ComplexMatrix::from_fn(n, rank, |_, _| sampler.complex_normal());
    let gg = g.matmul(&g.adjoint());
    let tr = gg.trace().re;
    // GG† is Hermitian only up to rounding; restore it exactly.
    let mat = ComplexMatrix::from_fn(n, n, |i, j| 0.5 * (gg[(i, j)] + gg[(j, i)].conj()) / tr);
    validate_density(mat, dim_a, dim_b)
}

/// One term `w · |a⟩⟨a| ⊗ |b⟩⟨b|` of a separable decomposition.
#[derive(Debug, Clone)]
pub struct ProductTerm {
    pub weight: f64,
    pub local_a: ComplexMatrix,
    pub local_b: ComplexMatrix,
}

/// Random separable decomposition: `terms` pure product states with weights
/// drawn uniformly from the simplex.
pub fn random_separable_terms(dim_a: usize, dim_b: usize, terms: usize, seed: u64) -> Result<Vec<ProductTerm>> {
    if dim_a == 0 || dim_b == 0 {
        return Err(StateError::InvalidParameter {
            name: "dim",
            value: 0.0,
            domain: "dim >= 1",
        });
    }
    if terms == 0 {
        return Err(StateError::InvalidParameter {
            name: "terms",
            value: 0.0,
            domain: "terms >= 1",
        });
    }
    let mut sampler = Sampler::new(seed);
    let weights = sampler.simplex(terms);
    let projector = |v: &[Complex64]| ComplexMatrix::from_fn(v.len(), v.len(), |i, j| v[i] * v[j].conj());
    Ok(weights
        .into_iter()
        .map(|weight| {
            let a = sampler.unit_vector(dim_a);
            let b = sampler.unit_vector(dim_b);
            ProductTerm {
                weight,
                local_a: projector(&a),
                local_b: projector(&b),
            }
        })
        .collect())
}

/// `Σ_k w_k ρ_k^A ⊗ ρ_k^B`, separable by construction.
pub fn random_separable(dim_a: usize, dim_b: usize, terms: usize, seed: u64) -> Result<DensityMatrix> {
    let decomposition = random_separable_terms(dim_a, dim_b, terms, seed)?;
    let n = dim_a * dim_b;
    let mut acc = ComplexMatrix::zeros(n, n);
    for t in &decomposition {
        acc = &acc + &kron(&t.local_a, &t.local_b)?.scale_real(t.weight);
    }
    let mat = ComplexMatrix::from_fn(n, n, |i, j| 0.5 * (acc[(i, j)] + acc[(j, i)].conj()));
    validate_density(mat, dim_a, dim_b)
}
