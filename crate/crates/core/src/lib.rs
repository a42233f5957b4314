//! Realignment (computable cross norm) separability test for bipartite
//! quantum states.
//!
//! A state `ρ` on `C^m ⊗ C^n` is realigned into an `m² × n²` matrix `R(ρ)`.
//! For separable states `‖R(ρ)‖₁ ≤ 1`, so a larger value certifies
//! entanglement. The singular values of `R(ρ)` are the operator Schmidt
//! coefficients of `ρ`, which makes the test the same as the cross-norm
//! criterion `Σ σ_k ≤ 1`. The partial transpose test is provided for
//! comparison.

pub mod criteria;
pub mod json;
pub mod linalg;
pub mod rng;
pub mod states;

pub use criteria::{
    ccnr_value, ccnr_verdict, evaluate, inverse_realign, operator_schmidt, partial_transpose, ppt_verdict,
    pure_state_value, realign, CriterionReport, OperatorSchmidt, RealignedMatrix, DEFAULT_TOL,
};
pub use linalg::{ComplexMatrix, LinalgError};
pub use states::{DensityMatrix, PureState, StateError};
