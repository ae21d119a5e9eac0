//! Dense-matrix evaluation of `A(T) = Σ α_p T^p` and its powers, with a
//! certified bound on the discarded tail, plus the matrix-scale theorems.

mod appendix;
mod matrix;
mod random;
mod series;
mod spectral;
mod theorems;

use alloc::string::String;

pub use appendix::{appendix_example, appendix_matrix, appendix_s_closed_form, AppendixExample};
pub use matrix::{DenseMatrix, Norm};
pub use random::{
    random_column_stochastic, random_doubly_stochastic, random_row_stochastic,
    random_symmetric, rotation,
};
pub use series::{
    brunel, brunel_family, probe, BrunelFamily, BrunelOptions, BrunelResult, Contraction, Probe,
    Truncation,
};
pub use spectral::symmetric_eigenvalues;
pub use theorems::{
    appendix_suite, check_cesaro_domination, check_mean_bound_theorem,
    check_power_bound_theorem, domination_suite, mean_bound_suite, power_bound_suite,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum OperatorError {
    #[error("matrix entries must be finite")]
    NonFinite,
    #[error("bad matrix shape: {0}")]
    Shape(String),
    #[error("tail bound still above the target at p = {cap}")]
    NonConvergence { cap: u64 },
    #[error("norm of T^{step} is {norm:e}, past the growth cutoff")]
    SpectralExplosion { step: u64, norm: f64 },
    #[error("Cesaro means reach norm {sup:e}, past the growth cutoff")]
    NotMeanBounded { sup: f64 },
    #[error("matrix has negative entries")]
    NegativeEntries,
}

/// `T^k` by repeated multiplication.
pub fn matrix_power(t: &DenseMatrix, k: u64) -> Result<DenseMatrix, OperatorError> {
    let mut out = DenseMatrix::identity(t.dim());
    for _ in 0..k {
        out = &out * t;
        if !out.is_finite() {
            return Err(OperatorError::NonFinite);
        }
    }
    Ok(out)
}

/// `M_N(T) = (I + T + … + T^(N-1)) / N`.
pub fn cesaro(t: &DenseMatrix, big_n: u64) -> DenseMatrix {
    assert!(big_n >= 1, "cesaro needs N >= 1");
    let mut sum = DenseMatrix::zeros(t.dim());
    let mut power = DenseMatrix::identity(t.dim());
    for _ in 0..big_n {
        sum.add_scaled(&power, 1.0);
        power = &power * t;
    }
    sum.scale(1.0 / big_n as f64)
}
