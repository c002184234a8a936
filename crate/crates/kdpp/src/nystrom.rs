//! Nystrom column approximation of a kernel matrix and its quality metrics.

use crate::error::{Error, Result};
use crate::kernel::KernelMatrix;
use crate::linalg::{cholesky, forward_substitute};
use crate::matrix::Matrix;
use crate::samplers::LandmarkSet;
use crate::scalar::Scalar;
use crate::spectral::{eigen_sorted, max_norm, operator_norm};

/// Singular values of K_CC below this floor push the log-determinant to
/// negative infinity.
pub const LOG_DET_FLOOR: f64 = 1e-300;

/// Factorized approximation K_hat = K_C (K_CC + eps I)^-1 K_C^T.
///
/// Held as K_hat = B^T B with B = L^-1 K_C^T, so the materialized form is
/// symmetric positive semidefinite by construction. Materializing the full
/// n x n matrix is an explicit separate call.
#[derive(Clone, Debug)]
pub struct NystromApprox<T> {
    pub landmarks: LandmarkSet,
    pub epsilon: T,
    /// Column block K_C, n x |C|.
    pub k_c: Matrix<T>,
    /// B = L^-1 K_C^T where L L^T = K_CC + eps I; |C| x n.
    factor: Matrix<T>,
}

impl<T: Scalar> NystromApprox<T> {
    pub fn n(&self) -> usize {
        self.k_c.rows()
    }

    /// Whitened factor B with K_hat = B^T B.
    pub fn factor(&self) -> &Matrix<T> {
        &self.factor
    }

    /// Dense K_hat; costs n x n memory.
    pub fn materialize(&self) -> Matrix<T> {
        let mut k_hat = self.factor.transpose().matmul(&self.factor);
        k_hat.symmetrize();
        k_hat
    }

    /// K_hat x without materializing.
    pub fn apply(&self, x: &[T]) -> Vec<T> {
        let bx = self.factor.matvec(x);
        self.factor.transpose().matvec(&bx)
    }
}

/// Builds the factorized Nystrom approximation on the selected columns.
///
/// With `epsilon == 0` a singular K_CC is an error; any positive epsilon
/// regularizes the block.
pub fn nystrom_approximate<T: Scalar>(
    kernel: &KernelMatrix<T>,
    landmarks: &LandmarkSet,
    epsilon: T,
) -> Result<NystromApprox<T>> {
    if landmarks.is_empty() {
        return Err(Error::EmptyLandmarks);
    }
    let idx = &landmarks.indices;
    let k_c = kernel.column_block(idx);
    let mut block = kernel.principal_submatrix(idx);
    if epsilon > T::zero() {
        for i in 0..block.rows() {
            block[(i, i)] += epsilon;
        }
    }
    let l = cholesky(&block).ok_or(Error::SingularBlock {
        step: idx.len(),
        pivot: 0.0,
    })?;
    // B = L^-1 K_C^T, one forward solve per data column
    let m = idx.len();
    let n = kernel.n();
    let mut factor = Matrix::zeros(m, n);
    for j in 0..n {
        let rhs: Vec<T> = (0..m).map(|t| k_c[(j, t)]).collect();
        let col = forward_substitute(&l, &rhs);
        for t in 0..m {
            factor[(t, j)] = col[t];
        }
    }
    Ok(NystromApprox {
        landmarks: landmarks.clone(),
        epsilon,
        k_c,
        factor,
    })
}

/// Approximation quality of one landmark set.
#[derive(Clone, Debug)]
pub struct QualityReport<T> {
    /// ||K - K_hat||_2 / ||K||_2.
    pub rel_op_err: T,
    /// max |K - K_hat| / max |K|.
    pub rel_max_err: T,
    /// log det(K_CC), diversity of the selected block.
    pub log_det: T,
    pub k: usize,
    pub method: crate::samplers::Method,
}

/// Reference norms of K, computable once per dataset and reused across
/// trials.
#[derive(Clone, Copy, Debug)]
pub struct KernelNorms<T> {
    pub op: T,
    pub max: T,
}

pub fn kernel_norms<T: Scalar>(kernel: &KernelMatrix<T>) -> Result<KernelNorms<T>> {
    Ok(KernelNorms {
        op: operator_norm(kernel.values())?,
        max: max_norm(kernel.values()),
    })
}

/// Relative operator-norm error, relative max-norm error and
/// log-determinant diversity of an approximation.
pub fn quality<T: Scalar>(
    kernel: &KernelMatrix<T>,
    approx: &NystromApprox<T>,
) -> Result<QualityReport<T>> {
    let norms = kernel_norms(kernel)?;
    quality_with_norms(kernel, approx, norms)
}

/// [`quality`] against precomputed reference norms.
pub fn quality_with_norms<T: Scalar>(
    kernel: &KernelMatrix<T>,
    approx: &NystromApprox<T>,
    norms: KernelNorms<T>,
) -> Result<QualityReport<T>> {
    assert_eq!(kernel.n(), approx.n(), "kernel/approximation size mismatch");
    let diff = kernel.values().sub(&approx.materialize());
    let rel_op_err = operator_norm(&diff)? / norms.op;
    let rel_max_err = max_norm(&diff) / norms.max;
    let log_det = log_det_diversity(kernel, &approx.landmarks)?;
    Ok(QualityReport {
        rel_op_err,
        rel_max_err,
        log_det,
        k: approx.landmarks.len(),
        method: approx.landmarks.method,
    })
}

/// log det(K_CC) as the sum of the logs of the singular values of K_CC.
///
/// K_CC is symmetric, so its singular values are the absolute eigenvalues.
/// Any singular value under [`LOG_DET_FLOOR`] makes the result negative
/// infinity, which is a valid report value rather than an error.
pub fn log_det_diversity<T: Scalar>(
    kernel: &KernelMatrix<T>,
    landmarks: &LandmarkSet,
) -> Result<T> {
    if landmarks.is_empty() {
        return Err(Error::EmptyLandmarks);
    }
    let mut block = kernel.principal_submatrix(&landmarks.indices);
    block.symmetrize();
    let eig = eigen_sorted(&block, "log_det")?;
    let floor = T::from_f64(LOG_DET_FLOOR);
    let mut total = T::zero();
    for &lambda in eig.eigenvalues() {
        let sigma = lambda.abs();
        if sigma < floor {
            return Ok(T::neg_infinity());
        }
        total += sigma.ln();
    }
    Ok(total)
}
