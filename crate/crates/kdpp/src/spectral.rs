//! Spectral machinery: sorted symmetric eigendecomposition, projector
//! kernels, leverage scores, matrix norms and KPCA coordinates.

use crate::error::{Error, Result};
use crate::kernel::KernelMatrix;
use crate::linalg::sym_eigen;
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Eigenvalues below this (and above its negative) are treated as PSD
/// round-off and clamped to zero.
pub const EIG_CLAMP: f64 = 1e-10;

/// Relative spectral-gap threshold below which a rank cut is flagged.
pub const DEGENERATE_CUT_TOL: f64 = 1e-10;

/// Power-iteration cap for the operator norm.
pub const OPERATOR_NORM_MAX_ITER: usize = 10_000;

/// Rayleigh-quotient relative change at which power iteration stops.
pub const OPERATOR_NORM_TOL: f64 = 1e-10;

/// Eigenvector/value pairs of a symmetric matrix, eigenvalues sorted
/// non-increasing, each eigenvector sign-fixed so its largest-magnitude
/// entry is positive.
#[derive(Clone, Debug)]
pub struct EigenSystem<T> {
    eigenvalues: Vec<T>,
    /// n x n, eigenvectors in columns, same order as `eigenvalues`.
    vectors: Matrix<T>,
    source: String,
}

impl<T: Scalar> EigenSystem<T> {
    pub fn n(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn eigenvalues(&self) -> &[T] {
        &self.eigenvalues
    }

    pub fn vectors(&self) -> &Matrix<T> {
        &self.vectors
    }

    /// Identifier of the decomposed matrix.
    pub fn source(&self) -> &str {
        &self.source
    }

    /// Count of eigenvalues strictly above `tol`.
    pub fn rank_above(&self, tol: T) -> usize {
        self.eigenvalues.iter().filter(|&&l| l > tol).count()
    }

    /// First k eigenvector columns as an n x k matrix.
    pub fn leading_vectors(&self, k: usize) -> Matrix<T> {
        let cols: Vec<usize> = (0..k).collect();
        self.vectors.select_columns(&cols)
    }
}

/// Sorted, sign-fixed symmetric eigendecomposition of an arbitrary
/// symmetric matrix. `source` tags the origin for diagnostics.
pub fn eigen_sorted<T: Scalar>(matrix: &Matrix<T>, source: &str) -> Result<EigenSystem<T>> {
    let (vals, vecs) = sym_eigen(matrix)?;
    let n = vals.len();

    // stable order: descending eigenvalue, original index breaking ties
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        vals[b]
            .partial_cmp(&vals[a])
            .expect("finite eigenvalues")
            .then(a.cmp(&b))
    });

    let clamp = T::from_f64(EIG_CLAMP);
    let eigenvalues: Vec<T> = order
        .iter()
        .map(|&i| {
            let l = vals[i];
            if l > -clamp && l < T::zero() {
                T::zero()
            } else {
                l
            }
        })
        .collect();

    let mut vectors = Matrix::zeros(n, n);
    for (new_c, &old_c) in order.iter().enumerate() {
        // sign convention: largest-magnitude entry positive
        let mut best = 0usize;
        let mut best_abs = T::zero();
        for i in 0..n {
            let a = vecs[(i, old_c)].abs();
            if a > best_abs {
                best_abs = a;
                best = i;
            }
        }
        let flip = vecs[(best, old_c)] < T::zero();
        for i in 0..n {
            let v = vecs[(i, old_c)];
            vectors[(i, new_c)] = if flip { -v } else { v };
        }
    }

    Ok(EigenSystem {
        eigenvalues,
        vectors,
        source: source.to_string(),
    })
}

/// Eigendecomposition of a kernel matrix, eigenvalues descending and
/// round-off negatives clamped to zero.
pub fn sym_eig<T: Scalar>(kernel: &KernelMatrix<T>) -> Result<EigenSystem<T>> {
    let source = format!("{}[n={}]", kernel.kind(), kernel.n());
    eigen_sorted(kernel.values(), &source)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ProjectorKind<T> {
    /// Rank-k orthogonal projector onto the top eigenspace.
    Sharp { k: usize },
    /// Ridge-smoothed projector K (K + n gamma I)^-1.
    Ridge { gamma: T },
}

/// Marginal kernel 0 <= P <= I driving greedy selection.
#[derive(Clone, Debug)]
pub struct ProjectorKernel<T> {
    matrix: Matrix<T>,
    kind: ProjectorKind<T>,
    /// Set when the spectral gap at the rank cut was below
    /// [`DEGENERATE_CUT_TOL`] relative to the top eigenvalue; any basis of
    /// the tied eigenspace is equally valid and the deterministic sort
    /// picked one.
    degenerate_cut: bool,
}

impl<T: Scalar> ProjectorKernel<T> {
    pub fn n(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix<T> {
        &self.matrix
    }

    pub fn kind(&self) -> ProjectorKind<T> {
        self.kind
    }

    pub fn degenerate_cut(&self) -> bool {
        self.degenerate_cut
    }

    /// Largest number of landmarks the greedy engine can extract.
    pub fn selection_capacity(&self) -> usize {
        match self.kind {
            ProjectorKind::Sharp { k } => k,
            ProjectorKind::Ridge { .. } => self.n(),
        }
    }
}

/// Rank-k projector P = V_k V_k^T onto the top-k eigenspace.
pub fn sharp_projector<T: Scalar>(eig: &EigenSystem<T>, k: usize) -> Result<ProjectorKernel<T>> {
    let n = eig.n();
    if k == 0 || k > n {
        return Err(Error::RankTooLarge { k, max: n });
    }
    let degenerate_cut = if k < n {
        let gap = eig.eigenvalues()[k - 1] - eig.eigenvalues()[k];
        gap < T::from_f64(DEGENERATE_CUT_TOL) * eig.eigenvalues()[0].abs()
    } else {
        false
    };
    let vk = eig.leading_vectors(k);
    let matrix = vk.matmul(&vk.transpose());
    Ok(ProjectorKernel {
        matrix,
        kind: ProjectorKind::Sharp { k },
        degenerate_cut,
    })
}

/// Relative indefiniteness threshold for the ridge projector: eigenvalues
/// below -RIDGE_PSD_TOL * lambda_1 mean the input was never a kernel
/// matrix; anything closer to zero is round-off on a positive spectrum.
pub const RIDGE_PSD_TOL: f64 = 1e-8;

/// Smoothed projector P = V diag(lambda_j / (lambda_j + n gamma)) V^T.
///
/// The map assumes a positive-definite kernel; fast-decaying spectra
/// routinely round their tails to zero or slightly negative in finite
/// precision, so those eigenvalues are clamped to zero rather than
/// rejected. A spectrum that is indefinite beyond round-off, or with no
/// positive mass at all, is an error.
pub fn ridge_projector<T: Scalar>(eig: &EigenSystem<T>, gamma: T) -> Result<ProjectorKernel<T>> {
    if gamma <= T::zero() {
        return Err(Error::Config(format!(
            "ridge parameter must be positive, got {gamma}"
        )));
    }
    let n = eig.n();
    let top = eig.eigenvalues()[0];
    let min_eig = eig.eigenvalues()[n - 1];
    if top <= T::zero() || min_eig < -T::from_f64(RIDGE_PSD_TOL) * top {
        return Err(Error::SingularKernel {
            min_eig: min_eig.as_f64(),
        });
    }
    let ng = T::from_f64(n as f64) * gamma;
    let v = eig.vectors();
    // P = (V . diag f) V^T with f_j = lambda_j / (lambda_j + n gamma)
    let mut scaled = v.clone();
    for j in 0..n {
        let lambda = eig.eigenvalues()[j].max(T::zero());
        let f = lambda / (lambda + ng);
        for i in 0..n {
            scaled[(i, j)] *= f;
        }
    }
    let mut matrix = scaled.matmul(&v.transpose());
    matrix.symmetrize();
    Ok(ProjectorKernel {
        matrix,
        kind: ProjectorKind::Ridge { gamma },
        degenerate_cut: false,
    })
}

/// Diagonal of a projector kernel: rank-k leverage scores for the sharp
/// kind, ridge leverage scores for the smoothed kind.
pub fn leverage_scores<T: Scalar>(projector: &ProjectorKernel<T>) -> Vec<T> {
    projector.matrix.diag()
}

/// Largest absolute entry.
pub fn max_norm<T: Scalar>(a: &Matrix<T>) -> T {
    a.max_abs()
}

/// Largest singular value by power iteration on A^T A, deterministic
/// all-ones start.
pub fn operator_norm<T: Scalar>(a: &Matrix<T>) -> Result<T> {
    let n = a.cols();
    if n == 0 || a.rows() == 0 {
        return Ok(T::zero());
    }
    let at = a.transpose();
    let inv_sqrt_n = T::from_f64(1.0 / (n as f64).sqrt());
    let mut v = vec![inv_sqrt_n; n];
    let mut prev_sq = T::zero();
    let tol = T::from_f64(OPERATOR_NORM_TOL);

    for _it in 0..OPERATOR_NORM_MAX_ITER {
        let w = a.matvec(&v);
        // Rayleigh quotient of A^T A at unit v
        let sq: T = w.iter().map(|&x| x * x).sum();
        if sq == T::zero() {
            return Ok(T::zero());
        }
        if (sq - prev_sq).abs() <= tol * sq {
            return Ok(sq.sqrt());
        }
        prev_sq = sq;
        let mut next = at.matvec(&w);
        let norm: T = next.iter().map(|&x| x * x).sum::<T>().sqrt();
        if norm == T::zero() {
            return Ok(sq.sqrt());
        }
        for x in &mut next {
            *x /= norm;
        }
        v = next;
    }
    Err(Error::ConvergenceFailure {
        iterations: OPERATOR_NORM_MAX_ITER,
        residual: prev_sq.as_f64(),
    })
}

/// KPCA embedding: coordinates of each point on the top-d principal axes
/// of the (optionally double-centered) Gram matrix.
///
/// Column j of the result is sqrt(lambda_j) times eigenvector j; pairwise
/// dot products of the rows reproduce the rank-d truncation of the centered
/// Gram matrix.
pub fn kpca_project<T: Scalar>(kernel: &KernelMatrix<T>, d: usize) -> Result<Matrix<T>> {
    kpca_project_opts(kernel, d, true)
}

/// [`kpca_project`] with the double-centering step made optional.
pub fn kpca_project_opts<T: Scalar>(
    kernel: &KernelMatrix<T>,
    d: usize,
    center: bool,
) -> Result<Matrix<T>> {
    let n = kernel.n();
    if d == 0 || d > n {
        return Err(Error::RankTooLarge { k: d, max: n });
    }
    let centered = if center {
        double_center(kernel.values())
    } else {
        kernel.values().clone()
    };
    let eig = eigen_sorted(&centered, "kpca")?;
    let mut coords = Matrix::zeros(n, d);
    for j in 0..d {
        let scale = eig.eigenvalues()[j].max(T::zero()).sqrt();
        for i in 0..n {
            coords[(i, j)] = scale * eig.vectors()[(i, j)];
        }
    }
    Ok(coords)
}

/// K centered on both sides: H K H with H = I - 11^T/n.
fn double_center<T: Scalar>(k: &Matrix<T>) -> Matrix<T> {
    let n = k.rows();
    let n_t = T::from_f64(n as f64);
    let row_means: Vec<T> = (0..n)
        .map(|i| k.row(i).iter().copied().sum::<T>() / n_t)
        .collect();
    let grand: T = row_means.iter().copied().sum::<T>() / n_t;
    let mut out = Matrix::from_fn(n, n, |i, j| k[(i, j)] - row_means[i] - row_means[j] + grand);
    out.symmetrize();
    out
}
