//! Diverse landmark selection for kernel matrices.
//!
//! Builds Gram matrices (Gaussian, histogram intersection, precomputed),
//! samples landmark subsets five ways — seeded uniform, exact DPP, exact
//! k-DPP, greedy deterministic selection on a sharp rank-k projector, and
//! adaptive selection on a ridge-smoothed projector — and scores the
//! resulting Nystrom approximations by relative operator norm, relative max
//! norm and log-determinant diversity. A benchmark harness sweeps methods
//! over landmark counts and emits plot-ready CSV; see the `kdpp` binary.
//!
//! The numeric core is generic over the scalar type ([`Scalar`], i.e. `f32`
//! or `f64`); the aliases below pin the common `f64` instantiations.

pub mod bench;
pub mod error;
pub mod greedy;
pub mod kernel;
pub mod linalg;
pub mod matrix;
pub mod nystrom;
pub mod samplers;
pub mod scalar;
pub mod spectral;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub use greedy::{das_select, greedy_select, GreedyState};
pub use kernel::{
    gaussian_kernel, histogram_intersection_kernel, read_csv, standardize, DataMatrix, KernelKind,
    KernelMatrix,
};
pub use nystrom::{log_det_diversity, nystrom_approximate, quality, NystromApprox, QualityReport};
pub use samplers::{sample_dpp, sample_kdpp, uniform_sample, LandmarkSet, Method};
pub use spectral::{
    kpca_project, leverage_scores, max_norm, operator_norm, ridge_projector, sharp_projector,
    sym_eig, EigenSystem, ProjectorKernel, ProjectorKind,
};

/// `f64` instantiations of the core types.
pub type Matrix64 = matrix::Matrix<f64>;
pub type DataMatrix64 = kernel::DataMatrix<f64>;
pub type KernelMatrix64 = kernel::KernelMatrix<f64>;
pub type EigenSystem64 = spectral::EigenSystem<f64>;
pub type ProjectorKernel64 = spectral::ProjectorKernel<f64>;
pub type NystromApprox64 = nystrom::NystromApprox<f64>;

/// `f32` instantiations for callers trading precision for footprint.
pub type Matrix32 = matrix::Matrix<f32>;
pub type DataMatrix32 = kernel::DataMatrix<f32>;
pub type KernelMatrix32 = kernel::KernelMatrix<f32>;
