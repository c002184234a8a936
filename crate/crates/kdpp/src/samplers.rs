//! Landmark samplers: seeded uniform subsets, exact DPP sampling from an
//! L-ensemble, and fixed-cardinality k-DPP sampling.
//!
//! The two spectral samplers share phase 2: repeatedly draw an index from
//! the squared row masses of an orthonormal column set, then shrink the set
//! to the subspace orthogonal to the drawn coordinate axis.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::kernel::KernelMatrix;
use crate::matrix::Matrix;
use crate::scalar::Scalar;
use crate::spectral::{sym_eig, EigenSystem};

/// Seeded generator used by every randomized sampler. ChaCha has a fixed
/// cross-platform stream, which the reproducibility guarantees rely on.
pub type SampleRng = ChaCha8Rng;

/// Eigenvalues at or below this count as zero when ranking an L-ensemble.
pub const RANK_TOL: f64 = 1e-10;

/// Which sampler produced a landmark set.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Method {
    Uniform,
    Dpp,
    Kdpp,
    GreedySharp,
    Das { gamma: f64 },
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Uniform => write!(f, "uniform"),
            Method::Dpp => write!(f, "dpp"),
            Method::Kdpp => write!(f, "kdpp"),
            Method::GreedySharp => write!(f, "greedy_sharp"),
            Method::Das { gamma } => write!(f, "das({gamma})"),
        }
    }
}

/// Ordered set of selected column indices with selection provenance.
#[derive(Clone, Debug)]
pub struct LandmarkSet {
    /// Distinct indices in selection order.
    pub indices: Vec<usize>,
    pub method: Method,
    pub seed: Option<u64>,
    /// Winning score (or draw probability) recorded at each step.
    pub selection_scores: Option<Vec<f64>>,
    /// True when a greedy run exhausted the projector rank early and
    /// returned fewer indices than requested.
    pub truncated: bool,
}

impl LandmarkSet {
    pub fn len(&self) -> usize {
        self.indices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.indices.is_empty()
    }

    /// One-line CSV form: `method,seed,k,i1;i2;...;ik`.
    pub fn to_csv_line(&self) -> String {
        let seed = self.seed.map(|s| s.to_string()).unwrap_or_default();
        let joined = self
            .indices
            .iter()
            .map(|i| i.to_string())
            .collect::<Vec<_>>()
            .join(";");
        format!("{},{},{},{}", self.method, seed, self.len(), joined)
    }

    fn assert_valid(&self, n: usize) {
        debug_assert!(self.indices.iter().all(|&i| i < n));
        let mut seen = vec![false; n];
        for &i in &self.indices {
            debug_assert!(!seen[i], "duplicate landmark {i}");
            seen[i] = true;
        }
    }
}

/// k indices uniform over all size-k subsets, via a seeded partial
/// Fisher-Yates shuffle.
pub fn uniform_sample(n: usize, k: usize, seed: u64) -> Result<LandmarkSet> {
    if k > n {
        return Err(Error::RankTooLarge { k, max: n });
    }
    let mut rng = SampleRng::seed_from_u64(seed);
    let mut idx: Vec<usize> = (0..n).collect();
    for i in 0..k {
        let j = rng.random_range(i..n);
        idx.swap(i, j);
    }
    idx.truncate(k);
    let set = LandmarkSet {
        indices: idx,
        method: Method::Uniform,
        seed: Some(seed),
        selection_scores: None,
        truncated: false,
    };
    set.assert_valid(n);
    Ok(set)
}

/// Exact sample from the DPP whose L-ensemble is `l`.
///
/// Phase 1 keeps eigenvector i with probability lambda_i / (lambda_i + 1);
/// phase 2 turns the kept eigenvectors into a subset of ground-set indices.
/// The returned size equals the phase-1 count.
pub fn sample_dpp<T: Scalar>(l: &KernelMatrix<T>, seed: u64) -> Result<LandmarkSet> {
    let eig = sym_eig(l)?;
    sample_dpp_from_eig(&eig, seed)
}

/// [`sample_dpp`] with the eigendecomposition precomputed, so callers
/// drawing many samples can amortize it.
pub fn sample_dpp_from_eig<T: Scalar>(eig: &EigenSystem<T>, seed: u64) -> Result<LandmarkSet> {
    let mut rng = SampleRng::seed_from_u64(seed);
    let mut chosen = Vec::new();
    for (i, &lambda) in eig.eigenvalues().iter().enumerate() {
        let p = lambda.as_f64() / (lambda.as_f64() + 1.0);
        if rng.random::<f64>() < p {
            chosen.push(i);
        }
    }
    let (indices, scores) = spectral_phase_two(eig, &chosen, &mut rng)?;
    let set = LandmarkSet {
        indices,
        method: Method::Dpp,
        seed: Some(seed),
        selection_scores: Some(scores),
        truncated: false,
    };
    set.assert_valid(eig.n());
    Ok(set)
}

/// Exact sample of size k with Pr(Y = C) proportional to det(L_CC).
///
/// Phase 1 is the elementary-symmetric-polynomial backward recursion that
/// conditions the eigenvector count on exactly k; the recursion runs in log
/// space so it cannot overflow for large ground sets. Phase 2 is shared
/// with [`sample_dpp`].
pub fn sample_kdpp<T: Scalar>(l: &KernelMatrix<T>, k: usize, seed: u64) -> Result<LandmarkSet> {
    let eig = sym_eig(l)?;
    sample_kdpp_from_eig(&eig, k, seed)
}

/// [`sample_kdpp`] from a precomputed eigendecomposition.
pub fn sample_kdpp_from_eig<T: Scalar>(
    eig: &EigenSystem<T>,
    k: usize,
    seed: u64,
) -> Result<LandmarkSet> {
    let rank = eig.rank_above(T::from_f64(RANK_TOL));
    if k > rank {
        return Err(Error::RankTooLarge { k, max: rank });
    }
    let mut rng = SampleRng::seed_from_u64(seed);
    let chosen = sample_eigenvector_count_k(eig.eigenvalues(), k, &mut rng);
    debug_assert_eq!(chosen.len(), k);
    let (indices, scores) = spectral_phase_two(eig, &chosen, &mut rng)?;
    debug_assert_eq!(indices.len(), k);
    let set = LandmarkSet {
        indices,
        method: Method::Kdpp,
        seed: Some(seed),
        selection_scores: Some(scores),
        truncated: false,
    };
    set.assert_valid(eig.n());
    Ok(set)
}

/// Selects exactly k eigenvector positions with probability proportional to
/// the product of their eigenvalues.
///
/// Builds the log-domain table E[j][m] = log e_j(lambda_1..lambda_m) and
/// walks it backward, including position m with probability
/// lambda_m * e_{j-1}(..m-1) / e_j(..m).
fn sample_eigenvector_count_k<T: Scalar>(
    eigenvalues: &[T],
    k: usize,
    rng: &mut SampleRng,
) -> Vec<usize> {
    let n = eigenvalues.len();
    let log_lambda: Vec<T> = eigenvalues.iter().map(|l| l.max(T::zero()).ln()).collect();

    // log e_j over prefixes; row j has entries for m = 0..=n
    let mut table = vec![vec![T::neg_infinity(); n + 1]; k + 1];
    table[0] = vec![T::zero(); n + 1];
    for j in 1..=k {
        for m in 1..=n {
            table[j][m] = log_add_exp(table[j][m - 1], log_lambda[m - 1] + table[j - 1][m - 1]);
        }
    }

    let mut chosen = Vec::with_capacity(k);
    let mut j = k;
    for m in (1..=n).rev() {
        if j == 0 {
            break;
        }
        if j == m {
            // every remaining position must be included
            chosen.push(m - 1);
            j -= 1;
            continue;
        }
        let log_p = log_lambda[m - 1] + table[j - 1][m - 1] - table[j][m];
        if rng.random::<f64>() < log_p.exp().as_f64() {
            chosen.push(m - 1);
            j -= 1;
        }
    }
    chosen.reverse();
    chosen
}

/// log(exp(a) + exp(b)) without overflow; -inf in, -inf out.
fn log_add_exp<T: Scalar>(a: T, b: T) -> T {
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    if hi == T::neg_infinity() {
        return hi;
    }
    hi + (lo - hi).exp().ln_1p()
}

/// Phase 2 of spectral DPP sampling.
///
/// Given eigenvector positions, draws one ground-set index per kept
/// eigenvector: index i is drawn with probability proportional to the
/// squared i-th row of the current orthonormal column set V, then V is
/// replaced by an orthonormal basis of its span's intersection with the
/// hyperplane e_i = 0. The column with the largest i-th component is the
/// eliminated direction, which keeps the update factors bounded by one.
fn spectral_phase_two<T: Scalar>(
    eig: &EigenSystem<T>,
    eigenvector_positions: &[usize],
    rng: &mut SampleRng,
) -> Result<(Vec<usize>, Vec<f64>)> {
    let n = eig.n();
    let mut v = eig.vectors().select_columns(eigenvector_positions);
    let mut indices = Vec::with_capacity(v.cols());
    let mut scores = Vec::with_capacity(v.cols());

    while v.cols() > 0 {
        let m = v.cols();
        let masses: Vec<T> = (0..n)
            .map(|i| v.row(i).iter().map(|&x| x * x).sum())
            .collect();
        let total: T = masses.iter().copied().sum();
        let total_f64 = total.as_f64();
        if total_f64.is_nan() || total_f64 <= 1e-300 {
            return Err(Error::NumericalBreakdown {
                norm: total_f64,
                size: m,
            });
        }

        // draw an index from masses / total, renormalizing rather than
        // assuming total == m exactly
        let u = rng.random::<f64>() * total.as_f64();
        let mut acc = 0.0;
        let mut drawn = n;
        for (i, &mass) in masses.iter().enumerate() {
            acc += mass.as_f64();
            if u < acc {
                drawn = i;
                break;
            }
        }
        if drawn == n {
            // cumulative round-off: fall back to the last positive mass
            drawn = masses
                .iter()
                .rposition(|&mass| mass > T::zero())
                .expect("total mass positive");
        }
        indices.push(drawn);
        scores.push(masses[drawn].as_f64() / total.as_f64());

        // eliminated direction: column with the largest drawn-row component
        let mut pivot_col = 0;
        let mut pivot_abs = T::zero();
        for c in 0..m {
            let a = v[(drawn, c)].abs();
            if a > pivot_abs {
                pivot_abs = a;
                pivot_col = c;
            }
        }
        if pivot_abs == T::zero() {
            return Err(Error::NumericalBreakdown { norm: 0.0, size: m });
        }

        let pivot = v.column(pivot_col);
        let mut next = Matrix::zeros(n, m - 1);
        let mut out_c = 0;
        for c in 0..m {
            if c == pivot_col {
                continue;
            }
            let factor = v[(drawn, c)] / pivot[drawn];
            for i in 0..n {
                next[(i, out_c)] = v[(i, c)] - factor * pivot[i];
            }
            next[(drawn, out_c)] = T::zero();
            out_c += 1;
        }

        orthonormalize_columns(&mut next)?;
        v = next;
    }

    Ok((indices, scores))
}

/// In-place modified Gram-Schmidt over the columns.
fn orthonormalize_columns<T: Scalar>(v: &mut Matrix<T>) -> Result<()> {
    let n = v.rows();
    let m = v.cols();
    for c in 0..m {
        for prev in 0..c {
            let dot: T = (0..n).map(|i| v[(i, prev)] * v[(i, c)]).sum();
            for i in 0..n {
                let p = v[(i, prev)];
                v[(i, c)] -= dot * p;
            }
        }
        let norm: T = (0..n).map(|i| v[(i, c)] * v[(i, c)]).sum::<T>().sqrt();
        if norm.as_f64() < 1e-8 {
            return Err(Error::NumericalBreakdown {
                norm: norm.as_f64(),
                size: m,
            });
        }
        for i in 0..n {
            v[(i, c)] /= norm;
        }
    }
    Ok(())
}
