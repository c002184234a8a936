//! Gram matrix construction: standardization, Gaussian kernel, histogram
//! intersection kernel, and CSV ingestion.

use std::fmt;
use std::io::BufRead;
use std::path::Path;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Absolute elementwise symmetry tolerance accepted on precomputed kernels.
pub const SYMMETRY_TOL: f64 = 1e-12;

/// Raw feature matrix, one row per point.
#[derive(Clone, Debug)]
pub struct DataMatrix<T> {
    values: Matrix<T>,
}

impl<T: Scalar> DataMatrix<T> {
    /// Wraps a feature matrix, rejecting empty or non-finite input.
    pub fn new(values: Matrix<T>) -> Result<Self> {
        if values.rows() == 0 || values.cols() == 0 {
            return Err(Error::EmptyData(values.rows()));
        }
        for i in 0..values.rows() {
            for j in 0..values.cols() {
                if !values[(i, j)].is_finite() {
                    return Err(Error::NonFinite { row: i, col: j });
                }
            }
        }
        Ok(Self { values })
    }

    pub fn from_rows(rows: &[Vec<T>]) -> Result<Self> {
        Self::new(Matrix::from_rows(rows))
    }

    pub fn n(&self) -> usize {
        self.values.rows()
    }

    pub fn dim(&self) -> usize {
        self.values.cols()
    }

    pub fn values(&self) -> &Matrix<T> {
        &self.values
    }

    pub fn point(&self, i: usize) -> &[T] {
        self.values.row(i)
    }
}

/// How a Gram matrix was built.
#[derive(Clone, Debug, PartialEq)]
pub enum KernelKind<T> {
    Gaussian { sigma: T },
    HistogramIntersection,
    Precomputed,
}

impl<T: Scalar> fmt::Display for KernelKind<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KernelKind::Gaussian { sigma } => write!(f, "gaussian(sigma={sigma})"),
            KernelKind::HistogramIntersection => write!(f, "histogram_intersection"),
            KernelKind::Precomputed => write!(f, "precomputed"),
        }
    }
}

/// Dense symmetric positive-semidefinite Gram matrix.
///
/// Constructors guarantee exact symmetry and a nonnegative diagonal;
/// positive-semidefiniteness is an input-data property and is only verified
/// by the test suites (a full eigendecomposition at load time is wasteful).
#[derive(Clone, Debug)]
pub struct KernelMatrix<T> {
    values: Matrix<T>,
    kind: KernelKind<T>,
}

impl<T: Scalar> KernelMatrix<T> {
    /// Validates and wraps an externally supplied Gram matrix.
    ///
    /// Checks squareness, finiteness, symmetry within [`SYMMETRY_TOL`] and a
    /// nonnegative diagonal, then symmetrizes exactly so downstream
    /// eigensolvers see `K = K^T` bit for bit.
    pub fn from_precomputed(mut values: Matrix<T>) -> Result<Self> {
        if !values.is_square() || values.rows() == 0 {
            return Err(Error::Config(format!(
                "precomputed kernel must be square and nonempty, got {}x{}",
                values.rows(),
                values.cols()
            )));
        }
        for i in 0..values.rows() {
            for j in 0..values.cols() {
                if !values[(i, j)].is_finite() {
                    return Err(Error::NonFinite { row: i, col: j });
                }
            }
        }
        let (i, j, asym) = values.max_asymmetry();
        if asym.as_f64() > SYMMETRY_TOL {
            return Err(Error::NotSymmetric {
                row: i,
                col: j,
                max_asym: asym.as_f64(),
            });
        }
        values.symmetrize();
        for i in 0..values.rows() {
            if values[(i, i)] < T::zero() {
                return Err(Error::Config(format!(
                    "kernel diagonal entry {i} is negative: {}",
                    values[(i, i)]
                )));
            }
        }
        Ok(Self {
            values,
            kind: KernelKind::Precomputed,
        })
    }

    fn from_symmetric_construction(values: Matrix<T>, kind: KernelKind<T>) -> Self {
        debug_assert_eq!(values.max_asymmetry().2, T::zero());
        Self { values, kind }
    }

    pub fn n(&self) -> usize {
        self.values.rows()
    }

    pub fn values(&self) -> &Matrix<T> {
        &self.values
    }

    pub fn kind(&self) -> &KernelKind<T> {
        &self.kind
    }

    /// Principal submatrix K_CC.
    pub fn principal_submatrix(&self, idx: &[usize]) -> Matrix<T> {
        self.values.submatrix(idx, idx)
    }

    /// Column block K_C (n x |C|).
    pub fn column_block(&self, idx: &[usize]) -> Matrix<T> {
        self.values.select_columns(idx)
    }
}

/// Rescales every column to sample mean 0 and sample standard deviation 1
/// (n-1 denominator). Zero-variance columns come back as all zeros.
pub fn standardize<T: Scalar>(data: &DataMatrix<T>) -> Result<DataMatrix<T>> {
    let n = data.n();
    if n < 2 {
        return Err(Error::EmptyData(n));
    }
    let d = data.dim();
    let x = data.values();
    let n_t = T::from_f64(n as f64);

    let mut out = Matrix::zeros(n, d);
    for j in 0..d {
        let mean = (0..n).map(|i| x[(i, j)]).sum::<T>() / n_t;
        let ss = (0..n)
            .map(|i| (x[(i, j)] - mean) * (x[(i, j)] - mean))
            .sum::<T>();
        let sd = (ss / T::from_f64((n - 1) as f64)).sqrt();
        if sd > T::zero() {
            for i in 0..n {
                out[(i, j)] = (x[(i, j)] - mean) / sd;
            }
        }
        // sd == 0: column stays identically zero
    }
    DataMatrix::new(out)
}

/// Gaussian kernel K_ij = exp(-||x_i - x_j||^2 / (2 sigma^2)).
pub fn gaussian_kernel<T: Scalar>(data: &DataMatrix<T>, sigma: T) -> Result<KernelMatrix<T>> {
    if sigma <= T::zero() || !sigma.is_finite() {
        return Err(Error::InvalidBandwidth(sigma.as_f64()));
    }
    let n = data.n();
    let inv = (T::from_f64(2.0) * sigma * sigma).recip();
    let mut k = Matrix::zeros(n, n);
    for i in 0..n {
        k[(i, i)] = T::one();
        let xi = data.point(i);
        for j in (i + 1)..n {
            let sq: T = xi
                .iter()
                .zip(data.point(j))
                .map(|(&a, &b)| (a - b) * (a - b))
                .sum();
            let v = (-sq * inv).exp();
            k[(i, j)] = v;
            k[(j, i)] = v;
        }
    }
    Ok(KernelMatrix::from_symmetric_construction(
        k,
        KernelKind::Gaussian { sigma },
    ))
}

/// Histogram intersection kernel K_ij = sum_b min(H_ib, H_jb).
pub fn histogram_intersection_kernel<T: Scalar>(hist: &DataMatrix<T>) -> Result<KernelMatrix<T>> {
    let x = hist.values();
    for i in 0..hist.n() {
        for j in 0..hist.dim() {
            if x[(i, j)] < T::zero() {
                return Err(Error::NegativeHistogram {
                    row: i,
                    col: j,
                    value: x[(i, j)].as_f64(),
                });
            }
        }
    }
    let n = hist.n();
    let mut k = Matrix::zeros(n, n);
    for i in 0..n {
        let hi = hist.point(i);
        for j in i..n {
            let v: T = hi.iter().zip(hist.point(j)).map(|(&a, &b)| a.min(b)).sum();
            k[(i, j)] = v;
            k[(j, i)] = v;
        }
    }
    Ok(KernelMatrix::from_symmetric_construction(
        k,
        KernelKind::HistogramIntersection,
    ))
}

/// Divides each row by its L1 mass; all-zero rows are left untouched.
pub fn l1_normalize_rows<T: Scalar>(data: &DataMatrix<T>) -> Result<DataMatrix<T>> {
    let mut out = data.values().clone();
    for i in 0..out.rows() {
        let mass: T = out.row(i).iter().map(|x| x.abs()).sum();
        if mass > T::zero() {
            for v in out.row_mut(i) {
                *v /= mass;
            }
        }
    }
    DataMatrix::new(out)
}

/// Result of reading a dataset file.
pub struct CsvData<T> {
    pub data: DataMatrix<T>,
    /// True when a non-numeric first line was detected and skipped.
    pub header_skipped: bool,
}

/// Reads a headerless CSV of real numbers, one point per row, `.` decimal
/// separator. A first line containing non-numeric tokens is treated as a
/// header and skipped.
pub fn read_csv<T: Scalar>(path: &Path) -> Result<CsvData<T>> {
    let file = std::fs::File::open(path)?;
    parse_csv(std::io::BufReader::new(file))
}

pub fn parse_csv<T: Scalar>(reader: impl BufRead) -> Result<CsvData<T>> {
    let mut rows: Vec<Vec<T>> = Vec::new();
    let mut header_skipped = false;
    let mut width: Option<usize> = None;

    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let trimmed = line.trim();
        if trimmed.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = trimmed.split(',').map(str::trim).collect();
        let mut row = Vec::with_capacity(tokens.len());
        let mut bad_token: Option<String> = None;
        for tok in &tokens {
            match tok.parse::<f64>() {
                Ok(v) => row.push(T::from_f64(v)),
                Err(_) => {
                    bad_token = Some((*tok).to_string());
                    break;
                }
            }
        }
        match bad_token {
            Some(token) => {
                if rows.is_empty() && !header_skipped {
                    eprintln!("warning: skipping non-numeric header line: {trimmed}");
                    header_skipped = true;
                } else {
                    return Err(Error::Parse {
                        line: lineno + 1,
                        token,
                    });
                }
            }
            None => {
                if let Some(w) = width {
                    if row.len() != w {
                        return Err(Error::Config(format!(
                            "row {} has {} fields, expected {}",
                            lineno + 1,
                            row.len(),
                            w
                        )));
                    }
                } else {
                    width = Some(row.len());
                }
                rows.push(row);
            }
        }
    }

    Ok(CsvData {
        data: DataMatrix::from_rows(&rows)?,
        header_skipped,
    })
}
