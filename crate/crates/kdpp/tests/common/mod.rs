//! Shared oracles for the integration suites. Everything here recomputes
//! quantities through routes independent of the library implementation:
//! Gaussian elimination, LU determinants, exhaustive subset enumeration,
//! and a from-scratch greedy reimplementation.

#![allow(dead_code)]

use kdpp::matrix::Matrix;
use kdpp::KernelMatrix64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Mat = Matrix<f64>;

pub fn random_matrix(rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Mat {
    Mat::from_fn(rows, cols, |_, _| rng.random::<f64>() * 2.0 - 1.0)
}

/// Random symmetric PSD matrix B B^T.
pub fn random_psd(n: usize, seed: u64) -> Mat {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = random_matrix(n, n, &mut rng);
    let mut k = b.matmul(&b.transpose());
    k.symmetrize();
    k
}

/// Random symmetric strictly positive-definite matrix.
pub fn random_pd(n: usize, seed: u64) -> Mat {
    let k = random_psd(n, seed);
    k.add(&Mat::identity(n).scale(0.5))
}

pub fn kernel_from(values: Mat) -> KernelMatrix64 {
    KernelMatrix64::from_precomputed(values).expect("valid kernel")
}

/// Dense linear solve by Gaussian elimination with partial pivoting.
pub fn gauss_solve(a: &Mat, b: &[f64]) -> Vec<f64> {
    let n = a.rows();
    let mut m = a.clone();
    let mut x = b.to_vec();
    for col in 0..n {
        let mut piv = col;
        for r in (col + 1)..n {
            if m[(r, col)].abs() > m[(piv, col)].abs() {
                piv = r;
            }
        }
        if piv != col {
            for c in 0..n {
                let tmp = m[(col, c)];
                m[(col, c)] = m[(piv, c)];
                m[(piv, c)] = tmp;
            }
            x.swap(col, piv);
        }
        for r in (col + 1)..n {
            let f = m[(r, col)] / m[(col, col)];
            for c in col..n {
                m[(r, c)] -= f * m[(col, c)];
            }
            x[r] -= f * x[col];
        }
    }
    for r in (0..n).rev() {
        for c in (r + 1)..n {
            let xc = x[c];
            x[r] -= m[(r, c)] * xc;
        }
        x[r] /= m[(r, r)];
    }
    x
}

/// Dense inverse via n solves.
pub fn gauss_invert(a: &Mat) -> Mat {
    let n = a.rows();
    let mut inv = Mat::zeros(n, n);
    for j in 0..n {
        let e: Vec<f64> = (0..n).map(|i| if i == j { 1.0 } else { 0.0 }).collect();
        let col = gauss_solve(a, &e);
        for i in 0..n {
            inv[(i, j)] = col[i];
        }
    }
    inv
}

/// Signed determinant by LU with partial pivoting.
pub fn lu_det(a: &Mat) -> f64 {
    let n = a.rows();
    if n == 0 {
        return 1.0;
    }
    let mut m = a.clone();
    let mut det = 1.0;
    for col in 0..n {
        let mut piv = col;
        for r in (col + 1)..n {
            if m[(r, col)].abs() > m[(piv, col)].abs() {
                piv = r;
            }
        }
        if piv != col {
            for c in 0..n {
                let tmp = m[(col, c)];
                m[(col, c)] = m[(piv, c)];
                m[(piv, c)] = tmp;
            }
            det = -det;
        }
        det *= m[(col, col)];
        if det == 0.0 {
            return 0.0;
        }
        for r in (col + 1)..n {
            let f = m[(r, col)] / m[(col, col)];
            for c in col..n {
                m[(r, c)] -= f * m[(col, c)];
            }
        }
    }
    det
}

/// All subsets of {0..n-1} as index lists, empty set first.
pub fn all_subsets(n: usize) -> Vec<Vec<usize>> {
    (0..1usize << n)
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
        .collect()
}

/// All size-k subsets of {0..n-1}.
pub fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    all_subsets(n)
        .into_iter()
        .filter(|s| s.len() == k)
        .collect()
}

pub fn principal_minor(a: &Mat, idx: &[usize]) -> f64 {
    lu_det(&a.submatrix(idx, idx))
}

/// From-scratch greedy selection on a projector matrix: residual diagonals
/// recomputed by dense solves at every step, argmax ties to lowest index.
pub fn dense_solve_greedy(p: &Mat, k: usize) -> Vec<usize> {
    let n = p.rows();
    let mut selected: Vec<usize> = Vec::new();
    for _ in 0..k {
        let mut best: Option<(usize, f64)> = None;
        for j in 0..n {
            if selected.contains(&j) {
                continue;
            }
            let d = if selected.is_empty() {
                p[(j, j)]
            } else {
                let pcc = p.submatrix(&selected, &selected);
                let pcj: Vec<f64> = selected.iter().map(|&c| p[(c, j)]).collect();
                let x = gauss_solve(&pcc, &pcj);
                p[(j, j)] - pcj.iter().zip(&x).map(|(a, b)| a * b).sum::<f64>()
            };
            match best {
                Some((_, bd)) if d <= bd => {}
                _ => best = Some((j, d)),
            }
        }
        selected.push(best.expect("nonempty candidates").0);
    }
    selected
}

/// Squared distance of row j of V to the span of the selected rows,
/// computed by projection through dense solves.
pub fn row_projection_residual(v: &Mat, selected: &[usize], j: usize) -> f64 {
    let vj: Vec<f64> = v.row(j).to_vec();
    let norm_sq: f64 = vj.iter().map(|x| x * x).sum();
    if selected.is_empty() {
        return norm_sq;
    }
    // pi v_j = R^T (R R^T)^-1 R v_j with R the selected rows
    let m = selected.len();
    let gram = Mat::from_fn(m, m, |a, b| {
        v.row(selected[a])
            .iter()
            .zip(v.row(selected[b]))
            .map(|(x, y)| x * y)
            .sum()
    });
    let rv: Vec<f64> = selected
        .iter()
        .map(|&s| v.row(s).iter().zip(&vj).map(|(x, y)| x * y).sum())
        .collect();
    let coeffs = gauss_solve(&gram, &rv);
    let mut proj = vec![0.0; vj.len()];
    for (t, &s) in selected.iter().enumerate() {
        for (p, x) in proj.iter_mut().zip(v.row(s)) {
            *p += coeffs[t] * x;
        }
    }
    vj.iter().zip(&proj).map(|(a, b)| (a - b) * (a - b)).sum()
}

/// Max |entry| of a - b.
pub fn max_abs_diff(a: &Mat, b: &Mat) -> f64 {
    a.sub(b).max_abs()
}
