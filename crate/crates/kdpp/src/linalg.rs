//! Symmetric eigendecomposition and Cholesky factorization.
//!
//! Two eigensolver routes. The default, [`sym_eigen`], is Householder
//! tridiagonalization followed by implicit-shift QL (the classic
//! EISPACK tred2/tql2 pair), which handles a few thousand points in
//! seconds. [`jacobi_eigen`] is the cyclic Jacobi method (Numerical
//! Recipes section 11.1): an order of magnitude slower but unconditionally
//! convergent, so [`sym_eigen`] falls back to it in the unlikely event the
//! QL iteration stalls, and the tests cross-check the two routes against
//! each other. Both are fully deterministic.

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::scalar::Scalar;

/// Hard cap on Jacobi sweeps; in practice convergence takes well under 20.
pub const MAX_JACOBI_SWEEPS: usize = 100;

/// Cap on QL iterations per eigenvalue; EISPACK used 30.
pub const MAX_QL_ITERATIONS: usize = 50;

/// Eigenvalues and eigenvectors of a symmetric matrix, unsorted.
///
/// Returns `(lambda, v)` with `v`'s columns the eigenvectors, so that
/// `a = v * diag(lambda) * v^T`. Tridiagonalizes first and runs QL with
/// implicit shifts; retries with Jacobi if QL fails to converge.
pub fn sym_eigen<T: Scalar>(a: &Matrix<T>) -> Result<(Vec<T>, Matrix<T>)> {
    match tridiag_eigen(a) {
        Err(Error::ConvergenceFailure { .. }) => jacobi_eigen(a),
        other => other,
    }
}

/// tred2 + tql2: Householder reduction to tridiagonal form with
/// accumulated transformations, then QL with implicit shifts.
///
/// Both passes keep the working transforms in the transpose layout
/// (eigenvectors as rows) so every hot inner loop walks contiguous memory;
/// the input matrix is symmetric so no up-front transpose is needed, and
/// one transpose at the end restores the columns-are-eigenvectors
/// convention.
fn tridiag_eigen<T: Scalar>(a: &Matrix<T>) -> Result<(Vec<T>, Matrix<T>)> {
    assert!(a.is_square(), "eigendecomposition needs a square matrix");
    let n = a.rows();
    if n <= 1 {
        return Ok((a.diag(), Matrix::identity(n)));
    }
    let mut vt = a.clone();
    let mut d = vec![T::zero(); n];
    let mut e = vec![T::zero(); n];
    tred2(&mut vt, &mut d, &mut e);
    tql2(&mut vt, &mut d, &mut e)?;
    Ok((d, vt.transpose()))
}

/// Householder reduction of `vt` (input: the symmetric matrix) to
/// tridiagonal form, accumulating the transposed orthogonal transformations
/// back into `vt` rows. On return `d` holds the diagonal and `e[1..]` the
/// subdiagonal.
fn tred2<T: Scalar>(vt: &mut Matrix<T>, d: &mut [T], e: &mut [T]) {
    let n = d.len();
    for (j, dj) in d.iter_mut().enumerate() {
        *dj = vt[(j, n - 1)];
    }

    for i in (1..n).rev() {
        // scale to avoid under/overflow
        let mut scale = T::zero();
        let mut h = T::zero();
        for item in d.iter().take(i) {
            scale += item.abs();
        }
        if scale == T::zero() {
            e[i] = d[i - 1];
            for j in 0..i {
                d[j] = vt[(j, i - 1)];
                vt[(j, i)] = T::zero();
                vt[(i, j)] = T::zero();
            }
        } else {
            // generate the Householder vector
            for item in d.iter_mut().take(i) {
                *item /= scale;
                h += *item * *item;
            }
            let f = d[i - 1];
            let mut g = h.sqrt();
            if f > T::zero() {
                g = -g;
            }
            e[i] = scale * g;
            h -= f * g;
            d[i - 1] = f - g;
            for item in e.iter_mut().take(i) {
                *item = T::zero();
            }

            // apply the similarity transformation to the remaining block
            for j in 0..i {
                let f = d[j];
                vt[(i, j)] = f;
                let mut g = e[j] + vt[(j, j)] * f;
                let row_j = vt.row(j);
                for k in (j + 1)..i {
                    g += row_j[k] * d[k];
                    e[k] += row_j[k] * f;
                }
                e[j] = g;
            }
            let mut f = T::zero();
            for j in 0..i {
                e[j] /= h;
                f += e[j] * d[j];
            }
            let hh = f / (h + h);
            for j in 0..i {
                e[j] -= hh * d[j];
            }
            for j in 0..i {
                let f = d[j];
                let g = e[j];
                let row_j = vt.row_mut(j);
                for k in j..i {
                    row_j[k] -= f * e[k] + g * d[k];
                }
                d[j] = vt[(j, i - 1)];
                vt[(j, i)] = T::zero();
            }
        }
        d[i] = h;
    }

    // accumulate the transformations
    for i in 0..(n - 1) {
        vt[(i, n - 1)] = vt[(i, i)];
        vt[(i, i)] = T::one();
        let h = d[i + 1];
        if h != T::zero() {
            for (dk, &w) in d.iter_mut().zip(vt.row(i + 1)).take(i + 1) {
                *dk = w / h;
            }
            for j in 0..=i {
                let mut g = T::zero();
                {
                    let row_next = vt.row(i + 1);
                    let row_j = vt.row(j);
                    for k in 0..=i {
                        g += row_next[k] * row_j[k];
                    }
                }
                let row_j = vt.row_mut(j);
                for (k, &dk) in d.iter().enumerate().take(i + 1) {
                    row_j[k] -= g * dk;
                }
            }
        }
        for w in vt.row_mut(i + 1).iter_mut().take(i + 1) {
            *w = T::zero();
        }
    }
    for (j, dj) in d.iter_mut().enumerate() {
        *dj = vt[(j, n - 1)];
        vt[(j, n - 1)] = T::zero();
    }
    vt[(n - 1, n - 1)] = T::one();
    e[0] = T::zero();
}

/// QL iteration with implicit shifts on the tridiagonal (d, e), rotations
/// accumulated into the rows of `vt`.
fn tql2<T: Scalar>(vt: &mut Matrix<T>, d: &mut [T], e: &mut [T]) -> Result<()> {
    let n = d.len();
    for i in 1..n {
        e[i - 1] = e[i];
    }
    e[n - 1] = T::zero();

    let eps = T::epsilon();
    let mut shift_total = T::zero();
    let mut tst1 = T::zero();

    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n {
            if e[m].abs() <= eps * tst1 {
                break;
            }
            m += 1;
        }

        if m > l {
            let mut iterations = 0usize;
            loop {
                iterations += 1;
                if iterations > MAX_QL_ITERATIONS {
                    return Err(Error::ConvergenceFailure {
                        iterations: MAX_QL_ITERATIONS,
                        residual: e[l].abs().as_f64(),
                    });
                }

                // implicit shift from the leading 2x2
                let g = d[l];
                let two = T::from_f64(2.0);
                let mut p = (d[l + 1] - g) / (two * e[l]);
                let mut r = p.hypot(T::one());
                if p < T::zero() {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for item in d.iter_mut().take(n).skip(l + 2) {
                    *item -= h;
                }
                shift_total += h;

                // implicit QL sweep from m back down to l
                p = d[m];
                let mut c = T::one();
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = T::zero();
                let mut s2 = T::zero();
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    let g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);

                    rotate_rows(vt, i, s, c);
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;

                if e[l].abs() <= eps * tst1 {
                    break;
                }
            }
        }
        d[l] += shift_total;
        e[l] = T::zero();
    }
    Ok(())
}

/// Plane rotation of rows i and i+1: row_{i+1} <- s*row_i + c*row_{i+1},
/// row_i <- c*row_i - s*row_{i+1}.
#[inline]
fn rotate_rows<T: Scalar>(vt: &mut Matrix<T>, i: usize, s: T, c: T) {
    let (row_i, row_next) = vt.rows_pair_mut(i, i + 1);
    for (a, b) in row_i.iter_mut().zip(row_next.iter_mut()) {
        let h = *b;
        let low = *a;
        *b = s * low + c * h;
        *a = c * low - s * h;
    }
}

/// Eigenvalues and eigenvectors of a symmetric matrix, unsorted.
///
/// Returns `(lambda, v)` with `v`'s columns the eigenvectors, so that
/// `a = v * diag(lambda) * v^T`.
pub fn jacobi_eigen<T: Scalar>(a: &Matrix<T>) -> Result<(Vec<T>, Matrix<T>)> {
    assert!(a.is_square(), "eigendecomposition needs a square matrix");
    let n = a.rows();
    let mut a = a.clone();
    let mut v = Matrix::identity(n);
    if n <= 1 {
        return Ok((a.diag(), v));
    }

    let scale = a.max_abs();
    if scale == T::zero() {
        return Ok((vec![T::zero(); n], v));
    }
    let tol = T::epsilon() * scale;

    for _sweep in 0..MAX_JACOBI_SWEEPS {
        let mut off = T::zero();
        for p in 0..n - 1 {
            for q in (p + 1)..n {
                off = off.max(a[(p, q)].abs());
            }
        }
        if off <= tol {
            return Ok((a.diag(), v));
        }

        for p in 0..n - 1 {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == T::zero() {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (T::from_f64(2.0) * apq);
                let t = if (theta * theta).is_finite() {
                    let mag = theta.abs() + (theta * theta + T::one()).sqrt();
                    if theta >= T::zero() {
                        mag.recip()
                    } else {
                        -mag.recip()
                    }
                } else {
                    // theta^2 overflowed: t ~ 1/(2 theta)
                    (T::from_f64(2.0) * theta).recip()
                };
                let c = (t * t + T::one()).sqrt().recip();
                let s = t * c;
                let tau = s / (T::one() + c);

                let tapq = t * apq;
                a[(p, p)] -= tapq;
                a[(q, q)] += tapq;
                a[(p, q)] = T::zero();
                a[(q, p)] = T::zero();
                for i in 0..n {
                    if i == p || i == q {
                        continue;
                    }
                    let aip = a[(i, p)];
                    let aiq = a[(i, q)];
                    let nip = aip - s * (aiq + tau * aip);
                    let niq = aiq + s * (aip - tau * aiq);
                    a[(i, p)] = nip;
                    a[(p, i)] = nip;
                    a[(i, q)] = niq;
                    a[(q, i)] = niq;
                }
                for i in 0..n {
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = vip - s * (viq + tau * vip);
                    v[(i, q)] = viq + s * (vip - tau * viq);
                }
            }
        }
    }

    let mut off = T::zero();
    for p in 0..n - 1 {
        for q in (p + 1)..n {
            off = off.max(a[(p, q)].abs());
        }
    }
    Err(Error::ConvergenceFailure {
        iterations: MAX_JACOBI_SWEEPS,
        residual: off.as_f64(),
    })
}

/// Lower-triangular Cholesky factor of a symmetric positive-definite matrix.
///
/// `None` when a pivot is not strictly positive.
pub fn cholesky<T: Scalar>(a: &Matrix<T>) -> Option<Matrix<T>> {
    assert!(a.is_square());
    let n = a.rows();
    let mut l = Matrix::zeros(n, n);
    for j in 0..n {
        let mut d = a[(j, j)];
        for t in 0..j {
            d -= l[(j, t)] * l[(j, t)];
        }
        if d <= T::zero() || !d.is_finite() {
            return None;
        }
        let pivot = d.sqrt();
        l[(j, j)] = pivot;
        for i in (j + 1)..n {
            let mut s = a[(i, j)];
            for t in 0..j {
                s -= l[(i, t)] * l[(j, t)];
            }
            l[(i, j)] = s / pivot;
        }
    }
    Some(l)
}

/// Solve L x = b with L lower triangular.
pub fn forward_substitute<T: Scalar>(l: &Matrix<T>, b: &[T]) -> Vec<T> {
    let n = l.rows();
    debug_assert_eq!(b.len(), n);
    let mut x = vec![T::zero(); n];
    for i in 0..n {
        let mut s = b[i];
        for t in 0..i {
            s -= l[(i, t)] * x[t];
        }
        x[i] = s / l[(i, i)];
    }
    x
}

/// Solve L^T x = b with L lower triangular.
pub fn back_substitute_transposed<T: Scalar>(l: &Matrix<T>, b: &[T]) -> Vec<T> {
    let n = l.rows();
    debug_assert_eq!(b.len(), n);
    let mut x = vec![T::zero(); n];
    for i in (0..n).rev() {
        let mut s = b[i];
        for t in (i + 1)..n {
            s -= l[(t, i)] * x[t];
        }
        x[i] = s / l[(i, i)];
    }
    x
}

/// Solve (L L^T) x = b given the Cholesky factor L.
pub fn cholesky_solve<T: Scalar>(l: &Matrix<T>, b: &[T]) -> Vec<T> {
    back_substitute_transposed(l, &forward_substitute(l, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn reconstruct(vals: &[f64], vecs: &Matrix<f64>) -> Matrix<f64> {
        let n = vals.len();
        Matrix::from_fn(n, n, |i, j| {
            (0..n).map(|t| vecs[(i, t)] * vals[t] * vecs[(j, t)]).sum()
        })
    }

    fn random_symmetric(n: usize, rng: &mut ChaCha8Rng) -> Matrix<f64> {
        let mut a = Matrix::from_fn(n, n, |_, _| rng.random::<f64>() * 2.0 - 1.0);
        a.symmetrize();
        a
    }

    #[test]
    fn jacobi_diagonal_is_identity_decomposition() {
        let a = Matrix::from_rows(&[vec![3.0, 0.0], vec![0.0, 1.0]]);
        let (vals, vecs) = jacobi_eigen(&a).unwrap();
        assert_eq!(vals, vec![3.0, 1.0]);
        assert_eq!(vecs, Matrix::identity(2));
    }

    #[test]
    fn jacobi_reconstructs_random_symmetric() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for n in [2, 3, 5, 8, 13] {
            let a = random_symmetric(n, &mut rng);
            let (vals, vecs) = jacobi_eigen(&a).unwrap();
            let err = reconstruct(&vals, &vecs).sub(&a).max_abs();
            assert!(err < 1e-12, "n={n} reconstruction error {err}");

            // V^T V = I
            let gram = vecs.transpose().matmul(&vecs);
            let ortho = gram.sub(&Matrix::identity(n)).max_abs();
            assert!(ortho < 1e-12, "n={n} orthonormality error {ortho}");
        }
    }

    #[test]
    fn jacobi_zero_matrix() {
        let a = Matrix::<f64>::zeros(4, 4);
        let (vals, vecs) = jacobi_eigen(&a).unwrap();
        assert!(vals.iter().all(|&v| v == 0.0));
        assert_eq!(vecs, Matrix::identity(4));
    }

    #[test]
    fn tridiagonal_route_reconstructs_and_is_orthonormal() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        for n in [1, 2, 3, 5, 8, 13, 21, 34] {
            let a = random_symmetric(n, &mut rng);
            let (vals, vecs) = sym_eigen(&a).unwrap();
            let err = reconstruct(&vals, &vecs).sub(&a).max_abs();
            assert!(err < 1e-12 * (n as f64), "n={n} reconstruction error {err}");
            let gram = vecs.transpose().matmul(&vecs);
            let ortho = gram.sub(&Matrix::identity(n)).max_abs();
            assert!(
                ortho < 1e-12 * (n as f64),
                "n={n} orthonormality error {ortho}"
            );
        }

        let zero = Matrix::<f64>::zeros(5, 5);
        let (vals, _) = sym_eigen(&zero).unwrap();
        assert!(vals.iter().all(|&v| v == 0.0));
    }

    #[test]
    fn eigensolver_routes_agree() {
        // the QL and Jacobi routes are independent implementations; their
        // sorted spectra must match to round-off
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        for n in [2, 4, 7, 12, 20] {
            let a = random_symmetric(n, &mut rng);
            let scale = a.max_abs();
            let mut ql = sym_eigen(&a).unwrap().0;
            let mut jac = jacobi_eigen(&a).unwrap().0;
            ql.sort_by(|x, y| y.partial_cmp(x).unwrap());
            jac.sort_by(|x, y| y.partial_cmp(x).unwrap());
            for (q, j) in ql.iter().zip(&jac) {
                assert!((q - j).abs() < 1e-12 * scale.max(1.0), "n={n}: {q} vs {j}");
            }
        }
    }

    #[test]
    fn tridiagonal_route_handles_graded_spectra() {
        // widely spread eigenvalues with known values through an orthogonal
        // similarity: rotate diag(1e6, 1, 1e-6, 0) by a fixed rotation
        let d = [1e6, 1.0, 1e-6, 0.0];
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let raw = random_symmetric(4, &mut rng);
        let (_, q) = jacobi_eigen(&raw).unwrap();
        let a = Matrix::<f64>::from_fn(4, 4, |i, j| {
            (0..4).map(|t| q[(i, t)] * d[t] * q[(j, t)]).sum()
        });
        let (mut vals, _) = sym_eigen(&a).unwrap();
        vals.sort_by(|x, y| y.partial_cmp(x).unwrap());
        for (got, expect) in vals.iter().zip(&[1e6, 1.0, 1e-6, 0.0]) {
            assert!(
                (got - expect).abs() < 1e-9,
                "graded eigenvalue {got} vs {expect}"
            );
        }
    }

    #[test]
    fn cholesky_roundtrip_and_solve() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let b = random_symmetric(6, &mut rng);
        // A = B B^T + I is safely positive definite
        let a = b.matmul(&b.transpose()).add(&Matrix::identity(6));
        let l = cholesky(&a).expect("positive definite");
        let err = l.matmul(&l.transpose()).sub(&a).max_abs();
        assert!(err < 1e-12);

        let rhs: Vec<f64> = (0..6).map(|i| i as f64 - 2.5).collect();
        let x = cholesky_solve(&l, &rhs);
        let residual: f64 = a
            .matvec(&x)
            .iter()
            .zip(&rhs)
            .map(|(ax, r)| (ax - r).abs())
            .fold(0.0, f64::max);
        assert!(residual < 1e-10);
    }

    #[test]
    fn cholesky_rejects_indefinite() {
        let a = Matrix::from_rows(&[vec![1.0, 2.0], vec![2.0, 1.0]]);
        assert!(cholesky(&a).is_none());
    }
}
