//! Real symmetric eigensolvers.
//!
//! Two independent routes are provided so each can check the other:
//!
//! * implicit-shift QL on a tridiagonal matrix, optionally preceded by a
//!   Householder reduction of a dense matrix ([`solve_tridiagonal_symmetric`],
//!   [`solve_via_tridiagonal`]);
//! * cyclic Jacobi rotations on the dense matrix ([`solve_dense_symmetric`]).
//!
//! Both return eigenvalues in ascending order with matching orthonormal
//! eigenvector columns.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};

/// Relative asymmetry accepted by the dense solvers.
pub const SYMMETRY_TOLERANCE: f64 = 1e-12;

const MAX_JACOBI_SWEEPS: usize = 100;

#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricEigen {
    /// Ascending.
    pub eigenvalues: Vec<f64>,
    /// Column `k` is the eigenvector of `eigenvalues[k]`.
    pub eigenvectors: DMatrix<f64>,
}

impl SymmetricEigen {
    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    /// V·Λ·Vᵀ.
    pub fn reconstruct(&self) -> DMatrix<f64> {
        let lambda = DMatrix::from_diagonal(&DVector::from_column_slice(&self.eigenvalues));
        &self.eigenvectors * lambda * self.eigenvectors.transpose()
    }

    fn sorted(eigenvalues: Vec<f64>, vectors: DMatrix<f64>) -> Self {
        let mut order: Vec<usize> = (0..eigenvalues.len()).collect();
        order.sort_by(|&a, &b| eigenvalues[a].total_cmp(&eigenvalues[b]));
        let n = vectors.nrows();
        let mut sorted_vectors = DMatrix::zeros(n, order.len());
        for (dst, &src) in order.iter().enumerate() {
            sorted_vectors.set_column(dst, &vectors.column(src));
        }
        SymmetricEigen {
            eigenvalues: order.iter().map(|&k| eigenvalues[k]).collect(),
            eigenvectors: sorted_vectors,
        }
    }
}

/// Result of a Householder reduction: `A = Q·T·Qᵀ` with `T` tridiagonal.
#[derive(Debug, Clone)]
pub struct Tridiagonal {
    pub diagonal: Vec<f64>,
    pub offdiagonal: Vec<f64>,
    pub transform: DMatrix<f64>,
}

/// Full eigendecomposition of the symmetric tridiagonal matrix with the given
/// diagonal and first off-diagonal.
pub fn solve_tridiagonal_symmetric(diagonal: &[f64], offdiagonal: &[f64]) -> Result<SymmetricEigen> {
    let n = diagonal.len();
    if n == 0 && offdiagonal.is_empty() {
        return Ok(SymmetricEigen {
            eigenvalues: Vec::new(),
            eigenvectors: DMatrix::zeros(0, 0),
        });
    }
    if offdiagonal.len() + 1 != n {
        return Err(Error::Contract(format!(
            "off-diagonal has length {} but the diagonal has length {n}",
            offdiagonal.len()
        )));
    }
    implicit_ql(diagonal.to_vec(), offdiagonal.to_vec(), DMatrix::identity(n, n))
}

/// Householder reduction of a symmetric matrix to tridiagonal form.
pub fn tridiagonalize(matrix: &DMatrix<f64>) -> Result<Tridiagonal> {
    check_symmetric(matrix)?;
    let n = matrix.nrows();
    let mut a = matrix.clone();
    let mut q = DMatrix::<f64>::identity(n, n);

    for k in 0..n.saturating_sub(2) {
        let x = a.view((k + 1, k), (n - k - 1, 1)).clone_owned();
        let alpha = x.norm();
        if alpha == 0.0 {
            continue;
        }
        let mut v = DVector::from_column_slice(x.as_slice());
        let sign = if v[0] >= 0.0 { 1.0 } else { -1.0 };
        v[0] += sign * alpha;
        let v_norm = v.norm();
        if v_norm == 0.0 {
            continue;
        }
        v /= v_norm;

        // A <- H A H with H = I - 2 v vᵀ, v supported on rows k+1..n.
        let m = n - k - 1;
        let mut v_full = DVector::zeros(n);
        v_full.rows_mut(k + 1, m).copy_from(&v);
        let p = &a * &v_full;
        let w = &p - v_full.dot(&p) * &v_full;
        a -= 2.0 * (&v_full * w.transpose() + &w * v_full.transpose());

        // Q <- Q H
        let qv = &q * &v_full;
        q -= 2.0 * qv * v_full.transpose();
    }

    let diagonal = (0..n).map(|i| a[(i, i)]).collect();
    let offdiagonal = (1..n).map(|i| a[(i, i - 1)]).collect();
    Ok(Tridiagonal {
        diagonal,
        offdiagonal,
        transform: q,
    })
}

/// Dense symmetric solve through Householder reduction followed by implicit QL.
pub fn solve_via_tridiagonal(matrix: &DMatrix<f64>) -> Result<SymmetricEigen> {
    let t = tridiagonalize(matrix)?;
    if t.diagonal.is_empty() {
        return Ok(SymmetricEigen {
            eigenvalues: Vec::new(),
            eigenvectors: DMatrix::zeros(0, 0),
        });
    }
    implicit_ql(t.diagonal, t.offdiagonal, t.transform)
}

/// Dense symmetric solve by cyclic Jacobi rotations.
pub fn solve_dense_symmetric(matrix: &DMatrix<f64>) -> Result<SymmetricEigen> {
    check_symmetric(matrix)?;
    let n = matrix.nrows();
    let mut a = matrix.clone();
    let mut v = DMatrix::<f64>::identity(n, n);
    let scale = matrix.norm();
    let threshold = f64::EPSILON * scale;

    let off_norm = |a: &DMatrix<f64>| {
        let mut sum = 0.0;
        for j in 0..n {
            for i in 0..j {
                sum += 2.0 * a[(i, j)] * a[(i, j)];
            }
        }
        sum.sqrt()
    };

    let mut converged = false;
    for _ in 0..MAX_JACOBI_SWEEPS {
        if off_norm(&a) <= threshold {
            converged = true;
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + theta.hypot(1.0));
                let c = 1.0 / t.hypot(1.0);
                let s = t * c;

                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = c * akp - s * akq;
                    a[(k, q)] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = c * apk - s * aqk;
                    a[(q, k)] = s * apk + c * aqk;
                }
                a[(p, q)] = 0.0;
                a[(q, p)] = 0.0;

                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = c * vkp - s * vkq;
                    v[(k, q)] = s * vkp + c * vkq;
                }
            }
        }
    }
    if !converged && off_norm(&a) > threshold {
        return Err(Error::Convergence(format!(
            "Jacobi iteration did not converge in {MAX_JACOBI_SWEEPS} sweeps (dimension {n})"
        )));
    }

    let eigenvalues = (0..n).map(|i| a[(i, i)]).collect();
    Ok(SymmetricEigen::sorted(eigenvalues, v))
}

fn check_symmetric(matrix: &DMatrix<f64>) -> Result<()> {
    if !matrix.is_square() {
        return Err(Error::Contract(format!(
            "matrix is {}x{}, expected square",
            matrix.nrows(),
            matrix.ncols()
        )));
    }
    let n = matrix.nrows();
    let tol = SYMMETRY_TOLERANCE * matrix.norm();
    for j in 0..n {
        for i in 0..j {
            let diff = (matrix[(i, j)] - matrix[(j, i)]).abs();
            if diff > tol || diff.is_nan() {
                return Err(Error::Contract(format!(
                    "matrix is not symmetric: |a[{i},{j}] - a[{j},{i}]| = {diff:e}"
                )));
            }
        }
    }
    Ok(())
}

/// Implicit-shift QL on a tridiagonal matrix, accumulating rotations into `z`.
/// `offdiagonal[i]` couples rows `i` and `i + 1`.
fn implicit_ql(
    mut d: Vec<f64>,
    offdiagonal: Vec<f64>,
    mut z: DMatrix<f64>,
) -> Result<SymmetricEigen> {
    let n = d.len();
    let mut e = offdiagonal;
    e.push(0.0);

    let max_iter = 30 * n.max(1);
    let mut f = 0.0;
    let mut tst1: f64 = 0.0;
    for l in 0..n {
        tst1 = tst1.max(d[l].abs() + e[l].abs());
        let mut m = l;
        while m < n - 1 && e[m].abs() > f64::EPSILON * tst1 {
            m += 1;
        }

        if m > l {
            let mut iter = 0;
            loop {
                iter += 1;
                if iter > max_iter {
                    return Err(Error::Convergence(format!(
                        "tridiagonal QL did not converge for eigenvalue {l} (dimension {n})"
                    )));
                }

                let mut g = d[l];
                let mut p = (d[l + 1] - g) / (2.0 * e[l]);
                let mut r = p.hypot(1.0);
                if p < 0.0 {
                    r = -r;
                }
                d[l] = e[l] / (p + r);
                d[l + 1] = e[l] * (p + r);
                let dl1 = d[l + 1];
                let mut h = g - d[l];
                for di in d.iter_mut().skip(l + 2) {
                    *di -= h;
                }
                f += h;

                p = d[m];
                let mut c = 1.0;
                let mut c2 = c;
                let mut c3 = c;
                let el1 = e[l + 1];
                let mut s = 0.0;
                let mut s2 = 0.0;
                for i in (l..m).rev() {
                    c3 = c2;
                    c2 = c;
                    s2 = s;
                    g = c * e[i];
                    h = c * p;
                    r = p.hypot(e[i]);
                    e[i + 1] = s * r;
                    s = e[i] / r;
                    c = p / r;
                    p = c * d[i] - s * g;
                    d[i + 1] = h + s * (c * g + s * d[i]);

                    for k in 0..z.nrows() {
                        let zk1 = z[(k, i + 1)];
                        z[(k, i + 1)] = s * z[(k, i)] + c * zk1;
                        z[(k, i)] = c * z[(k, i)] - s * zk1;
                    }
                }
                p = -s * s2 * c3 * el1 * e[l] / dl1;
                e[l] = s * p;
                d[l] = c * p;

                if e[l].abs() <= f64::EPSILON * tst1 {
                    break;
                }
            }
        }
        d[l] += f;
        e[l] = 0.0;
    }

    Ok(SymmetricEigen::sorted(d, z))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_symmetric(rng: &mut ChaCha8Rng, n: usize) -> DMatrix<f64> {
        let mut m = DMatrix::zeros(n, n);
        for j in 0..n {
            for i in 0..=j {
                let x: f64 = rng.gen_range(-1.0..1.0);
                m[(i, j)] = x;
                m[(j, i)] = x;
            }
        }
        m
    }

    fn tridiagonal_matrix(d: &[f64], e: &[f64]) -> DMatrix<f64> {
        let n = d.len();
        let mut m = DMatrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = d[i];
        }
        for i in 0..e.len() {
            m[(i, i + 1)] = e[i];
            m[(i + 1, i)] = e[i];
        }
        m
    }

    fn assert_decomposition(a: &DMatrix<f64>, eig: &SymmetricEigen) {
        let n = a.nrows();
        let scale = a.norm().max(f64::MIN_POSITIVE);
        assert!((a - eig.reconstruct()).norm() < 1e-10 * scale);
        let gram = eig.eigenvectors.transpose() * &eig.eigenvectors;
        assert!((gram - DMatrix::identity(n, n)).norm() < 1e-10);
        assert!(eig.eigenvalues.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn two_by_two() {
        let eig = solve_tridiagonal_symmetric(&[2.0, 2.0], &[-1.0]).unwrap();
        assert!((eig.eigenvalues[0] - 1.0).abs() < 1e-14);
        assert!((eig.eigenvalues[1] - 3.0).abs() < 1e-14);
    }

    #[test]
    fn zero_tridiagonal() {
        let eig = solve_tridiagonal_symmetric(&[0.0; 5], &[0.0; 4]).unwrap();
        assert!(eig.eigenvalues.iter().all(|&x| x == 0.0));
        assert_decomposition(&DMatrix::zeros(5, 5), &eig);
    }

    #[test]
    fn dimension_mismatch_is_a_contract_error() {
        assert!(matches!(
            solve_tridiagonal_symmetric(&[1.0, 2.0], &[1.0, 2.0]),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn single_element() {
        let eig = solve_tridiagonal_symmetric(&[4.5], &[]).unwrap();
        assert_eq!(eig.eigenvalues, vec![4.5]);
        assert_eq!(eig.eigenvectors[(0, 0)], 1.0);
    }

    #[test]
    fn random_tridiagonal_reconstructs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let d: Vec<f64> = (0..50).map(|_| rng.gen_range(-3.0..3.0)).collect();
        let e: Vec<f64> = (0..49).map(|_| rng.gen_range(-1.0..1.0)).collect();
        let eig = solve_tridiagonal_symmetric(&d, &e).unwrap();
        assert_decomposition(&tridiagonal_matrix(&d, &e), &eig);
    }

    #[test]
    fn dense_trivial_cases() {
        let eig = solve_dense_symmetric(&DMatrix::identity(4, 4)).unwrap();
        assert!(eig.eigenvalues.iter().all(|&x| (x - 1.0).abs() < 1e-15));

        let eig = solve_dense_symmetric(&DMatrix::from_diagonal(&DVector::from_vec(vec![
            3.0, 1.0, 2.0,
        ])))
        .unwrap();
        assert_eq!(eig.eigenvalues, vec![1.0, 2.0, 3.0]);

        let eig = solve_dense_symmetric(&DMatrix::zeros(3, 3)).unwrap();
        assert!(eig.eigenvalues.iter().all(|&x| x == 0.0));
    }

    #[test]
    fn asymmetric_input_is_rejected() {
        let mut m = DMatrix::identity(3, 3);
        m[(0, 2)] = 0.5;
        assert!(matches!(solve_dense_symmetric(&m), Err(Error::Contract(_))));
        assert!(matches!(tridiagonalize(&m), Err(Error::Contract(_))));
        assert!(matches!(
            solve_dense_symmetric(&DMatrix::zeros(2, 3)),
            Err(Error::Contract(_))
        ));
    }

    #[test]
    fn householder_reduction_is_similarity() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let a = random_symmetric(&mut rng, 12);
        let t = tridiagonalize(&a).unwrap();
        let tm = tridiagonal_matrix(&t.diagonal, &t.offdiagonal);
        let back = &t.transform * tm * t.transform.transpose();
        assert!((back - &a).norm() < 1e-12 * a.norm());
    }

    #[test]
    fn dense_paths_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(30);
        let a = random_symmetric(&mut rng, 30);
        let jacobi = solve_dense_symmetric(&a).unwrap();
        let ql = solve_via_tridiagonal(&a).unwrap();
        assert_decomposition(&a, &jacobi);
        assert_decomposition(&a, &ql);
        for (x, y) in jacobi.eigenvalues.iter().zip(&ql.eigenvalues) {
            assert!((x - y).abs() < 1e-9 * a.norm());
        }
    }

    #[test]
    fn degenerate_spectrum() {
        // Two-fold degenerate eigenvalue: any orthonormal basis of the
        // eigenspace is valid, so only check the decomposition itself.
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let q = solve_dense_symmetric(&random_symmetric(&mut rng, 6))
            .unwrap()
            .eigenvectors;
        let lambda = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 1.0, 2.0, 2.0, 2.0, -3.0]));
        let a = &q * lambda * q.transpose();
        let a = (&a + a.transpose()) * 0.5;
        assert_decomposition(&a, &solve_dense_symmetric(&a).unwrap());
        assert_decomposition(&a, &solve_via_tridiagonal(&a).unwrap());
    }
}
