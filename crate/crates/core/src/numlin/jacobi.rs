//! Cyclic Jacobi diagonalisation of dense symmetric matrices.
//!
//! Each sweep visits every `(p, q)` pair above the diagonal once and applies
//! the plane rotation that zeroes `a[p][q]`. The loop stops when the
//! off-diagonal Frobenius norm drops below `tol · ‖A‖_F`.

use super::{Spectrum, SymmetricMatrix, DEFAULT_SWEEPS};
use crate::error::{Error, Result};

/// Eigenvalues (descending) with eigenvectors stored column-wise in `vectors`:
/// entry `(i, k)` is `vectors[i * order + k]`, column `k` pairs with `values[k]`.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<f64>,
    pub vectors: Vec<f64>,
    pub order: usize,
    pub sweeps: usize,
}

impl EigenDecomposition {
    pub fn vector(&self, k: usize) -> Vec<f64> {
        (0..self.order).map(|i| self.vectors[i * self.order + k]).collect()
    }
}

pub fn eigen_sym(a: &SymmetricMatrix, tol: f64) -> Result<Spectrum> {
    eigen_sym_with_budget(a, tol, DEFAULT_SWEEPS)
}

pub fn eigen_sym_with_budget(a: &SymmetricMatrix, tol: f64, max_sweeps: usize) -> Result<Spectrum> {
    let (values, _, _) = jacobi(a, tol, max_sweeps, false)?;
    Ok(Spectrum::numeric(values))
}

pub fn eigen_decompose(a: &SymmetricMatrix, tol: f64) -> Result<EigenDecomposition> {
    let n = a.order();
    let (values, vectors, sweeps) = jacobi(a, tol, DEFAULT_SWEEPS, true)?;
    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&x, &y| values[y].total_cmp(&values[x]));
    let mut sorted = vec![0.0; n * n];
    for (k, &src) in idx.iter().enumerate() {
        for i in 0..n {
            sorted[i * n + k] = vectors[i * n + src];
        }
    }
    Ok(EigenDecomposition {
        values: idx.iter().map(|&k| values[k]).collect(),
        vectors: sorted,
        order: n,
        sweeps,
    })
}

fn off_norm(a: &[f64], n: usize) -> f64 {
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[i * n + j] * a[i * n + j];
            }
        }
    }
    s.sqrt()
}

fn jacobi(
    m: &SymmetricMatrix,
    tol: f64,
    max_sweeps: usize,
    want_vectors: bool,
) -> Result<(Vec<f64>, Vec<f64>, usize)> {
    assert!(tol > 0.0, "eigen tolerance must be positive");
    let n = m.order();
    let norm = m.frobenius_norm();
    let mut a = m.clone().into_data();
    let mut v = Vec::new();
    if want_vectors {
        v = vec![0.0; n * n];
        for i in 0..n {
            v[i * n + i] = 1.0;
        }
    }
    let diag = |a: &[f64]| (0..n).map(|i| a[i * n + i]).collect::<Vec<_>>();
    if norm == 0.0 {
        return Ok((diag(&a), v, 0));
    }

    let target = tol * norm;
    for sweep in 0..=max_sweeps {
        let off = off_norm(&a, n);
        if off <= target {
            return Ok((diag(&a), v, sweep));
        }
        if sweep == max_sweeps {
            return Err(Error::Convergence {
                sweeps: max_sweeps,
                off_norm: off,
            });
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (1.0 + theta * theta).sqrt());
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;

                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
                a[p * n + q] = 0.0;
                a[q * n + p] = 0.0;

                if want_vectors {
                    for k in 0..n {
                        let vkp = v[k * n + p];
                        let vkq = v[k * n + q];
                        v[k * n + p] = c * vkp - s * vkq;
                        v[k * n + q] = s * vkp + c * vkq;
                    }
                }
            }
        }
    }
    unreachable!("loop returns on the final sweep")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numlin::DEFAULT_EIGEN_TOL;

    fn eig(rows: &[Vec<f64>]) -> Vec<f64> {
        eigen_sym(&SymmetricMatrix::from_rows(rows).unwrap(), DEFAULT_EIGEN_TOL)
            .unwrap()
            .values
    }

    #[test]
    fn small_examples() {
        let v = eig(&[vec![0.0, 1.0], vec![1.0, 0.0]]);
        assert!((v[0] - 1.0).abs() < 1e-14 && (v[1] + 1.0).abs() < 1e-14);

        let v = eig(&vec![vec![1.0; 3]; 3]);
        for (got, want) in v.iter().zip([3.0, 0.0, 0.0]) {
            assert!((got - want).abs() < 1e-12, "{v:?}");
        }

        let c4 = vec![
            vec![0.0, 1.0, 0.0, 1.0],
            vec![1.0, 0.0, 1.0, 0.0],
            vec![0.0, 1.0, 0.0, 1.0],
            vec![1.0, 0.0, 1.0, 0.0],
        ];
        for (got, want) in eig(&c4).iter().zip([2.0, 0.0, 0.0, -2.0]) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn zero_and_diagonal() {
        assert_eq!(eig(&vec![vec![0.0; 3]; 3]), vec![0.0; 3]);
        let v = eig(&[vec![1.0, 0.0], vec![0.0, 5.0]]);
        assert_eq!(v, vec![5.0, 1.0]);
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let rows: Vec<Vec<f64>> = (0..8)
            .map(|i| (0..8).map(|j| ((i * 7 + j * 3) % 5) as f64 + (i + j) as f64).collect())
            .collect();
        let m = SymmetricMatrix::from_fn(8, |i, j| rows[i][j]);
        assert!(matches!(
            eigen_sym_with_budget(&m, 1e-14, 0),
            Err(Error::Convergence { sweeps: 0, .. })
        ));
        assert!(eigen_sym_with_budget(&m, 1e-14, 50).is_ok());
    }

    #[test]
    fn decomposition_vectors_match_values() {
        let m = SymmetricMatrix::from_fn(3, |i, j| [[2.0, 1.0, 0.0], [1.0, 2.0, 1.0], [0.0, 1.0, 2.0]][i][j]);
        let d = eigen_decompose(&m, DEFAULT_EIGEN_TOL).unwrap();
        for k in 0..3 {
            let x = d.vector(k);
            for i in 0..3 {
                let ax: f64 = (0..3).map(|j| m.get(i, j) * x[j]).sum();
                assert!((ax - d.values[k] * x[i]).abs() < 1e-12);
            }
        }
        assert!(d.values.windows(2).all(|w| w[0] >= w[1]));
    }
}
