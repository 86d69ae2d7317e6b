//! Helpers shared by the integration test targets.
#![allow(dead_code)]

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rand::Rng;
use spectra::numlin::SymmetricMatrix;
use spectra::theory::AlignedSpectralData;
use spectra::transforms::BlockSizes;

/// Random orthogonal matrix whose first column is `1/√n · 1`.
pub fn orthogonal_with_ones<R: Rng>(rng: &mut R, n: usize) -> DMatrix<f64> {
    let mut m = DMatrix::from_fn(n, n, |_, _| rng.gen_range(-1.0..1.0));
    m.column_mut(0).fill(1.0);
    let mut q = m.qr().q();
    if q[(0, 0)] < 0.0 {
        q *= -1.0;
    }
    q
}

/// `U diag(vals) Uᵀ`.
pub fn from_eigen(u: &DMatrix<f64>, vals: &[f64]) -> DMatrix<f64> {
    u * DMatrix::from_diagonal(&DVector::from_column_slice(vals)) * u.transpose()
}

/// An admissible instance with its explicitly assembled partitioned matrix.
pub struct Instance {
    pub data: AlignedSpectralData,
    pub p: DMatrix<f64>,
}

fn uniform<R: Rng>(rng: &mut R, len: usize) -> Vec<f64> {
    (0..len).map(|_| rng.gen_range(-5.0..5.0)).collect()
}

/// Blocks sharing eigenbases: `A = U diag(a) Uᵀ`, `B = V diag(b) Vᵀ`,
/// `M = U[:, :n] diag(σ) Vᵀ`, `C`, `D` with constant row sums.
pub fn random_instance<R: Rng>(rng: &mut R) -> Instance {
    let n = rng.gen_range(1..=6);
    let m = n + rng.gen_range(0..=4);
    let p = rng.gen_range(1..=5);
    let q = rng.gen_range(1..=5);
    let (u, v) = (orthogonal_with_ones(rng, m), orthogonal_with_ones(rng, n));
    let (w1, w2) = (orthogonal_with_ones(rng, p), orthogonal_with_ones(rng, q));
    let a = uniform(rng, m);
    let b = uniform(rng, n);
    let c_spec = uniform(rng, p);
    let d_spec = uniform(rng, q);
    let t: f64 = rng.gen_range(0.5..5.0);
    let mut sigma: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..4.0)).collect();
    sigma[0] = t * (m as f64 / n as f64).sqrt();
    let (s, k, l) = (
        rng.gen_range(-3.0..3.0),
        rng.gen_range(-3.0..3.0),
        rng.gen_range(-3.0..3.0),
    );

    let mm = u.columns(0, n) * DMatrix::from_diagonal(&DVector::from_column_slice(&sigma)) * v.transpose();
    let blocks = [
        from_eigen(&u, &a),
        from_eigen(&v, &b),
        from_eigen(&w1, &c_spec),
        from_eigen(&w2, &d_spec),
    ];
    let sizes = [m, n, p, q];
    let offs = [0, m, m + n, m + n + p];
    let total = m + n + p + q;
    // constants on the off-diagonal J blocks, by block pair
    let konst = [[0.0, 0.0, s, k], [0.0, 0.0, k, s], [s, k, 0.0, l], [k, s, l, 0.0]];
    let mut big = DMatrix::zeros(total, total);
    for bi in 0..4 {
        for bj in 0..4 {
            for i in 0..sizes[bi] {
                for j in 0..sizes[bj] {
                    big[(offs[bi] + i, offs[bj] + j)] = match (bi, bj) {
                        _ if bi == bj => blocks[bi][(i, j)],
                        (0, 1) => mm[(i, j)],
                        (1, 0) => mm[(j, i)],
                        _ => konst[bi][bj],
                    };
                }
            }
        }
    }
    Instance {
        data: AlignedSpectralData {
            sizes: BlockSizes { m, n, p, q },
            s,
            k,
            l,
            t,
            a,
            b,
            sigma,
            c_spec,
            d_spec,
        },
        p: big,
    }
}

pub fn nalgebra_eigenvalues(m: DMatrix<f64>) -> Vec<f64> {
    let mut v: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    v.sort_by(|a, b| b.total_cmp(a));
    v
}

pub fn to_nalgebra(a: &SymmetricMatrix) -> DMatrix<f64> {
    DMatrix::from_fn(a.order(), a.order(), |i, j| a.get(i, j))
}

pub fn random_symmetric<R: Rng>(rng: &mut R, n: usize) -> SymmetricMatrix {
    SymmetricMatrix::from_fn(n, |_, _| rng.gen_range(-10.0..10.0))
}
