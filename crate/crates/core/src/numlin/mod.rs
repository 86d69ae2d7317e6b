//! Dense numeric kernels: symmetric eigensolver, singular values, quartic
//! roots and spectrum bookkeeping.

mod jacobi;
mod quartic;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::IncidenceMatrix;

pub use jacobi::{eigen_decompose, eigen_sym, eigen_sym_with_budget, EigenDecomposition};
pub use quartic::{quartic_roots, Quartic};

/// Off-diagonal Frobenius norm target, relative to the matrix norm.
pub const DEFAULT_EIGEN_TOL: f64 = 1e-12;
pub const DEFAULT_SWEEPS: usize = 100;
/// Absolute tolerance used when comparing two spectra.
pub const DEFAULT_COMPARE_TOL: f64 = 1e-8;

/// Dense real symmetric matrix stored row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetricMatrix {
    order: usize,
    data: Vec<f64>,
}

impl SymmetricMatrix {
    /// Fills the upper triangle from `f` and mirrors it, so the result is
    /// exactly symmetric whatever `f` returns below the diagonal.
    pub fn from_fn(order: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        let mut data = vec![0.0; order * order];
        for i in 0..order {
            for j in i..order {
                let v = f(i, j);
                data[i * order + j] = v;
                data[j * order + i] = v;
            }
        }
        SymmetricMatrix { order, data }
    }

    /// Accepts a row-major square matrix if it is exactly symmetric.
    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let order = rows.len();
        if rows.iter().any(|r| r.len() != order) {
            return Err(Error::Size("matrix is not square".into()));
        }
        for i in 0..order {
            for j in 0..i {
                if rows[i][j] != rows[j][i] {
                    return Err(Error::InvalidGraph(format!(
                        "matrix is not symmetric at ({i}, {j})"
                    )));
                }
            }
        }
        Ok(SymmetricMatrix {
            order,
            data: rows.iter().flatten().copied().collect(),
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.order + j]
    }

    pub fn trace(&self) -> f64 {
        (0..self.order).map(|i| self.get(i, i)).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub(crate) fn into_data(self) -> Vec<f64> {
        self.data
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Numeric,
    ClosedForm,
}

/// Which clause of the block-matrix spectrum produced an eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Clause {
    /// `c_i`, `i ≥ 2`: non-Perron eigenvalues of the G1 block.
    G1Block,
    /// `d_j`, `j ≥ 2`: non-Perron eigenvalues of the G2 block.
    G2Block,
    /// `a_i`, `i > n`: directions of the first block not reached by `M`.
    Excess,
    PairPlus,
    PairMinus,
    /// Roots of the quartic, i.e. eigenvalues of the 4×4 quotient.
    Quotient,
}

impl Clause {
    pub fn as_str(self) -> &'static str {
        match self {
            Clause::G1Block => "g1_block",
            Clause::G2Block => "g2_block",
            Clause::Excess => "excess",
            Clause::PairPlus => "pair_plus",
            Clause::PairMinus => "pair_minus",
            Clause::Quotient => "quotient",
        }
    }
}

/// Eigenvalue multiset, sorted descending.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spectrum {
    pub values: Vec<f64>,
    pub provenance: Provenance,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<Clause>>,
}

impl Spectrum {
    pub fn numeric(mut values: Vec<f64>) -> Self {
        values.sort_by(|a, b| b.total_cmp(a));
        Spectrum {
            values,
            provenance: Provenance::Numeric,
            labels: None,
        }
    }

    /// Sorts `(value, clause)` pairs descending, keeping labels attached.
    pub fn labelled(mut pairs: Vec<(f64, Clause)>, provenance: Provenance) -> Self {
        pairs.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
        let (values, labels) = pairs.into_iter().unzip();
        Spectrum {
            values,
            provenance,
            labels: Some(labels),
        }
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn sum(&self) -> f64 {
        self.values.iter().sum()
    }

    /// Values carrying `clause`, in spectrum order. Empty for unlabelled spectra.
    pub fn clause_values(&self, clause: Clause) -> Vec<f64> {
        match &self.labels {
            Some(labels) => self
                .values
                .iter()
                .zip(labels)
                .filter(|(_, &l)| l == clause)
                .map(|(&v, _)| v)
                .collect(),
            None => Vec::new(),
        }
    }

    /// Stable JSON form: values rounded to 12 significant digits.
    pub fn to_json(&self) -> SpectrumJson {
        SpectrumJson {
            values: self.values.iter().map(|&v| round_sig(v, 12)).collect(),
            provenance: self.provenance,
            labels: self
                .labels
                .as_ref()
                .map(|ls| ls.iter().map(|l| l.as_str().to_string()).collect())
                .unwrap_or_default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumJson {
    pub values: Vec<f64>,
    pub provenance: Provenance,
    pub labels: Vec<String>,
}

/// Rounds to `digits` significant decimal digits; negative zero becomes zero.
pub fn round_sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    let s = format!("{:.*e}", digits.saturating_sub(1), x);
    let v: f64 = s.parse().expect("formatted float parses");
    if v == 0.0 {
        0.0
    } else {
        v
    }
}

/// Formats `x` with `digits` significant digits in positional notation.
pub fn format_sig(x: f64, digits: usize) -> String {
    if x == 0.0 {
        return format!("{:.*}", digits.saturating_sub(1), 0.0);
    }
    let magnitude = x.abs().log10().floor() as i64;
    let decimals = (digits as i64 - 1 - magnitude).max(0) as usize;
    format!("{:.*}", decimals, x)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Comparison {
    pub equal: bool,
    pub max_gap: f64,
}

/// Compares two multisets after sorting both.
pub fn multiset_compare(a: &[f64], b: &[f64], tol: f64) -> Result<Comparison> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    let mut x = a.to_vec();
    let mut y = b.to_vec();
    x.sort_by(f64::total_cmp);
    y.sort_by(f64::total_cmp);
    let max_gap = x
        .iter()
        .zip(&y)
        .map(|(p, q)| (p - q).abs())
        .fold(0.0, f64::max);
    Ok(Comparison {
        equal: max_gap <= tol,
        max_gap,
    })
}

pub fn compare_spectra(a: &Spectrum, b: &Spectrum, tol: f64) -> Result<Comparison> {
    multiset_compare(&a.values, &b.values, tol)
}

pub fn energy(s: &Spectrum) -> f64 {
    s.values.iter().map(|v| v.abs()).sum()
}

/// Singular values of an incidence matrix, descending; `min(rows, cols)` of them.
pub fn singular_values(m: &IncidenceMatrix) -> Result<Vec<f64>> {
    let gram = if m.rows() >= m.cols() {
        m.gram_cols()
    } else {
        m.gram_rows()
    };
    let sym = SymmetricMatrix::from_fn(gram.len(), |i, j| gram[i][j] as f64);
    let spec = eigen_sym(&sym, DEFAULT_EIGEN_TOL)?;
    Ok(spec.values.iter().map(|&l| l.max(0.0).sqrt()).collect())
}
