//! Closed-form spectrum of the four-block partitioned matrix
//!
//! ```text
//!       [ A     M    sJ   kJ ]
//!   P = [ Mᵀ    B    kJ   sJ ]
//!       [ sJ    kJ   C    lJ ]
//!       [ kJ    sJ   lJ   D  ]
//! ```
//!
//! where `A`, `B`, `C`, `D` have constant row sums and `A`, `B` share the
//! singular vectors of `M`. Given eigenvalues aligned along those shared
//! directions, the spectrum of `P` splits into four groups: the non-Perron
//! eigenvalues of `C` and `D`, the eigenvalues of `A` on directions outside
//! the range of `M`, a 2×2 pair for each remaining shared direction, and the
//! four eigenvalues of the quotient matrix.

mod registry;
mod theorems;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numlin::{self, Clause, Provenance, Quartic, Spectrum, SymmetricMatrix, DEFAULT_EIGEN_TOL};
use crate::transforms::BlockSizes;

pub use registry::TheoremRegistry;
pub use theorems::{
    align_t32, align_t33, align_t34, align_t35, closed_form_spectrum, precondition_hint,
    ClosedFormTheorem, CompleteOnEdges, CompleteOnVertices, ComplementOnVertices, PlainSubdivision,
};

/// The four distance-spectrum specialisations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum TheoremId {
    T32,
    T33,
    T34,
    T35,
}

impl TheoremId {
    pub const ALL: [TheoremId; 4] = [TheoremId::T32, TheoremId::T33, TheoremId::T34, TheoremId::T35];

    pub fn as_str(self) -> &'static str {
        match self {
            TheoremId::T32 => "T32",
            TheoremId::T33 => "T33",
            TheoremId::T34 => "T34",
            TheoremId::T35 => "T35",
        }
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for TheoremId {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let key = s.trim().to_ascii_uppercase().replace('.', "");
        let key = key.strip_prefix('T').unwrap_or(&key);
        match key {
            "32" => Ok(TheoremId::T32),
            "33" => Ok(TheoremId::T33),
            "34" => Ok(TheoremId::T34),
            "35" => Ok(TheoremId::T35),
            _ => Err(format!("unknown theorem `{s}` (T32, T33, T34, T35)")),
        }
    }
}

/// Eigen-data of the blocks of `P`, index-aligned along shared directions.
///
/// Index 0 is always the all-ones (Perron) direction, so `a[0]`, `b[0]`,
/// `c_spec[0]`, `d_spec[0]` are the row sums and `sigma[0] = t·√(m/n)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlignedSpectralData {
    pub sizes: BlockSizes,
    pub s: f64,
    pub k: f64,
    pub l: f64,
    /// Row sum of `M`.
    pub t: f64,
    pub a: Vec<f64>,
    pub b: Vec<f64>,
    pub sigma: Vec<f64>,
    pub c_spec: Vec<f64>,
    pub d_spec: Vec<f64>,
}

impl AlignedSpectralData {
    pub fn validate(&self) -> Result<()> {
        let BlockSizes { m, n, p, q } = self.sizes;
        if n == 0 || p == 0 || q == 0 {
            return Err(Error::Alignment("block sizes n, p, q must be positive".into()));
        }
        if m < n {
            return Err(Error::Alignment(format!("need m >= n, got m = {m}, n = {n}")));
        }
        let lens = [
            ("a", self.a.len(), m),
            ("b", self.b.len(), n),
            ("sigma", self.sigma.len(), n),
            ("c_spec", self.c_spec.len(), p),
            ("d_spec", self.d_spec.len(), q),
        ];
        for (name, got, want) in lens {
            if got != want {
                return Err(Error::Alignment(format!("{name} has {got} entries, expected {want}")));
            }
        }
        let expected = self.t * (m as f64 / n as f64).sqrt();
        if self.sigma[0] == 0.0 {
            return Err(Error::Alignment("leading singular value is zero".into()));
        }
        if (self.sigma[0] - expected).abs() > 1e-9 * expected.abs().max(1.0) {
            return Err(Error::Alignment(format!(
                "leading singular value {} differs from t·sqrt(m/n) = {expected}",
                self.sigma[0]
            )));
        }
        Ok(())
    }

    /// The shared-direction 2×2 pairs `(a_i, b_i, σ_i)` for `i = 2..n`.
    pub fn pair_values(&self) -> Vec<(f64, f64)> {
        (1..self.sizes.n)
            .map(|i| {
                let (a, b, s) = (self.a[i], self.b[i], self.sigma[i]);
                let mid = 0.5 * (a + b);
                let half = 0.5 * ((a - b) * (a - b) + 4.0 * s * s).sqrt();
                (mid + half, mid - half)
            })
            .collect()
    }
}

/// Block row sums of `P`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct QuotientMatrix {
    pub entries: [[f64; 4]; 4],
    pub sizes: BlockSizes,
}

impl QuotientMatrix {
    /// Conjugate by `diag(√m, √n, √p, √q)`; same eigenvalues, symmetric.
    pub fn symmetrized(&self) -> SymmetricMatrix {
        let w = self.sizes.as_array().map(|x| (x as f64).sqrt());
        SymmetricMatrix::from_fn(4, |i, j| self.entries[i][j] * w[i] / w[j])
    }

    pub fn eigenvalues(&self) -> Result<[f64; 4]> {
        let v = numlin::eigen_sym(&self.symmetrized(), DEFAULT_EIGEN_TOL)?.values;
        Ok([v[0], v[1], v[2], v[3]])
    }
}

pub fn quotient_matrix(data: &AlignedSpectralData) -> QuotientMatrix {
    let BlockSizes { m, n, p, q } = data.sizes;
    let (m, n, p, q) = (m as f64, n as f64, p as f64, q as f64);
    let (s, k, l, t) = (data.s, data.k, data.l, data.t);
    let (a, b, c, d) = (data.a[0], data.b[0], data.c_spec[0], data.d_spec[0]);
    QuotientMatrix {
        entries: [
            [a, t, s * p, k * q],
            [t * m / n, b, k * p, s * q],
            [s * m, k * n, c, l * q],
            [k * m, s * n, l * p, d],
        ],
        sizes: data.sizes,
    }
}

/// Coefficients of the quartic whose roots are the quotient eigenvalues,
/// written out term by term from the block data.
pub fn f_coefficients(data: &AlignedSpectralData) -> Quartic {
    let BlockSizes { m, n, p, q } = data.sizes;
    let (m, n, p, q) = (m as f64, n as f64, p as f64, q as f64);
    let (s, k, l, t) = (data.s, data.k, data.l, data.t);
    let (a, b, c, d) = (data.a[0], data.b[0], data.c_spec[0], data.d_spec[0]);
    let m1sq = data.sigma[0] * data.sigma[0];
    let (s2, k2, l2) = (s * s, k * k, l * l);

    let x3 = -(a + b + c + d);
    let x2 = (a + b) * (c + d) + a * b + c * d
        - k2 * (m * q + n * p)
        - s2 * (m * p + n * q)
        - l2 * p * q
        - m1sq;
    let x1 = -c * d * (a + b) - a * b * (c + d)
        + s2 * (p * m * (b + d) + n * q * (a + c))
        + k2 * (n * p * (a + d) + q * m * (b + c))
        + l2 * p * q * (a + b)
        - 2.0 * k * s * (l * p * q * (m + n) + m * t * (p + q))
        + m1sq * (c + d);
    let x0 = n * p * q * m * (s2 * s2 + k2 * k2)
        - s2 * (n * a * c * q + b * d * p * m + 2.0 * l * p * q * m * t)
        - k2 * (n * a * d * p + 2.0 * l * p * q * m * t + b * c * q * m)
        - 2.0 * n * k2 * p * q * m * s2
        - l2 * (a * b * p * q - m1sq * p * q)
        + 2.0 * m * k * s * t * (c * q + d * p)
        + 2.0 * k * p * q * s * l * (n * a + m * b)
        - c * d * m1sq
        + a * b * c * d;
    Quartic::new([1.0, x3, x2, x1, x0])
}

/// Closed-form spectrum of `P`, each value labelled with its group.
pub fn spectrum_of_p(data: &AlignedSpectralData) -> Result<Spectrum> {
    data.validate()?;
    let BlockSizes { m, n, .. } = data.sizes;
    let mut out = Vec::with_capacity(data.sizes.total());
    out.extend(data.c_spec[1..].iter().map(|&v| (v, Clause::G1Block)));
    out.extend(data.d_spec[1..].iter().map(|&v| (v, Clause::G2Block)));
    out.extend(data.a[n..m].iter().map(|&v| (v, Clause::Excess)));
    for (plus, minus) in data.pair_values() {
        out.push((plus, Clause::PairPlus));
        out.push((minus, Clause::PairMinus));
    }
    out.extend(
        quotient_matrix(data)
            .eigenvalues()?
            .into_iter()
            .map(|v| (v, Clause::Quotient)),
    );
    Ok(Spectrum::labelled(out, Provenance::ClosedForm))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t32_c4_c3_c3() -> AlignedSpectralData {
        // G = C4 (λ = 2, 0, 0, −2), G1 = G2 = C3 (λ = 2, −1, −1)
        let s2 = 2f64.sqrt();
        AlignedSpectralData {
            sizes: BlockSizes { m: 4, n: 4, p: 3, q: 3 },
            s: 1.0,
            k: 2.0,
            l: 3.0,
            t: 8.0,
            a: vec![6.0, -2.0, -2.0, -2.0],
            b: vec![6.0, -2.0, -2.0, -2.0],
            sigma: vec![8.0, 2.0 * s2, 2.0 * s2, 0.0],
            c_spec: vec![2.0, -1.0, -1.0],
            d_spec: vec![2.0, -1.0, -1.0],
        }
    }

    #[test]
    fn quotient_entries() {
        let q = quotient_matrix(&t32_c4_c3_c3());
        assert_eq!(
            q.entries,
            [
                [6.0, 8.0, 3.0, 6.0],
                [8.0, 6.0, 6.0, 3.0],
                [4.0, 8.0, 2.0, 9.0],
                [8.0, 4.0, 9.0, 2.0]
            ]
        );
    }

    #[test]
    fn degenerate_pairs_repeat_the_diagonal() {
        let mut d = t32_c4_c3_c3();
        d.sigma = vec![8.0, 0.0, 0.0, 0.0];
        d.b = vec![6.0, -2.0, -2.0, -2.0];
        for (plus, minus) in d.pair_values() {
            assert_eq!((plus, minus), (-2.0, -2.0));
        }
    }

    #[test]
    fn alignment_errors() {
        let mut d = t32_c4_c3_c3();
        d.sigma[0] = 7.0;
        assert!(matches!(spectrum_of_p(&d), Err(Error::Alignment(_))));
        let mut d = t32_c4_c3_c3();
        d.a.pop();
        assert!(matches!(d.validate(), Err(Error::Alignment(_))));
        let mut d = t32_c4_c3_c3();
        d.sizes.m = 3;
        assert!(matches!(d.validate(), Err(Error::Alignment(_))));
    }

    #[test]
    fn spectrum_size_and_labels() {
        let s = spectrum_of_p(&t32_c4_c3_c3()).unwrap();
        assert_eq!(s.len(), 14);
        assert_eq!(s.clause_values(Clause::Quotient).len(), 4);
        assert_eq!(s.clause_values(Clause::G1Block), vec![-1.0, -1.0]);
        assert!(s.sum().abs() < 1e-9);
    }

    #[test]
    fn decoupled_quartic_factors() {
        let mut d = t32_c4_c3_c3();
        d.s = 0.0;
        d.k = 0.0;
        d.l = 0.0;
        d.t = 0.0;
        d.sigma[0] = 0.0;
        d.a[0] = 1.0;
        d.b[0] = -2.0;
        d.c_spec[0] = 3.0;
        d.d_spec[0] = 5.0;
        // (x−1)(x+2)(x−3)(x−5) = x⁴ − 7x³ + 5x² + 31x − 30
        let f = f_coefficients(&d);
        let want = [1.0, -7.0, 5.0, 31.0, -30.0];
        for (g, w) in f.coeffs.iter().zip(want) {
            assert!((g - w).abs() < 1e-12, "{:?}", f.coeffs);
        }
    }

    #[test]
    fn theorem_id_parsing() {
        assert_eq!("T33".parse::<TheoremId>().unwrap(), TheoremId::T33);
        assert_eq!("t34".parse::<TheoremId>().unwrap(), TheoremId::T34);
        assert_eq!("3.5".parse::<TheoremId>().unwrap(), TheoremId::T35);
        assert!("T36".parse::<TheoremId>().is_err());
    }
}
