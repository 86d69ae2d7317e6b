use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Monic quartic `x⁴ + c₃x³ + c₂x² + c₁x + c₀`, coefficients stored
/// highest degree first.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Quartic {
    pub coeffs: [f64; 5],
}

impl Quartic {
    /// Normalises by the leading coefficient.
    pub fn new(coeffs: [f64; 5]) -> Self {
        let lead = coeffs[0];
        assert!(lead != 0.0, "quartic needs a nonzero leading coefficient");
        Quartic {
            coeffs: coeffs.map(|c| c / lead),
        }
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.coeffs.iter().fold(0.0, |acc, &c| acc * x + c)
    }

    fn eval_complex(&self, z: Complex64) -> (Complex64, Complex64) {
        let mut p = Complex64::new(0.0, 0.0);
        let mut dp = Complex64::new(0.0, 0.0);
        for &c in &self.coeffs {
            dp = dp * z + p;
            p = p * z + c;
        }
        (p, dp)
    }

    /// Euclidean norm of the coefficient vector, floored at 1.
    pub fn scale(&self) -> f64 {
        self.coeffs.iter().map(|c| c * c).sum::<f64>().sqrt().max(1.0)
    }
}

/// Coefficients of the `k`-th derivative, highest degree first.
fn derivative(coeffs: &[f64], k: usize) -> Vec<f64> {
    let mut c = coeffs.to_vec();
    for _ in 0..k {
        let deg = c.len() - 1;
        c = c[..deg]
            .iter()
            .enumerate()
            .map(|(i, &a)| a * (deg - i) as f64)
            .collect();
    }
    c
}

fn horner(coeffs: &[f64], x: f64) -> (f64, f64) {
    coeffs.iter().fold((0.0, 0.0), |(p, dp), &c| (p * x + c, dp * x + p))
}

/// Newton on `coeffs`, accepting a step only while it lowers the residual.
fn polish(coeffs: &[f64], mut x: f64) -> f64 {
    for _ in 0..8 {
        let (p, dp) = horner(coeffs, x);
        if dp == 0.0 || p == 0.0 {
            break;
        }
        let next = x - p / dp;
        if horner(coeffs, next).0.abs() < p.abs() {
            x = next;
        } else {
            break;
        }
    }
    x
}

/// Real roots of a real-rooted quartic, sorted descending.
///
/// Aberth–Ehrlich iteration finds all four complex roots. A multiple root
/// shows up as a cluster of iterates scattered off the real axis; those are
/// replaced by one value: the cluster mean, refined as a simple root of the
/// derivative of order (multiplicity − 1). Clustered iterates that are each real are distinct close
/// roots and are kept apart.
pub fn quartic_roots(f: &Quartic) -> Result<[f64; 4]> {
    let c = f.coeffs;
    let bound = 1.0 + c[1..].iter().fold(0.0f64, |m, x| m.max(x.abs()));
    let mut z: Vec<Complex64> = (0..4)
        .map(|k| Complex64::from_polar(0.5 * bound, 0.4 + k as f64 * std::f64::consts::FRAC_PI_2))
        .collect();

    for _ in 0..500 {
        let mut biggest = 0.0f64;
        for k in 0..4 {
            let (p, dp) = f.eval_complex(z[k]);
            if p == Complex64::new(0.0, 0.0) {
                continue;
            }
            let ratio = p / dp;
            let repulsion: Complex64 = (0..4)
                .filter(|&j| j != k)
                .map(|j| {
                    let d = z[k] - z[j];
                    if d.norm() == 0.0 {
                        Complex64::new(0.0, 0.0)
                    } else {
                        d.inv()
                    }
                })
                .sum();
            let step = ratio / (Complex64::new(1.0, 0.0) - ratio * repulsion);
            if step.is_finite() {
                z[k] -= step;
                biggest = biggest.max(step.norm() / (1.0 + z[k].norm()));
            }
        }
        if biggest < 1e-16 {
            break;
        }
    }

    let scale = f.scale();
    let radius = 1e-3 * (1.0 + z.iter().fold(0.0f64, |m, r| m.max(r.norm())));
    let mut order: Vec<usize> = (0..4).collect();
    order.sort_by(|&a, &b| z[a].re.total_cmp(&z[b].re));
    let mut clusters: Vec<Vec<Complex64>> = Vec::new();
    for &k in &order {
        match clusters
            .iter_mut()
            .find(|cl| cl.iter().any(|w| (*w - z[k]).norm() <= radius))
        {
            Some(cl) => cl.push(z[k]),
            None => clusters.push(vec![z[k]]),
        }
    }

    let mut roots = Vec::with_capacity(4);
    for cl in clusters {
        let real = |w: &Complex64| w.im.abs() <= 1e-7 * scale;
        if cl.len() > 1 && !cl.iter().all(real) {
            let mean: Complex64 = cl.iter().sum::<Complex64>() / cl.len() as f64;
            if !real(&mean) {
                return Err(Error::ComplexRoot { imag: mean.im });
            }
            let x = polish(&derivative(&c, cl.len() - 1), mean.re);
            roots.extend(std::iter::repeat_n(x, cl.len()));
            continue;
        }
        for w in cl {
            if !real(&w) {
                return Err(Error::ComplexRoot { imag: w.im });
            }
            roots.push(polish(&c, w.re));
        }
    }
    roots.sort_by(|a, b| b.total_cmp(a));
    Ok([roots[0], roots[1], roots[2], roots[3]])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(coeffs: [f64; 5], want: [f64; 4], tol: f64) {
        let f = Quartic::new(coeffs);
        let r = quartic_roots(&f).unwrap();
        for (g, w) in r.iter().zip(want) {
            assert!((g - w).abs() < tol, "{r:?} vs {want:?}");
        }
        for &x in &r {
            assert!(f.eval(x).abs() <= 1e-6 * f.scale(), "residual at {x}");
        }
    }

    #[test]
    fn factored_inputs() {
        // (x²−1)(x²−4) = x⁴ − 5x² + 4
        check([1.0, 0.0, -5.0, 0.0, 4.0], [2.0, 1.0, -1.0, -2.0], 1e-12);
        // (x−3)x³
        check([1.0, -3.0, 0.0, 0.0, 0.0], [3.0, 0.0, 0.0, 0.0], 1e-9);
        // (x−1)²(x+2)² = x⁴ + 2x³ − 3x² − 4x + 4
        check([1.0, 2.0, -3.0, -4.0, 4.0], [1.0, 1.0, -2.0, -2.0], 1e-7);
        // (x−5)⁴
        check([1.0, -20.0, 150.0, -500.0, 625.0], [5.0; 4], 1e-6);
    }

    #[test]
    fn close_distinct_roots_stay_apart() {
        // (x−1)(x−1.0001)(x+1)(x+2)
        let r = [1.0001, 1.0, -1.0, -2.0];
        let e1: f64 = r.iter().sum();
        let e2 = r[0] * r[1] + r[0] * r[2] + r[0] * r[3] + r[1] * r[2] + r[1] * r[3] + r[2] * r[3];
        let e3 = r[0] * r[1] * r[2] + r[0] * r[1] * r[3] + r[0] * r[2] * r[3] + r[1] * r[2] * r[3];
        let e4: f64 = r.iter().product();
        check([1.0, -e1, e2, -e3, e4], r, 1e-9);
    }

    #[test]
    fn rejects_complex_roots() {
        // (x²+1)(x²−4)
        let f = Quartic::new([1.0, 0.0, -3.0, 0.0, -4.0]);
        assert!(matches!(quartic_roots(&f), Err(Error::ComplexRoot { .. })));
    }

    #[test]
    fn normalises_leading_coefficient() {
        let f = Quartic::new([2.0, 0.0, -10.0, 0.0, 8.0]);
        assert_eq!(f.coeffs, [1.0, 0.0, -5.0, 0.0, 4.0]);
    }
}
