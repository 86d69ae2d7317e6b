//! The four distance-spectrum specialisations, one strategy per theorem.
//!
//! Every strategy maps a double join onto [`AlignedSpectralData`]. Shared
//! directions are ordered by the descending adjacency eigenvalues of the base
//! graph `G`; index 0 is the all-ones direction. Line-graph eigenvalues ride
//! on the same directions through `X_i = M(G)Y_i / σ_i`, and the `m − n`
//! directions outside the range of `M(G)` carry the line-graph eigenvalue −2.

use crate::distance::{validate_template, TemplateSpec};
use crate::error::{Error, Result};
use crate::graph::{self, Graph};
use crate::numlin::Spectrum;
use crate::transforms::{BlockSizes, BlockedGraph, H1Kind, H2Kind};

use super::{spectrum_of_p, AlignedSpectralData, TheoremId};

/// A closed-form route to the distance spectrum of one family of double joins.
pub trait ClosedFormTheorem: Send + Sync {
    fn id(&self) -> TheoremId;

    fn name(&self) -> &'static str {
        self.id().as_str()
    }

    /// One-line description of the construction covered.
    fn summary(&self) -> &'static str;

    /// Whether the `(H1, H2)` kinds fall inside this theorem.
    fn covers(&self, h1: H1Kind, h2: H2Kind) -> bool;

    fn template(&self) -> TemplateSpec {
        TemplateSpec::for_theorem(self.id())
    }

    fn align(&self, bg: &BlockedGraph) -> Result<AlignedSpectralData>;

    /// The 2×2-pair eigenvalues as given by the theorem's own simplified
    /// formula, `2(n − 1)` values. Used to cross-check the printed
    /// specialisation against the general pair rule.
    fn printed_pair_values(&self, bg: &BlockedGraph) -> Result<Vec<f64>>;
}

/// Eigen-data of the base graph along the shared directions.
struct BaseEigen {
    r: f64,
    m: usize,
    /// Descending adjacency eigenvalues with `lambda[0] = r` exactly, and
    /// `−r` exact when present.
    lambda: Vec<f64>,
}

impl BaseEigen {
    fn new(g: &Graph) -> Result<Self> {
        let c = graph::checks(g);
        if !c.is_connected {
            return Err(Error::Precondition("base graph G must be connected".into()));
        }
        let r = c
            .regularity
            .ok_or_else(|| Error::Precondition("base graph G must be regular".into()))?;
        if r < 2 {
            return Err(Error::Precondition(format!(
                "base graph G must have degree >= 2 so that m >= n, got {r}"
            )));
        }
        let mut lambda = g.adjacency_spectrum()?.values;
        lambda[0] = r as f64;
        // −r (bipartite G) must be exact: σ = √(λ + r) turns a 1e-16
        // residue into a 1e-8 error.
        for x in lambda.iter_mut().skip(1) {
            if (*x + r as f64).abs() <= 1e-9 * r as f64 {
                *x = -(r as f64);
            }
        }
        Ok(BaseEigen {
            r: r as f64,
            m: g.size(),
            lambda,
        })
    }

    fn n(&self) -> usize {
        self.lambda.len()
    }

    /// Singular values of `M(G)` off the Perron direction: `√(λ_i + r)`.
    fn incidence_sigma(&self, i: usize) -> f64 {
        (self.lambda[i] + self.r).max(0.0).sqrt()
    }

    /// Eigenvalues of `H1` on all `m` e-directions, plus its regularity.
    fn h1_eigen(&self, kind: H1Kind) -> (f64, Vec<f64>) {
        let (m, n, r) = (self.m, self.n(), self.r);
        let line: Vec<f64> = (0..m)
            .map(|i| if i < n { self.lambda[i] + r - 2.0 } else { -2.0 })
            .collect();
        let mf = m as f64;
        match kind {
            H1Kind::Empty => (0.0, vec![0.0; m]),
            H1Kind::Complete => (mf - 1.0, perron_then(mf - 1.0, -1.0, m)),
            H1Kind::LineOfG => (line[0], line),
            H1Kind::ComplementLineOfG => {
                let t = mf - 1.0 - line[0];
                let mut v: Vec<f64> = line.iter().map(|x| -1.0 - x).collect();
                v[0] = t;
                (t, v)
            }
        }
    }

    /// Eigenvalues of `H2` on the `n` v-directions, plus its regularity.
    fn h2_eigen(&self, kind: H2Kind) -> (f64, Vec<f64>) {
        let n = self.n();
        let nf = n as f64;
        match kind {
            H2Kind::Empty => (0.0, vec![0.0; n]),
            H2Kind::Complete => (nf - 1.0, perron_then(nf - 1.0, -1.0, n)),
            H2Kind::SameAsG => (self.r, self.lambda.clone()),
            H2Kind::ComplementOfG => {
                let t = nf - 1.0 - self.r;
                let mut v: Vec<f64> = self.lambda.iter().map(|x| -1.0 - x).collect();
                v[0] = t;
                (t, v)
            }
        }
    }
}

fn perron_then(first: f64, rest: f64, len: usize) -> Vec<f64> {
    let mut v = vec![rest; len];
    v[0] = first;
    v
}

/// `(2p − r₁ − 2, −(λ_i(G₁) + 2) for i ≥ 2)`: spectrum of `2(J − I) − A(G₁)`.
fn outer_block(g: &Graph, which: &str) -> Result<Vec<f64>> {
    let r = g
        .regularity()
        .ok_or_else(|| Error::Precondition(format!("{which} must be regular")))? as f64;
    let p = g.order() as f64;
    let lambda = g.adjacency_spectrum()?.values;
    let mut out = Vec::with_capacity(lambda.len());
    out.push(2.0 * p - r - 2.0);
    out.extend(lambda[1..].iter().map(|l| -(l + 2.0)));
    Ok(out)
}

fn assemble(
    base: &BaseEigen,
    g1: &Graph,
    g2: &Graph,
    t: f64,
    a: Vec<f64>,
    b: Vec<f64>,
    sigma_scale: f64,
) -> Result<AlignedSpectralData> {
    let n = base.n();
    let sizes = BlockSizes {
        m: base.m,
        n,
        p: g1.order(),
        q: g2.order(),
    };
    let mut sigma = Vec::with_capacity(n);
    sigma.push(t * (base.m as f64 / n as f64).sqrt());
    sigma.extend((1..n).map(|i| sigma_scale * base.incidence_sigma(i)));
    Ok(AlignedSpectralData {
        sizes,
        s: 1.0,
        k: 2.0,
        l: 3.0,
        t,
        a,
        b,
        sigma,
        c_spec: outer_block(g1, "G1")?,
        d_spec: outer_block(g2, "G2")?,
    })
}

/// `A = 2(J − I) − A(H1)`.
fn a_from_h1(base: &BaseEigen, kind: H1Kind) -> Vec<f64> {
    let (t_h, lam) = base.h1_eigen(kind);
    let mut a: Vec<f64> = lam.iter().map(|x| -(2.0 + x)).collect();
    a[0] = 2.0 * base.m as f64 - 2.0 - t_h;
    a
}

fn require_h1(kind: H1Kind, id: TheoremId) -> Result<()> {
    match kind {
        H1Kind::Empty | H1Kind::LineOfG | H1Kind::ComplementLineOfG => Ok(()),
        H1Kind::Complete => Err(Error::Precondition(format!(
            "{id} needs h1 in {{empty, line, compline}}, got complete"
        ))),
    }
}

/// Plain subdivision, `[S(G)]` with empty `H1` and `H2`.
pub fn align_t32(g: &Graph, g1: &Graph, g2: &Graph) -> Result<AlignedSpectralData> {
    let base = BaseEigen::new(g)?;
    let (m, n) = (base.m as f64, base.n() as f64);
    let a = perron_then(2.0 * m - 2.0, -2.0, base.m);
    let b = perron_then(2.0 * n - 2.0, -2.0, base.n());
    // M = 3J − 2M(G)
    assemble(&base, g1, g2, 3.0 * n - 4.0, a, b, 2.0)
}

/// `H2` is the complement of a triangle-free `G`.
pub fn align_t33(g: &Graph, h1: H1Kind, g1: &Graph, g2: &Graph) -> Result<AlignedSpectralData> {
    require_h1(h1, TheoremId::T33)?;
    if !g.is_triangle_free() {
        return Err(Error::Precondition("T33 needs a triangle-free base graph".into()));
    }
    let base = BaseEigen::new(g)?;
    let n = base.n() as f64;
    let a = a_from_h1(&base, h1);
    // B = A(G) + J − I
    let mut b: Vec<f64> = base.lambda.iter().map(|l| l - 1.0).collect();
    b[0] = n + base.r - 1.0;
    assemble(&base, g1, g2, 2.0 * n - 2.0, a, b, 1.0)
}

/// `H1` complete, any `H2` kind.
pub fn align_t34(g: &Graph, h2: H2Kind, g1: &Graph, g2: &Graph) -> Result<AlignedSpectralData> {
    let base = BaseEigen::new(g)?;
    let (m, n) = (base.m as f64, base.n() as f64);
    let a = perron_then(m - 1.0, -1.0, base.m);
    let (t_h, lam) = base.h2_eigen(h2);
    let mut b: Vec<f64> = lam.iter().map(|x| -(x + 2.0)).collect();
    b[0] = 2.0 * n - 2.0 - t_h;
    assemble(&base, g1, g2, 2.0 * n - 2.0, a, b, 1.0)
}

/// `H2` complete.
pub fn align_t35(g: &Graph, h1: H1Kind, g1: &Graph, g2: &Graph) -> Result<AlignedSpectralData> {
    require_h1(h1, TheoremId::T35)?;
    let base = BaseEigen::new(g)?;
    let n = base.n() as f64;
    let a = a_from_h1(&base, h1);
    let b = perron_then(n - 1.0, -1.0, base.n());
    assemble(&base, g1, g2, 2.0 * n - 2.0, a, b, 1.0)
}

fn plus_minus(mid: f64, radicand: f64) -> [f64; 2] {
    let h = 0.5 * radicand.max(0.0).sqrt();
    [mid + h, mid - h]
}

fn ensure_covered(t: &dyn ClosedFormTheorem, bg: &BlockedGraph) -> Result<()> {
    let (h1, h2) = (bg.core().h1(), bg.core().h2());
    if t.covers(h1, h2) {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "{} does not cover h1 = {h1}, h2 = {h2}",
            t.name()
        )))
    }
}

pub struct PlainSubdivision;
pub struct ComplementOnVertices;
pub struct CompleteOnEdges;
pub struct CompleteOnVertices;

impl ClosedFormTheorem for PlainSubdivision {
    fn id(&self) -> TheoremId {
        TheoremId::T32
    }

    fn summary(&self) -> &'static str {
        "H1 empty, H2 empty; G regular"
    }

    fn covers(&self, h1: H1Kind, h2: H2Kind) -> bool {
        h1 == H1Kind::Empty && h2 == H2Kind::Empty
    }

    fn align(&self, bg: &BlockedGraph) -> Result<AlignedSpectralData> {
        ensure_covered(self, bg)?;
        align_t32(bg.core().base(), bg.g1(), bg.g2())
    }

    fn printed_pair_values(&self, bg: &BlockedGraph) -> Result<Vec<f64>> {
        let base = BaseEigen::new(bg.core().base())?;
        Ok((1..base.n())
            .flat_map(|i| {
                let root = (base.lambda[i] + base.r).max(0.0).sqrt();
                [-2.0 + root, -2.0 - root]
            })
            .collect())
    }
}

impl ClosedFormTheorem for ComplementOnVertices {
    fn id(&self) -> TheoremId {
        TheoremId::T33
    }

    fn summary(&self) -> &'static str {
        "H1 in {empty, line, compline}, H2 = complement of G; G regular and triangle-free"
    }

    fn covers(&self, h1: H1Kind, h2: H2Kind) -> bool {
        h1 != H1Kind::Complete && h2 == H2Kind::ComplementOfG
    }

    fn align(&self, bg: &BlockedGraph) -> Result<AlignedSpectralData> {
        ensure_covered(self, bg)?;
        align_t33(bg.core().base(), bg.core().h1(), bg.g1(), bg.g2())
    }

    fn printed_pair_values(&self, bg: &BlockedGraph) -> Result<Vec<f64>> {
        let base = BaseEigen::new(bg.core().base())?;
        let (_, lh) = base.h1_eigen(bg.core().h1());
        let (k, l) = (2.0, 3.0);
        Ok((1..base.n())
            .flat_map(|i| {
                let (lg, lh, r) = (base.lambda[i], lh[i], base.r);
                let rad = (lg + lh).powi(2) + 2.0 * lh + 6.0 * lg + 4.0 * r + 1.0;
                plus_minus(0.5 * (l - k - 3.0), rad)
            })
            .collect())
    }
}

impl ClosedFormTheorem for CompleteOnEdges {
    fn id(&self) -> TheoremId {
        TheoremId::T34
    }

    fn summary(&self) -> &'static str {
        "H1 complete, H2 in {empty, complete, same, comp}; G regular"
    }

    fn covers(&self, h1: H1Kind, _h2: H2Kind) -> bool {
        h1 == H1Kind::Complete
    }

    fn align(&self, bg: &BlockedGraph) -> Result<AlignedSpectralData> {
        ensure_covered(self, bg)?;
        align_t34(bg.core().base(), bg.core().h2(), bg.g1(), bg.g2())
    }

    fn printed_pair_values(&self, bg: &BlockedGraph) -> Result<Vec<f64>> {
        let base = BaseEigen::new(bg.core().base())?;
        let (_, lh) = base.h2_eigen(bg.core().h2());
        Ok((1..base.n())
            .flat_map(|i| {
                let (lg, lh, r) = (base.lambda[i], lh[i], base.r);
                plus_minus(0.5 * (-3.0 - lh), (lh + 1.0).powi(2) + 4.0 * lg + 4.0 * r)
            })
            .collect())
    }
}

impl ClosedFormTheorem for CompleteOnVertices {
    fn id(&self) -> TheoremId {
        TheoremId::T35
    }

    fn summary(&self) -> &'static str {
        "H1 in {empty, line, compline}, H2 complete; G regular"
    }

    fn covers(&self, h1: H1Kind, h2: H2Kind) -> bool {
        h1 != H1Kind::Complete && h2 == H2Kind::Complete
    }

    fn align(&self, bg: &BlockedGraph) -> Result<AlignedSpectralData> {
        ensure_covered(self, bg)?;
        align_t35(bg.core().base(), bg.core().h1(), bg.g1(), bg.g2())
    }

    fn printed_pair_values(&self, bg: &BlockedGraph) -> Result<Vec<f64>> {
        let base = BaseEigen::new(bg.core().base())?;
        let (_, lh) = base.h1_eigen(bg.core().h1());
        Ok((1..base.n())
            .flat_map(|i| {
                let (lg, lh, r) = (base.lambda[i], lh[i], base.r);
                plus_minus(0.5 * (-3.0 - lh), (lh + 1.0).powi(2) + 4.0 * lg + 4.0 * r)
            })
            .collect())
    }
}

/// Best guess at which theorem hypothesis a failed template points to.
pub fn precondition_hint(bg: &BlockedGraph, theorem: &dyn ClosedFormTheorem) -> Option<String> {
    let c = graph::checks(bg.core().base());
    let (h1, h2) = (bg.core().h1(), bg.core().h2());
    if !theorem.covers(h1, h2) {
        return Some(format!(
            "h1 = {h1}, h2 = {h2} is outside {}: {}",
            theorem.name(),
            theorem.summary()
        ));
    }
    if !c.is_connected {
        return Some("base graph G is disconnected".into());
    }
    if theorem.id() == TheoremId::T33 && !c.is_triangle_free {
        return Some("base graph G has triangles".into());
    }
    if c.regularity.is_none() {
        return Some("base graph G is not regular".into());
    }
    None
}

/// Template check, then alignment, then the block-matrix spectrum.
pub fn closed_form_spectrum(bg: &BlockedGraph, theorem: &dyn ClosedFormTheorem) -> Result<Spectrum> {
    let report = validate_template(bg, &theorem.template());
    if let Some(violation) = report.first_violation {
        return Err(Error::TemplateMismatch {
            theorem: theorem.name().to_string(),
            violation,
            hint: precondition_hint(bg, theorem),
        });
    }
    spectrum_of_p(&theorem.align(bg)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{make_complete, make_cycle};
    use crate::numlin::Clause;
    use crate::theory::quotient_matrix;
    use crate::transforms::{double_join, merged_subdivision};

    fn c(n: usize) -> Graph {
        make_cycle(n).unwrap()
    }

    fn dj(g: &Graph, h1: H1Kind, h2: H2Kind, g1: &Graph, g2: &Graph) -> BlockedGraph {
        double_join(&merged_subdivision(g, h1, h2).unwrap(), g1, g2).unwrap()
    }

    fn close_sorted(a: &[f64], b: &[f64], tol: f64) -> bool {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        x.sort_by(f64::total_cmp);
        y.sort_by(f64::total_cmp);
        x.len() == y.len() && x.iter().zip(&y).all(|(p, q)| (p - q).abs() <= tol)
    }

    #[test]
    fn t32_pairs_for_c4() {
        let d = align_t32(&c(4), &c(3), &c(3)).unwrap();
        let s = spectrum_of_p(&d).unwrap();
        let mut pairs = s.clause_values(Clause::PairPlus);
        pairs.extend(s.clause_values(Clause::PairMinus));
        // λ_i(C4) ∈ {0, 0, −2}, r = 2; the pair rule gives −2 ± 2√(λ_i + r)
        let r8 = 8f64.sqrt();
        let want = [-2.0 + r8, -2.0 - r8, -2.0 + r8, -2.0 - r8, -2.0, -2.0];
        assert!(close_sorted(&pairs, &want, 1e-12), "{pairs:?}");
    }

    #[test]
    fn t32_quotient_matches_printed_matrix() {
        for (g, g1, g2) in [(c(4), c(3), c(3)), (c(5), make_complete(4).unwrap(), c(4))] {
            let d = align_t32(&g, &g1, &g2).unwrap();
            let (m, n, p, q) = (g.size() as f64, g.order() as f64, g1.order() as f64, g2.order() as f64);
            let (r, r1, r2) = (2.0, g1.regularity().unwrap() as f64, g2.regularity().unwrap() as f64);
            let printed = [
                [2.0 * (m - 1.0), 3.0 * n - 4.0, p, 2.0 * q],
                [3.0 * m - 2.0 * r, 2.0 * (n - 1.0), 2.0 * p, q],
                [m, 2.0 * n, 2.0 * (p - 1.0) - r1, 3.0 * q],
                [2.0 * m, n, 3.0 * p, 2.0 * (q - 1.0) - r2],
            ];
            let got = quotient_matrix(&d).entries;
            for i in 0..4 {
                for j in 0..4 {
                    assert!((got[i][j] - printed[i][j]).abs() < 1e-12);
                }
            }
        }
    }

    #[test]
    fn t32_excess_is_minus_two() {
        let d = align_t32(&make_complete(4).unwrap(), &c(3), &c(3)).unwrap();
        let s = spectrum_of_p(&d).unwrap();
        assert_eq!(s.clause_values(Clause::Excess), vec![-2.0, -2.0]);
    }

    #[test]
    fn t33_radicand_matches_pair_rule() {
        let g = c(5);
        for h1 in [H1Kind::Empty, H1Kind::LineOfG, H1Kind::ComplementLineOfG] {
            let d = align_t33(&g, h1, &c(3), &c(3)).unwrap();
            let base = BaseEigen::new(&g).unwrap();
            let (_, lh) = base.h1_eigen(h1);
            for i in 1..5 {
                let (lg, lhi) = (base.lambda[i], lh[i]);
                let rad = (d.a[i] - d.b[i]).powi(2) + 4.0 * d.sigma[i].powi(2);
                let printed = (lg + lhi).powi(2) + 2.0 * lhi + 6.0 * lg + 4.0 * 2.0 + 1.0;
                assert!((rad - printed).abs() < 1e-10);
                assert!((0.5 * (d.a[i] + d.b[i]) - 0.5 * (lg - lhi - 3.0)).abs() < 1e-12);
            }
            let excess: Vec<f64> = d.a[5..].to_vec();
            let want: Vec<f64> = lh[5..].iter().map(|x| -(2.0 + x)).collect();
            assert_eq!(excess, want);
        }
    }

    #[test]
    fn t33_requires_triangle_free() {
        let k4 = make_complete(4).unwrap();
        assert!(matches!(align_t33(&k4, H1Kind::Empty, &c(3), &c(3)), Err(Error::Precondition(_))));
        assert!(matches!(align_t33(&c(4), H1Kind::Complete, &c(3), &c(3)), Err(Error::Precondition(_))));
    }

    #[test]
    fn t34_t35_quotient_rows() {
        let g = c(5);
        let (m, n) = (5.0, 5.0);
        let d = align_t34(&g, H2Kind::SameAsG, &c(3), &c(4)).unwrap();
        let q = quotient_matrix(&d).entries;
        assert_eq!(q[0], [m - 1.0, 2.0 * (n - 1.0), 3.0, 8.0]);
        assert_eq!(q[1], [2.0 * m - 2.0, 2.0 * (n - 1.0) - 2.0, 6.0, 4.0]);

        let g = c(6);
        let d = align_t35(&g, H1Kind::LineOfG, &c(3), &c(3)).unwrap();
        let q = quotient_matrix(&d).entries;
        // second row: (2m − r, n − 1, 2p, q)
        assert_eq!(q[1], [12.0 - 2.0, 5.0, 6.0, 3.0]);
    }

    #[test]
    fn t34_excess_is_minus_one() {
        let d = align_t34(&make_complete(4).unwrap(), H2Kind::Empty, &c(3), &c(3)).unwrap();
        let s = spectrum_of_p(&d).unwrap();
        assert_eq!(s.clause_values(Clause::Excess), vec![-1.0, -1.0]);
    }

    #[test]
    fn preconditions() {
        let path = Graph::from_edges(3, [(0, 1), (1, 2)]).unwrap();
        assert!(matches!(align_t32(&path, &c(3), &c(3)), Err(Error::Precondition(_))));
        let k2 = make_complete(2).unwrap();
        assert!(matches!(align_t32(&k2, &c(3), &c(3)), Err(Error::Precondition(_))));
        let irregular = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0), (0, 2)]).unwrap();
        assert!(matches!(align_t32(&c(4), &irregular, &c(3)), Err(Error::Precondition(_))));
    }

    #[test]
    fn closed_form_rejects_uncovered_kinds() {
        let bg = dj(&c(4), H1Kind::LineOfG, H2Kind::Empty, &c(3), &c(3));
        let err = closed_form_spectrum(&bg, &PlainSubdivision).unwrap_err();
        assert!(matches!(err, Error::TemplateMismatch { .. }), "{err}");
    }

    #[test]
    fn template_mismatch_names_triangles() {
        let bg = dj(&make_complete(4).unwrap(), H1Kind::Empty, H2Kind::ComplementOfG, &c(3), &c(3));
        match closed_form_spectrum(&bg, &ComplementOnVertices) {
            Err(Error::TemplateMismatch { hint, .. }) => {
                assert_eq!(hint.as_deref(), Some("base graph G has triangles"))
            }
            other => panic!("expected mismatch, got {other:?}"),
        }
    }
}
