//! BFS distances, distance energy, and the block templates of the distance
//! matrices of double-join graphs.

use std::collections::VecDeque;
use std::fmt::Write as _;

use serde::Serialize;

use crate::error::{Error, Result, Violation};
use crate::graph::{self, Graph};
use crate::numlin::{self, Spectrum, SymmetricMatrix, DEFAULT_EIGEN_TOL};
use crate::theory::TheoremId;
use crate::transforms::BlockedGraph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceMatrix {
    order: usize,
    data: Vec<u32>,
}

impl DistanceMatrix {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.order + j]
    }

    pub fn max(&self) -> u32 {
        self.data.iter().copied().max().unwrap_or(0)
    }

    pub fn row_sum(&self, i: usize) -> u64 {
        self.data[i * self.order..(i + 1) * self.order]
            .iter()
            .map(|&d| u64::from(d))
            .sum()
    }

    pub fn to_symmetric(&self) -> SymmetricMatrix {
        SymmetricMatrix::from_fn(self.order, |i, j| f64::from(self.get(i, j)))
    }

    /// One row per line, comma separated.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for row in self.data.chunks(self.order) {
            let line: Vec<String> = row.iter().map(u32::to_string).collect();
            let _ = writeln!(out, "{}", line.join(","));
        }
        out
    }
}

pub fn distance_matrix(g: &Graph) -> Result<DistanceMatrix> {
    let n = g.order();
    let mut data = vec![u32::MAX; n * n];
    let mut queue = VecDeque::new();
    for src in 0..n {
        let row = &mut data[src * n..(src + 1) * n];
        row[src] = 0;
        queue.clear();
        queue.push_back(src);
        while let Some(v) = queue.pop_front() {
            let d = row[v] + 1;
            for u in g.neighbors(v) {
                if row[u] == u32::MAX {
                    row[u] = d;
                    queue.push_back(u);
                }
            }
        }
        if row.contains(&u32::MAX) {
            return Err(Error::Disconnected);
        }
    }
    Ok(DistanceMatrix { order: n, data })
}

pub fn diameter(g: &Graph) -> Result<u32> {
    Ok(distance_matrix(g)?.max())
}

pub fn distance_spectrum(g: &Graph) -> Result<Spectrum> {
    numlin::eigen_sym(&distance_matrix(g)?.to_symmetric(), DEFAULT_EIGEN_TOL)
}

pub fn distance_energy(g: &Graph) -> Result<f64> {
    Ok(numlin::energy(&distance_spectrum(g)?))
}

/// Integer pattern of one block of a distance template:
/// `j·J + identity·I + own_adj·A(block) + base_adj·A(G) + incidence·M(G)`.
///
/// `own_adj` and `base_adj` only apply to diagonal blocks, `base_adj` only to
/// the v-vertex block; `incidence` only to the e/v blocks (transposed below
/// the diagonal).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct BlockPattern {
    pub j: i64,
    pub identity: i64,
    pub own_adj: i64,
    pub base_adj: i64,
    pub incidence: i64,
}

impl BlockPattern {
    const fn constant(j: i64) -> Self {
        BlockPattern {
            j,
            identity: 0,
            own_adj: 0,
            base_adj: 0,
            incidence: 0,
        }
    }

    const fn diag(j: i64, own_adj: i64) -> Self {
        BlockPattern {
            j,
            identity: -j,
            own_adj,
            base_adj: 0,
            incidence: 0,
        }
    }

    const fn incidence(j: i64, incidence: i64) -> Self {
        BlockPattern {
            j,
            identity: 0,
            own_adj: 0,
            base_adj: 0,
            incidence,
        }
    }
}

/// Printed block form of the distance matrix for one closed-form theorem.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TemplateSpec {
    pub theorem: TheoremId,
    /// Upper triangle is authoritative; the lower one mirrors it.
    pub blocks: [[BlockPattern; 4]; 4],
    pub s: i64,
    pub k: i64,
    pub l: i64,
}

impl TemplateSpec {
    pub fn for_theorem(theorem: TheoremId) -> Self {
        let (s, k, l) = (1, 2, 3);
        let gdiag = BlockPattern::diag(2, -1);
        let (ee, ev, vv) = match theorem {
            TheoremId::T32 => (
                BlockPattern::diag(2, 0),
                BlockPattern::incidence(3, -2),
                BlockPattern::diag(2, 0),
            ),
            TheoremId::T33 => (
                BlockPattern::diag(2, -1),
                BlockPattern::incidence(2, -1),
                BlockPattern {
                    j: 1,
                    identity: -1,
                    own_adj: 0,
                    base_adj: 1,
                    incidence: 0,
                },
            ),
            TheoremId::T34 => (
                BlockPattern::diag(1, 0),
                BlockPattern::incidence(2, -1),
                BlockPattern::diag(2, -1),
            ),
            TheoremId::T35 => (
                BlockPattern::diag(2, -1),
                BlockPattern::incidence(2, -1),
                BlockPattern::diag(1, 0),
            ),
        };
        let c = BlockPattern::constant;
        let upper = [
            [ee, ev, c(s), c(k)],
            [ev, vv, c(k), c(s)],
            [c(s), c(k), gdiag, c(l)],
            [c(k), c(s), c(l), gdiag],
        ];
        TemplateSpec {
            theorem,
            blocks: upper,
            s,
            k,
            l,
        }
    }

    /// Template entries for `bg`, row-major.
    pub fn materialize(&self, bg: &BlockedGraph) -> Vec<i64> {
        let sizes = bg.sizes();
        let total = sizes.total();
        let base = bg.core().base();
        let full = bg.graph();
        let inc = graph::incidence(base).expect("double join base has edges");
        let off = sizes.offsets();
        let mut out = vec![0i64; total * total];
        for u in 0..total {
            let (bu, x) = sizes.locate(u);
            for v in 0..total {
                let (bv, y) = sizes.locate(v);
                let (lo, hi) = if bu <= bv { (bu, bv) } else { (bv, bu) };
                let pat = self.blocks[lo][hi];
                let mut d = pat.j;
                if u == v {
                    d += pat.identity;
                }
                if bu == bv {
                    if pat.own_adj != 0 && full.has_edge(off[bu] + x, off[bv] + y) {
                        d += pat.own_adj;
                    }
                    if pat.base_adj != 0 && bu == 1 && base.has_edge(x, y) {
                        d += pat.base_adj;
                    }
                }
                if pat.incidence != 0 {
                    match (bu, bv) {
                        (0, 1) => d += pat.incidence * i64::from(inc.get(x, y)),
                        (1, 0) => d += pat.incidence * i64::from(inc.get(y, x)),
                        _ => {}
                    }
                }
                out[u * total + v] = d;
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TemplateReport {
    pub theorem: TheoremId,
    pub ok: bool,
    pub first_violation: Option<Violation>,
}

/// Exact comparison of BFS distances against the template, row-major scan.
pub fn validate_template(bg: &BlockedGraph, spec: &TemplateSpec) -> TemplateReport {
    let dm = distance_matrix(bg.graph()).expect("double join graphs are connected");
    validate_against(&dm, &spec.materialize(bg), spec.theorem)
}

fn validate_against(dm: &DistanceMatrix, expected: &[i64], theorem: TheoremId) -> TemplateReport {
    let n = dm.order();
    let first_violation = (0..n * n).find_map(|idx| {
        let (i, j) = (idx / n, idx % n);
        let actual = i64::from(dm.get(i, j));
        (expected[idx] != actual).then_some(Violation {
            i,
            j,
            expected: expected[idx],
            actual,
        })
    });
    TemplateReport {
        theorem,
        ok: first_violation.is_none(),
        first_violation,
    }
}
