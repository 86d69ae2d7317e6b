//! Subdivision, merged subdivision and the double join.
//!
//! Vertex layout of every construction here is `[e-vertices | v-vertices | G1 | G2]`:
//! e-vertex `i` stands for edge `e_i` of the base graph (lexicographic order),
//! v-vertex `j` for base vertex `j`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{self, Graph, GraphJson};

/// Graph placed on the e-vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum H1Kind {
    Empty,
    Complete,
    LineOfG,
    ComplementLineOfG,
}

/// Graph placed on the v-vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum H2Kind {
    Empty,
    Complete,
    SameAsG,
    ComplementOfG,
}

impl H1Kind {
    pub const ALL: [H1Kind; 4] = [
        H1Kind::Empty,
        H1Kind::Complete,
        H1Kind::LineOfG,
        H1Kind::ComplementLineOfG,
    ];

    /// Keyword used by the expression language.
    pub fn keyword(self) -> &'static str {
        match self {
            H1Kind::Empty => "empty",
            H1Kind::Complete => "complete",
            H1Kind::LineOfG => "line",
            H1Kind::ComplementLineOfG => "compline",
        }
    }

    pub fn build(self, base: &Graph) -> Result<Graph> {
        let m = base.size();
        match self {
            H1Kind::Empty => graph::make_empty(m),
            H1Kind::Complete => graph::make_complete(m),
            H1Kind::LineOfG => graph::line_graph(base),
            H1Kind::ComplementLineOfG => Ok(graph::complement(&graph::line_graph(base)?)),
        }
    }
}

impl H2Kind {
    pub const ALL: [H2Kind; 4] = [
        H2Kind::Empty,
        H2Kind::Complete,
        H2Kind::SameAsG,
        H2Kind::ComplementOfG,
    ];

    pub fn keyword(self) -> &'static str {
        match self {
            H2Kind::Empty => "empty",
            H2Kind::Complete => "complete",
            H2Kind::SameAsG => "same",
            H2Kind::ComplementOfG => "comp",
        }
    }

    pub fn build(self, base: &Graph) -> Result<Graph> {
        let n = base.order();
        match self {
            H2Kind::Empty => graph::make_empty(n),
            H2Kind::Complete => graph::make_complete(n),
            H2Kind::SameAsG => Ok(base.clone()),
            H2Kind::ComplementOfG => Ok(graph::complement(base)),
        }
    }
}

impl fmt::Display for H1Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

impl fmt::Display for H2Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.keyword())
    }
}

impl FromStr for H1Kind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        H1Kind::ALL
            .into_iter()
            .find(|k| k.keyword() == s)
            .ok_or_else(|| format!("unknown h1 kind `{s}` (empty, complete, line, compline)"))
    }
}

impl FromStr for H2Kind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        H2Kind::ALL
            .into_iter()
            .find(|k| k.keyword() == s)
            .ok_or_else(|| format!("unknown h2 kind `{s}` (empty, complete, same, comp)"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MergedSubdivision {
    base: Graph,
    h1: H1Kind,
    h2: H2Kind,
    graph: Graph,
}

impl MergedSubdivision {
    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn h1(&self) -> H1Kind {
        self.h1
    }

    pub fn h2(&self) -> H2Kind {
        self.h2
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    /// Number of e-vertices (edges of the base graph).
    pub fn m(&self) -> usize {
        self.base.size()
    }

    pub fn n(&self) -> usize {
        self.base.order()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockSizes {
    pub m: usize,
    pub n: usize,
    pub p: usize,
    pub q: usize,
}

impl BlockSizes {
    pub fn total(&self) -> usize {
        self.m + self.n + self.p + self.q
    }

    /// Start offsets of the four blocks.
    pub fn offsets(&self) -> [usize; 4] {
        [0, self.m, self.m + self.n, self.m + self.n + self.p]
    }

    /// Block index (0..4) holding vertex `v`, plus its index within the block.
    pub fn locate(&self, v: usize) -> (usize, usize) {
        let off = self.offsets();
        let b = (0..4).rev().find(|&b| v >= off[b]).expect("offset 0 always matches");
        (b, v - off[b])
    }

    pub fn as_array(&self) -> [usize; 4] {
        [self.m, self.n, self.p, self.q]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockedGraph {
    core: MergedSubdivision,
    g1: Graph,
    g2: Graph,
    graph: Graph,
    sizes: BlockSizes,
}

impl BlockedGraph {
    pub fn core(&self) -> &MergedSubdivision {
        &self.core
    }

    pub fn g1(&self) -> &Graph {
        &self.g1
    }

    pub fn g2(&self) -> &Graph {
        &self.g2
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn sizes(&self) -> BlockSizes {
        self.sizes
    }

    pub fn to_json_value(&self) -> BlockedGraphJson {
        BlockedGraphJson {
            graph: self.graph.to_json_value(),
            blocks: self.sizes,
            h1: self.core.h1,
            h2: self.core.h2,
        }
    }
}

/// Graph JSON plus `"blocks": {"m", "n", "p", "q"}` and the two kind tags.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockedGraphJson {
    #[serde(flatten)]
    pub graph: GraphJson,
    pub blocks: BlockSizes,
    pub h1: H1Kind,
    pub h2: H2Kind,
}

/// `S(G)`: one new vertex inserted into every edge.
pub fn subdivision(g: &Graph) -> Result<Graph> {
    Ok(merged_subdivision(g, H1Kind::Empty, H2Kind::Empty)?.graph)
}

pub fn merged_subdivision(g: &Graph, h1: H1Kind, h2: H2Kind) -> Result<MergedSubdivision> {
    let m = g.size();
    if m == 0 {
        return Err(Error::NoEdges);
    }
    let h1_graph = h1.build(g)?;
    let h2_graph = h2.build(g)?;
    let mut edges = Vec::with_capacity(2 * m + h1_graph.size() + h2_graph.size());
    for (e, &(i, j)) in g.edges().iter().enumerate() {
        edges.push((e, m + i));
        edges.push((e, m + j));
    }
    edges.extend(h1_graph.edges().iter().copied());
    edges.extend(h2_graph.edges().iter().map(|&(i, j)| (m + i, m + j)));
    let graph = Graph::from_edges(m + g.order(), edges)?;
    Ok(MergedSubdivision {
        base: g.clone(),
        h1,
        h2,
        graph,
    })
}

/// Joins every e-vertex to all of `g1` and every v-vertex to all of `g2`.
pub fn double_join(core: &MergedSubdivision, g1: &Graph, g2: &Graph) -> Result<BlockedGraph> {
    let graph = double_join_raw(core.graph(), g1, g2, core.m(), core.n())?;
    Ok(BlockedGraph {
        core: core.clone(),
        g1: g1.clone(),
        g2: g2.clone(),
        sizes: BlockSizes {
            m: core.m(),
            n: core.n(),
            p: g1.order(),
            q: g2.order(),
        },
        graph,
    })
}

/// Double join over an arbitrary graph on `m + n` vertices whose first `m`
/// vertices play the role of e-vertices. Only the numeric route applies to
/// the result.
pub fn double_join_raw(core: &Graph, g1: &Graph, g2: &Graph, m: usize, n: usize) -> Result<Graph> {
    let (p, q) = (g1.order(), g2.order());
    if p == 0 || q == 0 {
        return Err(Error::Size("double join needs non-empty G1 and G2".into()));
    }
    if core.order() != m + n {
        return Err(Error::Size(format!(
            "core has {} vertices, expected m + n = {}",
            core.order(),
            m + n
        )));
    }
    let (o1, o2) = (m + n, m + n + p);
    let mut edges: Vec<(usize, usize)> = core.edges().to_vec();
    edges.extend(g1.edges().iter().map(|&(i, j)| (o1 + i, o1 + j)));
    edges.extend(g2.edges().iter().map(|&(i, j)| (o2 + i, o2 + j)));
    edges.extend((0..m).flat_map(|e| (0..p).map(move |x| (e, o1 + x))));
    edges.extend((m..m + n).flat_map(|v| (0..q).map(move |y| (v, o2 + y))));
    Graph::from_edges(m + n + p + q, edges)
}
