//! Simple undirected graphs with a fixed, lexicographic edge labelling.
//!
//! Every constructor funnels through [`Graph::from_edges`], which sorts the
//! edge list, so the label `e_i` of an edge is reproducible across runs. The
//! subdivision constructions in [`crate::transforms`] rely on that order.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numlin::{self, Spectrum, SymmetricMatrix};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    adj: Vec<bool>,
    edges: Vec<(usize, usize)>,
}

impl Graph {
    /// Builds a graph on `n` vertices. Duplicate edges are merged; loops and
    /// out-of-range endpoints are rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(Error::Size("a graph needs at least one vertex".into()));
        }
        let mut adj = vec![false; n * n];
        let mut list = Vec::new();
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge ({a}, {b}) out of range for {n} vertices"
                )));
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("loop at vertex {a}")));
            }
            let (i, j) = if a < b { (a, b) } else { (b, a) };
            if !adj[i * n + j] {
                adj[i * n + j] = true;
                adj[j * n + i] = true;
                list.push((i, j));
            }
        }
        list.sort_unstable();
        Ok(Graph { n, adj, edges: list })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    /// Edges as `(i, j)` with `i < j`, sorted lexicographically.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i * self.n + j]
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        let row = &self.adj[v * self.n..(v + 1) * self.n];
        row.iter().enumerate().filter(|(_, &a)| a).map(|(u, _)| u)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v * self.n..(v + 1) * self.n]
            .iter()
            .filter(|&&a| a)
            .count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn adjacency_matrix(&self) -> SymmetricMatrix {
        SymmetricMatrix::from_fn(self.n, |i, j| if self.has_edge(i, j) { 1.0 } else { 0.0 })
    }

    pub fn adjacency_spectrum(&self) -> Result<Spectrum> {
        numlin::eigen_sym(&self.adjacency_matrix(), numlin::DEFAULT_EIGEN_TOL)
    }

    /// Induced subgraph on `vertices`, relabelled `0..vertices.len()` in the
    /// given order.
    pub fn induced(&self, vertices: &[usize]) -> Result<Graph> {
        let mut edges = Vec::new();
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &v) in vertices.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    edges.push((a, b));
                }
            }
        }
        Graph::from_edges(vertices.len(), edges)
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0]);
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = queue.pop_front() {
            for u in self.neighbors(v) {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    queue.push_back(u);
                }
            }
        }
        count == self.n
    }

    /// Common degree if every vertex has the same degree.
    pub fn regularity(&self) -> Option<usize> {
        let r = self.degree(0);
        (1..self.n).all(|v| self.degree(v) == r).then_some(r)
    }

    pub fn is_triangle_free(&self) -> bool {
        self.edges.iter().all(|&(i, j)| {
            (j + 1..self.n).all(|k| !(self.has_edge(i, k) && self.has_edge(j, k)))
        })
    }

    pub fn to_json_value(&self) -> GraphJson {
        GraphJson {
            n: self.n,
            edges: self.edges.iter().map(|&(i, j)| [i, j]).collect(),
        }
    }
}

/// Wire format: `{"n": int, "edges": [[i, j], ...]}`, 0-based, `i < j`, sorted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(value: GraphJson) -> Result<Graph> {
        Graph::from_edges(value.n, value.edges.into_iter().map(|[i, j]| (i, j)))
    }
}

impl From<&Graph> for GraphJson {
    fn from(g: &Graph) -> Self {
        g.to_json_value()
    }
}

/// 0/1 edge-by-vertex matrix; row `i` marks the two endpoints of edge `e_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceMatrix {
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl IncidenceMatrix {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, edge: usize, vertex: usize) -> u8 {
        self.data[edge * self.cols + vertex]
    }

    pub fn row_sums(&self) -> Vec<u32> {
        self.data
            .chunks(self.cols)
            .map(|r| r.iter().map(|&x| u32::from(x)).sum())
            .collect()
    }

    pub fn col_sums(&self) -> Vec<u32> {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| u32::from(self.get(i, j))).sum())
            .collect()
    }

    /// `MᵀM`, an `n × n` integer matrix.
    pub fn gram_cols(&self) -> Vec<Vec<i64>> {
        let mut out = vec![vec![0i64; self.cols]; self.cols];
        for row in self.data.chunks(self.cols) {
            for (a, &x) in row.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (b, &y) in row.iter().enumerate() {
                    out[a][b] += i64::from(x * y);
                }
            }
        }
        out
    }

    /// `MMᵀ`, an `m × m` integer matrix.
    pub fn gram_rows(&self) -> Vec<Vec<i64>> {
        let rows: Vec<&[u8]> = self.data.chunks(self.cols).collect();
        rows.iter()
            .map(|r| {
                rows.iter()
                    .map(|s| r.iter().zip(s.iter()).map(|(&x, &y)| i64::from(x * y)).sum())
                    .collect()
            })
            .collect()
    }
}

pub fn make_cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::Size(format!("cycle needs n >= 3, got {n}")));
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn make_complete(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(Error::Size("complete graph needs n >= 1".into()));
    }
    Graph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
}

pub fn make_empty(n: usize) -> Result<Graph> {
    if n < 1 {
        return Err(Error::Size("empty graph needs n >= 1".into()));
    }
    Graph::from_edges(n, std::iter::empty())
}

pub fn complement(g: &Graph) -> Graph {
    let n = g.order();
    let edges = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
    Graph::from_edges(n, edges.filter(|&(i, j)| !g.has_edge(i, j)))
        .expect("complement of a valid graph is valid")
}

/// Block-diagonal union; component `k` occupies the vertex range starting at
/// the sum of the orders of components `0..k`.
pub fn disjoint_union(gs: &[Graph]) -> Result<Graph> {
    if gs.is_empty() {
        return Err(Error::EmptyList);
    }
    let total = gs.iter().map(Graph::order).sum();
    let mut edges = Vec::new();
    let mut offset = 0;
    for g in gs {
        edges.extend(g.edges().iter().map(|&(i, j)| (i + offset, j + offset)));
        offset += g.order();
    }
    Graph::from_edges(total, edges)
}

/// Line graph; vertex `i` is edge `e_i` of `g`.
pub fn line_graph(g: &Graph) -> Result<Graph> {
    let es = g.edges();
    if es.is_empty() {
        return Err(Error::NoEdges);
    }
    let mut edges = Vec::new();
    for (a, &(i, j)) in es.iter().enumerate() {
        for (b, &(k, l)) in es.iter().enumerate().skip(a + 1) {
            if i == k || i == l || j == k || j == l {
                edges.push((a, b));
            }
        }
    }
    Graph::from_edges(es.len(), edges)
}

pub fn incidence(g: &Graph) -> Result<IncidenceMatrix> {
    let es = g.edges();
    if es.is_empty() {
        return Err(Error::NoEdges);
    }
    let cols = g.order();
    let mut data = vec![0u8; es.len() * cols];
    for (e, &(i, j)) in es.iter().enumerate() {
        data[e * cols + i] = 1;
        data[e * cols + j] = 1;
    }
    Ok(IncidenceMatrix {
        rows: es.len(),
        cols,
        data,
    })
}

/// Structural facts the closed-form theorems depend on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct GraphChecks {
    pub is_connected: bool,
    pub regularity: Option<usize>,
    pub is_triangle_free: bool,
}

pub fn checks(g: &Graph) -> GraphChecks {
    GraphChecks {
        is_connected: g.is_connected(),
        regularity: g.regularity(),
        is_triangle_free: g.is_triangle_free(),
    }
}
