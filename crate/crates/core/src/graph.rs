//! Weighted simple graphs and the matrices derived from them.
//!
//! Vertices are `0..n` in this API. File formats and model variable names
//! use 1-based labels; conversion happens at those boundaries only.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::DenseMatrix;

/// An undirected simple graph with strictly positive edge weights.
///
/// Edges are stored once, keyed by `(i, j)` with `i < j`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedGraph {
    n: usize,
    edges: BTreeMap<(usize, usize), f64>,
}

impl WeightedGraph {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("a graph needs at least one vertex".into()));
        }
        Ok(WeightedGraph { n, edges: BTreeMap::new() })
    }

    /// Builds a graph from `(i, j, w)` triples with 0-based endpoints.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize, f64)>) -> Result<Self> {
        let mut g = Self::new(n)?;
        for (i, j, w) in edges {
            g.add_edge(i, j, w)?;
        }
        Ok(g)
    }

    /// Unit-weight graph from 0-based endpoint pairs.
    pub fn unweighted(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        Self::from_edges(n, edges.into_iter().map(|(i, j)| (i, j, 1.0)))
    }

    pub fn add_edge(&mut self, i: usize, j: usize, w: f64) -> Result<()> {
        if i >= self.n || j >= self.n {
            return Err(Error::InvalidGraph(format!(
                "edge ({}, {}) references a vertex outside 1..={}",
                i + 1,
                j + 1,
                self.n
            )));
        }
        if i == j {
            return Err(Error::InvalidGraph(format!("self-loop at vertex {}", i + 1)));
        }
        if !(w.is_finite() && w > 0.0) {
            return Err(Error::InvalidGraph(format!(
                "edge ({}, {}) has non-positive or non-finite weight {w}",
                i + 1,
                j + 1
            )));
        }
        let key = (i.min(j), i.max(j));
        if self.edges.insert(key, w).is_some() {
            return Err(Error::InvalidGraph(format!("duplicate edge ({}, {})", key.0 + 1, key.1 + 1)));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in canonical `(i, j, w)` order with `i < j`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.edges.iter().map(|(&(i, j), &w)| (i, j, w))
    }

    /// Symmetric weight lookup.
    pub fn weight(&self, i: usize, j: usize) -> Option<f64> {
        self.edges.get(&(i.min(j), i.max(j))).copied()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.weight(i, j).is_some()
    }

    pub fn total_weight(&self) -> f64 {
        self.edges.values().sum()
    }

    pub fn is_unweighted(&self) -> bool {
        self.edges.values().all(|&w| w == 1.0)
    }

    /// Neighbor lists with weights, each sorted by neighbor index.
    pub fn adjacency_lists(&self) -> Vec<Vec<(usize, f64)>> {
        let mut adj = vec![Vec::new(); self.n];
        for (i, j, w) in self.edges() {
            adj[i].push((j, w));
            adj[j].push((i, w));
        }
        for list in &mut adj {
            list.sort_by_key(|&(v, _)| v);
        }
        adj
    }

    /// `d = X·1`.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(i, j) in self.edges.keys() {
            deg[i] += 1;
            deg[j] += 1;
        }
        deg
    }

    pub fn is_connected(&self) -> bool {
        let adj = self.adjacency_lists();
        let mut seen = vec![false; self.n];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &(u, _) in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    count += 1;
                    stack.push(u);
                }
            }
        }
        count == self.n
    }

    /// Connected with exactly `n - 1` edges.
    pub fn is_tree(&self) -> bool {
        self.edges.len() + 1 == self.n && self.is_connected()
    }

    /// Errors unless this is a tree on at least two vertices.
    pub fn require_tree(&self) -> Result<()> {
        if self.n < 2 {
            return Err(Error::NotATree("tree operations need n >= 2".into()));
        }
        if self.edges.len() + 1 != self.n {
            return Err(Error::NotATree(format!(
                "{} edges on {} vertices (a tree has {})",
                self.edges.len(),
                self.n,
                self.n - 1
            )));
        }
        if !self.is_connected() {
            return Err(Error::NotATree("graph is disconnected".into()));
        }
        Ok(())
    }

    /// Same topology with every weight replaced by its reciprocal.
    pub fn reciprocal(&self) -> WeightedGraph {
        WeightedGraph { n: self.n, edges: self.edges.iter().map(|(&k, &w)| (k, 1.0 / w)).collect() }
    }

    /// Same topology with unit weights.
    pub fn unit(&self) -> WeightedGraph {
        WeightedGraph { n: self.n, edges: self.edges.keys().map(|&k| (k, 1.0)).collect() }
    }

    /// Binary adjacency matrix `X`.
    pub fn adjacency_matrix(&self) -> DenseMatrix {
        let mut x = DenseMatrix::zeros(self.n, self.n);
        for &(i, j) in self.edges.keys() {
            x[(i, j)] = 1.0;
            x[(j, i)] = 1.0;
        }
        x
    }

    /// Weight matrix `W`, zero off the edge set.
    pub fn weight_matrix(&self) -> DenseMatrix {
        let mut w = DenseMatrix::zeros(self.n, self.n);
        for (i, j, wij) in self.edges() {
            w[(i, j)] = wij;
            w[(j, i)] = wij;
        }
        w
    }

    /// `L = diag(W·1) − W`.
    pub fn laplacian(&self) -> DenseMatrix {
        let w = self.weight_matrix();
        let mut l = w.scale(-1.0);
        for (i, s) in w.row_sums().into_iter().enumerate() {
            l[(i, i)] = s;
        }
        l
    }
}

/// Handshake check: a degree sequence can belong to a tree only if it sums to `2(n − 1)`.
pub fn has_tree_degree_sum(degrees: &[usize]) -> bool {
    !degrees.is_empty() && degrees.iter().sum::<usize>() == 2 * (degrees.len() - 1)
}

/// Lower bound on the degree sum of any connected graph: `∑ d_i ≥ 2(n − 1)`.
pub fn satisfies_connected_degree_bound(degrees: &[usize]) -> bool {
    !degrees.is_empty() && degrees.iter().sum::<usize>() >= 2 * (degrees.len() - 1)
}

/// Graph JSON shape: `{"n": 3, "edges": [[1, 2, 0.5], [2, 3]]}`, 1-based, weight defaults to 1.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphDocument {
    pub n: usize,
    pub edges: Vec<Vec<f64>>,
}

impl GraphDocument {
    pub fn into_graph(self) -> Result<WeightedGraph> {
        let mut g = WeightedGraph::new(self.n)?;
        for (k, e) in self.edges.iter().enumerate() {
            if !(e.len() == 2 || e.len() == 3) {
                return Err(Error::Parse(format!("edge #{} must be [i, j] or [i, j, w]", k + 1)));
            }
            let label = |v: f64| -> Result<usize> {
                if v.fract() != 0.0 || v < 1.0 || v > g.n() as f64 {
                    return Err(Error::Parse(format!("edge #{}: vertex label {v} is not in 1..={}", k + 1, g.n())));
                }
                Ok(v as usize - 1)
            };
            let (i, j) = (label(e[0])?, label(e[1])?);
            if i >= j {
                return Err(Error::Parse(format!("edge #{}: labels must satisfy i < j", k + 1)));
            }
            g.add_edge(i, j, e.get(2).copied().unwrap_or(1.0))?;
        }
        Ok(g)
    }

    pub fn from_graph(g: &WeightedGraph) -> Self {
        GraphDocument { n: g.n(), edges: g.edges().map(|(i, j, w)| vec![(i + 1) as f64, (j + 1) as f64, w]).collect() }
    }
}

pub fn parse_graph_json(text: &str) -> Result<WeightedGraph> {
    let doc: GraphDocument = serde_json::from_str(text)?;
    doc.into_graph()
}

pub fn graph_to_json(g: &WeightedGraph) -> String {
    serde_json::to_string(&GraphDocument::from_graph(g)).expect("graph document serializes")
}
