//! Problem data shared by the model builder and the enumeration oracle:
//! edge-weight matrices, objectives, and side constraints.
//!
//! A candidate edge `ij` carries parameter `μ_ij`; the tree it induces has
//! edge weight `1/μ_ij`, and all distances are measured under those weights.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::linalg::DenseMatrix;

/// Unit `μ`: ones off the diagonal, zero on it.
pub fn unit_mu(n: usize) -> DenseMatrix {
    DenseMatrix::from_fn(n, n, |i, j| if i == j { 0.0 } else { 1.0 })
}

/// Checks that `mu` is `n×n`, symmetric, and strictly positive off the diagonal.
pub fn validate_mu(n: usize, mu: &DenseMatrix) -> Result<()> {
    validate_symmetric(n, mu, "μ")?;
    for i in 0..n {
        for j in i + 1..n {
            if mu[(i, j)] <= 0.0 {
                return Err(Error::InvalidWeights(format!(
                    "μ({}, {}) = {} must be positive",
                    i + 1,
                    j + 1,
                    mu[(i, j)]
                )));
            }
        }
    }
    Ok(())
}

pub(crate) fn validate_symmetric(n: usize, m: &DenseMatrix, what: &str) -> Result<()> {
    if m.rows() != n || m.cols() != n {
        return Err(Error::DimensionMismatch {
            expected: format!("{n}x{n} {what}"),
            got: format!("{}x{}", m.rows(), m.cols()),
        });
    }
    for i in 0..n {
        for j in i + 1..n {
            let (a, b) = (m[(i, j)], m[(j, i)]);
            if (a - b).abs() > 1e-12 * a.abs().max(b.abs()).max(1.0) {
                return Err(Error::InvalidWeights(format!(
                    "{what} is not symmetric at ({}, {}): {a} vs {b}",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(())
}

/// The tree on `topology`'s edges with weights `1/μ_ij`.
pub fn reciprocal_weighted(topology: &WeightedGraph, mu: &DenseMatrix) -> WeightedGraph {
    WeightedGraph::from_edges(topology.n(), topology.edges().map(|(i, j, _)| (i, j, 1.0 / mu[(i, j)])))
        .expect("same edge set with positive weights")
}

/// Largest possible tree distance under weights `1/μ`: the sum of the
/// `n − 1` largest reciprocal parameters.
pub fn distance_upper_bound(n: usize, mu: &DenseMatrix) -> f64 {
    let mut recips: Vec<f64> =
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| 1.0 / mu[(i, j)]).collect();
    recips.sort_by(|a, b| b.total_cmp(a));
    recips.iter().take(n.saturating_sub(1)).sum()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Sense {
    Minimize,
    Maximize,
}

impl Sense {
    /// True when `candidate` is strictly better than `incumbent`.
    pub fn improves(self, candidate: f64, incumbent: f64) -> bool {
        match self {
            Sense::Minimize => candidate < incumbent,
            Sense::Maximize => candidate > incumbent,
        }
    }
}

/// Objectives that are linear in the adjacency and distance matrices.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ObjectiveSpec {
    /// `∑_{i<j} d_ij`
    Wiener,
    /// `∑_{i<j} m_ij d_ij`
    Weighted { demand: DenseMatrix },
    /// `∑_{i<j} (c_ij x_ij + m_ij d_ij)`
    Road { cost: DenseMatrix, demand: DenseMatrix },
}

impl ObjectiveSpec {
    pub fn name(&self) -> &'static str {
        match self {
            ObjectiveSpec::Wiener => "wiener",
            ObjectiveSpec::Weighted { .. } => "weighted",
            ObjectiveSpec::Road { .. } => "road",
        }
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        match self {
            ObjectiveSpec::Wiener => Ok(()),
            ObjectiveSpec::Weighted { demand } => validate_symmetric(n, demand, "demand matrix"),
            ObjectiveSpec::Road { cost, demand } => {
                validate_symmetric(n, cost, "cost matrix")?;
                validate_symmetric(n, demand, "demand matrix")
            }
        }
    }

    /// `(edge coefficient, distance coefficient)` for pair `i < j`.
    pub fn coefficients(&self, i: usize, j: usize) -> (f64, f64) {
        match self {
            ObjectiveSpec::Wiener => (0.0, 1.0),
            ObjectiveSpec::Weighted { demand } => (0.0, demand[(i, j)]),
            ObjectiveSpec::Road { cost, demand } => (cost[(i, j)], demand[(i, j)]),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeBound {
    /// 1-based vertex label.
    pub vertex: usize,
    #[serde(default)]
    pub min: Option<usize>,
    #[serde(default)]
    pub max: Option<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EccentricityBound {
    /// 1-based vertex label.
    pub vertex: usize,
    pub max: f64,
}

/// Restrictions on the admissible trees. Labels are 1-based.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SideConstraints {
    pub degree_bounds: Vec<DegreeBound>,
    pub forced_edges: Vec<(usize, usize)>,
    pub banned_edges: Vec<(usize, usize)>,
    pub diameter: Option<f64>,
    pub eccentricity: Vec<EccentricityBound>,
}

impl SideConstraints {
    pub fn is_empty(&self) -> bool {
        *self == SideConstraints::default()
    }

    /// The same degree bounds on every vertex.
    pub fn with_degree_range(mut self, n: usize, min: Option<usize>, max: Option<usize>) -> Self {
        self.degree_bounds.extend((1..=n).map(|vertex| DegreeBound { vertex, min, max }));
        self
    }

    fn canonical(n: usize, (a, b): (usize, usize)) -> Result<(usize, usize)> {
        if a == b || a == 0 || b == 0 || a > n || b > n {
            return Err(Error::Conflict(format!("edge {a}-{b} is not a valid pair on 1..={n}")));
        }
        Ok((a.min(b), a.max(b)))
    }

    /// Forced edges, 0-based and canonical.
    pub fn forced(&self, n: usize) -> Result<Vec<(usize, usize)>> {
        self.forced_edges.iter().map(|&e| Self::canonical(n, e).map(|(a, b)| (a - 1, b - 1))).collect()
    }

    /// Banned edges, 0-based and canonical.
    pub fn banned(&self, n: usize) -> Result<Vec<(usize, usize)>> {
        self.banned_edges.iter().map(|&e| Self::canonical(n, e).map(|(a, b)| (a - 1, b - 1))).collect()
    }

    /// Rejects specifications that no tree could satisfy for structural reasons.
    pub fn validate(&self, n: usize) -> Result<()> {
        let forced = self.forced(n)?;
        let banned = self.banned(n)?;
        if let Some(&(a, b)) = forced.iter().find(|e| banned.contains(e)) {
            return Err(Error::Conflict(format!("edge {}-{} is both forced and banned", a + 1, b + 1)));
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], v: usize) -> usize {
            let mut r = v;
            while p[r] != r {
                r = p[r];
            }
            p[v] = r;
            r
        }
        for &(a, b) in &forced {
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra == rb {
                return Err(Error::Conflict(format!("forced edges close a cycle at {}-{}", a + 1, b + 1)));
            }
            parent[ra] = rb;
        }
        for db in &self.degree_bounds {
            if db.vertex == 0 || db.vertex > n {
                return Err(Error::Conflict(format!("degree bound on vertex {} outside 1..={n}", db.vertex)));
            }
            if let (Some(lo), Some(hi)) = (db.min, db.max) {
                if lo > hi {
                    return Err(Error::Conflict(format!("vertex {}: min degree {lo} > max degree {hi}", db.vertex)));
                }
            }
        }
        if let Some(delta) = self.diameter {
            if !(delta.is_finite() && delta >= 0.0) {
                return Err(Error::Conflict(format!("diameter bound {delta} must be a finite non-negative number")));
            }
        }
        for e in &self.eccentricity {
            if e.vertex == 0 || e.vertex > n || !(e.max.is_finite() && e.max >= 0.0) {
                return Err(Error::Conflict(format!("invalid eccentricity bound on vertex {}", e.vertex)));
            }
        }
        Ok(())
    }

    /// Checks a tree directly. `distances` must be the tree's distance matrix
    /// under the weights the model uses.
    pub fn admits(&self, tree: &WeightedGraph, distances: &DenseMatrix, tol: f64) -> bool {
        let n = tree.n();
        let deg = tree.degree_sequence();
        let degrees_ok = self.degree_bounds.iter().all(|b| {
            let d = deg[b.vertex - 1];
            b.min.is_none_or(|lo| d >= lo) && b.max.is_none_or(|hi| d <= hi)
        });
        let forced_ok = self.forced_edges.iter().all(|&(a, b)| tree.has_edge(a - 1, b - 1));
        let banned_ok = self.banned_edges.iter().all(|&(a, b)| !tree.has_edge(a - 1, b - 1));
        let diameter_ok =
            self.diameter.is_none_or(|delta| (0..n).all(|i| (i + 1..n).all(|j| distances[(i, j)] <= delta + tol)));
        let ecc_ok = self.eccentricity.iter().all(|e| (0..n).all(|j| distances[(e.vertex - 1, j)] <= e.max + tol));
        degrees_ok && forced_ok && banned_ok && diameter_ok && ecc_ok
    }
}
