//! Weighted shortest-path distance matrices and distance sums.

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::linalg::DenseMatrix;

/// Distance matrix `D(G)`: minimum path weight between every pair.
///
/// Trees go through [`tree_distance_matrix`]; anything else through
/// repeated Dijkstra. Only entries `(i, j)` with `i < j` are computed and
/// mirrored, so the result is exactly symmetric.
pub fn distance_matrix(g: &WeightedGraph) -> Result<DenseMatrix> {
    if g.is_tree() {
        tree_distance_matrix(g)
    } else {
        dijkstra_distance_matrix(g)
    }
}

/// Path sums accumulated root-to-leaf from every vertex of a tree.
pub fn tree_distance_matrix(g: &WeightedGraph) -> Result<DenseMatrix> {
    if !g.is_tree() {
        return Err(Error::NotATree("tree traversal requires a tree".into()));
    }
    let n = g.n();
    let adj = g.adjacency_lists();
    let mut d = DenseMatrix::zeros(n, n);
    let mut dist = vec![0.0; n];
    let mut seen = vec![false; n];
    let mut stack = Vec::with_capacity(n);
    for root in 0..n {
        seen.iter_mut().for_each(|s| *s = false);
        dist[root] = 0.0;
        seen[root] = true;
        stack.push(root);
        while let Some(v) = stack.pop() {
            for &(u, w) in &adj[v] {
                if !seen[u] {
                    seen[u] = true;
                    dist[u] = dist[v] + w;
                    stack.push(u);
                }
            }
        }
        for j in root + 1..n {
            d[(root, j)] = dist[j];
            d[(j, root)] = dist[j];
        }
    }
    Ok(d)
}

/// Dense O(n²) Dijkstra from every source; fails on disconnected input.
pub fn dijkstra_distance_matrix(g: &WeightedGraph) -> Result<DenseMatrix> {
    let n = g.n();
    let adj = g.adjacency_lists();
    let mut d = DenseMatrix::zeros(n, n);
    for src in 0..n {
        let mut dist = vec![f64::INFINITY; n];
        let mut done = vec![false; n];
        dist[src] = 0.0;
        for _ in 0..n {
            let next = (0..n).filter(|&v| !done[v] && dist[v].is_finite()).min_by(|&a, &b| dist[a].total_cmp(&dist[b]));
            let Some(v) = next else { break };
            done[v] = true;
            for &(u, w) in &adj[v] {
                if dist[v] + w < dist[u] {
                    dist[u] = dist[v] + w;
                }
            }
        }
        for j in src + 1..n {
            if !dist[j].is_finite() {
                return Err(Error::Disconnected(src + 1, j + 1));
            }
            d[(src, j)] = dist[j];
            d[(j, src)] = dist[j];
        }
    }
    Ok(d)
}

/// Sum of `d_ij` over `i < j`.
pub fn wiener_index(d: &DenseMatrix) -> f64 {
    let n = d.rows();
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| d[(i, j)]).sum()
}

/// Sum of `m_ij · d_ij` over `i < j`.
pub fn weighted_distance_sum(d: &DenseMatrix, m: &DenseMatrix) -> Result<f64> {
    if d.rows() != m.rows() || d.cols() != m.cols() {
        return Err(Error::DimensionMismatch {
            expected: format!("{}x{}", d.rows(), d.cols()),
            got: format!("{}x{}", m.rows(), m.cols()),
        });
    }
    let n = d.rows();
    Ok((0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).map(|(i, j)| m[(i, j)] * d[(i, j)]).sum())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distance_examples() {
        let p3 = WeightedGraph::unweighted(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(
            distance_matrix(&p3).unwrap().to_rows(),
            vec![vec![0.0, 1.0, 2.0], vec![1.0, 0.0, 1.0], vec![2.0, 1.0, 0.0]]
        );
        let inv = WeightedGraph::from_edges(3, [(0, 1, 0.5), (1, 2, 0.25)]).unwrap();
        assert_eq!(distance_matrix(&inv).unwrap()[(0, 2)], 0.75);
        let edge = WeightedGraph::from_edges(2, [(0, 1, 3.5)]).unwrap();
        assert_eq!(distance_matrix(&edge).unwrap().to_rows(), vec![vec![0.0, 3.5], vec![3.5, 0.0]]);
    }

    #[test]
    fn cycle_uses_shortest_route() {
        let g = WeightedGraph::from_edges(3, [(0, 1, 1.0), (1, 2, 1.0), (0, 2, 5.0)]).unwrap();
        let d = distance_matrix(&g).unwrap();
        assert_eq!(d[(0, 2)], 2.0);
        assert!(tree_distance_matrix(&g).is_err());
    }

    #[test]
    fn disconnected_is_an_error() {
        let g = WeightedGraph::unweighted(4, [(0, 1), (2, 3)]).unwrap();
        assert!(matches!(distance_matrix(&g), Err(Error::Disconnected(1, 3))));
    }

    #[test]
    fn wiener_examples() {
        let star = WeightedGraph::unweighted(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(wiener_index(&distance_matrix(&star).unwrap()), 9.0);
        let path = WeightedGraph::unweighted(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(wiener_index(&distance_matrix(&path).unwrap()), 10.0);
        let edge = WeightedGraph::from_edges(2, [(0, 1, 2.5)]).unwrap();
        assert_eq!(wiener_index(&distance_matrix(&edge).unwrap()), 2.5);
    }

    #[test]
    fn weighted_sum_examples() {
        let p3 = WeightedGraph::unweighted(3, [(0, 1), (1, 2)]).unwrap();
        let d = distance_matrix(&p3).unwrap();
        let off = DenseMatrix::from_fn(3, 3, |i, j| if i == j { 0.0 } else { 1.0 });
        assert_eq!(weighted_distance_sum(&d, &off).unwrap(), wiener_index(&d));
        assert_eq!(weighted_distance_sum(&d, &DenseMatrix::zeros(3, 3)).unwrap(), 0.0);
        let mut single = DenseMatrix::zeros(3, 3);
        single[(0, 2)] = 2.0;
        single[(2, 0)] = 2.0;
        assert_eq!(weighted_distance_sum(&d, &single).unwrap(), 4.0);
        assert!(weighted_distance_sum(&d, &DenseMatrix::zeros(2, 2)).is_err());
    }
}
