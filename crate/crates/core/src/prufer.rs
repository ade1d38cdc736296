//! Prüfer codes: the bijection between labeled trees on `n` vertices and
//! sequences of `n − 2` labels.

use std::cmp::Reverse;
use std::collections::{BTreeSet, BinaryHeap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

/// A Prüfer sequence with 1-based labels in `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct PruferCode {
    n: usize,
    seq: Vec<usize>,
}

impl PruferCode {
    pub fn new(n: usize, seq: Vec<usize>) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidPrufer(format!("n = {n}, need n >= 2")));
        }
        if seq.len() != n - 2 {
            return Err(Error::InvalidPrufer(format!("length {} for n = {n}, expected {}", seq.len(), n - 2)));
        }
        if let Some(&bad) = seq.iter().find(|&&v| v == 0 || v > n) {
            return Err(Error::InvalidPrufer(format!("label {bad} outside 1..={n}")));
        }
        Ok(PruferCode { n, seq })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> &[usize] {
        &self.seq
    }

    /// Number of codes (and labeled trees) for `n`, if it fits in a `u64`.
    pub fn count(n: usize) -> Option<u64> {
        match n {
            0 => None,
            1 | 2 => Some(1),
            _ => (n as u64).checked_pow(n as u32 - 2),
        }
    }

    /// The `index`-th code in lexicographic order, counting from zero.
    pub fn from_index(n: usize, mut index: u64) -> Result<Self> {
        let total = Self::count(n).ok_or_else(|| Error::InvalidPrufer(format!("n = {n} out of range")))?;
        if n < 2 || index >= total {
            return Err(Error::InvalidPrufer(format!("index {index} out of range for n = {n}")));
        }
        let mut seq = vec![0; n - 2];
        for slot in seq.iter_mut().rev() {
            *slot = (index % n as u64) as usize + 1;
            index /= n as u64;
        }
        Ok(PruferCode { n, seq })
    }

    /// Inverse of [`PruferCode::from_index`].
    pub fn index(&self) -> u64 {
        self.seq.iter().fold(0, |acc, &v| acc * self.n as u64 + (v as u64 - 1))
    }

    /// Decodes to the unit-weight tree, always attaching the smallest current leaf.
    pub fn decode(&self) -> WeightedGraph {
        let n = self.n;
        let mut degree = vec![1usize; n];
        for &v in &self.seq {
            degree[v - 1] += 1;
        }
        let mut leaves: BinaryHeap<Reverse<usize>> = (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
        let mut edges = Vec::with_capacity(n - 1);
        for &label in &self.seq {
            let parent = label - 1;
            let Reverse(leaf) = leaves.pop().expect("a leaf always remains");
            edges.push((leaf.min(parent), leaf.max(parent)));
            degree[parent] -= 1;
            if degree[parent] == 1 {
                leaves.push(Reverse(parent));
            }
        }
        let Reverse(a) = leaves.pop().expect("two vertices remain");
        let Reverse(b) = leaves.pop().expect("two vertices remain");
        edges.push((a.min(b), a.max(b)));
        WeightedGraph::unweighted(n, edges).expect("decoded edges form a simple graph")
    }

    /// Encodes a tree (weights ignored) by repeatedly removing the smallest leaf.
    pub fn encode(tree: &WeightedGraph) -> Result<Self> {
        tree.require_tree()?;
        let n = tree.n();
        let mut neighbors: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for (i, j, _) in tree.edges() {
            neighbors[i].insert(j);
            neighbors[j].insert(i);
        }
        let mut leaves: BTreeSet<usize> = (0..n).filter(|&v| neighbors[v].len() == 1).collect();
        let mut seq = Vec::with_capacity(n - 2);
        for _ in 0..n - 2 {
            let leaf = leaves.pop_first().expect("trees with n >= 3 always have a leaf to remove");
            let parent = *neighbors[leaf].first().expect("leaf has one neighbor");
            neighbors[parent].remove(&leaf);
            neighbors[leaf].clear();
            if neighbors[parent].len() == 1 {
                leaves.insert(parent);
            }
            seq.push(parent + 1);
        }
        Ok(PruferCode { n, seq })
    }
}

/// Iterates every code for `n` in lexicographic order.
pub fn all_codes(n: usize) -> Result<impl Iterator<Item = PruferCode>> {
    let total = PruferCode::count(n)
        .filter(|_| n >= 2)
        .ok_or_else(|| Error::InvalidPrufer(format!("cannot enumerate codes for n = {n}")))?;
    Ok((0..total).map(move |k| PruferCode::from_index(n, k).expect("index within range")))
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;

    fn edge_set(g: &WeightedGraph) -> Vec<(usize, usize)> {
        g.edges().map(|(i, j, _)| (i + 1, j + 1)).collect()
    }

    #[test]
    fn decode_examples() {
        let code = PruferCode::new(3, vec![2]).unwrap();
        assert_eq!(edge_set(&code.decode()), vec![(1, 2), (2, 3)]);
        assert_eq!(edge_set(&PruferCode::new(2, vec![]).unwrap().decode()), vec![(1, 2)]);
        let star = PruferCode::new(4, vec![1, 1]).unwrap().decode();
        assert_eq!(edge_set(&star), vec![(1, 2), (1, 3), (1, 4)]);
    }

    #[test]
    fn encode_examples() {
        let star = WeightedGraph::unweighted(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(PruferCode::encode(&star).unwrap().labels(), &[1, 1]);
        let path = WeightedGraph::unweighted(3, [(0, 1), (1, 2)]).unwrap();
        assert_eq!(PruferCode::encode(&path).unwrap().labels(), &[2]);
        let cycle = WeightedGraph::unweighted(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(matches!(PruferCode::encode(&cycle), Err(Error::NotATree(_))));
    }

    #[test]
    fn exhaustive_round_trip_n4() {
        let codes: Vec<_> = all_codes(4).unwrap().collect();
        assert_eq!(codes.len(), 16);
        let mut trees = HashSet::new();
        for code in codes {
            let tree = code.decode();
            assert!(tree.is_tree());
            assert_eq!(PruferCode::encode(&tree).unwrap(), code);
            assert!(trees.insert(edge_set(&tree)));
        }
    }

    #[test]
    fn rejects_bad_codes() {
        assert!(PruferCode::new(4, vec![1, 5]).is_err());
        assert!(PruferCode::new(4, vec![0, 1]).is_err());
        assert!(PruferCode::new(4, vec![1]).is_err());
        assert!(PruferCode::new(1, vec![]).is_err());
        assert!(PruferCode::from_index(3, 3).is_err());
    }

    #[test]
    fn index_order_is_lexicographic() {
        assert_eq!(PruferCode::from_index(4, 0).unwrap().labels(), &[1, 1]);
        assert_eq!(PruferCode::from_index(4, 1).unwrap().labels(), &[1, 2]);
        assert_eq!(PruferCode::from_index(4, 15).unwrap().labels(), &[4, 4]);
        assert_eq!(PruferCode::count(7), Some(16807));
        assert_eq!(PruferCode::count(2), Some(1));
        let codes: Vec<_> = all_codes(5).unwrap().collect();
        assert!(codes.windows(2).all(|w| w[0] < w[1]));
        assert!(codes.iter().enumerate().all(|(k, c)| c.index() == k as u64));
    }
}
