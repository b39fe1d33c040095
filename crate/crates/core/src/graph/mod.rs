//! Undirected simple connected graphs with 0-based vertex labels.
//!
//! A [`Graph`] is immutable once built. Every constructor checks that the
//! adjacency is symmetric, loop-free, duplicate-free and connected, so the
//! game code downstream never has to.

mod edgelist;
mod generators;

pub use edgelist::{parse_edge_list, write_edge_list};
pub use generators::{
    barbell, cartesian_product, complete, complete_tree, cycle, grid, lollipop, path,
    random_connected, Family,
};

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
}

/// Connectivity, diameter and maximum degree of a graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Diagnostics {
    pub connected: bool,
    pub diameter: usize,
    pub max_degree: usize,
}

impl Graph {
    /// Builds a graph on `n` vertices from an undirected edge list.
    ///
    /// Edges may be given in either orientation; self-loops, repeated edges,
    /// out-of-range endpoints and disconnected results are rejected.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidGraph("graph must have at least one vertex".into()));
        }
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidGraph(format!(
                    "edge {{{u},{v}}} out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at vertex {u}")));
            }
            adjacency[u].push(v);
            adjacency[v].push(u);
        }
        for (v, list) in adjacency.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::InvalidGraph(format!(
                    "duplicate edge {{{},{}}}",
                    v.min(w[0]),
                    v.max(w[0])
                )));
            }
        }
        let g = Graph { adjacency };
        if !g.is_connected() {
            return Err(Error::InvalidGraph("graph is not connected".into()));
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    /// Open neighbourhood, sorted ascending.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    /// Closed neighbourhood `N(v) ∪ {v}`, sorted ascending.
    pub fn closed_neighbors(&self, v: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.degree(v) + 1);
        let nb = &self.adjacency[v];
        let split = nb.partition_point(|&u| u < v);
        out.extend_from_slice(&nb[..split]);
        out.push(v);
        out.extend_from_slice(&nb[split..]);
        out
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adjacency.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// BFS distances from `source`; unreachable vertices get `usize::MAX`.
    pub fn distances_from(&self, source: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.n()];
        let mut queue = VecDeque::new();
        dist[source] = 0;
        queue.push_back(source);
        while let Some(v) = queue.pop_front() {
            for &u in &self.adjacency[v] {
                if dist[u] == usize::MAX {
                    dist[u] = dist[v] + 1;
                    queue.push_back(u);
                }
            }
        }
        dist
    }

    /// Row-major `n × n` distance matrix.
    pub fn all_pairs_distances(&self) -> Vec<usize> {
        let n = self.n();
        let mut out = Vec::with_capacity(n * n);
        for v in 0..n {
            out.extend(self.distances_from(v));
        }
        out
    }

    fn is_connected(&self) -> bool {
        self.distances_from(0).iter().all(|&d| d != usize::MAX)
    }

    pub fn diameter(&self) -> usize {
        (0..self.n())
            .map(|v| self.distances_from(v).into_iter().max().unwrap_or(0))
            .max()
            .unwrap_or(0)
    }

    pub fn diagnostics(&self) -> Diagnostics {
        validate(self)
    }

    /// `D · Δ^D`, the expected capture time of a single stationary cop
    /// against a drunk robber, saturated to `f64::INFINITY`.
    pub fn stationary_cop_bound(&self) -> f64 {
        let d = self.diameter();
        let delta = self.max_degree();
        d as f64 * (delta as f64).powi(d as i32)
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        let n = self.n();
        if perm.len() != n {
            return Err(Error::DimensionMismatch { expected: n, got: perm.len() });
        }
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::InvalidParameter("relabeling is not a permutation".into()));
            }
        }
        Graph::from_edges(n, self.edges().map(|(u, v)| (perm[u], perm[v])))
    }
}

/// Connectivity, exact diameter and maximum degree, all by BFS.
pub fn validate(g: &Graph) -> Diagnostics {
    let mut diameter = 0;
    let mut connected = true;
    for v in 0..g.n() {
        for d in g.distances_from(v) {
            if d == usize::MAX {
                connected = false;
            } else {
                diameter = diameter.max(d);
            }
        }
    }
    Diagnostics { connected, diameter, max_degree: g.max_degree() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_loops_duplicates_and_disconnection() {
        assert!(Graph::from_edges(2, [(0, 0)]).is_err());
        assert!(Graph::from_edges(2, [(0, 1), (1, 0)]).is_err());
        assert!(Graph::from_edges(3, [(0, 1)]).is_err());
        assert!(Graph::from_edges(2, [(0, 2)]).is_err());
        assert!(Graph::from_edges(0, []).is_err());
        assert!(Graph::from_edges(1, []).is_ok());
    }

    #[test]
    fn closed_neighbourhood_is_sorted() {
        let g = Graph::from_edges(4, [(0, 2), (2, 3), (1, 2)]).unwrap();
        assert_eq!(g.closed_neighbors(2), vec![0, 1, 2, 3]);
        assert_eq!(g.closed_neighbors(0), vec![0, 2]);
        assert_eq!(g.closed_neighbors(3), vec![2, 3]);
    }

    #[test]
    fn relabel_rejects_non_permutations() {
        let g = path(3).unwrap();
        assert!(g.relabel(&[0, 0, 1]).is_err());
        assert!(g.relabel(&[0, 1]).is_err());
        let h = g.relabel(&[2, 0, 1]).unwrap();
        assert!(h.has_edge(2, 0) && h.has_edge(0, 1) && !h.has_edge(2, 1));
    }

    #[test]
    fn diagnostics_of_named_families() {
        let d = validate(&path(5).unwrap());
        assert_eq!(d, Diagnostics { connected: true, diameter: 4, max_degree: 2 });
        let d = validate(&cycle(6).unwrap());
        assert_eq!(d, Diagnostics { connected: true, diameter: 3, max_degree: 2 });
        let d = validate(&complete_tree(2, 3).unwrap());
        assert_eq!(d, Diagnostics { connected: true, diameter: 6, max_degree: 3 });
    }
}
