use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use super::Graph;
use crate::error::{Error, Result};

/// A named graph family together with its parameters.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "kebab-case")]
pub enum Family {
    Path { n: usize },
    Cycle { n: usize },
    CompleteTree { d: usize, depth: usize },
    Grid { n: usize },
    Complete { n: usize },
    Barbell { n: usize, c: f64 },
    Lollipop { n: usize, c: f64 },
}

impl Family {
    pub fn build(&self) -> Result<Graph> {
        match *self {
            Family::Path { n } => path(n),
            Family::Cycle { n } => cycle(n),
            Family::CompleteTree { d, depth } => complete_tree(d, depth),
            Family::Grid { n } => grid(n),
            Family::Complete { n } => complete(n),
            Family::Barbell { n, c } => barbell(n, c),
            Family::Lollipop { n, c } => lollipop(n, c),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Path { .. } => "path",
            Family::Cycle { .. } => "cycle",
            Family::CompleteTree { .. } => "tree",
            Family::Grid { .. } => "grid",
            Family::Complete { .. } => "complete",
            Family::Barbell { .. } => "barbell",
            Family::Lollipop { .. } => "lollipop",
        }
    }
}

/// `P_n`: vertices `0..n`, edges `{i-1, i}`.
pub fn path(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParameter("path needs n >= 1".into()));
    }
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i)))
}

/// `C_n`: edges `{i, i+1 mod n}`.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidParameter("cycle needs n >= 3".into()));
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

/// `K_n`.
pub fn complete(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParameter("complete graph needs n >= 1".into()));
    }
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))))
}

/// Complete `d`-ary tree of the given depth, labelled breadth-first from the
/// root 0, so the children of `v` are `d·v + 1 ..= d·v + d`.
pub fn complete_tree(d: usize, depth: usize) -> Result<Graph> {
    if d < 2 {
        return Err(Error::InvalidParameter("complete tree needs d >= 2".into()));
    }
    let overflow = || Error::InvalidParameter(format!("tree T({d},{depth}) is too large"));
    // (d^(depth+1) - 1) / (d - 1)
    let mut count: usize = 0;
    let mut level: usize = 1;
    for i in 0..=depth {
        count = count.checked_add(level).ok_or_else(overflow)?;
        if i < depth {
            level = level.checked_mul(d).ok_or_else(overflow)?;
        }
    }
    if count > u32::MAX as usize {
        return Err(overflow());
    }
    Graph::from_edges(count, (1..count).map(|v| ((v - 1) / d, v)))
}

/// `G □ H` with vertex `(u, v)` flattened to `u·|V(H)| + v`.
pub fn cartesian_product(g: &Graph, h: &Graph) -> Result<Graph> {
    let m = h.n();
    let n = g.n().checked_mul(m).ok_or_else(|| {
        Error::InvalidParameter("cartesian product is too large".into())
    })?;
    let mut edges = Vec::with_capacity(g.n() * h.edge_count() + m * g.edge_count());
    for u in 0..g.n() {
        edges.extend(h.edges().map(|(a, b)| (u * m + a, u * m + b)));
    }
    for (a, b) in g.edges() {
        edges.extend((0..m).map(|v| (a * m + v, b * m + v)));
    }
    Graph::from_edges(n, edges)
}

/// The square grid `P_n □ P_n`.
pub fn grid(n: usize) -> Result<Graph> {
    let p = path(n)?;
    cartesian_product(&p, &p)
}

fn clique_size(n: usize, c: f64, what: &str) -> Result<usize> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!("{what} needs n >= 2")));
    }
    if !(c.is_finite() && c >= 0.0) {
        return Err(Error::InvalidParameter(format!("{what} needs a finite c >= 0")));
    }
    let m = (c * n as f64).floor();
    if m > u32::MAX as f64 {
        return Err(Error::InvalidParameter(format!("{what} clique is too large")));
    }
    let m = m as usize;
    if c > 0.0 && m == 0 {
        return Err(Error::InvalidParameter(format!(
            "{what} with c = {c} and n = {n} has an empty clique; use c = 0 for a bare path"
        )));
    }
    Ok(m)
}

/// Adds a clique of size `m` that contains `anchor` plus `m - 1` fresh
/// vertices numbered from `*next`.
fn attach_clique(edges: &mut Vec<(usize, usize)>, anchor: usize, m: usize, next: &mut usize) {
    if m < 2 {
        return;
    }
    let members: Vec<usize> = std::iter::once(anchor).chain(*next..*next + m - 1).collect();
    *next += m - 1;
    for (i, &u) in members.iter().enumerate() {
        for &v in &members[i + 1..] {
            edges.push((u, v));
        }
    }
}

/// Barbell `B(n, c)`: the path `P_n` with endpoint 0 a member of one clique
/// `K_⌊cn⌋` and endpoint `n-1` a member of another. Path vertices keep labels
/// `0..n`; clique vertices follow. With `c = 0` this is `P_n`.
pub fn barbell(n: usize, c: f64) -> Result<Graph> {
    let m = clique_size(n, c, "barbell")?;
    let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    let mut next = n;
    attach_clique(&mut edges, 0, m, &mut next);
    attach_clique(&mut edges, n - 1, m, &mut next);
    Graph::from_edges(next, edges)
}

/// Lollipop `L(n, c)`: the path `P_n` with endpoint 0 a member of a clique
/// `K_⌊cn⌋`.
pub fn lollipop(n: usize, c: f64) -> Result<Graph> {
    let m = clique_size(n, c, "lollipop")?;
    let mut edges: Vec<(usize, usize)> = (1..n).map(|i| (i - 1, i)).collect();
    let mut next = n;
    attach_clique(&mut edges, 0, m, &mut next);
    Graph::from_edges(next, edges)
}

/// Random connected graph: a uniformly shuffled random recursive tree plus
/// each remaining pair independently with probability `extra_edge_prob`.
pub fn random_connected<R: Rng + ?Sized>(
    n: usize,
    extra_edge_prob: f64,
    rng: &mut R,
) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidParameter("random graph needs n >= 1".into()));
    }
    if !(0.0..=1.0).contains(&extra_edge_prob) {
        return Err(Error::InvalidParameter("edge probability must be in [0, 1]".into()));
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut adj = vec![vec![false; n]; n];
    for i in 1..n {
        let parent = order[rng.random_range(0..i)];
        let child = order[i];
        adj[parent][child] = true;
        adj[child][parent] = true;
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if adj[u][v] || rng.random_bool(extra_edge_prob) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn assert_simple_symmetric(g: &Graph) {
        for v in 0..g.n() {
            let nb = g.neighbors(v);
            assert!(nb.windows(2).all(|w| w[0] < w[1]), "unsorted or duplicate at {v}");
            for &u in nb {
                assert_ne!(u, v);
                assert!(u < g.n());
                assert!(g.has_edge(u, v), "asymmetric {u}-{v}");
            }
        }
    }

    /// Brute-force isomorphism check for tiny graphs.
    fn isomorphic(a: &Graph, b: &Graph) -> bool {
        fn permute(k: usize, perm: &mut Vec<usize>, a: &Graph, b: &Graph) -> bool {
            if k == perm.len() {
                return a.edges().all(|(u, v)| b.has_edge(perm[u], perm[v]));
            }
            for i in k..perm.len() {
                perm.swap(k, i);
                if permute(k + 1, perm, a, b) {
                    return true;
                }
                perm.swap(k, i);
            }
            false
        }
        a.n() == b.n()
            && a.edge_count() == b.edge_count()
            && permute(0, &mut (0..a.n()).collect(), a, b)
    }

    #[test]
    fn path_examples() {
        let p = path(5).unwrap();
        assert_eq!(p.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2), (2, 3), (3, 4)]);
        assert_eq!(p.diameter(), 4);
        let p1 = path(1).unwrap();
        assert_eq!((p1.n(), p1.edge_count()), (1, 0));
        assert!(path(0).is_err());
    }

    #[test]
    fn cycle_examples() {
        let c = cycle(4).unwrap();
        assert_eq!(c.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 3), (1, 2), (2, 3)]);
        let t = cycle(3).unwrap();
        assert!((0..3).all(|v| t.degree(v) == 2));
        assert!(cycle(2).is_err());
        assert!(isomorphic(&grid(2).unwrap(), &c));
    }

    #[test]
    fn complete_tree_examples() {
        assert_eq!(complete_tree(2, 2).unwrap().n(), 7);
        assert_eq!(complete_tree(3, 0).unwrap().n(), 1);
        let star = complete_tree(3, 1).unwrap();
        assert_eq!(star.n(), 4);
        assert_eq!(star.neighbors(0), &[1, 2, 3]);
        assert!(complete_tree(1, 3).is_err());
        assert!(complete_tree(2, 200).is_err());
    }

    #[test]
    fn cartesian_product_examples() {
        let g3 = grid(3).unwrap();
        assert_eq!((g3.n(), g3.edge_count()), (9, 12));
        let p4 = path(4).unwrap();
        assert!(isomorphic(&cartesian_product(&p4, &path(1).unwrap()).unwrap(), &p4));
        assert_eq!(grid(4).unwrap().diameter(), 6);
        // row-major flattening
        assert!(g3.has_edge(0, 1) && g3.has_edge(0, 3) && !g3.has_edge(2, 3));
    }

    #[test]
    fn barbell_and_lollipop_counts() {
        assert_eq!(barbell(10, 1.0).unwrap().n(), 28);
        assert_eq!(barbell(10, 0.0).unwrap(), path(10).unwrap());
        assert_eq!(lollipop(10, 1.0).unwrap().n(), 19);
        assert_eq!(lollipop(10, 0.0).unwrap(), path(10).unwrap());
        for n in [100usize, 1000, 10000] {
            let b = barbell(n, 0.5).unwrap().n() as f64 / n as f64;
            assert!((b - 2.0).abs() < 2.0 / n as f64 + 1e-12);
            let l = lollipop(n, 0.5).unwrap().n() as f64 / n as f64;
            assert!((l - 1.5).abs() < 1.0 / n as f64 + 1e-12);
        }
        assert!(barbell(10, 0.05).is_err());
        assert!(barbell(1, 1.0).is_err());
        assert!(lollipop(10, -1.0).is_err());
        assert!(lollipop(10, f64::NAN).is_err());
    }

    #[test]
    fn barbell_cliques_share_path_endpoints() {
        let b = barbell(5, 0.8).unwrap(); // K_4 at both ends
        assert_eq!(b.n(), 5 + 2 * 3);
        assert_eq!(b.degree(0), 1 + 3);
        assert_eq!(b.degree(4), 1 + 3);
        assert_eq!(b.degree(2), 2);
        assert!(b.has_edge(5, 6) && b.has_edge(0, 7) && b.has_edge(4, 8));
        assert!(!b.has_edge(7, 8));
    }

    #[test]
    fn generator_edge_counts() {
        for n in 1..20 {
            assert_eq!(path(n).unwrap().edge_count(), n - 1);
        }
        for n in 3..20 {
            assert_eq!(cycle(n).unwrap().edge_count(), n);
        }
        for d in 2..5 {
            for k in 0..5 {
                let t = complete_tree(d, k).unwrap();
                assert_eq!(t.n(), (d.pow(k as u32 + 1) - 1) / (d - 1));
                assert_eq!(t.edge_count(), t.n() - 1);
                assert_simple_symmetric(&t);
            }
        }
    }

    proptest! {
        #[test]
        fn product_edge_count(a in 1usize..6, b in 3usize..6, seed in any::<u64>()) {
            let g = path(a).unwrap();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let h = random_connected(b, 0.4, &mut rng).unwrap();
            let p = cartesian_product(&g, &h).unwrap();
            assert_simple_symmetric(&p);
            prop_assert_eq!(p.edge_count(), g.n() * h.edge_count() + h.n() * g.edge_count());
        }

        #[test]
        fn random_graphs_are_valid(n in 1usize..15, p in 0.0f64..1.0, seed in any::<u64>()) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let g = random_connected(n, p, &mut rng).unwrap();
            assert_simple_symmetric(&g);
            prop_assert!(g.diagnostics().connected);
        }
    }
}
