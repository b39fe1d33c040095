//! Canonical cop configurations and the joint (cops, robber) state space.
//!
//! Cops are interchangeable, so a configuration is a sorted multiset of `k`
//! vertices. [`ConfigSpace`] enumerates all of them in lexicographic order and
//! precomputes, for every configuration, the sorted list of configurations
//! reachable in one cop move (each cop steps within its closed neighbourhood).
//! A state is the pair `(config index, robber vertex)`, flattened as
//! `config * n + robber`.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default limit on `configs × n`, overridable by callers.
pub const DEFAULT_STATE_CAP: u128 = 5_000_000;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CopConfig(Vec<usize>);

impl CopConfig {
    pub fn new(mut cops: Vec<usize>) -> Self {
        cops.sort_unstable();
        CopConfig(cops)
    }

    pub fn single(v: usize) -> Self {
        CopConfig(vec![v])
    }

    pub fn cops(&self) -> &[usize] {
        &self.0
    }

    pub fn k(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// Whether every cop can reach this configuration from `from` in one move,
    /// under some assignment of cops to targets.
    pub fn is_move_from(&self, from: &CopConfig, g: &Graph) -> bool {
        fn assign(i: usize, from: &[usize], to: &[usize], used: &mut [bool], g: &Graph) -> bool {
            if i == from.len() {
                return true;
            }
            for j in 0..to.len() {
                if !used[j] && (from[i] == to[j] || g.has_edge(from[i], to[j])) {
                    used[j] = true;
                    if assign(i + 1, from, to, used, g) {
                        return true;
                    }
                    used[j] = false;
                }
            }
            false
        }
        from.k() == self.k()
            && assign(0, &from.0, &self.0, &mut vec![false; self.k()], g)
    }
}

impl fmt::Display for CopConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Number of sorted `k`-multisets over `n` vertices, saturating.
pub fn config_count(n: usize, k: usize) -> u128 {
    // C(n + k - 1, k)
    let mut acc: u128 = 1;
    for i in 0..k as u128 {
        acc = match acc.checked_mul(n as u128 + i) {
            Some(v) => v / (i + 1),
            None => return u128::MAX,
        };
    }
    acc
}

/// Number of joint states `C(n + k - 1, k) · n`.
pub fn state_count(n: usize, k: usize) -> u128 {
    config_count(n, k).saturating_mul(n as u128)
}

#[derive(Debug)]
pub struct ConfigSpace {
    graph: Graph,
    k: usize,
    configs: Vec<u32>,
    succ_offsets: Vec<usize>,
    succ: Vec<u32>,
    occupied: Vec<bool>,
}

impl ConfigSpace {
    pub fn new(graph: &Graph, k: usize) -> Result<Arc<Self>> {
        Self::with_cap(graph, k, DEFAULT_STATE_CAP)
    }

    pub fn with_cap(graph: &Graph, k: usize, state_cap: u128) -> Result<Arc<Self>> {
        if k == 0 {
            return Err(Error::InvalidParameter("need at least one cop".into()));
        }
        let n = graph.n();
        let states = state_count(n, k);
        if states > state_cap {
            return Err(Error::StateSpaceTooLarge { states, cap: state_cap });
        }
        let num = config_count(n, k) as usize;

        let mut configs = Vec::with_capacity(num * k);
        let mut cur = vec![0u32; k];
        loop {
            configs.extend_from_slice(&cur);
            // next multiset in lexicographic order
            let Some(i) = (0..k).rev().find(|&i| (cur[i] as usize) < n - 1) else { break };
            let v = cur[i] + 1;
            cur[i..].fill(v);
        }
        debug_assert_eq!(configs.len(), num * k);

        let mut space = ConfigSpace {
            graph: graph.clone(),
            k,
            configs,
            succ_offsets: Vec::with_capacity(num + 1),
            succ: Vec::new(),
            occupied: vec![false; num * n],
        };

        let closed: Vec<Vec<usize>> = (0..n).map(|v| graph.closed_neighbors(v)).collect();
        let mut buf = Vec::new();
        let mut tuple = vec![0usize; k];
        space.succ_offsets.push(0);
        for ci in 0..num {
            buf.clear();
            let cops: Vec<usize> = space.config_slice(ci).iter().map(|&v| v as usize).collect();
            for &v in &cops {
                space.occupied[ci * n + v] = true;
            }
            let mut digits = vec![0usize; k];
            'outer: loop {
                for (i, &d) in digits.iter().enumerate() {
                    tuple[i] = closed[cops[i]][d];
                }
                let canon = CopConfig::new(tuple.clone());
                buf.push(space.index_of(&canon).expect("successor is a valid configuration") as u32);
                for i in (0..k).rev() {
                    digits[i] += 1;
                    if digits[i] < closed[cops[i]].len() {
                        continue 'outer;
                    }
                    digits[i] = 0;
                }
                break;
            }
            buf.sort_unstable();
            buf.dedup();
            space.succ.extend_from_slice(&buf);
            space.succ_offsets.push(space.succ.len());
        }
        Ok(Arc::new(space))
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn num_configs(&self) -> usize {
        self.configs.len() / self.k
    }

    pub fn num_states(&self) -> usize {
        self.num_configs() * self.n()
    }

    pub(crate) fn config_slice(&self, ci: usize) -> &[u32] {
        &self.configs[ci * self.k..(ci + 1) * self.k]
    }

    pub fn config(&self, ci: usize) -> CopConfig {
        CopConfig(self.config_slice(ci).iter().map(|&v| v as usize).collect())
    }

    pub fn index_of(&self, config: &CopConfig) -> Option<usize> {
        if config.k() != self.k || config.0.iter().any(|&v| v >= self.n()) {
            return None;
        }
        let (mut lo, mut hi) = (0, self.num_configs());
        while lo < hi {
            let mid = (lo + hi) / 2;
            let probe = self.config_slice(mid);
            let ord = probe.iter().map(|&v| v as usize).cmp(config.0.iter().copied());
            match ord {
                std::cmp::Ordering::Less => lo = mid + 1,
                std::cmp::Ordering::Greater => hi = mid,
                std::cmp::Ordering::Equal => return Some(mid),
            }
        }
        None
    }

    /// Configurations reachable in one cop move, ascending (hence
    /// lexicographically ordered).
    pub fn successors(&self, ci: usize) -> &[u32] {
        &self.succ[self.succ_offsets[ci]..self.succ_offsets[ci + 1]]
    }

    /// Whether some cop of configuration `ci` stands on `v`.
    #[inline]
    pub fn occupied(&self, ci: usize, v: usize) -> bool {
        self.occupied[ci * self.n() + v]
    }

    pub(crate) fn occupancy(&self) -> &[bool] {
        &self.occupied
    }

    pub fn state(&self, ci: usize, robber: usize) -> usize {
        ci * self.n() + robber
    }
}
