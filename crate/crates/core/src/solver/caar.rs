//! Exact game values against an adversarial robber.
//!
//! `C[x, y]` is the remaining game length with the cops to move and `R[x, y]`
//! the same with the robber to move. Starting from `C = ∞` off the diagonal
//! the two tables are updated as
//!
//! ```text
//! R[x, y] = max over y' ∈ N⁺(y) of C[x, y']
//! C[x, y] = 1 + min over x' reachable from x of R[x', y]
//! ```
//!
//! until nothing changes. Entries that stay infinite are robber wins.

use std::sync::Arc;

use super::policy::{extract_adversarial_policy, FeedbackPolicy, RobberPolicy};
use super::{Rounds, ValueTable};
use crate::config::{ConfigSpace, CopConfig};
use crate::error::Result;
use crate::graph::Graph;
use crate::par::{self, Exec};

#[derive(Clone, Debug)]
pub struct CaarSolution {
    /// Cops to move.
    pub cop_turn: ValueTable<Rounds>,
    /// Robber to move.
    pub robber_turn: ValueTable<Rounds>,
    pub cop_policy: FeedbackPolicy,
    pub robber_policy: RobberPolicy,
    pub iterations: usize,
}

impl CaarSolution {
    /// `min_x max_y C[x, y]`.
    pub fn capture_time(&self) -> Rounds {
        self.optimal_start().1
    }

    /// First configuration (lexicographically) attaining the capture time.
    pub fn optimal_start(&self) -> (CopConfig, Rounds) {
        let space = self.cop_turn.space();
        let (ci, v) = (0..space.num_configs())
            .map(|ci| (ci, self.worst_case(ci)))
            .min_by_key(|&(ci, v)| (v, ci))
            .expect("at least one configuration");
        (space.config(ci), v)
    }

    fn worst_case(&self, ci: usize) -> Rounds {
        self.cop_turn.row(ci).iter().copied().max().unwrap_or(Rounds::ZERO)
    }
}

pub(crate) fn robber_backup(space: &ConfigSpace, c: &[Rounds], ci: usize, y: usize) -> Rounds {
    if space.occupied(ci, y) {
        return Rounds::ZERO;
    }
    let n = space.n();
    let row = &c[ci * n..(ci + 1) * n];
    let g = space.graph();
    g.neighbors(y).iter().map(|&z| row[z]).fold(row[y], Rounds::max)
}

pub(crate) fn cop_backup(space: &ConfigSpace, r: &[Rounds], ci: usize, y: usize) -> Rounds {
    if space.occupied(ci, y) {
        return Rounds::ZERO;
    }
    let n = space.n();
    space
        .successors(ci)
        .iter()
        .map(|&cj| r[cj as usize * n + y])
        .min()
        .expect("staying put is always a successor")
        .succ()
}

fn fill_robber_turn(space: &ConfigSpace, exec: Exec, c: &[Rounds], r: &mut [Rounds]) {
    let n = space.n();
    par::map_chunks_mut(exec, r, n, |ci, row| {
        for (y, out) in row.iter_mut().enumerate() {
            *out = robber_backup(space, c, ci, y);
        }
    });
}

/// Runs the fixpoint to completion on the given state space.
pub fn caar_solve(space: &Arc<ConfigSpace>) -> CaarSolution {
    caar_solve_with(space, Exec::default())
}

/// [`caar_solve`] with an explicit execution mode.
pub fn caar_solve_with(space: &Arc<ConfigSpace>, exec: Exec) -> CaarSolution {
    let n = space.n();
    let mut c: Vec<Rounds> = space
        .occupancy()
        .iter()
        .map(|&occ| if occ { Rounds::ZERO } else { Rounds::INFINITE })
        .collect();
    let mut r = vec![Rounds::ZERO; c.len()];
    let mut next = c.clone();
    let mut iterations = 0;
    loop {
        iterations += 1;
        fill_robber_turn(space, exec, &c, &mut r);
        let changed = par::map_chunks_mut(exec, &mut next, n, |ci, row| {
            let mut changed = false;
            for (y, out) in row.iter_mut().enumerate() {
                *out = cop_backup(space, &r, ci, y);
                changed |= *out != c[ci * n + y];
            }
            changed
        });
        std::mem::swap(&mut c, &mut next);
        if !changed.contains(&true) {
            break;
        }
    }
    let cop_turn = ValueTable::new(space.clone(), c);
    let (cop_policy, robber_policy) = extract_adversarial_policy(&cop_turn);
    CaarSolution {
        robber_turn: ValueTable::new(space.clone(), r),
        cop_turn,
        cop_policy,
        robber_policy,
        iterations,
    }
}

/// `ct(G, k)`, infinite iff `k` cops cannot guarantee capture.
pub fn capture_time(g: &Graph, k: usize) -> Result<Rounds> {
    let space = ConfigSpace::new(g, k)?;
    Ok(caar_solve(&space).capture_time())
}
