//! Value iteration for the expected capture time of a drunk robber.
//!
//! With `R[x', y] = (1/deg y) · Σ_{y' ∈ N(y)} C[x', y']` (zero when a cop of
//! `x'` stands on `y`), each sweep applies
//!
//! ```text
//! C[x, y] = 1 + min over x' reachable from x of R[x', y]
//! ```
//!
//! to every off-diagonal state, starting from `C = 0`. Diagonal entries stay
//! zero, which also accounts for robber steps onto a cop. From zero the
//! iterates increase monotonically to the fixpoint.
//!
//! Keeping `R` as an explicit table makes a sweep cost `O(states · Δ)`
//! instead of `O(states · Δ²)`. The Gauss-Seidel sweep rebuilds `R` from `C`
//! first, then patches the affected `R` entries after each in-place update
//! of `C`, which keeps it equal to the pointwise in-place iteration.

use std::sync::Arc;

use super::policy::{extract_policy, FeedbackPolicy, TIE_EPS};
use super::{Scheme, SolveOptions, ValueTable};
use crate::config::{ConfigSpace, CopConfig};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::par::{self, Exec};

/// Sweep-by-sweep driver, exposed so callers can inspect the iterates.
pub struct CadrIteration {
    space: Arc<ConfigSpace>,
    scheme: Scheme,
    exec: Exec,
    inv_deg: Vec<f64>,
    c: Vec<f64>,
    r: Vec<f64>,
    scratch: Vec<f64>,
    sweeps: usize,
}

pub(crate) fn inverse_degrees(g: &Graph) -> Vec<f64> {
    (0..g.n())
        .map(|v| if g.degree(v) == 0 { 0.0 } else { 1.0 / g.degree(v) as f64 })
        .collect()
}

/// Robber-to-move value at `(ci, y)` read from the cop-to-move table `c`.
#[inline]
pub(crate) fn drunk_robber_backup(
    space: &ConfigSpace,
    inv_deg: &[f64],
    c: &[f64],
    ci: usize,
    y: usize,
) -> f64 {
    if space.occupied(ci, y) {
        return 0.0;
    }
    let n = space.n();
    let row = &c[ci * n..(ci + 1) * n];
    let sum: f64 = space.graph().neighbors(y).iter().map(|&z| row[z]).sum();
    sum * inv_deg[y]
}

#[inline]
fn best_move(space: &ConfigSpace, r: &[f64], ci: usize, y: usize) -> f64 {
    let n = space.n();
    space
        .successors(ci)
        .iter()
        .map(|&cj| r[cj as usize * n + y])
        .fold(f64::INFINITY, f64::min)
}

fn fill_robber_turn(space: &ConfigSpace, exec: Exec, inv_deg: &[f64], c: &[f64], r: &mut [f64]) {
    let n = space.n();
    par::map_chunks_mut(exec, r, n, |ci, row| {
        for (y, out) in row.iter_mut().enumerate() {
            *out = drunk_robber_backup(space, inv_deg, c, ci, y);
        }
    });
}

impl CadrIteration {
    pub fn new(space: &Arc<ConfigSpace>, scheme: Scheme, exec: Exec) -> Self {
        let states = space.num_states();
        CadrIteration {
            space: space.clone(),
            scheme,
            exec,
            inv_deg: inverse_degrees(space.graph()),
            c: vec![0.0; states],
            r: vec![0.0; states],
            scratch: match scheme {
                Scheme::Jacobi => vec![0.0; states],
                Scheme::GaussSeidel => Vec::new(),
            },
            sweeps: 0,
        }
    }

    pub fn sweeps(&self) -> usize {
        self.sweeps
    }

    /// Current cop-to-move values.
    pub fn values(&self) -> &[f64] {
        &self.c
    }

    /// Performs one sweep and returns the largest absolute change.
    pub fn sweep(&mut self) -> f64 {
        self.sweeps += 1;
        let space = &*self.space;
        fill_robber_turn(space, self.exec, &self.inv_deg, &self.c, &mut self.r);
        match self.scheme {
            Scheme::Jacobi => {
                let n = space.n();
                let (c, r) = (&self.c, &self.r);
                let changes = par::map_chunks_mut(self.exec, &mut self.scratch, n, |ci, row| {
                    let mut delta: f64 = 0.0;
                    for (y, out) in row.iter_mut().enumerate() {
                        *out = if space.occupied(ci, y) {
                            0.0
                        } else {
                            1.0 + best_move(space, r, ci, y)
                        };
                        delta = delta.max((*out - c[ci * n + y]).abs());
                    }
                    delta
                });
                std::mem::swap(&mut self.c, &mut self.scratch);
                changes.into_iter().fold(0.0, f64::max)
            }
            Scheme::GaussSeidel => {
                let n = space.n();
                let g = space.graph();
                let mut delta: f64 = 0.0;
                for ci in 0..space.num_configs() {
                    for y in 0..n {
                        if space.occupied(ci, y) {
                            continue;
                        }
                        let s = ci * n + y;
                        let value = 1.0 + best_move(space, &self.r, ci, y);
                        let change = value - self.c[s];
                        if change != 0.0 {
                            self.c[s] = value;
                            delta = delta.max(change.abs());
                            for &z in g.neighbors(y) {
                                if !space.occupied(ci, z) {
                                    self.r[ci * n + z] += change * self.inv_deg[z];
                                }
                            }
                        }
                    }
                }
                delta
            }
        }
    }

    pub fn into_table(self) -> ValueTable<f64> {
        ValueTable::new(self.space, self.c)
    }
}

#[derive(Clone, Debug)]
pub struct CadrSolution {
    pub values: ValueTable<f64>,
    pub policy: FeedbackPolicy,
    pub sweeps: usize,
    /// Change in the final sweep.
    pub residual: f64,
}

impl CadrSolution {
    /// Uniform average over robber starts for configuration `ci`; a robber
    /// placed on a cop counts as caught at time 0.
    pub fn average_from(&self, ci: usize) -> f64 {
        let row = self.values.row(ci);
        row.iter().sum::<f64>() / row.len() as f64
    }

    /// `dct(G, k)` and the lexicographically first configuration attaining it.
    /// Averages within [`TIE_EPS`] of each other count as ties.
    pub fn optimal_start(&self) -> (CopConfig, f64) {
        let space = self.values.space();
        let averages: Vec<f64> = (0..space.num_configs()).map(|ci| self.average_from(ci)).collect();
        let best = averages.iter().copied().fold(f64::INFINITY, f64::min);
        let ci = averages
            .iter()
            .position(|&v| v <= best + TIE_EPS * best.abs().max(1.0))
            .expect("at least one configuration");
        (space.config(ci), averages[ci])
    }

    pub fn expected_capture_time(&self) -> f64 {
        self.optimal_start().1
    }

    /// Every configuration whose average is within `tol` of the optimum.
    pub fn optimal_starts(&self, tol: f64) -> Vec<CopConfig> {
        let space = self.values.space();
        let best = self.expected_capture_time();
        (0..space.num_configs())
            .filter(|&ci| self.average_from(ci) <= best + tol)
            .map(|ci| space.config(ci))
            .collect()
    }
}

/// Iterates until a sweep changes no entry by `opts.tolerance` or more.
pub fn cadr_solve(space: &Arc<ConfigSpace>, opts: &SolveOptions) -> Result<CadrSolution> {
    opts.check()?;
    let mut it = CadrIteration::new(space, opts.scheme, opts.exec);
    let mut residual = f64::INFINITY;
    while it.sweeps() < opts.max_sweeps {
        residual = it.sweep();
        if residual < opts.tolerance {
            let sweeps = it.sweeps();
            let values = it.into_table();
            let policy = extract_policy(&values);
            return Ok(CadrSolution { values, policy, sweeps, residual });
        }
    }
    Err(Error::NoConvergence { sweeps: opts.max_sweeps, residual })
}

/// `dct(G, k)`.
pub fn drunk_capture_time(g: &Graph, k: usize, opts: &SolveOptions) -> Result<f64> {
    let space = ConfigSpace::new(g, k)?;
    Ok(cadr_solve(&space, opts)?.expected_capture_time())
}
