//! Feedback policies read off solved value tables, and policy evaluation.

use std::fmt::Write as _;
use std::sync::Arc;

use super::caar::robber_backup;
use super::cadr::{drunk_robber_backup, inverse_degrees};
use super::{Rounds, ValueTable};
use crate::config::{ConfigSpace, CopConfig};
use crate::error::{Error, Result};

const UNDEFINED: u32 = u32::MAX;

/// Relative gap below which two candidate values count as tied. Ties go to
/// the lexicographically smallest candidate.
pub const TIE_EPS: f64 = 1e-9;

/// Cop move as a function of the current (cops, robber) state.
#[derive(Clone, Debug)]
pub struct FeedbackPolicy {
    space: Arc<ConfigSpace>,
    next: Vec<u32>,
}

/// Adversarial robber move, defined where the robber is still free.
#[derive(Clone, Debug)]
pub struct RobberPolicy {
    space: Arc<ConfigSpace>,
    next: Vec<u32>,
}

impl FeedbackPolicy {
    pub fn space(&self) -> &Arc<ConfigSpace> {
        &self.space
    }

    /// Index of the successor configuration, if the policy is defined here.
    #[inline]
    pub fn successor(&self, ci: usize, y: usize) -> Option<usize> {
        let v = self.next[self.space.state(ci, y)];
        (v != UNDEFINED).then_some(v as usize)
    }

    pub fn get(&self, config: &CopConfig, y: usize) -> Option<CopConfig> {
        let ci = self.space.index_of(config)?;
        if y >= self.space.n() {
            return None;
        }
        self.successor(ci, y).map(|cj| self.space.config(cj))
    }

    /// States where no move is recorded (the robber wins from there).
    pub fn undefined_states(&self) -> Vec<(CopConfig, usize)> {
        let n = self.space.n();
        self.next
            .iter()
            .enumerate()
            .filter(|(_, &v)| v == UNDEFINED)
            .map(|(s, _)| (self.space.config(s / n), s % n))
            .collect()
    }

    /// CSV with header `cop1,…,copk,y,next1,…,nextk`; undefined moves leave
    /// the successor columns empty.
    pub fn to_csv(&self) -> String {
        let k = self.space.k();
        let n = self.space.n();
        let mut out = String::new();
        for i in 1..=k {
            let _ = write!(out, "cop{i},");
        }
        out.push('y');
        for i in 1..=k {
            let _ = write!(out, ",next{i}");
        }
        out.push('\n');
        for ci in 0..self.space.num_configs() {
            let cfg = self.space.config(ci);
            for y in 0..n {
                for v in cfg.cops() {
                    let _ = write!(out, "{v},");
                }
                let _ = write!(out, "{y}");
                match self.successor(ci, y) {
                    Some(cj) => self.space.config(cj).cops().iter().for_each(|v| {
                        let _ = write!(out, ",{v}");
                    }),
                    None => out.push_str(&",".repeat(k)),
                }
                out.push('\n');
            }
        }
        out
    }
}

impl RobberPolicy {
    pub fn successor(&self, ci: usize, y: usize) -> Option<usize> {
        let v = self.next[self.space.state(ci, y)];
        (v != UNDEFINED).then_some(v as usize)
    }

    pub fn get(&self, config: &CopConfig, y: usize) -> Option<usize> {
        let ci = self.space.index_of(config)?;
        (y < self.space.n()).then(|| self.successor(ci, y)).flatten()
    }
}

/// Greedy cop policy for a drunk-robber value table: at every free state the
/// lexicographically first successor whose robber-to-move value is minimal.
/// States where a cop already stands on the robber hold position.
pub fn extract_policy(table: &ValueTable<f64>) -> FeedbackPolicy {
    let space = table.space().clone();
    let n = space.n();
    let inv = inverse_degrees(space.graph());
    let c = table.values();
    let r: Vec<f64> = (0..space.num_states())
        .map(|s| drunk_robber_backup(&space, &inv, c, s / n, s % n))
        .collect();
    let mut next = vec![UNDEFINED; space.num_states()];
    for ci in 0..space.num_configs() {
        let succ = space.successors(ci);
        for y in 0..n {
            let s = space.state(ci, y);
            if space.occupied(ci, y) {
                next[s] = ci as u32;
                continue;
            }
            let best = succ.iter().map(|&cj| r[cj as usize * n + y]).fold(f64::INFINITY, f64::min);
            let slack = TIE_EPS * best.abs().max(1.0);
            next[s] = *succ
                .iter()
                .find(|&&cj| r[cj as usize * n + y] <= best + slack)
                .expect("nonempty successor list");
        }
    }
    FeedbackPolicy { space, next }
}

/// Cop and robber policies for an adversarial value table. Cop moves are
/// undefined where the value is infinite; robber moves are undefined where a
/// cop stands on the robber.
pub fn extract_adversarial_policy(table: &ValueTable<Rounds>) -> (FeedbackPolicy, RobberPolicy) {
    let space = table.space().clone();
    let n = space.n();
    let g = space.graph();
    let c = table.values();
    let r: Vec<Rounds> =
        (0..space.num_states()).map(|s| robber_backup(&space, c, s / n, s % n)).collect();
    let mut cop = vec![UNDEFINED; space.num_states()];
    let mut robber = vec![UNDEFINED; space.num_states()];
    for ci in 0..space.num_configs() {
        let succ = space.successors(ci);
        for y in 0..n {
            let s = space.state(ci, y);
            if space.occupied(ci, y) {
                cop[s] = ci as u32;
                continue;
            }
            if c[s].is_finite() {
                let best = succ.iter().map(|&cj| r[cj as usize * n + y]).min().expect("nonempty");
                cop[s] = *succ.iter().find(|&&cj| r[cj as usize * n + y] == best).expect("nonempty");
            }
            let closed = g.closed_neighbors(y);
            let best = closed.iter().map(|&z| c[ci * n + z]).max().expect("nonempty");
            robber[s] = *closed.iter().find(|&&z| c[ci * n + z] == best).expect("nonempty") as u32;
        }
    }
    (
        FeedbackPolicy { space: space.clone(), next: cop },
        RobberPolicy { space, next: robber },
    )
}

/// Expected capture time of a drunk robber under a fixed feedback policy,
/// from every state, by in-place iteration of the policy's absorbing chain.
pub fn evaluate_policy(
    policy: &FeedbackPolicy,
    tolerance: f64,
    max_sweeps: usize,
) -> Result<ValueTable<f64>> {
    let space = policy.space().clone();
    let n = space.n();
    let g = space.graph();
    let inv = inverse_degrees(g);
    for ci in 0..space.num_configs() {
        for y in 0..n {
            if !space.occupied(ci, y) && policy.successor(ci, y).is_none() {
                return Err(Error::PolicyUndefined { config: space.config(ci).cops().to_vec(), robber: y });
            }
        }
    }
    let mut v = vec![0.0; space.num_states()];
    let mut residual = f64::INFINITY;
    for _ in 0..max_sweeps {
        residual = 0.0;
        for ci in 0..space.num_configs() {
            for y in 0..n {
                if space.occupied(ci, y) {
                    continue;
                }
                let cj = policy.successor(ci, y).expect("checked above");
                let value = 1.0 + drunk_robber_backup(&space, &inv, &v, cj, y);
                let s = ci * n + y;
                residual = f64::max(residual, (value - v[s]).abs());
                v[s] = value;
            }
        }
        if residual < tolerance {
            return Ok(ValueTable::new(space, v));
        }
    }
    Err(Error::NoConvergence { sweeps: max_sweeps, residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{cycle, grid, path};
    use crate::solver::{caar_solve, cadr_solve, SolveOptions};

    #[test]
    fn cop_walks_toward_robber() {
        let g = path(5).unwrap();
        let space = ConfigSpace::new(&g, 1).unwrap();
        let sol = cadr_solve(&space, &SolveOptions::default()).unwrap();
        assert_eq!(sol.policy.get(&CopConfig::single(0), 3), Some(CopConfig::single(1)));
        assert_eq!(sol.policy.get(&CopConfig::single(4), 3), Some(CopConfig::single(3)));
        assert!((sol.values.get(&CopConfig::single(2), 3).unwrap() - 1.0).abs() < 1e-12);
        // diagonal states hold
        assert_eq!(sol.policy.get(&CopConfig::single(2), 2), Some(CopConfig::single(2)));
        assert_eq!(sol.values.get(&CopConfig::single(2), 2), Some(0.0));
    }

    #[test]
    fn evaluation_reproduces_the_table() {
        for (g, k) in [(cycle(7).unwrap(), 1), (grid(3).unwrap(), 2)] {
            let space = ConfigSpace::new(&g, k).unwrap();
            let sol = cadr_solve(&space, &SolveOptions::default()).unwrap();
            let ev = evaluate_policy(&sol.policy, 1e-12, 1_000_000).unwrap();
            assert!(ev.sup_distance(&sol.values) < 1e-8);
        }
    }

    #[test]
    fn adversarial_policy_is_undefined_on_robber_wins() {
        let g = cycle(4).unwrap();
        let sol = caar_solve(&ConfigSpace::new(&g, 1).unwrap());
        let undefined = sol.cop_policy.undefined_states();
        // cop at x wins only against a robber adjacent to it
        assert_eq!(undefined.len(), 4);
        assert!(undefined.iter().all(|(c, y)| (c.cops()[0] + 2) % 4 == *y));
        assert!(matches!(evaluate_policy(&sol.cop_policy, 1e-9, 10), Err(Error::PolicyUndefined { .. })));
        // the robber keeps its distance
        assert_eq!(sol.robber_policy.get(&CopConfig::single(1), 3), Some(3));
        assert_eq!(sol.robber_policy.get(&CopConfig::single(1), 1), None);
    }

    #[test]
    fn adversarial_policy_realises_capture_times() {
        let g = path(7).unwrap();
        let space = ConfigSpace::new(&g, 1).unwrap();
        let sol = caar_solve(&space);
        for x in 0..7 {
            for y0 in 0..7 {
                let (mut ci, mut y, mut t) = (x, y0, 0u32);
                while !space.occupied(ci, y) {
                    ci = sol.cop_policy.successor(ci, y).unwrap();
                    t += 1;
                    if space.occupied(ci, y) {
                        break;
                    }
                    y = sol.robber_policy.successor(ci, y).unwrap();
                }
                assert_eq!(Rounds::finite(t), sol.cop_turn.at(x, y0));
            }
        }
    }

    #[test]
    fn policy_csv_shape() {
        let g = path(3).unwrap();
        let space = ConfigSpace::new(&g, 1).unwrap();
        let sol = cadr_solve(&space, &SolveOptions::default()).unwrap();
        let csv = sol.policy.to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "cop1,y,next1");
        assert_eq!(lines[1], "0,0,0");
        assert_eq!(lines[2], "0,1,1");
        assert_eq!(lines.len(), 10);
        let vcsv = sol.values.to_csv(6);
        assert!(vcsv.starts_with("cop1,y,value\n0,0,0\n0,1,1\n0,2,"));
        let caar = caar_solve(&ConfigSpace::new(&cycle(4).unwrap(), 1).unwrap());
        assert!(caar.cop_turn.to_csv(6).contains("0,2,inf"));
        assert!(caar.cop_policy.to_csv().contains("0,2,\n"));
    }
}
