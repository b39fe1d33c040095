//! The drunk robber as an absorbing Markov chain on `V ∪ {capture}`.
//!
//! States `0..n` are robber positions and state `n` is capture. Distributions
//! are row vectors and evolve as `π(t) = π(t-1) · P̄(x_t)`, where `x_t` is the
//! cop configuration chosen at round `t`. The matrices here are dense and
//! meant for inspection; strategy evaluation steps the chain directly from
//! adjacency lists.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::config::CopConfig;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::solver::Rounds;

/// Uncaptured mass at or below which a strategy counts as terminated.
pub const RESIDUAL_TOL: f64 = 1e-12;

/// Row-stochastic `(n+1) × (n+1)` matrix; row `n` is absorbing.
#[derive(Clone, Debug, PartialEq)]
pub struct TransitionMatrix {
    dim: usize,
    data: Vec<f64>,
}

impl TransitionMatrix {
    fn zeros(dim: usize) -> Self {
        TransitionMatrix { dim, data: vec![0.0; dim * dim] }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.data[i * self.dim + j]
    }

    fn set(&mut self, i: usize, j: usize, v: f64) {
        self.data[i * self.dim + j] = v;
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.data[i * self.dim..(i + 1) * self.dim]
    }

    pub fn from_rows(rows: &[Vec<f64>]) -> Result<Self> {
        let dim = rows.len();
        let mut m = Self::zeros(dim);
        for (i, r) in rows.iter().enumerate() {
            if r.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: r.len() });
            }
            m.data[i * dim..(i + 1) * dim].copy_from_slice(r);
        }
        Ok(m)
    }

    pub fn matmul(&self, other: &TransitionMatrix) -> Result<TransitionMatrix> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: other.dim });
        }
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for l in 0..d {
                let a = self.get(i, l);
                if a != 0.0 {
                    for j in 0..d {
                        out.data[i * d + j] += a * other.get(l, j);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn max_row_sum_error(&self) -> f64 {
        (0..self.dim)
            .map(|i| (self.row(i).iter().sum::<f64>() - 1.0).abs())
            .fold(0.0, f64::max)
    }
}

/// Probability row over `V ∪ {capture}`.
#[derive(Clone, Debug, PartialEq)]
pub struct DistVector(Vec<f64>);

impl DistVector {
    pub fn new(entries: Vec<f64>) -> Result<Self> {
        if entries.iter().any(|&p| !(p >= 0.0)) {
            return Err(Error::InvalidParameter("distribution has a negative entry".into()));
        }
        let total: f64 = entries.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!("distribution sums to {total}")));
        }
        Ok(DistVector(entries))
    }

    /// `(1/n, …, 1/n, 0)`: robber placed uniformly, not yet captured.
    pub fn uniform_placement(n: usize) -> Self {
        let mut v = vec![1.0 / n as f64; n + 1];
        v[n] = 0.0;
        DistVector(v)
    }

    /// All mass in the capture state.
    pub fn captured(n: usize) -> Self {
        let mut v = vec![0.0; n + 1];
        v[n] = 1.0;
        DistVector(v)
    }

    pub fn entries(&self) -> &[f64] {
        &self.0
    }

    pub fn captured_mass(&self) -> f64 {
        *self.0.last().expect("nonempty")
    }

    /// Mass on the transient states, summed directly rather than as
    /// `1 - captured` so that exact termination reads as exactly zero.
    pub fn residual(&self) -> f64 {
        self.0[..self.0.len() - 1].iter().sum()
    }
}

fn require_walkable(g: &Graph) -> Result<()> {
    if g.n() < 2 {
        return Err(Error::InvalidGraph(
            "the robber's random walk needs at least two vertices".into(),
        ));
    }
    Ok(())
}

fn check_config(g: &Graph, x: &CopConfig) -> Result<()> {
    if x.k() == 0 {
        return Err(Error::InvalidStrategy("configuration has no cops".into()));
    }
    if let Some(&v) = x.cops().iter().find(|&&v| v >= g.n()) {
        return Err(Error::InvalidStrategy(format!("cop vertex {v} out of range")));
    }
    Ok(())
}

/// `P̄`: uniform steps over open neighbourhoods, capture state absorbing.
pub fn base_transition(g: &Graph) -> Result<TransitionMatrix> {
    require_walkable(g)?;
    let n = g.n();
    let mut m = TransitionMatrix::zeros(n + 1);
    for y in 0..n {
        let p = 1.0 / g.degree(y) as f64;
        for &z in g.neighbors(y) {
            m.set(y, z, p);
        }
    }
    m.set(n, n, 1.0);
    Ok(m)
}

/// `P̄(x)`: a robber standing on a cop vertex is captured by the cop move, and
/// a robber step onto a cop vertex is a capture.
pub fn cop_modified_transition(g: &Graph, x: &CopConfig) -> Result<TransitionMatrix> {
    require_walkable(g)?;
    check_config(g, x)?;
    let n = g.n();
    let mut m = TransitionMatrix::zeros(n + 1);
    for y in 0..n {
        if x.contains(y) {
            m.set(y, n, 1.0);
            continue;
        }
        let p = 1.0 / g.degree(y) as f64;
        for &z in g.neighbors(y) {
            let col = if x.contains(z) { n } else { z };
            m.set(y, col, m.get(y, col) + p);
        }
    }
    m.set(n, n, 1.0);
    Ok(m)
}

/// `P̂(x)`: the identity with each cop row moved to the capture column.
pub fn placement_matrix(g: &Graph, x: &CopConfig) -> Result<TransitionMatrix> {
    check_config(g, x)?;
    let n = g.n();
    let mut m = TransitionMatrix::zeros(n + 1);
    for y in 0..=n {
        let col = if y < n && x.contains(y) { n } else { y };
        m.set(y, col, 1.0);
    }
    Ok(m)
}

/// `π · M`.
pub fn evolve(pi: &DistVector, m: &TransitionMatrix) -> Result<DistVector> {
    if pi.0.len() != m.dim {
        return Err(Error::DimensionMismatch { expected: m.dim, got: pi.0.len() });
    }
    let d = m.dim;
    let mut out = vec![0.0; d];
    for (i, &p) in pi.0.iter().enumerate() {
        if p != 0.0 {
            for (o, &mij) in out.iter_mut().zip(m.row(i)) {
                *o += p * mij;
            }
        }
    }
    Ok(DistVector(out))
}

/// One round of the chain under cops `x`, driven by adjacency lists.
/// Equivalent to `evolve(pi, cop_modified_transition(g, x))`.
fn step(g: &Graph, pi: &[f64], occupied: &[bool], out: &mut [f64]) {
    let n = g.n();
    out.fill(0.0);
    out[n] = pi[n];
    for y in 0..n {
        let mass = pi[y];
        if mass == 0.0 {
            continue;
        }
        if occupied[y] {
            out[n] += mass;
            continue;
        }
        let share = mass / g.degree(y) as f64;
        for &z in g.neighbors(y) {
            out[if occupied[z] { n } else { z }] += share;
        }
    }
}

/// Open-loop cop strategy `(x_0, x_1, …, x_s)`; after `x_s` the cops stay put.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedStrategy(Vec<CopConfig>);

impl FixedStrategy {
    /// Validates vertex ranges, a constant cop count and that every cop moves
    /// within its closed neighbourhood between consecutive rounds.
    pub fn new(g: &Graph, configs: Vec<CopConfig>) -> Result<Self> {
        let first = configs
            .first()
            .ok_or_else(|| Error::InvalidStrategy("strategy is empty".into()))?;
        let k = first.k();
        for (t, x) in configs.iter().enumerate() {
            check_config(g, x)?;
            if x.k() != k {
                return Err(Error::InvalidStrategy(format!(
                    "round {t} has {} cops, expected {k}",
                    x.k()
                )));
            }
            if t > 0 && !x.is_move_from(&configs[t - 1], g) {
                return Err(Error::InvalidStrategy(format!(
                    "round {t}: {x} is not reachable from {} in one move",
                    configs[t - 1]
                )));
            }
        }
        Ok(FixedStrategy(configs))
    }

    /// Single cop walking `0, 1, …, n-1` along a path.
    pub fn path_sweep(n: usize) -> Vec<CopConfig> {
        (0..n).map(CopConfig::single).collect()
    }

    /// Two cops starting on adjacent vertices `0` and `n-1` of a cycle and
    /// walking in opposite directions until they meet.
    pub fn cycle_opposite_sweep(n: usize) -> Vec<CopConfig> {
        let mut out = Vec::new();
        let (mut a, mut b) = (0, n - 1);
        loop {
            out.push(CopConfig::new(vec![a, b]));
            if b <= a + 1 {
                break;
            }
            a += 1;
            b -= 1;
        }
        out
    }

    pub fn configs(&self) -> &[CopConfig] {
        &self.0
    }

    pub fn k(&self) -> usize {
        self.0[0].k()
    }

    /// Configuration at round `t`, holding the last one.
    pub fn at(&self, t: usize) -> &CopConfig {
        &self.0[t.min(self.0.len() - 1)]
    }

    /// Reads one configuration per line (space-separated vertices); round `t`
    /// is on line `t + 1`. Blank lines and `#` comments are skipped.
    pub fn parse(g: &Graph, text: &str) -> Result<Self> {
        let mut configs = Vec::new();
        for (i, l) in text.lines().enumerate() {
            let l = l.trim();
            if l.is_empty() || l.starts_with('#') {
                continue;
            }
            let cops = l
                .split_whitespace()
                .map(|tok| {
                    tok.parse::<usize>().map_err(|_| Error::Parse {
                        line: i + 1,
                        msg: format!("bad vertex `{tok}`"),
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            configs.push(CopConfig::new(cops));
        }
        Self::new(g, configs)
    }

    pub fn to_text(&self) -> String {
        self.0.iter().map(|c| format!("{c}\n")).collect()
    }
}

/// Per-round capture masses `q_t` of a fixed strategy.
#[derive(Clone, Debug, PartialEq)]
pub struct CaptureDistribution {
    pub per_round: Vec<f64>,
    pub residual: f64,
}

impl CaptureDistribution {
    pub fn expected_time(&self) -> f64 {
        self.per_round.iter().enumerate().map(|(t, q)| t as f64 * q).sum()
    }

    /// CSV with header `t,q_t,cumulative`.
    pub fn to_csv(&self, digits: usize) -> String {
        let mut out = String::from("t,q_t,cumulative\n");
        let mut cum = 0.0;
        for (t, &q) in self.per_round.iter().enumerate() {
            cum += q;
            let _ = writeln!(
                out,
                "{t},{},{}",
                crate::fmt::sig(q, digits),
                crate::fmt::sig(cum, digits)
            );
        }
        out
    }
}

/// `10 · D · Δ^D` capped at one million.
pub fn default_max_rounds(g: &Graph) -> usize {
    let bound = 10.0 * g.stationary_cop_bound();
    if bound.is_finite() && bound < 1e6 {
        (bound.ceil() as usize).max(1)
    } else {
        1_000_000
    }
}

/// Capture probabilities per round for a uniformly placed drunk robber.
///
/// Round 0 is the placement; rounds `1..=s` follow the strategy and later
/// rounds hold `x_s`. Stops once the uncaptured mass drops to
/// [`RESIDUAL_TOL`]; if that has not happened after `max_rounds` rounds the
/// result is [`Error::Nonterminating`].
pub fn fixed_strategy_capture_distribution(
    g: &Graph,
    s: &FixedStrategy,
    max_rounds: usize,
) -> Result<CaptureDistribution> {
    for x in s.configs() {
        check_config(g, x)?;
    }
    let n = g.n();
    if n == 1 {
        return Ok(CaptureDistribution { per_round: vec![1.0], residual: 0.0 });
    }
    let occupancy = |x: &CopConfig| {
        let mut occ = vec![false; n];
        x.cops().iter().for_each(|&v| occ[v] = true);
        occ
    };
    let mut pi = DistVector::uniform_placement(n).0;
    let occ0 = occupancy(s.at(0));
    for y in 0..n {
        if occ0[y] {
            pi[n] += pi[y];
            pi[y] = 0.0;
        }
    }
    let mut per_round = vec![pi[n]];
    let mut next = vec![0.0; n + 1];
    let mut residual: f64 = pi[..n].iter().sum();
    let mut occ = occ0;
    let mut t = 0;
    while residual > RESIDUAL_TOL {
        if t >= max_rounds {
            let dist = CaptureDistribution { per_round, residual };
            return Err(Error::Nonterminating {
                rounds: max_rounds,
                residual,
                partial: dist.expected_time(),
            });
        }
        t += 1;
        if t < s.configs().len() {
            occ = occupancy(s.at(t));
        }
        let before = pi[n];
        step(g, &pi, &occ, &mut next);
        std::mem::swap(&mut pi, &mut next);
        per_round.push(pi[n] - before);
        residual = pi[..n].iter().sum();
    }
    Ok(CaptureDistribution { per_round, residual })
}

/// `E T = Σ t · q_t` for a fixed strategy against a drunk robber.
pub fn fixed_strategy_expected_time(g: &Graph, s: &FixedStrategy, max_rounds: usize) -> Result<f64> {
    Ok(fixed_strategy_capture_distribution(g, s, max_rounds)?.expected_time())
}

/// Rounds an omniscient invisible robber survives against a deterministic
/// fixed strategy, or [`Rounds::INFINITE`] if it can evade forever.
///
/// Tracks the set of vertices where an uncaught robber could be. The robber
/// may stay put or step to a neighbour. Capture can happen in the cop phase
/// or the robber phase of a round; the returned value is the first round
/// after which no uncaught position remains.
pub fn adversarial_survival_time(g: &Graph, s: &FixedStrategy) -> Result<Rounds> {
    for x in s.configs() {
        check_config(g, x)?;
    }
    let n = g.n();
    let x0 = s.at(0);
    let mut alive: Vec<bool> = (0..n).map(|v| !x0.contains(v)).collect();
    if !alive.contains(&true) {
        return Ok(Rounds::finite(0));
    }
    let mut seen: HashSet<Vec<bool>> = HashSet::new();
    let mut next = vec![false; n];
    for t in 1.. {
        let x = s.at(t);
        for &c in x.cops() {
            alive[c] = false;
        }
        if !alive.contains(&true) {
            return Ok(Rounds::finite(t as u32));
        }
        next.fill(false);
        for y in (0..n).filter(|&y| alive[y]) {
            next[y] = true;
            for &z in g.neighbors(y) {
                next[z] = true;
            }
        }
        for &c in x.cops() {
            next[c] = false;
        }
        std::mem::swap(&mut alive, &mut next);
        if !alive.contains(&true) {
            return Ok(Rounds::finite(t as u32));
        }
        if t + 1 >= s.configs().len() && !seen.insert(alive.clone()) {
            return Ok(Rounds::INFINITE);
        }
    }
    unreachable!()
}
