//! Seeded simulation of pursuit games.
//!
//! Trial `i` draws from a ChaCha8 generator seeded with the master seed and
//! switched to stream `i`, so a report depends only on the inputs and the
//! seed, never on scheduling.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::chain::FixedStrategy;
use crate::config::CopConfig;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::par::{self, Exec};
use crate::solver::FeedbackPolicy;

pub const RNG_NAME: &str = "ChaCha8";

/// Censoring threshold used when none is given: `100 · D · Δ^D`, capped.
pub fn default_censor_rounds(g: &Graph) -> u64 {
    let bound = 100.0 * g.stationary_cop_bound();
    if bound.is_finite() && bound < 1e7 {
        (bound.ceil() as u64).max(1)
    } else {
        10_000_000
    }
}

/// Master seed from which per-trial streams are derived.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeedSpec {
    pub seed: u64,
}

impl SeedSpec {
    pub fn new(seed: u64) -> Self {
        SeedSpec { seed }
    }

    pub fn stream(&self, trial: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(trial);
        rng
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SimOptions {
    pub trials: usize,
    pub seed: SeedSpec,
    /// Trials still running after this many rounds are censored. `None`
    /// means [`default_censor_rounds`].
    pub max_rounds: Option<u64>,
    pub exec: Exec,
}

impl SimOptions {
    pub fn new(trials: usize, seed: u64) -> Self {
        SimOptions { trials, seed: SeedSpec::new(seed), max_rounds: None, exec: Exec::default() }
    }

    fn censor(&self, g: &Graph) -> u64 {
        self.max_rounds.unwrap_or_else(|| default_censor_rounds(g))
    }

    fn check(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::InvalidParameter("at least one trial is required".into()));
        }
        if self.max_rounds == Some(0) {
            return Err(Error::InvalidParameter("max rounds must be positive".into()));
        }
        Ok(())
    }
}

/// Summary of simulated capture times. `mean`, `stderr`, `max` and
/// `histogram` cover the uncensored trials; `histogram[t]` counts trials
/// that ended at round `t`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimReport {
    pub trials: usize,
    pub mean: f64,
    /// Sample standard deviation over `√completed`.
    pub stderr: f64,
    pub max: u64,
    pub censored: usize,
    pub histogram: Vec<u64>,
    pub seed: u64,
    pub rng: String,
}

impl SimReport {
    fn from_outcomes(outcomes: &[Option<u64>], seed: SeedSpec) -> Self {
        let times: Vec<u64> = outcomes.iter().flatten().copied().collect();
        let censored = outcomes.len() - times.len();
        let max = times.iter().copied().max().unwrap_or(0);
        let mut histogram = vec![0u64; if times.is_empty() { 0 } else { max as usize + 1 }];
        for &t in &times {
            histogram[t as usize] += 1;
        }
        let m = times.len() as f64;
        let mean = times.iter().map(|&t| t as f64).sum::<f64>() / m;
        let stderr = if times.len() > 1 {
            let ss: f64 = times.iter().map(|&t| (t as f64 - mean).powi(2)).sum();
            (ss / (m - 1.0)).sqrt() / m.sqrt()
        } else {
            0.0
        };
        SimReport {
            trials: outcomes.len(),
            mean,
            stderr,
            max,
            censored,
            histogram,
            seed: seed.seed,
            rng: RNG_NAME.to_string(),
        }
    }

    pub fn completed(&self) -> usize {
        self.trials - self.censored
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// How the cops move against the drunk robber.
#[derive(Clone, Copy, Debug)]
pub enum Pursuer<'a> {
    /// Start at `start`, then follow the policy.
    Feedback { policy: &'a FeedbackPolicy, start: &'a CopConfig },
    Fixed(&'a FixedStrategy),
}

/// Drunk robber placed uniformly at random, then each round the cops move
/// and the robber steps to a uniform random neighbour; capture is checked
/// after every move.
pub fn simulate_drunk_pursuit(g: &Graph, pursuer: Pursuer<'_>, opts: &SimOptions) -> Result<SimReport> {
    opts.check()?;
    let n = g.n();
    let censor = opts.censor(g);
    let outcomes = match pursuer {
        Pursuer::Feedback { policy, start } => {
            let space = policy.space();
            if space.n() != n {
                return Err(Error::DimensionMismatch { expected: n, got: space.n() });
            }
            let start_ci = space
                .index_of(start)
                .ok_or_else(|| Error::InvalidParameter(format!("start {start} is not a configuration")))?;
            par::map_indices(opts.exec, opts.trials, |i| {
                let mut rng = opts.seed.stream(i as u64);
                let mut y = rng.random_range(0..n);
                let mut ci = start_ci;
                let mut t = 0;
                while !space.occupied(ci, y) {
                    if t == censor {
                        return Ok(None);
                    }
                    t += 1;
                    let cj = policy.successor(ci, y).ok_or_else(|| Error::PolicyUndefined {
                        config: space.config(ci).cops().to_vec(),
                        robber: y,
                    })?;
                    debug_assert!(space.config(cj).is_move_from(&space.config(ci), g));
                    ci = cj;
                    if space.occupied(ci, y) {
                        break;
                    }
                    y = drunk_step(g, y, &mut rng);
                }
                Ok(Some(t))
            })
        }
        Pursuer::Fixed(s) => {
            let occupancy: Vec<Vec<bool>> = s
                .configs()
                .iter()
                .map(|x| {
                    let mut occ = vec![false; n];
                    for &v in x.cops() {
                        if v >= n {
                            return Err(Error::InvalidStrategy(format!("vertex {v} out of range")));
                        }
                        occ[v] = true;
                    }
                    Ok(occ)
                })
                .collect::<Result<_>>()?;
            let last = occupancy.len() - 1;
            par::map_indices(opts.exec, opts.trials, |i| {
                let mut rng = opts.seed.stream(i as u64);
                let mut y = rng.random_range(0..n);
                let mut t = 0u64;
                let occ = |t: u64| &occupancy[(t as usize).min(last)];
                while !occ(t)[y] {
                    if t == censor {
                        return Ok(None);
                    }
                    t += 1;
                    if occ(t)[y] {
                        break;
                    }
                    y = drunk_step(g, y, &mut rng);
                }
                Ok(Some(t))
            })
        }
    };
    let outcomes = outcomes.into_iter().collect::<Result<Vec<_>>>()?;
    Ok(SimReport::from_outcomes(&outcomes, opts.seed))
}

fn drunk_step(g: &Graph, y: usize, rng: &mut ChaCha8Rng) -> usize {
    let nb = g.neighbors(y);
    let z = nb[rng.random_range(0..nb.len())];
    debug_assert!(g.has_edge(y, z));
    z
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Evader {
    /// Starts as far as possible from the nearest cop and then always moves
    /// within its closed neighbourhood to the vertex farthest from the
    /// nearest cop; ties go to the lowest index.
    MaxDistanceGreedy,
    /// Starts uniformly at random and steps to a uniform random neighbour.
    UniformRandom,
}

/// Cops start on `k` distinct uniformly chosen vertices and each takes an
/// independent uniform step in its closed neighbourhood every round.
pub fn simulate_random_cops(g: &Graph, k: usize, evader: Evader, opts: &SimOptions) -> Result<SimReport> {
    opts.check()?;
    let n = g.n();
    if k == 0 || k > n {
        return Err(Error::InvalidParameter(format!("need 1 ≤ k ≤ {n} cops, got {k}")));
    }
    let censor = opts.censor(g);
    let dist = match evader {
        Evader::MaxDistanceGreedy => g.all_pairs_distances(),
        Evader::UniformRandom => Vec::new(),
    };
    let closed: Vec<Vec<usize>> = (0..n).map(|v| g.closed_neighbors(v)).collect();
    let nearest = |cops: &[usize], v: usize| cops.iter().map(|&c| dist[c * n + v]).min().unwrap_or(0);
    let outcomes = par::map_indices(opts.exec, opts.trials, |i| {
        let mut rng = opts.seed.stream(i as u64);
        let mut cops = rand::seq::index::sample(&mut rng, n, k).into_vec();
        let mut y = match evader {
            Evader::MaxDistanceGreedy => (0..n).rev().max_by_key(|&v| nearest(&cops, v)).unwrap_or(0),
            Evader::UniformRandom => rng.random_range(0..n),
        };
        let mut t = 0;
        while !cops.contains(&y) {
            if t == censor {
                return None;
            }
            t += 1;
            for c in cops.iter_mut() {
                let nb = &closed[*c];
                let next = nb[rng.random_range(0..nb.len())];
                debug_assert!(next == *c || g.has_edge(*c, next));
                *c = next;
            }
            if cops.contains(&y) {
                break;
            }
            y = match evader {
                Evader::MaxDistanceGreedy => {
                    closed[y].iter().rev().copied().max_by_key(|&v| nearest(&cops, v)).unwrap_or(y)
                }
                Evader::UniformRandom => drunk_step(g, y, &mut rng),
            };
        }
        Some(t)
    });
    Ok(SimReport::from_outcomes(&outcomes, opts.seed))
}

/// Fraction of `n`-step ±1 walks whose position ever exceeds
/// `c · √(n ln n)` in absolute value.
pub fn walk_deviation_check(n: usize, c: f64, trials: usize, seed: u64, exec: Exec) -> Result<f64> {
    if n < 2 || !(c > 0.0) || trials == 0 {
        return Err(Error::InvalidParameter("need n ≥ 2, c > 0 and at least one trial".into()));
    }
    let threshold = c * (n as f64 * (n as f64).ln()).sqrt();
    if threshold >= n as f64 {
        return Ok(0.0);
    }
    let seed = SeedSpec::new(seed);
    let hits = par::map_indices(exec, trials, |i| {
        let mut rng = seed.stream(i as u64);
        let mut x: i64 = 0;
        let mut bits = 0u64;
        for step in 0..n {
            if step % 64 == 0 {
                bits = rng.random();
            }
            x += if bits & 1 == 1 { 1 } else { -1 };
            bits >>= 1;
            if x.unsigned_abs() as f64 > threshold {
                return true;
            }
        }
        false
    });
    Ok(hits.iter().filter(|&&h| h).count() as f64 / trials as f64)
}
