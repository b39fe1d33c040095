//! Independent reference computations shared by the integration tests.
#![allow(dead_code)]

use std::collections::HashMap;

use pursuit_core::graph::{random_connected, Graph};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn seeded_graph(seed: u64, n: usize, p: f64) -> Graph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_connected(n, p, &mut rng).unwrap()
}

pub fn random_permutation(seed: u64, n: usize) -> Vec<usize> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    perm
}

fn closed(g: &Graph, v: usize) -> Vec<usize> {
    let mut out = vec![v];
    out.extend_from_slice(g.neighbors(v));
    out
}

/// Single-cop game tree searched to `horizon` cop moves. Entry `x * n + y`
/// is the game length with the cop to move, `None` if the robber survives
/// the whole horizon.
pub fn minimax_capture(g: &Graph, horizon: u32) -> Vec<Option<u32>> {
    struct Search<'a> {
        g: &'a Graph,
        memo: HashMap<(bool, usize, usize, u32), Option<u32>>,
    }
    impl Search<'_> {
        fn cop(&mut self, x: usize, y: usize, h: u32) -> Option<u32> {
            if x == y {
                return Some(0);
            }
            if h == 0 {
                return None;
            }
            if let Some(&v) = self.memo.get(&(true, x, y, h)) {
                return v;
            }
            let mut best: Option<u32> = None;
            for x2 in closed(self.g, x) {
                if let Some(v) = self.robber(x2, y, h - 1) {
                    best = Some(best.map_or(v + 1, |b| b.min(v + 1)));
                }
            }
            self.memo.insert((true, x, y, h), best);
            best
        }

        fn robber(&mut self, x: usize, y: usize, h: u32) -> Option<u32> {
            if x == y {
                return Some(0);
            }
            if let Some(&v) = self.memo.get(&(false, x, y, h)) {
                return v;
            }
            let mut worst = Some(0);
            for y2 in closed(self.g, y) {
                worst = match (worst, self.cop(x, y2, h)) {
                    (Some(a), Some(b)) => Some(a.max(b)),
                    _ => None,
                };
            }
            self.memo.insert((false, x, y, h), worst);
            worst
        }
    }
    let n = g.n();
    let mut s = Search { g, memo: HashMap::new() };
    (0..n * n).map(|s_| s.cop(s_ / n, s_ % n, horizon)).collect()
}

/// Dense Gaussian elimination with partial pivoting.
pub fn solve_dense(mut a: Vec<Vec<f64>>, mut b: Vec<f64>) -> Vec<f64> {
    let m = b.len();
    for col in 0..m {
        let piv = (col..m)
            .max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs()))
            .unwrap();
        a.swap(col, piv);
        b.swap(col, piv);
        let d = a[col][col];
        assert!(d.abs() > 1e-14, "singular system");
        for row in col + 1..m {
            let f = a[row][col] / d;
            if f != 0.0 {
                for c in col..m {
                    a[row][c] -= f * a[col][c];
                }
                b[row] -= f * b[col];
            }
        }
    }
    let mut x = vec![0.0; m];
    for row in (0..m).rev() {
        let s: f64 = (row + 1..m).map(|c| a[row][c] * x[c]).sum();
        x[row] = (b[row] - s) / a[row][row];
    }
    x
}

/// Optimal single-cop values against a drunk robber by policy iteration,
/// each policy evaluated by an exact linear solve. Entry `x * n + y` is the
/// value with the cop to move.
pub fn policy_iteration_values(g: &Graph) -> Vec<f64> {
    let n = g.n();
    let dist: Vec<Vec<usize>> = (0..n).map(|v| g.distances_from(v)).collect();
    // chase along a shortest path: the distance never grows
    let mut policy: Vec<usize> = (0..n * n)
        .map(|s| {
            let (x, y) = (s / n, s % n);
            if x == y {
                return x;
            }
            closed(g, x).into_iter().filter(|&z| dist[z][y] < dist[x][y]).min().unwrap()
        })
        .collect();
    let q = |v: &[f64], x2: usize, y: usize| -> f64 {
        if x2 == y {
            return 1.0;
        }
        let nb = g.neighbors(y);
        1.0 + nb.iter().map(|&z| v[x2 * n + z]).sum::<f64>() / nb.len() as f64
    };
    loop {
        let mut a = vec![vec![0.0; n * n]; n * n];
        let mut b = vec![0.0; n * n];
        for s in 0..n * n {
            let (x, y) = (s / n, s % n);
            a[s][s] = 1.0;
            if x == y {
                continue;
            }
            b[s] = 1.0;
            let x2 = policy[s];
            if x2 != y {
                let nb = g.neighbors(y);
                for &z in nb {
                    a[s][x2 * n + z] -= 1.0 / nb.len() as f64;
                }
            }
        }
        let v = solve_dense(a, b);
        let mut stable = true;
        for s in 0..n * n {
            let (x, y) = (s / n, s % n);
            if x == y {
                continue;
            }
            let current = q(&v, policy[s], y);
            for x2 in closed(g, x) {
                if q(&v, x2, y) < current - 1e-12 {
                    policy[s] = x2;
                    stable = false;
                    break;
                }
            }
        }
        if stable {
            return v;
        }
    }
}

/// `min_x` of the uniform average over robber starts.
pub fn best_average(values: &[f64], n: usize) -> f64 {
    values.chunks(n).map(|row| row.iter().sum::<f64>() / n as f64).fold(f64::INFINITY, f64::min)
}
