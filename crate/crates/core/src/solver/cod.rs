//! Cop number search and the cost of drunkenness `ct / dct`.

use serde::Serialize;

use super::caar::{caar_solve, CaarSolution};
use super::cadr::cadr_solve;
use super::{Rounds, SolveOptions};
use crate::config::{state_count, ConfigSpace, CopConfig, DEFAULT_STATE_CAP};
use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CodOptions {
    /// Largest cop count tried when searching for the cop number.
    pub max_k: usize,
    pub state_cap: u128,
}

impl Default for CodOptions {
    fn default() -> Self {
        CodOptions { max_k: 3, state_cap: DEFAULT_STATE_CAP }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CostOfDrunkenness {
    pub cop_number: usize,
    pub ct: Rounds,
    pub dct: f64,
    /// `ct / dct`.
    pub ratio: f64,
    pub ct_start: CopConfig,
    pub dct_start: CopConfig,
    pub sweeps: usize,
}

fn search(g: &Graph, opts: &CodOptions) -> Result<(usize, CaarSolution)> {
    if opts.max_k == 0 {
        return Err(Error::InvalidParameter("cop count cap must be at least 1".into()));
    }
    for k in 1..=opts.max_k {
        let states = state_count(g.n(), k);
        if states > opts.state_cap {
            return Err(Error::StateSpaceTooLarge { states, cap: opts.state_cap });
        }
        let space = ConfigSpace::with_cap(g, k, opts.state_cap)?;
        let sol = caar_solve(&space);
        if sol.capture_time().is_finite() {
            return Ok((k, sol));
        }
    }
    Err(Error::CopNumberAboveCap { max_k: opts.max_k })
}

/// Least `k` for which `k` cops capture an adversarial robber.
pub fn cop_number(g: &Graph, opts: &CodOptions) -> Result<usize> {
    search(g, opts).map(|(k, _)| k)
}

/// `F(G) = ct(G) / dct(G)`, both at the cop number.
pub fn cost_of_drunkenness(
    g: &Graph,
    solve: &SolveOptions,
    opts: &CodOptions,
) -> Result<CostOfDrunkenness> {
    if g.n() < 2 {
        return Err(Error::InvalidParameter("cost of drunkenness needs at least 2 vertices".into()));
    }
    solve.check()?;
    let (k, caar) = search(g, opts)?;
    let (ct_start, ct) = caar.optimal_start();
    let drunk = cadr_solve(caar.cop_turn.space(), solve)?;
    let (dct_start, dct) = drunk.optimal_start();
    Ok(CostOfDrunkenness {
        cop_number: k,
        ct,
        dct,
        ratio: ct.as_f64() / dct,
        ct_start,
        dct_start,
        sweeps: drunk.sweeps,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, cycle, grid, path};

    #[test]
    fn cop_numbers() {
        let opts = CodOptions::default();
        assert_eq!(cop_number(&path(6).unwrap(), &opts).unwrap(), 1);
        assert_eq!(cop_number(&cycle(5).unwrap(), &opts).unwrap(), 2);
        assert_eq!(cop_number(&grid(3).unwrap(), &opts).unwrap(), 2);
        assert_eq!(cop_number(&complete(4).unwrap(), &opts).unwrap(), 1);
        let capped = CodOptions { max_k: 1, ..opts };
        assert_eq!(cop_number(&cycle(5).unwrap(), &capped), Err(Error::CopNumberAboveCap { max_k: 1 }));
    }

    #[test]
    fn path3_ratio() {
        let f = cost_of_drunkenness(&path(3).unwrap(), &SolveOptions::default(), &CodOptions::default())
            .unwrap();
        assert_eq!(f.cop_number, 1);
        assert_eq!(f.ct, Rounds::finite(1));
        assert!((f.dct - 2.0 / 3.0).abs() < 1e-9);
        assert!((f.ratio - 1.5).abs() < 1e-9);
        assert_eq!(f.ct_start, CopConfig::single(1));
    }

    #[test]
    fn cap_is_checked_before_search() {
        let opts = CodOptions { max_k: 3, state_cap: 50 };
        assert!(matches!(
            cost_of_drunkenness(&cycle(8).unwrap(), &SolveOptions::default(), &opts),
            Err(Error::StateSpaceTooLarge { .. })
        ));
    }

    #[test]
    fn single_vertex_is_rejected() {
        assert!(cost_of_drunkenness(&path(1).unwrap(), &SolveOptions::default(), &CodOptions::default())
            .is_err());
    }
}
