//! Game values for cops against an adversarial robber (exact fixpoint) and
//! against a drunk robber (value iteration), their feedback policies, and
//! the cost of drunkenness.

mod caar;
mod cadr;
mod cod;
mod policy;
mod table;

use std::fmt;

use serde::{Deserialize, Serialize, Serializer};

pub use caar::{caar_solve, caar_solve_with, capture_time, CaarSolution};
pub use cadr::{cadr_solve, drunk_capture_time, CadrIteration, CadrSolution};
pub use cod::{cop_number, cost_of_drunkenness, CodOptions, CostOfDrunkenness};
pub use policy::{
    evaluate_policy, extract_adversarial_policy, extract_policy, FeedbackPolicy, RobberPolicy,
};
pub use table::{TableValue, ValueTable};

use crate::par::Exec;

/// A number of rounds, or [`Rounds::INFINITE`] when the robber evades
/// forever. Adding to the sentinel saturates.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rounds(u32);

impl Rounds {
    pub const INFINITE: Rounds = Rounds(u32::MAX);
    pub const ZERO: Rounds = Rounds(0);

    pub fn finite(v: u32) -> Self {
        assert!(v != u32::MAX, "round count overflows");
        Rounds(v)
    }

    pub fn get(self) -> Option<u32> {
        self.is_finite().then_some(self.0)
    }

    pub fn is_finite(self) -> bool {
        self != Self::INFINITE
    }

    /// One more round; the sentinel stays infinite.
    #[inline]
    pub fn succ(self) -> Self {
        if self.is_finite() {
            Rounds::finite(self.0 + 1)
        } else {
            self
        }
    }

    pub fn as_f64(self) -> f64 {
        self.get().map_or(f64::INFINITY, f64::from)
    }
}

impl fmt::Display for Rounds {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.get() {
            Some(v) => write!(f, "{v}"),
            None => f.write_str("inf"),
        }
    }
}

impl Serialize for Rounds {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.get() {
            Some(v) => s.serialize_u32(v),
            None => s.serialize_str("inf"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Scheme {
    /// Every sweep reads only the previous table.
    Jacobi,
    /// In-place updates in (configuration, robber) ascending order.
    GaussSeidel,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolveOptions {
    pub scheme: Scheme,
    /// Stop once a sweep changes no entry by this much or more.
    pub tolerance: f64,
    pub max_sweeps: usize,
    pub exec: Exec,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            scheme: Scheme::GaussSeidel,
            tolerance: 1e-10,
            max_sweeps: 1_000_000,
            exec: Exec::default(),
        }
    }
}

impl SolveOptions {
    pub fn jacobi() -> Self {
        SolveOptions { scheme: Scheme::Jacobi, ..Default::default() }
    }

    pub(crate) fn check(&self) -> crate::Result<()> {
        if !(self.tolerance > 0.0) {
            return Err(crate::Error::InvalidParameter("tolerance must be positive".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounds_sentinel_saturates() {
        assert_eq!(Rounds::INFINITE.succ(), Rounds::INFINITE);
        assert_eq!(Rounds::finite(3).succ(), Rounds::finite(4));
        assert!(Rounds::finite(1_000_000) < Rounds::INFINITE);
        assert_eq!(Rounds::INFINITE.to_string(), "inf");
        assert_eq!(Rounds::INFINITE.get(), None);
        assert_eq!(Rounds::INFINITE.as_f64(), f64::INFINITY);
    }

    #[test]
    #[should_panic]
    fn rounds_rejects_sentinel_value() {
        let _ = Rounds::finite(u32::MAX);
    }
}
