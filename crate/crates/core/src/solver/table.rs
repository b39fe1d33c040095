use std::fmt::Write as _;
use std::sync::Arc;

use super::Rounds;
use crate::config::{ConfigSpace, CopConfig};

/// Values indexed by (cop configuration, robber vertex).
#[derive(Clone, Debug)]
pub struct ValueTable<V> {
    space: Arc<ConfigSpace>,
    values: Vec<V>,
}

/// Cell types a [`ValueTable`] can hold.
pub trait TableValue: Copy {
    fn render(&self, digits: usize) -> String;
}

impl TableValue for f64 {
    fn render(&self, digits: usize) -> String {
        crate::fmt::sig(*self, digits)
    }
}

impl TableValue for Rounds {
    fn render(&self, _digits: usize) -> String {
        self.to_string()
    }
}

impl<V: Copy> ValueTable<V> {
    pub(crate) fn new(space: Arc<ConfigSpace>, values: Vec<V>) -> Self {
        assert_eq!(values.len(), space.num_states());
        ValueTable { space, values }
    }

    pub fn space(&self) -> &Arc<ConfigSpace> {
        &self.space
    }

    pub fn values(&self) -> &[V] {
        &self.values
    }

    /// Value at configuration index `ci`, robber `y`.
    #[inline]
    pub fn at(&self, ci: usize, y: usize) -> V {
        self.values[self.space.state(ci, y)]
    }

    pub fn get(&self, config: &CopConfig, y: usize) -> Option<V> {
        let ci = self.space.index_of(config)?;
        (y < self.space.n()).then(|| self.at(ci, y))
    }

    /// Row of values for configuration `ci`, indexed by robber vertex.
    pub fn row(&self, ci: usize) -> &[V] {
        let n = self.space.n();
        &self.values[ci * n..(ci + 1) * n]
    }
}

impl<V: TableValue> ValueTable<V> {
    /// CSV with header `cop1,…,copk,y,value`.
    pub fn to_csv(&self, digits: usize) -> String {
        let k = self.space.k();
        let mut out = String::new();
        for i in 1..=k {
            let _ = write!(out, "cop{i},");
        }
        out.push_str("y,value\n");
        for ci in 0..self.space.num_configs() {
            let cfg: String = self.space.config(ci).cops().iter().map(|v| format!("{v},")).collect();
            for (y, v) in self.row(ci).iter().enumerate() {
                let _ = writeln!(out, "{cfg}{y},{}", v.render(digits));
            }
        }
        out
    }
}

impl ValueTable<f64> {
    /// Largest absolute entrywise difference.
    pub fn sup_distance(&self, other: &ValueTable<f64>) -> f64 {
        assert_eq!(self.values.len(), other.values.len());
        self.values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}
