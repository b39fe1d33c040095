//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature (on by default) [`Exec::Parallel`] runs on the
//! rayon global pool; without it every mode runs sequentially. Results are
//! always collected in index order, so both modes produce identical output.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Exec {
    Sequential,
    Parallel,
}

impl Default for Exec {
    fn default() -> Self {
        if cfg!(feature = "parallel") {
            Exec::Parallel
        } else {
            Exec::Sequential
        }
    }
}

/// Calls `f(chunk_index, chunk)` on consecutive `chunk_len`-sized pieces of
/// `data` and returns the per-chunk results in order.
pub fn map_chunks_mut<T, R, F>(exec: Exec, data: &mut [T], chunk_len: usize, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(usize, &mut [T]) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => data
            .par_chunks_mut(chunk_len)
            .enumerate()
            .map(|(i, c)| f(i, c))
            .collect(),
        _ => data
            .chunks_mut(chunk_len)
            .enumerate()
            .map(|(i, c)| f(i, c))
            .collect(),
    }
}

/// `(0..len).map(f).collect()`, possibly in parallel.
pub fn map_indices<R, F>(exec: Exec, len: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Exec::Parallel => (0..len).into_par_iter().map(f).collect(),
        _ => (0..len).map(f).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_agree() {
        let mut a: Vec<u64> = (0..1000).collect();
        let mut b = a.clone();
        let f = |i: usize, c: &mut [u64]| {
            c.iter_mut().for_each(|x| *x = *x * 3 + i as u64);
            c.iter().sum::<u64>()
        };
        let ra = map_chunks_mut(Exec::Sequential, &mut a, 7, f);
        let rb = map_chunks_mut(Exec::Parallel, &mut b, 7, f);
        assert_eq!(a, b);
        assert_eq!(ra, rb);
        assert_eq!(
            map_indices(Exec::Sequential, 50, |i| i * i),
            map_indices(Exec::Parallel, 50, |i| i * i)
        );
    }
}
