//! Execution strategy for the brute-force kernels.
//!
//! With the `parallel` feature, [`Execution::Parallel`] runs on the rayon
//! pool; without it every strategy runs sequentially. All reductions used by
//! callers are associative and commutative, so results never depend on the
//! strategy or the thread count.

use std::ops::Range;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// True when work will actually be spread over the rayon pool.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

#[cfg_attr(not(feature = "parallel"), allow(dead_code))]
fn chunk_ranges(total: u64, chunks: u64) -> impl Iterator<Item = Range<u64>> {
    let chunks = chunks.clamp(1, total.max(1));
    let size = total.div_ceil(chunks);
    (0..chunks).map(move |c| (c * size).min(total)..((c + 1) * size).min(total))
}

/// Folds `0..total` in contiguous ranges and reduces the partial results.
pub(crate) fn fold_ranges<T, F, R>(
    exec: Execution,
    total: u64,
    identity: impl Fn() -> T + Sync + Send,
    fold: F,
    reduce: R,
) -> T
where
    T: Send,
    F: Fn(T, Range<u64>) -> T + Sync + Send,
    R: Fn(T, T) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        let chunks = (rayon::current_num_threads() as u64 * 16).min(total.max(1));
        let ranges: Vec<Range<u64>> = chunk_ranges(total, chunks).collect();
        return ranges
            .into_par_iter()
            .map(|r| fold(identity(), r))
            .reduce(&identity, &reduce);
    }
    let _ = (exec, &reduce);
    fold(identity(), 0..total)
}

/// Order-preserving map.
pub(crate) fn map_collect<I, T, F>(exec: Execution, items: &[I], f: F) -> Vec<T>
where
    I: Sync,
    T: Send,
    F: Fn(&I) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return items.par_iter().map(f).collect();
    }
    let _ = exec;
    items.iter().map(f).collect()
}

/// Fills `out[i] = f(i)` in blocks of `block` consecutive slots.
pub(crate) fn fill_blocks<T, F>(exec: Execution, out: &mut [T], block: usize, f: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Sync + Send,
{
    let block = block.max(1);
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        out.par_chunks_mut(block)
            .enumerate()
            .for_each(|(b, chunk)| f(b * block, chunk));
        return;
    }
    let _ = exec;
    for (b, chunk) in out.chunks_mut(block).enumerate() {
        f(b * block, chunk);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_cover_exactly() {
        for total in [0u64, 1, 7, 100, 1001] {
            for chunks in [1u64, 3, 16, 5000] {
                let mut next = 0;
                for r in chunk_ranges(total, chunks) {
                    assert_eq!(r.start, next.min(total));
                    next = r.end;
                }
                assert_eq!(next, total);
            }
        }
    }

    #[test]
    fn strategies_agree() {
        for exec in [Execution::Sequential, Execution::Parallel] {
            let sum = fold_ranges(
                exec,
                10_000,
                || 0u64,
                |acc, r| acc + r.sum::<u64>(),
                |a, b| a + b,
            );
            assert_eq!(sum, 10_000 * 9_999 / 2);
            let v = map_collect(exec, &[1, 2, 3], |x| x * 10);
            assert_eq!(v, vec![10, 20, 30]);
            let mut out = vec![0usize; 37];
            fill_blocks(exec, &mut out, 5, |start, chunk| {
                for (i, slot) in chunk.iter_mut().enumerate() {
                    *slot = start + i;
                }
            });
            assert_eq!(out, (0..37).collect::<Vec<_>>());
        }
    }
}
