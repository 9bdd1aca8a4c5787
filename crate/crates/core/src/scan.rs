//! Scans over the upper triangle `{(i, j) : 0 <= i <= j < n}` of a grid.
//!
//! Every scan has a sequential and (with the `parallel` feature) a rayon
//! implementation. Both produce identical results: parallel scans split by
//! row and merge so that "first" always means lexicographically first.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// How a grid scan runs. The default is `Parallel` when the feature is on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Exec {
    #[cfg_attr(not(feature = "parallel"), default)]
    Sequential,
    #[cfg(feature = "parallel")]
    #[default]
    Parallel,
}

/// Lexicographically first pair satisfying `pred`.
pub fn first_pair<F>(exec: Exec, n: usize, pred: F) -> Option<(usize, usize)>
where
    F: Fn(usize, usize) -> bool + Sync,
{
    let row = |i: usize| (i..n).find(|&j| pred(i, j)).map(|j| (i, j));
    match exec {
        Exec::Sequential => (0..n).find_map(row),
        #[cfg(feature = "parallel")]
        Exec::Parallel => (0..n).into_par_iter().find_map_first(row),
    }
}

/// Minimum of `g(i, j)` over pairs where it is defined.
pub fn min_over_pairs<T, G>(exec: Exec, n: usize, g: G) -> Option<T>
where
    T: Ord + Send,
    G: Fn(usize, usize) -> Option<T> + Sync,
{
    let row = |i: usize| (i..n).filter_map(|j| g(i, j)).min();
    match exec {
        Exec::Sequential => (0..n).filter_map(row).min(),
        #[cfg(feature = "parallel")]
        Exec::Parallel => (0..n).into_par_iter().filter_map(row).min(),
    }
}

/// All pairs satisfying `pred`, in lexicographic order.
pub fn collect_pairs<F>(exec: Exec, n: usize, pred: F) -> Vec<(usize, usize)>
where
    F: Fn(usize, usize) -> bool + Sync,
{
    let row = |i: usize| -> Vec<(usize, usize)> {
        (i..n).filter(|&j| pred(i, j)).map(|j| (i, j)).collect()
    };
    match exec {
        Exec::Sequential => (0..n).flat_map(row).collect(),
        #[cfg(feature = "parallel")]
        Exec::Parallel => (0..n).into_par_iter().flat_map_iter(row).collect(),
    }
}

/// Lexicographically first index in `0..n` satisfying `pred`.
pub fn first_index<F>(exec: Exec, n: usize, pred: F) -> Option<usize>
where
    F: Fn(usize) -> bool + Sync,
{
    match exec {
        Exec::Sequential => (0..n).find(|&i| pred(i)),
        #[cfg(feature = "parallel")]
        Exec::Parallel => (0..n).into_par_iter().find_first(|&i| pred(i)),
    }
}

/// `g(i)` for every `i` in `0..n`, in order.
pub fn map_indices<T, G>(exec: Exec, n: usize, g: G) -> Vec<T>
where
    T: Send,
    G: Fn(usize) -> T + Sync + Send,
{
    match exec {
        Exec::Sequential => (0..n).map(g).collect(),
        #[cfg(feature = "parallel")]
        Exec::Parallel => (0..n).into_par_iter().map(&g).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn modes() -> Vec<Exec> {
        vec![
            Exec::Sequential,
            #[cfg(feature = "parallel")]
            Exec::Parallel,
        ]
    }

    #[test]
    fn first_pair_is_lexicographic() {
        for exec in modes() {
            let hit = first_pair(exec, 50, |i, j| i + j == 40 && i > 3);
            assert_eq!(hit, Some((4, 36)));
            assert_eq!(first_pair(exec, 10, |_, _| false), None);
        }
    }

    #[test]
    fn collect_and_min_agree_across_modes() {
        let pred = |i: usize, j: usize| (i * 7 + j * 3).is_multiple_of(11);
        let seq = collect_pairs(Exec::Sequential, 40, pred);
        for exec in modes() {
            assert_eq!(collect_pairs(exec, 40, pred), seq);
            let m = min_over_pairs(exec, 40, |i, j| (i + j > 10).then_some((i * j) as i64 - 100));
            assert_eq!(m, Some(-100));
            assert_eq!(first_index(exec, 40, |i| i * i > 200), Some(15));
            assert_eq!(map_indices(exec, 5, |i| i * 2), vec![0, 2, 4, 6, 8]);
        }
    }
}
