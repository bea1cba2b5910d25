//! Data-parallel fan-out with a sequential fallback.
//!
//! With the `parallel` feature (on by default) the helpers below dispatch
//! through rayon; without it they run the same loops in order. Every
//! reduction used here is associative and commutative with a total
//! index-based tie-break, so verdicts and witnesses are identical under any
//! thread count — parallelism only changes wall time.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Maps `f` over `items`, preserving order.
pub fn map_collect<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

/// Sequential twin of [`map_collect`], available under every feature set.
pub fn map_collect_sequential<T, U>(items: &[T], f: impl Fn(&T) -> U) -> Vec<U> {
    items.iter().map(f).collect()
}

fn better_min(a: (f64, usize), b: (f64, usize)) -> (f64, usize) {
    // NaN (which the callers never produce) loses against any number.
    if b.0 < a.0 || (b.0 == a.0 && b.1 < a.1) {
        b
    } else {
        a
    }
}

/// Minimum of `f(0..len)` together with the smallest attaining index.
pub fn min_indexed(len: usize, f: impl Fn(usize) -> f64 + Sync + Send) -> (f64, usize) {
    #[cfg(feature = "parallel")]
    {
        (0..len)
            .into_par_iter()
            .map(|i| (f(i), i))
            .reduce(|| (f64::INFINITY, usize::MAX), better_min)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..len)
            .map(|i| (f(i), i))
            .fold((f64::INFINITY, usize::MAX), better_min)
    }
}

/// Maximum of `f(0..len)` together with the smallest attaining index.
pub fn max_indexed(len: usize, f: impl Fn(usize) -> f64 + Sync + Send) -> (f64, usize) {
    let (v, i) = min_indexed(len, |i| -f(i));
    (-v, i)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn min_indexed_breaks_ties_by_lowest_index() {
        let values = [3.0, 1.0, 2.0, 1.0, 5.0];
        let (v, i) = min_indexed(values.len(), |k| values[k]);
        assert_eq!((v, i), (1.0, 1));
    }

    #[test]
    fn max_indexed_finds_peak() {
        let values = [3.0, 9.0, 2.0, 9.0, 5.0];
        let (v, i) = max_indexed(values.len(), |k| values[k]);
        assert_eq!((v, i), (9.0, 1));
    }

    #[test]
    fn empty_range_yields_infinity() {
        let (v, i) = min_indexed(0, |_| 0.0);
        assert!(v.is_infinite() && i == usize::MAX);
    }

    #[test]
    fn map_variants_agree() {
        let items: Vec<f64> = (0..100).map(|i| i as f64).collect();
        let a = map_collect(&items, |x| x * x);
        let b = map_collect_sequential(&items, |x| x * x);
        assert_eq!(a, b);
    }
}
