//! Data-parallel helpers. With the `parallel` feature (default) work is split
//! across the rayon pool; otherwise, or when a caller asks for one worker,
//! everything runs sequentially in input order.

/// Whether parallel execution is compiled in.
pub const ENABLED: bool = cfg!(feature = "parallel");

/// Sets the size of the global worker pool. Only the first call has an effect.
pub fn configure_threads(n: usize) {
    #[cfg(feature = "parallel")]
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n.max(1)).build_global();
    }
    #[cfg(not(feature = "parallel"))]
    let _ = n;
}

/// First `Some` produced by `f`. With `ordered`, the result is the one the
/// sequential scan would return; otherwise any.
pub fn find_map<I, T, F>(items: Vec<I>, parallel: bool, ordered: bool, f: F) -> Option<T>
where
    I: Send,
    T: Send,
    F: Fn(I) -> Option<T> + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel && items.len() > 1 {
        use rayon::prelude::*;
        return if ordered {
            items.into_par_iter().find_map_first(f)
        } else {
            items.into_par_iter().find_map_any(f)
        };
    }
    let _ = (parallel, ordered);
    items.into_iter().find_map(f)
}

/// Order-preserving map.
pub fn map<I, T, F>(items: Vec<I>, parallel: bool, f: F) -> Vec<T>
where
    I: Send,
    T: Send,
    F: Fn(I) -> T + Sync + Send,
{
    #[cfg(feature = "parallel")]
    if parallel && items.len() > 1 {
        use rayon::prelude::*;
        return items.into_par_iter().map(f).collect();
    }
    let _ = parallel;
    items.into_iter().map(f).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordered_find_matches_sequential() {
        let items: Vec<u32> = (0..1000).collect();
        let f = |x: u32| (x % 97 == 96).then_some(x);
        assert_eq!(find_map(items.clone(), true, true, f), Some(96));
        assert_eq!(find_map(items.clone(), false, true, f), Some(96));
        assert!(find_map(items, true, false, f).is_some_and(|x| x % 97 == 96));
    }

    #[test]
    fn map_keeps_order() {
        let v = map((0..100).collect(), true, |x: u64| x * x);
        assert_eq!(v[99], 99 * 99);
        assert_eq!(v, map((0..100).collect(), false, |x: u64| x * x));
    }
}
