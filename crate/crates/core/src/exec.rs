//! Data-parallel helpers.
//!
//! Every independent batch of work in the crate (sectors of an over-lift,
//! `(n, k)` sweeps, Laplacian rows) goes through [`map_collect`]. With the
//! `parallel` feature enabled the batch runs on the rayon pool; without it,
//! or when [`Execution::Sequential`] is requested, it runs in order on the
//! calling thread. Results are always returned in input order.

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Execution {
    /// Use the rayon pool when the `parallel` feature is compiled in.
    #[default]
    Parallel,
    Sequential,
}

impl Execution {
    /// Whether this mode actually fans out in the current build.
    pub fn is_parallel(self) -> bool {
        cfg!(feature = "parallel") && self == Execution::Parallel
    }
}

pub fn map_collect<T, R, F>(items: Vec<T>, exec: Execution, f: F) -> Vec<R>
where
    T: Send,
    R: Send,
    F: Fn(T) -> R + Send + Sync,
{
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        use rayon::prelude::*;
        return items.into_par_iter().map(f).collect();
    }
    let _ = exec;
    items.into_iter().map(f).collect()
}

/// Like [`map_collect`] but stops at the first error (in input order).
pub fn try_map_collect<T, R, E, F>(items: Vec<T>, exec: Execution, f: F) -> Result<Vec<R>, E>
where
    T: Send,
    R: Send,
    E: Send,
    F: Fn(T) -> Result<R, E> + Send + Sync,
{
    map_collect(items, exec, f).into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_preserved_in_both_modes() {
        let items: Vec<u64> = (0..1000).collect();
        let par = map_collect(items.clone(), Execution::Parallel, |x| x * x);
        let seq = map_collect(items, Execution::Sequential, |x| x * x);
        assert_eq!(par, seq);
        assert_eq!(par[999], 999 * 999);
    }

    #[test]
    fn first_error_wins() {
        let r: Result<Vec<u32>, u32> =
            try_map_collect((0..10).collect(), Execution::Parallel, |x| {
                if x >= 4 {
                    Err(x)
                } else {
                    Ok(x)
                }
            });
        assert_eq!(r, Err(4));
    }
}
