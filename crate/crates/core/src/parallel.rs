//! Order-preserving maps over evaluation points.
//!
//! With the `parallel` feature the work is spread over rayon's pool; without
//! it every request runs sequentially. Output order always matches input
//! order, so results are identical in both modes.

use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Execution {
    Sequential,
    #[default]
    Parallel,
}

impl Execution {
    /// Whether the parallel path is compiled in.
    pub const fn parallel_available() -> bool {
        cfg!(feature = "parallel")
    }
}

/// Map `f` over `items`, keeping order.
pub fn map_points<T, R, F>(exec: Execution, items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    match exec {
        #[cfg(feature = "parallel")]
        Execution::Parallel => {
            use rayon::prelude::*;
            items.par_iter().map(f).collect()
        }
        _ => items.iter().map(f).collect(),
    }
}

/// Fallible map; the reported error is the one at the lowest index, in
/// either mode.
pub fn try_map_points<T, R, F>(exec: Execution, items: &[T], f: F) -> Result<Vec<R>>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> Result<R> + Sync + Send,
{
    map_points(exec, items, f).into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    #[test]
    fn modes_agree_and_keep_order() {
        let xs: Vec<f64> = (0..1000).map(|i| i as f64 * 0.01).collect();
        let a = map_points(Execution::Sequential, &xs, |x| (x * 3.0).sin());
        let b = map_points(Execution::Parallel, &xs, |x| (x * 3.0).sin());
        assert_eq!(a, b);
        assert_eq!(a[7], (0.07f64 * 3.0).sin());
    }

    #[test]
    fn first_error_wins() {
        let xs: Vec<i32> = (0..500).collect();
        let f = |&i: &i32| {
            if i % 100 == 37 {
                Err(Error::Domain(format!("{i}")))
            } else {
                Ok(i)
            }
        };
        for exec in [Execution::Sequential, Execution::Parallel] {
            assert_eq!(try_map_points(exec, &xs, f), Err(Error::Domain("37".into())));
        }
    }
}
