//! Data-parallel helpers with a sequential fallback when the `parallel`
//! feature is off.  Every helper returns results in input order.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub fn map<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> R + Sync + Send) -> Vec<R> {
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

pub fn map_range<R: Send>(n: usize, f: impl Fn(usize) -> R + Sync + Send) -> Vec<R> {
    #[cfg(feature = "parallel")]
    {
        (0..n).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..n).map(f).collect()
    }
}

/// Smallest index whose item satisfies `f`, with its payload.
pub fn find_first<T: Sync, R: Send>(items: &[T], f: impl Fn(&T) -> Option<R> + Sync + Send) -> Option<(usize, R)> {
    #[cfg(feature = "parallel")]
    {
        items.par_iter().enumerate().filter_map(|(i, x)| f(x).map(|r| (i, r))).min_by_key(|(i, _)| *i)
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().enumerate().find_map(|(i, x)| f(x).map(|r| (i, r)))
    }
}

/// Applies `f` to fixed-size chunks and concatenates the outputs in order.
pub fn flat_map_chunks<T: Sync, R: Send>(items: &[T], chunk: usize, f: impl Fn(&[T]) -> Vec<R> + Sync + Send) -> Vec<R> {
    #[cfg(feature = "parallel")]
    {
        items.par_chunks(chunk.max(1)).map(f).collect::<Vec<_>>().into_iter().flatten().collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.chunks(chunk.max(1)).flat_map(f).collect()
    }
}

pub fn all<T: Sync>(items: &[T], f: impl Fn(&T) -> bool + Sync + Send) -> bool {
    #[cfg(feature = "parallel")]
    {
        items.par_iter().all(f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().all(f)
    }
}

/// Configures the global worker count; a no-op without the `parallel` feature.
pub fn set_threads(n: usize) {
    #[cfg(feature = "parallel")]
    {
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    #[cfg(not(feature = "parallel"))]
    {
        let _ = n;
    }
}

pub fn is_parallel() -> bool {
    cfg!(feature = "parallel")
}
