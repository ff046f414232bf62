//! Tiny indexed map/search helpers that run on rayon when the `parallel`
//! feature is enabled and fall back to plain iterators otherwise.
//!
//! All helpers preserve order: results are index-ordered and searches
//! return the *first* hit, so parallel and sequential builds produce
//! byte-identical output.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub(crate) fn map_indexed<U: Send>(len: usize, f: impl Fn(usize) -> U + Sync + Send) -> Vec<U> {
    #[cfg(feature = "parallel")]
    {
        (0..len).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..len).map(f).collect()
    }
}

pub(crate) fn find_map_first_indexed<U: Send>(
    len: usize,
    f: impl Fn(usize) -> Option<U> + Sync + Send,
) -> Option<U> {
    #[cfg(feature = "parallel")]
    {
        (0..len).into_par_iter().find_map_first(f)
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..len).find_map(f)
    }
}
