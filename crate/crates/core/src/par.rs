//! Data-parallel helpers with a sequential fallback.
//!
//! With the `parallel` feature enabled these fan work out over rayon; without
//! it they degrade to plain loops. Every helper collects results in index
//! order, so both builds produce identical output bit for bit.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Map `f` over `0..n`, collecting results in index order.
#[cfg(feature = "parallel")]
pub fn map_indexed<U, F>(n: usize, f: F) -> Vec<U>
where
    U: Send,
    F: Fn(usize) -> U + Send + Sync,
{
    (0..n).into_par_iter().map(f).collect()
}

/// Map `f` over `0..n`, collecting results in index order.
#[cfg(not(feature = "parallel"))]
pub fn map_indexed<U, F>(n: usize, f: F) -> Vec<U>
where
    F: Fn(usize) -> U,
{
    (0..n).map(f).collect()
}

/// Map `f` over the items of a slice, collecting results in order.
#[cfg(feature = "parallel")]
pub fn map_slice<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    T: Sync,
    U: Send,
    F: Fn(&T) -> U + Send + Sync,
{
    items.par_iter().map(f).collect()
}

/// Map `f` over the items of a slice, collecting results in order.
#[cfg(not(feature = "parallel"))]
pub fn map_slice<T, U, F>(items: &[T], f: F) -> Vec<U>
where
    F: Fn(&T) -> U,
{
    items.iter().map(f).collect()
}

/// Apply `f` to each fixed-size chunk of `data`, passing the chunk index.
#[cfg(feature = "parallel")]
pub fn for_each_chunk_mut<T, F>(data: &mut [T], size: usize, f: F)
where
    T: Send,
    F: Fn(usize, &mut [T]) + Send + Sync,
{
    data.par_chunks_mut(size).enumerate().for_each(|(i, c)| f(i, c));
}

/// Apply `f` to each fixed-size chunk of `data`, passing the chunk index.
#[cfg(not(feature = "parallel"))]
pub fn for_each_chunk_mut<T, F>(data: &mut [T], size: usize, f: F)
where
    F: Fn(usize, &mut [T]),
{
    data.chunks_mut(size).enumerate().for_each(|(i, c)| f(i, c));
}

/// Lowest index in `0..n` satisfying `f`, if any.
#[cfg(feature = "parallel")]
pub fn find_first<F>(n: usize, f: F) -> Option<usize>
where
    F: Fn(usize) -> bool + Send + Sync,
{
    (0..n).into_par_iter().find_first(|&i| f(i))
}

/// Lowest index in `0..n` satisfying `f`, if any.
#[cfg(not(feature = "parallel"))]
pub fn find_first<F>(n: usize, f: F) -> Option<usize>
where
    F: Fn(usize) -> bool,
{
    (0..n).find(|&i| f(i))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn map_indexed_preserves_order() {
        assert_eq!(map_indexed(5, |i| i * i), vec![0, 1, 4, 9, 16]);
    }

    #[test]
    fn find_first_returns_lowest_witness() {
        assert_eq!(find_first(100, |i| i % 7 == 3 && i > 20), Some(24));
        assert_eq!(find_first(5, |_| false), None);
    }

    #[test]
    fn chunk_mutation_touches_every_chunk() {
        let mut v = vec![0u32; 12];
        for_each_chunk_mut(&mut v, 3, |i, c| {
            for x in c.iter_mut() {
                *x = i as u32;
            }
        });
        assert_eq!(v, vec![0, 0, 0, 1, 1, 1, 2, 2, 2, 3, 3, 3]);
    }
}
