//! Index mapping with a sequential path and a rayon path behind the
//! `parallel` feature. Results are always ordered by index.

#[cfg(feature = "parallel")]
use rayon::prelude::*;

pub fn map_seq<R, F>(n: usize, f: F) -> Vec<R>
where
    F: Fn(usize) -> R,
{
    (0..n).map(f).collect()
}

#[cfg(feature = "parallel")]
pub fn map_par<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    (0..n).into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn map_par<R, F>(n: usize, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    map_seq(n, f)
}

pub fn map<R, F>(n: usize, parallel: bool, f: F) -> Vec<R>
where
    R: Send,
    F: Fn(usize) -> R + Sync + Send,
{
    if parallel { map_par(n, f) } else { map_seq(n, f) }
}

pub fn map_slice<T, R, F>(items: &[T], parallel: bool, f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    map(items.len(), parallel, |i| f(&items[i]))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ordered_and_equal() {
        let a = map_seq(100, |i| i * i);
        let b = map_par(100, |i| i * i);
        assert_eq!(a, b);
        assert_eq!(map_slice(&[1, 2, 3], true, |x| x + 1), vec![2, 3, 4]);
    }
}
