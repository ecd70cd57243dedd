//! Two-level parallel prefix sums.

use std::ops::Add;

use rayon::prelude::*;

/// Replaces `values[j]` by `seed + values[0] + … + values[j]`.
///
/// Blocks of `block` entries are scanned independently, then each block is
/// shifted by the running total of the blocks before it. With exact integer
/// types the result does not depend on the block size or thread count.
pub fn prefix_sums<T>(values: &mut [T], seed: T, block: usize)
where
    T: Copy + Add<Output = T> + Default + Send + Sync,
{
    assert!(block > 0);
    let totals: Vec<T> = values
        .par_chunks_mut(block)
        .map(|chunk| {
            let mut acc = T::default();
            for v in chunk.iter_mut() {
                acc = acc + *v;
                *v = acc;
            }
            acc
        })
        .collect();
    let mut offsets = Vec::with_capacity(totals.len());
    let mut running = seed;
    for t in totals {
        offsets.push(running);
        running = running + t;
    }
    values
        .par_chunks_mut(block)
        .zip(offsets)
        .for_each(|(chunk, off)| {
            for v in chunk.iter_mut() {
                *v = off + *v;
            }
        });
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sequential(values: &[i64], seed: i64) -> Vec<i64> {
        values
            .iter()
            .scan(seed, |s, &v| {
                *s += v;
                Some(*s)
            })
            .collect()
    }

    #[test]
    fn small_example() {
        let mut v = vec![1i64, -1, -1, 0, -1];
        prefix_sums(&mut v, 1, 2);
        assert_eq!(v, vec![2, 1, 0, 0, -1]);
        let mut empty: Vec<i64> = vec![];
        prefix_sums(&mut empty, 5, 3);
        assert!(empty.is_empty());
    }

    proptest! {
        #[test]
        fn matches_sequential_scan(values in proptest::collection::vec(-1000i64..1000, 0..500), seed in -50i64..50, block in 1usize..64) {
            let mut v = values.clone();
            prefix_sums(&mut v, seed, block);
            prop_assert_eq!(v, sequential(&values, seed));
        }
    }
}
