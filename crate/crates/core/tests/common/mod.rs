#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet};

use sumset::FiniteSet;

/// Sumset straight from the definition.
pub fn naive_sum(a: &[u32], b: &[u32]) -> Vec<u32> {
    let out: BTreeSet<u32> = a.iter().flat_map(|x| b.iter().map(move |y| x + y)).collect();
    out.into_iter().collect()
}

pub fn set(xs: &[u32]) -> FiniteSet {
    FiniteSet::new(xs.iter().copied()).unwrap()
}

/// Every nonempty subset of `[0, k]` as raw bits.
pub fn all_sets(k: u32) -> impl Iterator<Item = u128> {
    1..(1u128 << (k + 1))
}

pub fn bits_to_vec(bits: u128) -> Vec<u32> {
    (0..128).filter(|i| bits >> i & 1 == 1).collect()
}

/// `(b, b + c)` for every pair of nonempty sets with `max b + max c ≤ k`.
pub fn divisibility_table(k: u32) -> HashSet<(u128, u128)> {
    let mut out = HashSet::new();
    for b in all_sets(k) {
        let mb = 127 - b.leading_zeros();
        for c in all_sets(k - mb) {
            let s = naive_sum(&bits_to_vec(b), &bits_to_vec(c));
            let bits = s.iter().fold(0u128, |acc, &x| acc | 1 << x);
            out.insert((b, bits));
        }
    }
    out
}
