//! Brute-force oracles shared by the integration tests. Nothing here calls the
//! library's canonicalizer or counting code.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::seq::SliceRandom;
use rand::Rng;

/// Relabel so first occurrences read 1, 2, 3, ...
pub fn normalize(w: &[u32]) -> Vec<u32> {
    let mut map = BTreeMap::new();
    w.iter()
        .map(|l| {
            let next = map.len() as u32 + 1;
            *map.entry(*l).or_insert(next)
        })
        .collect()
}

/// Smallest normalized word over every rotation of the word and its reverse.
pub fn oracle_canonical(w: &[u32]) -> Vec<u32> {
    let n = w.len();
    let rev: Vec<u32> = w.iter().rev().copied().collect();
    let mut best: Option<Vec<u32>> = None;
    for base in [w.to_vec(), rev] {
        for t in 0..n.max(1) {
            let rot: Vec<u32> = (0..n).map(|i| base[(i + t) % n]).collect();
            let cand = normalize(&rot);
            if best.as_ref().is_none_or(|b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}

/// Every sequence over `1..=k` of length `2k` with each symbol twice, by
/// filtering all `k^(2k)` sequences.
pub fn oracle_words(k: usize) -> Vec<Vec<u32>> {
    if k == 0 {
        return vec![vec![]];
    }
    let len = 2 * k;
    let total = (k as u64).pow(len as u32);
    (0..total)
        .filter_map(|mut code| {
            let mut w = Vec::with_capacity(len);
            for _ in 0..len {
                w.push((code % k as u64) as u32 + 1);
                code /= k as u64;
            }
            (1..=k as u32).all(|l| w.iter().filter(|&&x| x == l).count() == 2).then_some(w)
        })
        .collect()
}

/// Distinct canonical classes with exactly `k` chords.
pub fn oracle_classes(k: usize) -> BTreeSet<Vec<u32>> {
    oracle_words(k).iter().map(|w| oracle_canonical(w)).collect()
}

/// Number of letter subsets of `g` whose induced word is isomorphic to `x`.
pub fn oracle_count(x: &[u32], g: &[u32]) -> u64 {
    let target = oracle_canonical(x);
    let letters: Vec<u32> = g.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let k = x.len() / 2;
    (0u64..1 << letters.len())
        .filter(|m| m.count_ones() as usize == k)
        .filter(|m| {
            let keep: BTreeSet<u32> = letters.iter().enumerate().filter(|(i, _)| m >> i & 1 == 1).map(|(_, &l)| l).collect();
            let sub: Vec<u32> = g.iter().copied().filter(|l| keep.contains(l)).collect();
            oracle_canonical(&sub) == target
        })
        .count() as u64
}

/// `sum c * count(x, g)` with independent counts.
pub fn oracle_eval(terms: &[(Vec<u32>, i64)], g: &[u32]) -> i64 {
    terms.iter().map(|(x, c)| c * oracle_count(x, g) as i64).sum()
}

/// Uniform shuffle of `1,1,2,2,...,n,n`.
pub fn random_word<R: Rng>(rng: &mut R, n: usize) -> Vec<u32> {
    let mut w: Vec<u32> = (1..=n as u32).flat_map(|l| [l, l]).collect();
    w.shuffle(rng);
    w
}

pub fn parse(text: &str) -> Vec<u32> {
    text.split_whitespace().map(|t| t.parse().unwrap()).collect()
}
