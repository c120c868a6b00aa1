//! Gauss words, their canonical forms, sub-Gauss words and the sub-diagram
//! counts `x(G)`.
//!
//! A Gauss word is read cyclically and up to reversal and relabeling; the
//! equivalence classes are chord diagrams. Everything here is a pure function
//! of its inputs.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub type Letter = u32;

/// Default cap on the number of chords for `2^n` sub-word enumeration.
pub const DEFAULT_SUBWORD_LIMIT: usize = 12;

/// Hard ceiling for the limit itself, since selections are bit masks.
const MASK_BITS: usize = 63;

/// A double-occurrence word: every letter appears exactly twice.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GaussWord {
    letters: Vec<Letter>,
}

impl GaussWord {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if let Some(&zero) = letters.iter().find(|&&l| l == 0) {
            return Err(Error::BadToken(zero.to_string()));
        }
        let counts = letters.iter().counts();
        if let Some((&letter, &count)) = counts
            .iter()
            .filter(|(_, &c)| c != 2)
            .min_by_key(|(&l, _)| l)
        {
            return Err(Error::NotDoubleOccurrence { letter: *letter, count });
        }
        Ok(GaussWord { letters })
    }

    pub fn empty() -> Self {
        GaussWord::default()
    }

    /// Caller guarantees the double-occurrence property.
    pub(crate) fn from_raw(letters: Vec<Letter>) -> Self {
        debug_assert!(GaussWord::new(letters.clone()).is_ok(), "{letters:?}");
        GaussWord { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Number of chords (distinct letters).
    pub fn chords(&self) -> usize {
        self.letters.len() / 2
    }

    pub fn max_letter(&self) -> Letter {
        self.letters.iter().copied().max().unwrap_or(0)
    }

    /// Distinct letters in order of first occurrence.
    pub fn distinct_letters(&self) -> Vec<Letter> {
        self.letters.iter().copied().unique().collect()
    }

    /// Relabel so first occurrences read 1, 2, 3, ...
    pub fn relabeled(&self) -> GaussWord {
        let mut map = BTreeMap::new();
        let letters = self
            .letters
            .iter()
            .map(|l| {
                let next = map.len() as Letter + 1;
                *map.entry(*l).or_insert(next)
            })
            .collect();
        GaussWord { letters }
    }

    pub fn rotated(&self, t: usize) -> GaussWord {
        let mut letters = self.letters.clone();
        if !letters.is_empty() {
            letters.rotate_left(t % self.len());
        }
        GaussWord { letters }
    }

    pub fn reversed(&self) -> GaussWord {
        GaussWord { letters: self.letters.iter().rev().copied().collect() }
    }

    /// For each chord (in first-occurrence order) its two positions.
    pub fn chord_positions(&self) -> Vec<(usize, usize)> {
        let mut slot: BTreeMap<Letter, usize> = BTreeMap::new();
        let mut out: Vec<(usize, usize)> = Vec::with_capacity(self.chords());
        for (p, &l) in self.letters.iter().enumerate() {
            match slot.get(&l) {
                None => {
                    slot.insert(l, out.len());
                    out.push((p, p));
                }
                Some(&i) => out[i].1 = p,
            }
        }
        out
    }

    /// The sub-Gauss word keeping only the chords whose letters pass `keep`.
    /// Letters are left as they are.
    pub fn restricted(&self, keep: impl Fn(Letter) -> bool) -> GaussWord {
        GaussWord { letters: self.letters.iter().copied().filter(|&l| keep(l)).collect() }
    }
}

impl fmt::Display for GaussWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return f.write_str("-");
        }
        write!(f, "{}", self.letters.iter().join(" "))
    }
}

impl Serialize for GaussWord {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for GaussWord {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        parse_gauss_word(&text).map_err(serde::de::Error::custom)
    }
}

impl FromStr for GaussWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_gauss_word(s)
    }
}

/// Parse whitespace separated positive integers, or a run of letters `a-z`
/// (relabeled by first occurrence). `""` and `"-"` are the empty word.
pub fn parse_gauss_word(text: &str) -> Result<GaussWord> {
    let tokens: Vec<&str> = text.split_whitespace().collect();
    if tokens.is_empty() || tokens == ["-"] {
        return Ok(GaussWord::empty());
    }
    let alphabetic = |t: &str| t.bytes().all(|b| b.is_ascii_lowercase());
    if tokens.iter().all(|t| alphabetic(t)) {
        let mut map: BTreeMap<char, Letter> = BTreeMap::new();
        let letters = tokens
            .iter()
            .flat_map(|t| t.chars())
            .map(|c| {
                let next = map.len() as Letter + 1;
                *map.entry(c).or_insert(next)
            })
            .collect();
        return GaussWord::new(letters);
    }
    let letters = tokens
        .iter()
        .map(|t| match t.parse::<Letter>() {
            Ok(v) if v > 0 => Ok(v),
            _ => Err(Error::BadToken(t.to_string())),
        })
        .collect::<Result<Vec<_>>>()?;
    GaussWord::new(letters)
}

/// Canonical representative of a chord diagram: letters `1..n`, first
/// occurrences increasing, lexicographically least over all rotations and
/// both reading directions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct CanonicalDiagram {
    word: GaussWord,
}

impl CanonicalDiagram {
    pub fn empty() -> Self {
        CanonicalDiagram::default()
    }

    /// Parse a word and canonicalize it.
    pub fn parse(text: &str) -> Result<Self> {
        Ok(canonical_form(&parse_gauss_word(text)?))
    }

    pub fn word(&self) -> &GaussWord {
        &self.word
    }

    pub fn chords(&self) -> usize {
        self.word.chords()
    }

    pub fn letters(&self) -> &[Letter] {
        self.word.letters()
    }
}

/// Chord count first, then the canonical word lexicographically.
impl Ord for CanonicalDiagram {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.chords(), self.letters()).cmp(&(other.chords(), other.letters()))
    }
}

impl PartialOrd for CanonicalDiagram {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for CanonicalDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.word.fmt(f)
    }
}

impl Serialize for CanonicalDiagram {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.word.serialize(s)
    }
}

/// Accepts any representative and canonicalizes it.
impl<'de> Deserialize<'de> for CanonicalDiagram {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        Ok(canonical_form(&GaussWord::deserialize(d)?))
    }
}

impl From<CanonicalDiagram> for GaussWord {
    fn from(d: CanonicalDiagram) -> Self {
        d.word
    }
}

pub fn canonical_form(w: &GaussWord) -> CanonicalDiagram {
    let len = w.len();
    if len == 0 {
        return CanonicalDiagram::empty();
    }
    // compact letters to 0..n so relabeling can use a flat table
    let compact: Vec<usize> = w.relabeled().letters.iter().map(|&l| l as usize - 1).collect();
    let n = len / 2;

    let mut best: Vec<Letter> = Vec::new();
    let mut cand: Vec<Letter> = vec![0; len];
    let mut table: Vec<Letter> = vec![0; n];
    for reverse in [false, true] {
        for start in 0..len {
            table.iter_mut().for_each(|t| *t = 0);
            let mut next = 1;
            // 0 = tied with best so far, -1 = already smaller
            let mut state = if best.is_empty() { -1 } else { 0 };
            let mut worse = false;
            for p in 0..len {
                let q = if reverse { (start + len - p) % len } else { (start + p) % len };
                let c = compact[q];
                if table[c] == 0 {
                    table[c] = next;
                    next += 1;
                }
                cand[p] = table[c];
                if state == 0 {
                    match cand[p].cmp(&best[p]) {
                        std::cmp::Ordering::Less => state = -1,
                        std::cmp::Ordering::Greater => {
                            worse = true;
                            break;
                        }
                        std::cmp::Ordering::Equal => {}
                    }
                }
            }
            if !worse && state == -1 {
                best.clone_from(&cand);
            }
        }
    }
    CanonicalDiagram { word: GaussWord { letters: best } }
}

pub fn isomorphic(v: &GaussWord, w: &GaussWord) -> bool {
    v.len() == w.len() && canonical_form(v) == canonical_form(w)
}

/// Product of Gauss words: `w` is shifted past `v`'s letters and appended.
pub fn concat(v: &GaussWord, w: &GaussWord) -> GaussWord {
    let shift = v.max_letter();
    let letters = v.letters.iter().copied().chain(w.letters.iter().map(|l| l + shift)).collect();
    GaussWord { letters }
}

/// A chord subset of a parent word.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubwordSelection<'a> {
    pub parent: &'a GaussWord,
    pub kept: Vec<Letter>,
}

impl SubwordSelection<'_> {
    /// The induced word, relabeled by first occurrence.
    pub fn induced(&self) -> GaussWord {
        self.parent.restricted(|l| self.kept.contains(&l)).relabeled()
    }
}

fn check_limit(w: &GaussWord, limit: usize) -> Result<()> {
    let limit = limit.min(MASK_BITS);
    if w.chords() > limit {
        return Err(Error::TooManyChords { chords: w.chords(), limit });
    }
    Ok(())
}

/// Streams all `2^n` chord subsets of a word, empty selection first.
pub struct Subwords<'a> {
    parent: &'a GaussWord,
    chords: Vec<Letter>,
    mask: u64,
    end: u64,
}

impl<'a> Iterator for Subwords<'a> {
    type Item = SubwordSelection<'a>;

    fn next(&mut self) -> Option<Self::Item> {
        if self.mask >= self.end {
            return None;
        }
        let kept = self
            .chords
            .iter()
            .enumerate()
            .filter(|(i, _)| self.mask >> i & 1 == 1)
            .map(|(_, &l)| l)
            .collect();
        self.mask += 1;
        Some(SubwordSelection { parent: self.parent, kept })
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let left = (self.end - self.mask) as usize;
        (left, Some(left))
    }
}

pub fn subwords(g: &GaussWord, limit: usize) -> Result<Subwords<'_>> {
    check_limit(g, limit)?;
    Ok(Subwords { parent: g, chords: g.distinct_letters(), mask: 0, end: 1u64 << g.chords() })
}

/// Position-indexed chord numbers, for fast induced-word construction.
struct ChordIndexed {
    idx: Vec<usize>,
    n: usize,
}

impl ChordIndexed {
    fn new(g: &GaussWord) -> Self {
        let r = g.relabeled();
        ChordIndexed { idx: r.letters.iter().map(|&l| l as usize - 1).collect(), n: g.chords() }
    }

    fn induced(&self, chosen: &[usize], table: &mut [Letter]) -> GaussWord {
        table.iter_mut().for_each(|t| *t = 0);
        for &c in chosen {
            table[c] = Letter::MAX;
        }
        let mut next = 1;
        let mut letters = Vec::with_capacity(chosen.len() * 2);
        for &c in &self.idx {
            if table[c] == 0 {
                continue;
            }
            if table[c] == Letter::MAX {
                table[c] = next;
                next += 1;
            }
            letters.push(table[c]);
        }
        GaussWord { letters }
    }
}

/// `x(G)`: the number of chord subsets of `g` whose induced diagram is `x`.
pub fn count_subdiagrams(x: &CanonicalDiagram, g: &GaussWord, limit: usize) -> Result<u64> {
    check_limit(g, limit)?;
    let k = x.chords();
    if k > g.chords() {
        return Ok(0);
    }
    if k == 0 {
        return Ok(1);
    }
    let indexed = ChordIndexed::new(g);
    let mut table = vec![0; indexed.n];
    let mut count = 0;
    for chosen in (0..indexed.n).combinations(k) {
        if canonical_form(&indexed.induced(&chosen, &mut table)) == *x {
            count += 1;
        }
    }
    Ok(count)
}

/// Counts of every sub-diagram of `g` whose chord count lies in `sizes`.
pub fn subdiagram_histogram(
    g: &GaussWord,
    sizes: std::ops::RangeInclusive<usize>,
    limit: usize,
) -> Result<BTreeMap<CanonicalDiagram, u64>> {
    check_limit(g, limit)?;
    let indexed = ChordIndexed::new(g);
    let mut table = vec![0; indexed.n];
    let mut hist = BTreeMap::new();
    for k in sizes {
        if k > indexed.n {
            break;
        }
        for chosen in (0..indexed.n).combinations(k) {
            let d = canonical_form(&indexed.induced(&chosen, &mut table));
            *hist.entry(d).or_insert(0) += 1;
        }
    }
    Ok(hist)
}

/// Both sides of `x(G) = sum over z in Sub(G) of x~(z)`, computed independently.
pub fn decompose_sum_identity(x: &CanonicalDiagram, g: &GaussWord, limit: usize) -> Result<(i64, i64)> {
    let lhs = count_subdiagrams(x, g, limit)? as i64;
    let rhs = subwords(g, limit)?
        .map(|sel| {
            let z = crate::module::ModuleElement::from(canonical_form(&sel.induced()));
            crate::module::tilde_eval(x, &z)
        })
        .sum();
    Ok((lhs, rhs))
}

/// Every double-occurrence word on `n` chords in first-occurrence normal form,
/// in lexicographic order. There are `(2n-1)!!` of them.
pub fn all_gauss_words(n: usize) -> Vec<GaussWord> {
    fn fill(slots: &mut Vec<Letter>, next: Letter, out: &mut Vec<GaussWord>) {
        let Some(first) = slots.iter().position(|&l| l == 0) else {
            out.push(GaussWord { letters: slots.clone() });
            return;
        };
        slots[first] = next;
        for second in first + 1..slots.len() {
            if slots[second] == 0 {
                slots[second] = next;
                fill(slots, next + 1, out);
                slots[second] = 0;
            }
        }
        slots[first] = 0;
    }
    let mut out = Vec::new();
    fill(&mut vec![0; 2 * n], 1, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> GaussWord {
        s.parse().unwrap()
    }

    fn canon(s: &str) -> String {
        canonical_form(&w(s)).to_string()
    }

    #[test]
    fn parse_integers_and_letters() {
        assert_eq!(w("1 2 1 2").letters(), &[1, 2, 1, 2]);
        assert_eq!(w("abab").letters(), &[1, 2, 1, 2]);
        assert_eq!(w("baab").letters(), &[1, 2, 2, 1]);
        assert!(w("").is_empty());
        assert!(w("-").is_empty());
        assert_eq!(w("  7 3 3 7 ").letters(), &[7, 3, 3, 7]);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(parse_gauss_word("1 2 1"), Err(Error::NotDoubleOccurrence { letter: 2, count: 1 })));
        assert!(matches!(parse_gauss_word("1 1 1 1"), Err(Error::NotDoubleOccurrence { .. })));
        assert!(matches!(parse_gauss_word("aba"), Err(Error::NotDoubleOccurrence { .. })));
        assert!(matches!(parse_gauss_word("1 x 1 x"), Err(Error::BadToken(_))));
        assert!(matches!(parse_gauss_word("0 0"), Err(Error::BadToken(_))));
        assert!(matches!(parse_gauss_word("-1 -1"), Err(Error::BadToken(_))));
        assert!(matches!(parse_gauss_word("AB AB"), Err(Error::BadToken(_))));
    }

    #[test]
    fn canonical_examples() {
        assert_eq!(canon("1 2 1 2"), "1 2 1 2");
        assert_eq!(canon("2 1 1 3 3 2"), "1 1 2 2 3 3");
        assert_eq!(canon("3 2 1 3 2 1"), canon("1 2 3 1 2 3"));
        assert_eq!(canon("1 2 2 1"), "1 1 2 2");
        assert_eq!(canon("-"), "-");
        assert_eq!(canon("5 5"), "1 1");
        // ijkkji is the nested triple
        assert_eq!(canon("1 2 3 3 2 1"), "1 1 2 3 3 2");
    }

    #[test]
    fn isomorphism_examples() {
        assert!(isomorphic(&w("1 2 1 2"), &w("2 1 2 1")));
        assert!(!isomorphic(&w("1 1 2 2"), &w("1 2 1 2")));
        assert!(isomorphic(&w("2 1 1 3 3 2"), &w("1 1 2 2 3 3")));
        assert!(!isomorphic(&w("1 1"), &w("1 1 2 2")));
    }

    #[test]
    fn subword_examples() {
        let g = w("1 1");
        let subs: Vec<_> = subwords(&g, 12).unwrap().map(|s| s.induced()).collect();
        assert_eq!(subs, vec![GaussWord::empty(), w("1 1")]);

        let g = w("1 2 1 2");
        let subs: Vec<String> = subwords(&g, 12).unwrap().map(|s| s.induced().to_string()).collect();
        assert_eq!(subs, ["-", "1 1", "1 1", "1 2 1 2"]);

        assert_eq!(subwords(&w("1 2 3 1 2 3"), 12).unwrap().count(), 8);
        assert!(matches!(subwords(&w("1 1 2 2 3 3"), 2), Err(Error::TooManyChords { chords: 3, limit: 2 })));
    }

    #[test]
    fn count_examples() {
        let x = CanonicalDiagram::parse("1 2 1 2").unwrap();
        assert_eq!(count_subdiagrams(&x, &w("1 2 3 1 2 3"), 12).unwrap(), 3);
        assert_eq!(count_subdiagrams(&x, &w("1 1 2 2"), 12).unwrap(), 0);
        let tr = CanonicalDiagram::parse("1 2 3 1 2 3").unwrap();
        assert_eq!(count_subdiagrams(&tr, &w("1 2 3 1 2 3"), 12).unwrap(), 1);
        assert_eq!(count_subdiagrams(&CanonicalDiagram::empty(), &w("1 2 1 2"), 12).unwrap(), 1);
        assert!(count_subdiagrams(&x, &w("1 1 2 2 3 3"), 2).is_err());
    }

    #[test]
    fn sum_identity_examples() {
        let x = CanonicalDiagram::parse("1 2 1 2").unwrap();
        assert_eq!(decompose_sum_identity(&x, &w("1 2 3 1 2 3"), 12).unwrap(), (3, 3));
        let one = CanonicalDiagram::parse("1 1").unwrap();
        assert_eq!(decompose_sum_identity(&one, &w("1 1 2 2"), 12).unwrap(), (2, 2));
        assert_eq!(decompose_sum_identity(&CanonicalDiagram::empty(), &w("1 2 3 1 3 2"), 12).unwrap(), (1, 1));
    }

    #[test]
    fn concat_examples() {
        assert_eq!(concat(&w("1 2 1 2"), &w("1 2 1 2")), w("1 2 1 2 3 4 3 4"));
        assert_eq!(concat(&GaussWord::empty(), &w("1 2 1 2")), w("1 2 1 2"));
        assert_eq!(concat(&w("1 1"), &w("1 1")), w("1 1 2 2"));
    }

    #[test]
    fn all_words_counts() {
        let counts: Vec<usize> = (0..=5).map(|n| all_gauss_words(n).len()).collect();
        assert_eq!(counts, [1, 1, 3, 15, 105, 945]);
        assert!(all_gauss_words(3).iter().all(|g| *g == g.relabeled()));
    }

    #[test]
    fn chord_positions_pairs() {
        assert_eq!(w("1 2 2 1").chord_positions(), vec![(0, 3), (1, 2)]);
    }
}
