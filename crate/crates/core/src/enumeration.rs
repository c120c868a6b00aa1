//! The diagram bases `G_{<=d}` and `G_{b,d}` with a fixed index order, and
//! the irreducible / connected classifications.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::word::{all_gauss_words, canonical_form, CanonicalDiagram, GaussWord};

/// Largest chord count `enumerate_diagrams` accepts by default.
pub const DEFAULT_ENUMERATION_CAP: usize = 6;

/// Diagrams with at most `depth` chords, ordered by chord count and then by
/// canonical word. Indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramIndex {
    diagrams: Vec<CanonicalDiagram>,
    /// `prefix[k] = n_k = |G_{<=k}|`, with `prefix[0] = 0`.
    prefix: Vec<usize>,
}

impl DiagramIndex {
    pub fn depth(&self) -> usize {
        self.prefix.len() - 1
    }

    pub fn len(&self) -> usize {
        self.diagrams.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diagrams.is_empty()
    }

    /// `n_k`.
    pub fn count_upto(&self, k: usize) -> usize {
        self.prefix[k.min(self.depth())]
    }

    pub fn diagrams(&self) -> &[CanonicalDiagram] {
        &self.diagrams
    }

    /// Diagram with 1-based index `i`.
    pub fn get(&self, i: usize) -> Option<&CanonicalDiagram> {
        i.checked_sub(1).and_then(|i| self.diagrams.get(i))
    }

    /// 1-based index of a diagram.
    pub fn index_of(&self, x: &CanonicalDiagram) -> Option<usize> {
        self.diagrams.binary_search(x).ok().map(|i| i + 1)
    }

    fn check_band(&self, b: usize, d: usize) -> Result<()> {
        if b < 2 || b > d || d > self.depth() {
            return Err(Error::BadBand { b, d });
        }
        Ok(())
    }
}

pub fn enumerate_diagrams(d: usize) -> Result<DiagramIndex> {
    enumerate_diagrams_capped(d, DEFAULT_ENUMERATION_CAP)
}

pub fn enumerate_diagrams_capped(d: usize, cap: usize) -> Result<DiagramIndex> {
    if d > cap {
        return Err(Error::CapExceeded { requested: d, cap });
    }
    let mut diagrams = Vec::new();
    let mut prefix = vec![0];
    for k in 1..=d {
        let classes: BTreeSet<CanonicalDiagram> = all_gauss_words(k).iter().map(canonical_form).collect();
        diagrams.extend(classes);
        prefix.push(diagrams.len());
    }
    Ok(DiagramIndex { diagrams, prefix })
}

/// `G_{b,d}` as `(index, diagram)` pairs, indices `n_{b-1}+1 ..= n_d`.
pub fn band(idx: &DiagramIndex, b: usize, d: usize) -> Result<Vec<(usize, &CanonicalDiagram)>> {
    idx.check_band(b, d)?;
    let lo = idx.count_upto(b - 1);
    let hi = idx.count_upto(d);
    Ok((lo..hi).map(|i| (i + 1, &idx.diagrams[i])).collect())
}

/// Basis restriction used when solving for invariants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Selector {
    All,
    Irr,
    Conn,
}

impl Selector {
    pub fn accepts(self, x: &CanonicalDiagram) -> bool {
        match self {
            Selector::All => true,
            Selector::Irr => is_irreducible(x),
            Selector::Conn => is_connected(x),
        }
    }
}

impl FromStr for Selector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "all" => Ok(Selector::All),
            "irr" => Ok(Selector::Irr),
            "conn" => Ok(Selector::Conn),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

impl fmt::Display for Selector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Selector::All => "all",
            Selector::Irr => "irr",
            Selector::Conn => "conn",
        })
    }
}

/// Indices in the band whose diagram passes `selector`, in index order.
pub fn basis_select(idx: &DiagramIndex, b: usize, d: usize, selector: Selector) -> Result<Vec<usize>> {
    Ok(band(idx, b, d)?
        .into_iter()
        .filter(|(_, x)| selector.accepts(x))
        .map(|(i, _)| i)
        .collect())
}

/// The diagrams behind `basis_select`.
pub fn basis_diagrams(idx: &DiagramIndex, b: usize, d: usize, selector: Selector) -> Result<Vec<CanonicalDiagram>> {
    Ok(band(idx, b, d)?
        .into_iter()
        .filter(|(_, x)| selector.accepts(x))
        .map(|(_, x)| x.clone())
        .collect())
}

/// Whether chords `a` and `b` (given as sorted position pairs) interleave.
pub fn chords_cross(a: (usize, usize), b: (usize, usize)) -> bool {
    (a.0 < b.0 && b.0 < a.1 && a.1 < b.1) || (b.0 < a.0 && a.0 < b.1 && b.1 < a.1)
}

/// No chord is isolated, i.e. every chord crosses some other chord.
pub fn is_irreducible(x: &CanonicalDiagram) -> bool {
    word_is_irreducible(x.word())
}

pub fn word_is_irreducible(w: &GaussWord) -> bool {
    let chords = w.chord_positions();
    chords
        .iter()
        .enumerate()
        .all(|(i, &a)| chords.iter().enumerate().any(|(j, &b)| i != j && chords_cross(a, b)))
}

/// Not a product of two nonempty diagrams.
pub fn is_connected(x: &CanonicalDiagram) -> bool {
    word_is_connected(x.word())
}

/// A word is a product iff some rotation of it has a proper nonempty prefix
/// that is itself a double-occurrence word.
pub fn word_is_connected(w: &GaussWord) -> bool {
    let len = w.len();
    let letters = w.relabeled();
    let letters = letters.letters();
    let mut open = vec![false; w.chords() + 1];
    for start in 0..len {
        open.iter_mut().for_each(|o| *o = false);
        let mut unmatched = 0usize;
        for p in 0..len - 1 {
            let l = letters[(start + p) % len] as usize;
            open[l] = !open[l];
            if open[l] {
                unmatched += 1;
            } else {
                unmatched -= 1;
            }
            if unmatched == 0 {
                return false;
            }
        }
    }
    true
}
