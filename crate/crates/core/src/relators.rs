//! Relators of the five move types and their projected sets
//! `R_type(b, d) = O_{b,d}(R_type)`.
//!
//! A relator is built from a base Gauss word cut into consecutive blocks
//! `S`, `T`, `U` and up to three fresh letters `i, j, k`. Each template term
//! appends one insertion after each block, so `SijTkiUjk` is written
//! `["ij", "ki", "jk"]`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumeration::DEFAULT_ENUMERATION_CAP;
use crate::error::{Error, Result};
use crate::module::ModuleElement;
use crate::word::{all_gauss_words, canonical_form, GaussWord, Letter};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RelatorType {
    I,
    SII,
    WII,
    SIII,
    WIII,
}

type Template = &'static [(i64, &'static [&'static str])];

const TYPE_I: Template = &[(1, &["ii"])];

const TYPE_SII: Template = &[(1, &["ij", "ji"]), (1, &["i", "i"]), (1, &["j", "j"])];

const TYPE_WII: Template = &[(1, &["ij", "ij"]), (1, &["i", "i"]), (1, &["j", "j"])];

const TYPE_SIII: Template = &[
    (1, &["ij", "ki", "jk"]),
    (1, &["ij", "i", "j"]),
    (1, &["i", "ki", "k"]),
    (1, &["j", "k", "jk"]),
    (-1, &["ji", "ik", "kj"]),
    (-1, &["ji", "i", "j"]),
    (-1, &["i", "ik", "k"]),
    (-1, &["j", "k", "kj"]),
];

const TYPE_WIII: Template = &[
    (1, &["ij", "ik", "jk"]),
    (1, &["ij", "i", "j"]),
    (1, &["i", "ik", "k"]),
    (1, &["j", "k", "jk"]),
    (-1, &["ji", "ki", "kj"]),
    (-1, &["ji", "i", "j"]),
    (-1, &["i", "ki", "k"]),
    (-1, &["j", "k", "kj"]),
];

impl RelatorType {
    pub const ALL: [RelatorType; 5] =
        [RelatorType::I, RelatorType::SII, RelatorType::WII, RelatorType::SIII, RelatorType::WIII];

    /// Number of fresh letters; also the number of blocks the base is cut into.
    pub fn inserted_letters(self) -> usize {
        match self {
            RelatorType::I => 1,
            RelatorType::SII | RelatorType::WII => 2,
            RelatorType::SIII | RelatorType::WIII => 3,
        }
    }

    fn template(self) -> Template {
        match self {
            RelatorType::I => TYPE_I,
            RelatorType::SII => TYPE_SII,
            RelatorType::WII => TYPE_WII,
            RelatorType::SIII => TYPE_SIII,
            RelatorType::WIII => TYPE_WIII,
        }
    }

    /// Parse a comma separated list such as `"I,SIII"`.
    pub fn parse_list(text: &str) -> Result<BTreeSet<RelatorType>> {
        text.split(',').map(str::trim).filter(|t| !t.is_empty()).map(str::parse).collect()
    }
}

impl FromStr for RelatorType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "I" | "RI" => Ok(RelatorType::I),
            "SII" | "SRII" => Ok(RelatorType::SII),
            "WII" | "WRII" => Ok(RelatorType::WII),
            "SIII" | "SRIII" => Ok(RelatorType::SIII),
            "WIII" | "WRIII" => Ok(RelatorType::WIII),
            _ => Err(Error::UnknownName(s.to_string())),
        }
    }
}

impl fmt::Display for RelatorType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

fn check_cuts(len: usize, blocks: usize, cuts: &[usize]) -> Result<()> {
    let ok = cuts.len() + 1 == blocks
        && cuts.windows(2).all(|w| w[0] <= w[1])
        && cuts.iter().all(|&c| c <= len);
    if ok {
        Ok(())
    } else {
        Err(Error::BadCuts { cuts: cuts.to_vec(), len, blocks })
    }
}

/// Instantiate the template of `t` on `base`, cut at positions `cuts` into
/// consecutive blocks (blocks may be empty). Fresh letters are chosen above
/// every letter of `base`.
pub fn instantiate_relator(t: RelatorType, base: &GaussWord, cuts: &[usize]) -> Result<ModuleElement> {
    check_cuts(base.len(), t.inserted_letters(), cuts)?;
    let letters = base.letters();
    let mut bounds = Vec::with_capacity(cuts.len() + 2);
    bounds.push(0);
    bounds.extend_from_slice(cuts);
    bounds.push(letters.len());

    let top = base.max_letter();
    let fresh = |c: char| -> Letter {
        match c {
            'i' => top + 1,
            'j' => top + 2,
            'k' => top + 3,
            _ => unreachable!("template symbol {c}"),
        }
    };

    let mut element = ModuleElement::zero();
    for &(coeff, inserts) in t.template() {
        let mut word = Vec::with_capacity(letters.len() + 6);
        for (block, ins) in inserts.iter().enumerate() {
            word.extend_from_slice(&letters[bounds[block]..bounds[block + 1]]);
            word.extend(ins.chars().map(fresh));
        }
        element.add_term(canonical_form(&GaussWord::from_raw(word)), coeff);
    }
    Ok(element)
}

/// All nondecreasing cut vectors splitting a word of length `len` into
/// `blocks` consecutive pieces.
pub fn cut_choices(len: usize, blocks: usize) -> Vec<Vec<usize>> {
    fn rec(from: usize, len: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for c in from..=len {
            cur.push(c);
            rec(c, len, left - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, len, blocks.saturating_sub(1), &mut Vec::new(), &mut out);
    out
}

/// A projected, sign-normalized, deduplicated relator set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelatorSet {
    pub band: (usize, usize),
    pub types: BTreeSet<RelatorType>,
    elements: Vec<ModuleElement>,
}

impl RelatorSet {
    /// Elements in sorted order; this is the column order of constraint matrices.
    pub fn elements(&self) -> &[ModuleElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains_up_to_sign(&self, e: &ModuleElement) -> bool {
        self.elements.binary_search(&e.sign_normalized()).is_ok()
    }
}

/// Base chord counts whose relators can have a term with `b..=d` chords.
pub fn base_window(t: RelatorType, b: usize, d: usize) -> (usize, usize) {
    let k = t.inserted_letters();
    ((b + 1).saturating_sub(k + 2), (d + 1).saturating_sub(k))
}

pub fn relator_set(types: &BTreeSet<RelatorType>, b: usize, d: usize) -> Result<RelatorSet> {
    relator_set_widened(types, b, d, 0)
}

/// `relator_set` with the base window extended by `extra` chords at the top.
pub fn relator_set_widened(types: &BTreeSet<RelatorType>, b: usize, d: usize, extra: usize) -> Result<RelatorSet> {
    if b < 2 || b > d {
        return Err(Error::BadBand { b, d });
    }
    if d > DEFAULT_ENUMERATION_CAP {
        return Err(Error::CapExceeded { requested: d, cap: DEFAULT_ENUMERATION_CAP });
    }
    let mut found = BTreeSet::new();
    for &t in types {
        let (lo, hi) = base_window(t, b, d);
        for m in lo..=hi + extra {
            let bases = all_gauss_words(m);
            let cuts = cut_choices(2 * m, t.inserted_letters());
            let part: BTreeSet<ModuleElement> = bases
                .par_iter()
                .flat_map_iter(|base| {
                    cuts.iter().map(move |c| {
                        instantiate_relator(t, base, c).expect("generated cuts are valid").project_unchecked(b, d)
                    })
                })
                .filter(|e| !e.is_zero())
                .map(|e| e.sign_normalized())
                .collect();
            found.extend(part);
        }
    }
    Ok(RelatorSet { band: (b, d), types: types.clone(), elements: found.into_iter().collect() })
}
