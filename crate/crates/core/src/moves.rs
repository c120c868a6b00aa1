//! Reidemeister moves acting on Gauss words.
//!
//! Words are treated cyclically. A move pattern is a set of cyclically
//! adjacent position pairs ("blocks"):
//!
//! * RI: one block `ii`; `Sii <-> S`.
//! * SRII / WRII: blocks `ij`, `ji` (strong) or `ij`, `ij` (weak); `SijTji <-> ST`.
//! * SRIII / WRIII: three blocks; the exchange swaps the two letters of every
//!   block, `SijTkiUjk <-> SjiTikUkj` (strong), `SijTikUjk <-> SjiTkiUkj` (weak).

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::relators::RelatorType;
use crate::word::{GaussWord, Letter};

/// Default chord-count cap for expansions during fuzzing.
pub const DEFAULT_FUZZ_MAX_CHORDS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MoveType {
    RI,
    SRII,
    WRII,
    SRIII,
    WRIII,
}

impl MoveType {
    pub const ALL: [MoveType; 5] = [MoveType::RI, MoveType::SRII, MoveType::WRII, MoveType::SRIII, MoveType::WRIII];

    /// The relator type whose vanishing gives invariance under this move.
    pub fn relator_type(self) -> RelatorType {
        match self {
            MoveType::RI => RelatorType::I,
            MoveType::SRII => RelatorType::SII,
            MoveType::WRII => RelatorType::WII,
            MoveType::SRIII => RelatorType::SIII,
            MoveType::WRIII => RelatorType::WIII,
        }
    }

    pub fn from_relator_type(t: RelatorType) -> MoveType {
        match t {
            RelatorType::I => MoveType::RI,
            RelatorType::SII => MoveType::SRII,
            RelatorType::WII => MoveType::WRII,
            RelatorType::SIII => MoveType::SRIII,
            RelatorType::WIII => MoveType::WRIII,
        }
    }

    pub fn parse_list(text: &str) -> Result<BTreeSet<MoveType>> {
        text.split(',').map(str::trim).filter(|t| !t.is_empty()).map(str::parse).collect()
    }
}

impl FromStr for MoveType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.parse::<RelatorType>().map(MoveType::from_relator_type)
    }
}

impl fmt::Display for MoveType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Reduce,
    Expand,
    Exchange,
}

/// Where and how a move applies.
///
/// `positions` holds the block start positions for reductions and exchanges
/// (each block covers `p` and `p + 1 mod len`) and insertion gaps for
/// expansions. `letters` holds the letters removed, the fresh letters
/// inserted, or the six letters of an exchange, block by block.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MoveSite {
    pub kind: MoveType,
    pub direction: Direction,
    pub positions: Vec<usize>,
    pub letters: Vec<Letter>,
}

impl fmt::Display for MoveSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {:?} at {:?} letters {:?}", self.kind, self.direction, self.positions, self.letters)
    }
}

const STRONG_III: [[&str; 3]; 2] = [["ij", "ki", "jk"], ["ji", "ik", "kj"]];
const WEAK_III: [[&str; 3]; 2] = [["ij", "ik", "jk"], ["ji", "ki", "kj"]];

fn block(w: &[Letter], p: usize) -> (Letter, Letter) {
    (w[p], w[(p + 1) % w.len()])
}

fn blocks_disjoint(len: usize, ps: &[usize]) -> bool {
    let mut seen = BTreeSet::new();
    ps.iter().all(|&p| seen.insert(p) && seen.insert((p + 1) % len))
}

/// Whether three blocks (in cyclic order) realize `template` under some
/// injective assignment of letters to the symbols i, j, k.
fn matches_template(blocks: [(Letter, Letter); 3], template: &[&str; 3]) -> bool {
    let mut assigned: [Option<Letter>; 3] = [None; 3];
    for (b, pattern) in blocks.iter().zip(template) {
        let sym: Vec<usize> = pattern.bytes().map(|c| (c - b'i') as usize).collect();
        for (&s, l) in sym.iter().zip([b.0, b.1]) {
            match assigned[s] {
                None => {
                    if assigned.contains(&Some(l)) {
                        return false;
                    }
                    assigned[s] = Some(l);
                }
                Some(a) if a != l => return false,
                _ => {}
            }
        }
    }
    true
}

fn exchange_kind(w: &[Letter], ps: [usize; 3]) -> Option<MoveType> {
    let bs = ps.map(|p| block(w, p));
    for rot in 0..3 {
        let r = [bs[rot], bs[(rot + 1) % 3], bs[(rot + 2) % 3]];
        if STRONG_III.iter().any(|t| matches_template(r, t)) {
            return Some(MoveType::SRIII);
        }
        if WEAK_III.iter().any(|t| matches_template(r, t)) {
            return Some(MoveType::WRIII);
        }
    }
    None
}

fn rii_kind(w: &[Letter], p: usize, q: usize) -> Option<MoveType> {
    let (a, b) = block(w, p);
    if a == b {
        return None;
    }
    match block(w, q) {
        (c, d) if (c, d) == (b, a) => Some(MoveType::SRII),
        (c, d) if (c, d) == (a, b) => Some(MoveType::WRII),
        _ => None,
    }
}

fn expansion_gaps(len: usize) -> std::ops::Range<usize> {
    // gaps 0 and len coincide cyclically
    0..len.max(1)
}

/// All move sites of the requested types, over all cyclic positions,
/// including expansions.
pub fn find_moves(w: &GaussWord, types: &BTreeSet<MoveType>) -> Vec<MoveSite> {
    let letters = w.letters();
    let len = letters.len();
    let fresh = w.max_letter() + 1;
    let mut sites = BTreeSet::new();

    if types.contains(&MoveType::RI) {
        for p in 0..len {
            let (a, b) = block(letters, p);
            if a == b {
                sites.insert(MoveSite { kind: MoveType::RI, direction: Direction::Reduce, positions: vec![p], letters: vec![a] });
            }
        }
        for g in expansion_gaps(len) {
            sites.insert(MoveSite { kind: MoveType::RI, direction: Direction::Expand, positions: vec![g], letters: vec![fresh] });
        }
    }

    for kind in [MoveType::SRII, MoveType::WRII] {
        if !types.contains(&kind) {
            continue;
        }
        for p in 0..len {
            for q in p + 1..len {
                if blocks_disjoint(len, &[p, q]) && rii_kind(letters, p, q) == Some(kind) {
                    let (a, b) = block(letters, p);
                    sites.insert(MoveSite { kind, direction: Direction::Reduce, positions: vec![p, q], letters: vec![a, b] });
                }
            }
        }
        for g1 in expansion_gaps(len) {
            for g2 in g1..len.max(1) {
                sites.insert(MoveSite {
                    kind,
                    direction: Direction::Expand,
                    positions: vec![g1, g2],
                    letters: vec![fresh, fresh + 1],
                });
            }
        }
    }

    if types.contains(&MoveType::SRIII) || types.contains(&MoveType::WRIII) {
        let starts: Vec<usize> = (0..len).filter(|&p| block(letters, p).0 != block(letters, p).1).collect();
        for (x, &p1) in starts.iter().enumerate() {
            for (y, &p2) in starts.iter().enumerate().skip(x + 1) {
                for &p3 in starts.iter().skip(y + 1) {
                    let ps = [p1, p2, p3];
                    if !blocks_disjoint(len, &ps) {
                        continue;
                    }
                    if let Some(kind) = exchange_kind(letters, ps) {
                        if types.contains(&kind) {
                            let ls = ps.iter().flat_map(|&p| [block(letters, p).0, block(letters, p).1]).collect();
                            sites.insert(MoveSite { kind, direction: Direction::Exchange, positions: ps.to_vec(), letters: ls });
                        }
                    }
                }
            }
        }
    }

    sites.into_iter().collect()
}

fn check_site(w: &GaussWord, s: &MoveSite) -> Result<()> {
    let letters = w.letters();
    let len = letters.len();
    let in_range = |ps: &[usize], bound: usize| ps.iter().all(|&p| p < bound);
    let ok = match (s.kind, s.direction) {
        (MoveType::RI, Direction::Reduce) => {
            s.positions.len() == 1 && len >= 2 && in_range(&s.positions, len) && {
                let (a, b) = block(letters, s.positions[0]);
                a == b && s.letters == [a]
            }
        }
        (MoveType::SRII | MoveType::WRII, Direction::Reduce) => {
            s.positions.len() == 2
                && len >= 4
                && in_range(&s.positions, len)
                && blocks_disjoint(len, &s.positions)
                && rii_kind(letters, s.positions[0], s.positions[1]) == Some(s.kind)
                && s.letters == [block(letters, s.positions[0]).0, block(letters, s.positions[0]).1]
        }
        (MoveType::SRIII | MoveType::WRIII, Direction::Exchange) => {
            s.positions.len() == 3
                && len >= 6
                && in_range(&s.positions, len)
                && blocks_disjoint(len, &s.positions)
                && exchange_kind(letters, [s.positions[0], s.positions[1], s.positions[2]]) == Some(s.kind)
                && s.positions.iter().flat_map(|&p| [block(letters, p).0, block(letters, p).1]).eq(s.letters.iter().copied())
        }
        (MoveType::RI, Direction::Expand) => {
            s.positions.len() == 1 && s.letters.len() == 1 && in_range(&s.positions, len + 1)
        }
        (MoveType::SRII | MoveType::WRII, Direction::Expand) => {
            s.positions.len() == 2
                && s.positions[0] <= s.positions[1]
                && in_range(&s.positions, len + 1)
                && s.letters.len() == 2
                && s.letters[0] != s.letters[1]
        }
        _ => false,
    };
    let fresh_ok = s.direction != Direction::Expand || s.letters.iter().all(|l| *l > 0 && !letters.contains(l));
    if ok && fresh_ok {
        Ok(())
    } else {
        Err(Error::StaleSite)
    }
}

/// Apply a site to the word it was found on.
pub fn apply_move(w: &GaussWord, s: &MoveSite) -> Result<GaussWord> {
    check_site(w, s)?;
    let letters = w.letters();
    let len = letters.len();
    let out = match s.direction {
        Direction::Reduce => letters.iter().copied().filter(|l| !s.letters.contains(l)).collect(),
        Direction::Exchange => {
            let mut out = letters.to_vec();
            for &p in &s.positions {
                out.swap(p, (p + 1) % len);
            }
            out
        }
        Direction::Expand => {
            let (i, j) = (s.letters[0], s.letters.get(1).copied().unwrap_or(0));
            let inserts: Vec<(usize, Vec<Letter>)> = match s.kind {
                MoveType::RI => vec![(s.positions[0], vec![i, i])],
                MoveType::SRII => vec![(s.positions[0], vec![i, j]), (s.positions[1], vec![j, i])],
                _ => vec![(s.positions[0], vec![i, j]), (s.positions[1], vec![i, j])],
            };
            let mut out = Vec::with_capacity(len + 4);
            for p in 0..=len {
                for (g, ins) in &inserts {
                    if *g == p {
                        out.extend_from_slice(ins);
                    }
                }
                if p < len {
                    out.push(letters[p]);
                }
            }
            out
        }
    };
    Ok(GaussWord::from_raw(out))
}

/// Chords added by a site.
fn growth(s: &MoveSite) -> usize {
    match s.direction {
        Direction::Expand => s.letters.len(),
        _ => 0,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzStep {
    pub site: MoveSite,
    pub word: GaussWord,
}

/// A seeded random walk; `truncated` is set when no move was applicable
/// before the requested number of steps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FuzzTrace {
    pub start: GaussWord,
    pub steps: Vec<FuzzStep>,
    pub truncated: bool,
}

impl FuzzTrace {
    /// The start word followed by every visited word.
    pub fn words(&self) -> impl Iterator<Item = &GaussWord> {
        std::iter::once(&self.start).chain(self.steps.iter().map(|s| &s.word))
    }
}

/// Random walk of `steps` moves drawn from `types`. At each step a direction
/// (reduce / expand / exchange) is drawn uniformly among those available,
/// then a site uniformly. Expansions never exceed `max_chords`.
pub fn fuzz_walk(w: &GaussWord, types: &BTreeSet<MoveType>, steps: usize, seed: u64, max_chords: usize) -> FuzzTrace {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = w.clone();
    let mut trace = FuzzTrace { start: w.clone(), steps: Vec::with_capacity(steps), truncated: false };
    for _ in 0..steps {
        let sites: Vec<MoveSite> = find_moves(&current, types)
            .into_iter()
            .filter(|s| current.chords() + growth(s) <= max_chords || growth(s) == 0)
            .collect();
        let directions: Vec<Direction> = [Direction::Reduce, Direction::Expand, Direction::Exchange]
            .into_iter()
            .filter(|d| sites.iter().any(|s| s.direction == *d))
            .collect();
        if directions.is_empty() {
            trace.truncated = true;
            break;
        }
        let dir = directions[rng.random_range(0..directions.len())];
        let pool: Vec<&MoveSite> = sites.iter().filter(|s| s.direction == dir).collect();
        let site = pool[rng.random_range(0..pool.len())].clone();
        current = apply_move(&current, &site).expect("site was found on this word");
        trace.steps.push(FuzzStep { site, word: current.clone() });
    }
    trace
}
