//! Formal integer combinations of chord diagrams, the free module `Z[G_{<=l}]`.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};

use crate::error::{Error, Result};
use crate::word::CanonicalDiagram;

/// A finite sum of chord diagrams with nonzero integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModuleElement {
    terms: BTreeMap<CanonicalDiagram, i64>,
}

impl ModuleElement {
    pub fn zero() -> Self {
        ModuleElement::default()
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (CanonicalDiagram, i64)>) -> Self {
        let mut e = ModuleElement::zero();
        for (d, c) in terms {
            e.add_term(d, c);
        }
        e
    }

    pub fn add_term(&mut self, d: CanonicalDiagram, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(d);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if *o.get() == 0 {
                    o.remove();
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, d: &CanonicalDiagram) -> i64 {
        self.terms.get(d).copied().unwrap_or(0)
    }

    /// Terms in diagram order.
    pub fn terms(&self) -> impl Iterator<Item = (&CanonicalDiagram, i64)> {
        self.terms.iter().map(|(d, &c)| (d, c))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn scaled(&self, k: i64) -> Self {
        ModuleElement::from_terms(self.terms.iter().map(|(d, &c)| (d.clone(), c * k)))
    }

    /// `O_{b,d}`: keep only terms whose chord count lies in `b..=d`.
    pub fn project(&self, b: usize, d: usize) -> Result<Self> {
        if b < 2 || b > d {
            return Err(Error::BadBand { b, d });
        }
        Ok(self.project_unchecked(b, d))
    }

    pub(crate) fn project_unchecked(&self, b: usize, d: usize) -> Self {
        let terms = self
            .terms
            .iter()
            .filter(|(x, _)| (b..=d).contains(&x.chords()))
            .map(|(x, &c)| (x.clone(), c))
            .collect();
        ModuleElement { terms }
    }

    /// `r` or `-r`, whichever has a positive coefficient on its smallest diagram.
    pub fn sign_normalized(&self) -> Self {
        match self.terms.values().next() {
            Some(&c) if c < 0 => -self.clone(),
            _ => self.clone(),
        }
    }

    /// Smallest and largest chord count among the terms.
    pub fn chord_range(&self) -> Option<(usize, usize)> {
        let lo = self.terms.keys().map(|d| d.chords()).min()?;
        let hi = self.terms.keys().map(|d| d.chords()).max()?;
        Some((lo, hi))
    }
}

impl From<CanonicalDiagram> for ModuleElement {
    fn from(d: CanonicalDiagram) -> Self {
        ModuleElement::from_terms([(d, 1)])
    }
}

impl AddAssign<&ModuleElement> for ModuleElement {
    fn add_assign(&mut self, rhs: &ModuleElement) {
        for (d, &c) in &rhs.terms {
            self.add_term(d.clone(), c);
        }
    }
}

impl Add for ModuleElement {
    type Output = ModuleElement;

    fn add(mut self, rhs: ModuleElement) -> ModuleElement {
        self += &rhs;
        self
    }
}

impl Sub for ModuleElement {
    type Output = ModuleElement;

    fn sub(self, rhs: ModuleElement) -> ModuleElement {
        self + (-rhs)
    }
}

impl Neg for ModuleElement {
    type Output = ModuleElement;

    fn neg(mut self) -> ModuleElement {
        self.terms.values_mut().for_each(|c| *c = -*c);
        self
    }
}

impl fmt::Display for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (d, &c)) in self.terms.iter().enumerate() {
            let sign = if c < 0 { "-" } else if i > 0 { "+" } else { "" };
            let sep = if i > 0 { " " } else { "" };
            let space = if i > 0 { " " } else { "" };
            let mag = c.unsigned_abs();
            let mag = if mag == 1 { String::new() } else { mag.to_string() };
            write!(f, "{sep}{sign}{space}{mag}[{d}]")?;
        }
        Ok(())
    }
}

/// `x~(e)`: the coefficient of `x` in `e`, the linear extension of the
/// indicator of `x`.
pub fn tilde_eval(x: &CanonicalDiagram, e: &ModuleElement) -> i64 {
    e.coefficient(x)
}
