//! Invariant functionals `sum a_i x_i`: derivation from relator kernels, the
//! built-in `lambda3` / `lambda4`, evaluation on words and catalog tables.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumeration::{basis_diagrams, enumerate_diagrams, Selector};
use crate::error::{Error, Result};
use crate::intlinalg::{build_matrix, left_kernel, to_i64_vec, IntegerMatrix, LatticeBasis};
use crate::moves::FuzzTrace;
use crate::relators::{relator_set, RelatorSet, RelatorType};
use crate::word::{subdiagram_histogram, CanonicalDiagram, GaussWord, DEFAULT_SUBWORD_LIMIT};

/// An integer combination of basis diagrams, evaluated by sub-diagram counts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantSpec {
    #[serde(default)]
    pub name: Option<String>,
    pub band: (usize, usize),
    pub selector: Selector,
    pub types: Vec<RelatorType>,
    pub basis: Vec<CanonicalDiagram>,
    pub coeffs: Vec<i64>,
}

impl InvariantSpec {
    pub fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| "invariant".to_string())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let spec: InvariantSpec = serde_json::from_str(text).map_err(|e| Error::InvalidSpec(e.to_string()))?;
        spec.validate()?;
        Ok(spec)
    }

    /// Check shape, basis membership and that the coefficients annihilate
    /// every relator of the declared types.
    pub fn validate(&self) -> Result<()> {
        let (b, d) = self.band;
        if self.basis.len() != self.coeffs.len() {
            return Err(Error::InvalidSpec(format!(
                "{} basis diagrams but {} coefficients",
                self.basis.len(),
                self.coeffs.len()
            )));
        }
        let types: BTreeSet<RelatorType> = self.types.iter().copied().collect();
        let derivation = Derivation::new(b, d, self.selector, &types)?;
        for x in &self.basis {
            if !derivation.basis.contains(x) {
                return Err(Error::InvalidSpec(format!("diagram [{x}] is not in the {} basis of band {b}:{d}", self.selector)));
            }
        }
        let m = build_matrix(&self.basis, &derivation.relators);
        let v: Vec<_> = self.coeffs.iter().map(|&c| c.into()).collect();
        let product = m.left_mul(&v)?;
        if let Some(j) = product.iter().position(|p| *p != 0.into()) {
            return Err(Error::InvalidSpec(format!(
                "coefficients do not annihilate relator {}",
                derivation.relators.elements()[j]
            )));
        }
        Ok(())
    }

    /// Chord counts spanned by the basis.
    fn sizes(&self) -> std::ops::RangeInclusive<usize> {
        let lo = self.basis.iter().map(|x| x.chords()).min().unwrap_or(1);
        let hi = self.basis.iter().map(|x| x.chords()).max().unwrap_or(0);
        lo..=hi
    }
}

/// Everything computed on the way to a set of invariants.
#[derive(Clone, Debug)]
pub struct Derivation {
    pub band: (usize, usize),
    pub selector: Selector,
    pub types: BTreeSet<RelatorType>,
    pub basis: Vec<CanonicalDiagram>,
    pub relators: RelatorSet,
    pub matrix: IntegerMatrix,
    pub kernel: LatticeBasis,
}

impl Derivation {
    pub fn new(b: usize, d: usize, selector: Selector, types: &BTreeSet<RelatorType>) -> Result<Self> {
        let idx = enumerate_diagrams(d)?;
        let basis = basis_diagrams(&idx, b, d, selector)?;
        let relators = relator_set(types, b, d)?;
        let matrix = build_matrix(&basis, &relators);
        let kernel = left_kernel(&matrix);
        Ok(Derivation { band: (b, d), selector, types: types.clone(), basis, relators, matrix, kernel })
    }

    pub fn spec(&self, coeffs: Vec<i64>, name: Option<String>) -> InvariantSpec {
        InvariantSpec {
            name,
            band: self.band,
            selector: self.selector,
            types: self.types.iter().copied().collect(),
            basis: self.basis.clone(),
            coeffs,
        }
    }

    pub fn invariants(&self) -> Result<Vec<InvariantSpec>> {
        self.kernel.vectors().iter().map(|v| Ok(self.spec(to_i64_vec(v)?, None))).collect()
    }
}

/// One spec per kernel basis vector of the constraint matrix.
pub fn derive_invariants(b: usize, d: usize, selector: Selector, types: &BTreeSet<RelatorType>) -> Result<Vec<InvariantSpec>> {
    Derivation::new(b, d, selector, types)?.invariants()
}

pub fn evaluate(spec: &InvariantSpec, w: &GaussWord) -> Result<i64> {
    evaluate_with_limit(spec, w, DEFAULT_SUBWORD_LIMIT)
}

pub fn evaluate_with_limit(spec: &InvariantSpec, w: &GaussWord, limit: usize) -> Result<i64> {
    let hist = subdiagram_histogram(w, spec.sizes(), limit)?;
    Ok(spec
        .basis
        .iter()
        .zip(&spec.coeffs)
        .map(|(x, c)| c * hist.get(x).copied().unwrap_or(0) as i64)
        .sum())
}

pub const BUILTIN_NAMES: [&str; 2] = ["lambda3", "lambda4"];

fn diagram(text: &str) -> CanonicalDiagram {
    CanonicalDiagram::parse(text).expect("literal diagram")
}

/// `lambda3` (band 2:3, irreducible basis, strong RIII) and `lambda4`
/// (band 2:4, connected basis, strong RIII), both derived on demand.
pub fn builtin(name: &str) -> Result<InvariantSpec> {
    let siii: BTreeSet<RelatorType> = [RelatorType::SIII].into();
    match name {
        "lambda3" => {
            let der = Derivation::new(2, 3, Selector::Irr, &siii)?;
            let [v] = der.kernel.vectors() else {
                return Err(Error::InvalidSpec(format!("expected a rank 1 kernel, got rank {}", der.kernel.rank())));
            };
            Ok(der.spec(to_i64_vec(v)?, Some(name.to_string())))
        }
        "lambda4" => {
            let der = Derivation::new(2, 4, Selector::Conn, &siii)?;
            let pos = |w: &str| {
                der.basis.iter().position(|x| *x == diagram(w)).ok_or_else(|| Error::InvalidSpec(format!("missing [{w}]")))
            };
            let (x, tr, h) = (pos("1 2 1 2")?, pos("1 2 3 1 2 3")?, pos("1 2 3 1 3 2")?);
            let sub = der.kernel.vanishing_on(&[x, tr]);
            let [g] = sub.vectors() else {
                return Err(Error::InvalidSpec(format!("expected a rank 1 sublattice, got rank {}", sub.rank())));
            };
            let mut g = to_i64_vec(g)?;
            if g[h] == -2 {
                g.iter_mut().for_each(|c| *c = -*c);
            }
            let has_plus_eight = g.iter().zip(&der.basis).any(|(&c, x)| x.chords() == 4 && c == 8);
            if g[h] != 2 || !has_plus_eight {
                return Err(Error::InvalidSpec(format!("generator {g:?} does not normalize")));
            }
            Ok(der.spec(g, Some(name.to_string())))
        }
        other => Err(Error::UnknownName(other.to_string())),
    }
}

/// `lambda3 / 4` when it is an integer.
pub fn quarter(lambda3: i64) -> Option<i64> {
    (lambda3 % 4 == 0).then_some(lambda3 / 4)
}

/// A step at which the invariant changed along a trace.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub step: usize,
    pub before: i64,
    pub after: i64,
}

/// Evaluate along a trace; returns the values and every change.
pub fn check_trace(spec: &InvariantSpec, trace: &FuzzTrace) -> Result<(Vec<i64>, Vec<Violation>)> {
    let values = trace.words().map(|w| evaluate(spec, w)).collect::<Result<Vec<_>>>()?;
    let violations = values
        .windows(2)
        .enumerate()
        .filter(|(_, v)| v[0] != v[1])
        .map(|(i, v)| Violation { step: i + 1, before: v[0], after: v[1] })
        .collect();
    Ok((values, violations))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub line: usize,
    pub name: String,
    pub word: std::result::Result<GaussWord, String>,
}

/// `name<TAB>word` per line; blank lines and `#` comments are skipped.
/// Malformed rows are kept with their error.
pub fn parse_catalog(text: &str) -> Vec<CatalogEntry> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| {
            let line = i + 1;
            match l.split_once('\t') {
                Some((name, word)) => CatalogEntry {
                    line,
                    name: name.trim().to_string(),
                    word: word.parse::<GaussWord>().map_err(|e| e.to_string()),
                },
                None => CatalogEntry { line, name: l.trim().to_string(), word: Err("expected name<TAB>word".into()) },
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogRow {
    pub name: String,
    pub word: Option<GaussWord>,
    pub values: std::result::Result<Vec<i64>, String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogTable {
    pub invariants: Vec<String>,
    pub rows: Vec<CatalogRow>,
    /// Pairs equal on the first invariant but separated by a later one.
    pub distinguished: Vec<(String, String)>,
}

pub fn catalog_eval(specs: &[InvariantSpec], catalog: &[CatalogEntry]) -> CatalogTable {
    let rows: Vec<CatalogRow> = catalog
        .par_iter()
        .map(|entry| match &entry.word {
            Ok(w) => CatalogRow {
                name: entry.name.clone(),
                word: Some(w.clone()),
                values: specs
                    .iter()
                    .map(|s| evaluate(s, w))
                    .collect::<Result<Vec<_>>>()
                    .map_err(|e| e.to_string()),
            },
            Err(e) => CatalogRow {
                name: entry.name.clone(),
                word: None,
                values: Err(format!("line {}: {e}", entry.line)),
            },
        })
        .collect();

    let mut distinguished = Vec::new();
    let good: Vec<(&String, &Vec<i64>)> = rows.iter().filter_map(|r| r.values.as_ref().ok().map(|v| (&r.name, v))).collect();
    for (i, (a, va)) in good.iter().enumerate() {
        for (b, vb) in good.iter().skip(i + 1) {
            if !va.is_empty() && va[0] == vb[0] && va[1..] != vb[1..] {
                distinguished.push(((*a).clone(), (*b).clone()));
            }
        }
    }
    CatalogTable { invariants: specs.iter().map(InvariantSpec::label).collect(), rows, distinguished }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> GaussWord {
        s.parse().unwrap()
    }

    fn coeff(spec: &InvariantSpec, x: &str) -> i64 {
        let x = diagram(x);
        spec.basis.iter().position(|y| *y == x).map_or(0, |i| spec.coeffs[i])
    }

    #[test]
    fn lambda3_builtin() {
        let l3 = builtin("lambda3").unwrap();
        assert_eq!(l3.band, (2, 3));
        assert_eq!(l3.basis.len(), 3);
        assert_eq!(coeff(&l3, "1 2 1 2"), 1);
        assert_eq!(coeff(&l3, "1 2 3 1 2 3"), -3);
        assert_eq!(coeff(&l3, "1 2 3 1 3 2"), 3);
    }

    #[test]
    fn lambda4_builtin() {
        let l4 = builtin("lambda4").unwrap();
        assert_eq!(l4.basis.len(), 9);
        assert_eq!(coeff(&l4, "1 2 1 2"), 0);
        assert_eq!(coeff(&l4, "1 2 3 1 2 3"), 0);
        assert_eq!(coeff(&l4, "1 2 3 1 3 2"), 2);
        let mut rest: Vec<i64> = l4.basis.iter().zip(&l4.coeffs).filter(|(x, _)| x.chords() == 4).map(|(_, &c)| c).collect();
        rest.sort_unstable();
        assert_eq!(rest, [-4, -2, 1, 2, 5, 8]);
    }

    #[test]
    fn unknown_builtin() {
        assert!(matches!(builtin("lambda5"), Err(Error::UnknownName(_))));
    }

    #[test]
    fn evaluate_examples() {
        let l3 = builtin("lambda3").unwrap();
        let l4 = builtin("lambda4").unwrap();
        assert_eq!(evaluate(&l3, &GaussWord::empty()).unwrap(), 0);
        assert_eq!(evaluate(&l4, &GaussWord::empty()).unwrap(), 0);
        // x = 3, tr = 1, h = 0
        assert_eq!(evaluate(&l3, &w("1 2 3 1 2 3")).unwrap(), 0);
        // a single crossing pair: x = 1
        assert_eq!(evaluate(&l3, &w("1 2 1 2")).unwrap(), 1);
    }

    #[test]
    fn evaluate_limit() {
        let l3 = builtin("lambda3").unwrap();
        let big: Vec<u32> = (1..=13).chain(1..=13).collect();
        assert!(matches!(evaluate(&l3, &GaussWord::new(big).unwrap()), Err(Error::TooManyChords { .. })));
    }

    #[test]
    fn json_round_trip_and_validation() {
        let l3 = builtin("lambda3").unwrap();
        let back = InvariantSpec::from_json(&l3.to_json()).unwrap();
        assert_eq!(back, l3);

        let mut bad = l3.clone();
        bad.coeffs[2] += 1;
        assert!(matches!(InvariantSpec::from_json(&bad.to_json()), Err(Error::InvalidSpec(_))));

        let mut bad = l3.clone();
        bad.coeffs.pop();
        assert!(matches!(bad.validate(), Err(Error::InvalidSpec(_))));

        assert!(matches!(InvariantSpec::from_json("{"), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn derive_examples() {
        let siii: BTreeSet<RelatorType> = [RelatorType::SIII].into();
        let wiii: BTreeSet<RelatorType> = [RelatorType::WIII].into();
        assert_eq!(derive_invariants(2, 3, Selector::Irr, &siii).unwrap().len(), 1);
        assert!(derive_invariants(2, 3, Selector::Irr, &wiii).unwrap().is_empty());
        assert_eq!(derive_invariants(2, 4, Selector::Conn, &siii).unwrap().len(), 2);
        assert!(matches!(derive_invariants(1, 3, Selector::Irr, &siii), Err(Error::BadBand { .. })));
    }

    #[test]
    fn catalogs() {
        let specs = [builtin("lambda3").unwrap()];
        let table = catalog_eval(&specs, &[]);
        assert!(table.rows.is_empty());

        let cat = parse_catalog("# comment\n\ntrivial\t-\nbad\t1 2 1\nnotab\n");
        assert_eq!(cat.len(), 3);
        let table = catalog_eval(&specs, &cat);
        assert_eq!(table.rows[0].values, Ok(vec![0]));
        assert!(table.rows[1].values.is_err());
        assert!(table.rows[2].values.as_ref().unwrap_err().contains("line 5"));
    }

    #[test]
    fn distinguished_pairs() {
        let specs = [builtin("lambda3").unwrap(), builtin("lambda4").unwrap()];
        let cat = parse_catalog("a\t-\nb\t1 1\nc\t1 2 1 2\n");
        let table = catalog_eval(&specs, &cat);
        // a and b agree everywhere, nothing else collides on lambda3
        assert!(table.distinguished.is_empty());
        assert_eq!(table.invariants, ["lambda3", "lambda4"]);
    }

    #[test]
    fn quarters() {
        assert_eq!(quarter(16), Some(4));
        assert_eq!(quarter(-20), Some(-5));
        assert_eq!(quarter(3), None);
    }
}
