//! Python bindings. The module is importable as `chordlab`.

use std::collections::BTreeSet;

use chordlab::invariants::{catalog_eval as core_catalog_eval, parse_catalog, quarter as core_quarter, Derivation};
use chordlab::moves::DEFAULT_FUZZ_MAX_CHORDS;
use chordlab::word::DEFAULT_SUBWORD_LIMIT;
use chordlab::{MoveType, RelatorType, Selector};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// A Gauss word; every letter occurs exactly twice.
#[pyclass(name = "GaussWord", module = "chordlab", frozen, skip_from_py_object, eq, hash)]
#[derive(Clone, PartialEq, Eq, Hash)]
struct PyGaussWord(chordlab::GaussWord);

#[pymethods]
impl PyGaussWord {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(PyGaussWord).map_err(err)
    }

    #[staticmethod]
    fn from_letters(letters: Vec<u32>) -> PyResult<Self> {
        chordlab::GaussWord::new(letters).map(PyGaussWord).map_err(err)
    }

    #[getter]
    fn letters(&self) -> Vec<u32> {
        self.0.letters().to_vec()
    }

    #[getter]
    fn chords(&self) -> usize {
        self.0.chords()
    }

    fn canonical(&self) -> PyCanonicalDiagram {
        PyCanonicalDiagram(chordlab::canonical_form(&self.0))
    }

    fn isomorphic(&self, other: &PyGaussWord) -> bool {
        chordlab::word::isomorphic(&self.0, &other.0)
    }

    fn concat(&self, other: &PyGaussWord) -> PyGaussWord {
        PyGaussWord(chordlab::word::concat(&self.0, &other.0))
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("GaussWord('{}')", self.0)
    }
}

/// Canonical representative of a chord diagram.
#[pyclass(name = "CanonicalDiagram", module = "chordlab", frozen, skip_from_py_object, eq, ord, hash)]
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct PyCanonicalDiagram(chordlab::CanonicalDiagram);

#[pymethods]
impl PyCanonicalDiagram {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        chordlab::CanonicalDiagram::parse(text).map(PyCanonicalDiagram).map_err(err)
    }

    #[getter]
    fn letters(&self) -> Vec<u32> {
        self.0.letters().to_vec()
    }

    #[getter]
    fn chords(&self) -> usize {
        self.0.chords()
    }

    fn is_irreducible(&self) -> bool {
        chordlab::enumeration::is_irreducible(&self.0)
    }

    fn is_connected(&self) -> bool {
        chordlab::enumeration::is_connected(&self.0)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        format!("CanonicalDiagram('{}')", self.0)
    }
}

/// An integer combination of basis diagrams.
#[pyclass(name = "InvariantSpec", module = "chordlab", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyInvariantSpec(chordlab::InvariantSpec);

#[pymethods]
impl PyInvariantSpec {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        chordlab::InvariantSpec::from_json(text).map(PyInvariantSpec).map_err(err)
    }

    fn to_json(&self) -> String {
        self.0.to_json()
    }

    #[getter]
    fn name(&self) -> Option<String> {
        self.0.name.clone()
    }

    #[getter]
    fn band(&self) -> (usize, usize) {
        self.0.band
    }

    #[getter]
    fn selector(&self) -> String {
        self.0.selector.to_string()
    }

    #[getter]
    fn types(&self) -> Vec<String> {
        self.0.types.iter().map(|t| t.to_string()).collect()
    }

    #[getter]
    fn basis(&self) -> Vec<String> {
        self.0.basis.iter().map(|x| x.to_string()).collect()
    }

    #[getter]
    fn coeffs(&self) -> Vec<i64> {
        self.0.coeffs.clone()
    }

    #[pyo3(signature = (word, max_chords = DEFAULT_SUBWORD_LIMIT))]
    fn evaluate(&self, word: &PyGaussWord, max_chords: usize) -> PyResult<i64> {
        chordlab::invariants::evaluate_with_limit(&self.0, &word.0, max_chords).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("InvariantSpec(name={:?}, band={:?}, coeffs={:?})", self.0.label(), self.0.band, self.0.coeffs)
    }
}

fn selector(s: &str) -> PyResult<Selector> {
    s.parse().map_err(err)
}

fn relator_types(s: &str) -> PyResult<BTreeSet<RelatorType>> {
    RelatorType::parse_list(s).map_err(err)
}

#[pyfunction]
fn canonical_form(word: &PyGaussWord) -> PyCanonicalDiagram {
    word.canonical()
}

#[pyfunction]
fn count_subdiagrams(x: &PyCanonicalDiagram, word: &PyGaussWord) -> PyResult<u64> {
    chordlab::count_subdiagrams(&x.0, &word.0, DEFAULT_SUBWORD_LIMIT).map_err(err)
}

/// Diagrams with 1..=depth chords in index order.
#[pyfunction]
fn enumerate_diagrams(depth: usize) -> PyResult<Vec<PyCanonicalDiagram>> {
    let idx = chordlab::enumerate_diagrams(depth).map_err(err)?;
    Ok(idx.diagrams().iter().cloned().map(PyCanonicalDiagram).collect())
}

#[pyfunction]
#[pyo3(signature = (b, d, selector = "all"))]
fn basis(b: usize, d: usize, selector: &str) -> PyResult<Vec<PyCanonicalDiagram>> {
    let sel = self::selector(selector)?;
    let idx = chordlab::enumerate_diagrams(d).map_err(err)?;
    let xs = chordlab::basis_diagrams(&idx, b, d, sel).map_err(err)?;
    Ok(xs.into_iter().map(PyCanonicalDiagram).collect())
}

/// Each relator as a list of `(coefficient, diagram)` pairs.
#[pyfunction]
fn relator_set(types: &str, b: usize, d: usize) -> PyResult<Vec<Vec<(i64, String)>>> {
    let rs = chordlab::relator_set(&relator_types(types)?, b, d).map_err(err)?;
    Ok(rs.elements().iter().map(|e| e.terms().map(|(x, c)| (c, x.to_string())).collect()).collect())
}

/// `(basis, kernel vectors)` for a band, selector and relator types.
#[pyfunction]
#[pyo3(signature = (b, d, selector, types))]
fn kernel(b: usize, d: usize, selector: &str, types: &str) -> PyResult<(Vec<String>, Vec<Vec<i64>>)> {
    let der = Derivation::new(b, d, self::selector(selector)?, &relator_types(types)?).map_err(err)?;
    let vs = der.kernel.vectors_i64().map_err(err)?;
    Ok((der.basis.iter().map(|x| x.to_string()).collect(), vs))
}

#[pyfunction]
fn derive_invariants(b: usize, d: usize, selector: &str, types: &str) -> PyResult<Vec<PyInvariantSpec>> {
    let specs = chordlab::derive_invariants(b, d, self::selector(selector)?, &relator_types(types)?).map_err(err)?;
    Ok(specs.into_iter().map(PyInvariantSpec).collect())
}

#[pyfunction]
fn builtin(name: &str) -> PyResult<PyInvariantSpec> {
    chordlab::builtin(name).map(PyInvariantSpec).map_err(err)
}

#[pyfunction]
fn evaluate(spec: &PyInvariantSpec, word: &PyGaussWord) -> PyResult<i64> {
    chordlab::evaluate(&spec.0, &word.0).map_err(err)
}

#[pyfunction]
fn quarter(value: i64) -> Option<i64> {
    core_quarter(value)
}

/// Words visited by a seeded walk, starting word first.
#[pyfunction]
#[pyo3(signature = (start, types, steps, seed, max_chords = DEFAULT_FUZZ_MAX_CHORDS))]
fn fuzz_walk(start: &PyGaussWord, types: &str, steps: usize, seed: u64, max_chords: usize) -> PyResult<Vec<PyGaussWord>> {
    let moves = MoveType::parse_list(types).map_err(err)?;
    let trace = chordlab::fuzz_walk(&start.0, &moves, steps, seed, max_chords);
    Ok(trace.words().cloned().map(PyGaussWord).collect())
}

/// Evaluate specs over `name<TAB>word` text; rows that fail carry `None`.
#[pyfunction]
fn catalog_eval(text: &str, specs: Vec<PyRef<'_, PyInvariantSpec>>) -> Vec<(String, Option<Vec<i64>>)> {
    let specs: Vec<chordlab::InvariantSpec> = specs.iter().map(|s| s.0.clone()).collect();
    core_catalog_eval(&specs, &parse_catalog(text)).rows.into_iter().map(|r| (r.name, r.values.ok())).collect()
}

#[pymodule(name = "chordlab")]
fn chordlab_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGaussWord>()?;
    m.add_class::<PyCanonicalDiagram>()?;
    m.add_class::<PyInvariantSpec>()?;
    m.add_function(wrap_pyfunction!(canonical_form, m)?)?;
    m.add_function(wrap_pyfunction!(count_subdiagrams, m)?)?;
    m.add_function(wrap_pyfunction!(enumerate_diagrams, m)?)?;
    m.add_function(wrap_pyfunction!(basis, m)?)?;
    m.add_function(wrap_pyfunction!(relator_set, m)?)?;
    m.add_function(wrap_pyfunction!(kernel, m)?)?;
    m.add_function(wrap_pyfunction!(derive_invariants, m)?)?;
    m.add_function(wrap_pyfunction!(builtin, m)?)?;
    m.add_function(wrap_pyfunction!(evaluate, m)?)?;
    m.add_function(wrap_pyfunction!(quarter, m)?)?;
    m.add_function(wrap_pyfunction!(fuzz_walk, m)?)?;
    m.add_function(wrap_pyfunction!(catalog_eval, m)?)?;
    Ok(())
}
