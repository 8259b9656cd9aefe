//! Python bindings. Words are passed as strings in the `x1 x2^-1` grammar,
//! matrices come back as nested lists of fraction strings.

use std::collections::BTreeMap;

use dcoset::automorphism::{self as aut, Endomorphism};
use dcoset::json::{automorphism_from_str, automorphism_to_string};
use dcoset::rep::{builtin_group, RepEngine, Subgroup};
use dcoset::verify::{run_suite, Suite};
use dcoset::{cosets, Error, Word};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn err(e: Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse(s: &str) -> PyResult<Word> {
    s.parse().map_err(err)
}

fn endo(images: BTreeMap<u32, String>) -> PyResult<Endomorphism> {
    let pairs = images
        .into_iter()
        .map(|(i, w)| Ok((i, parse(&w)?)))
        .collect::<PyResult<Vec<_>>>()?;
    Ok(Endomorphism::from_index_images(pairs))
}

/// An automorphism of the free group, stored with its inverse.
#[pyclass(name = "Automorphism", module = "dcoset", frozen, eq, from_py_object)]
#[derive(Clone, PartialEq)]
pub struct PyAutomorphism(pub aut::Automorphism);

#[pymethods]
impl PyAutomorphism {
    /// `images` and `inverse_images` map generator indices to words; raises
    /// `ValueError` unless the two maps are mutually inverse.
    #[new]
    fn new(images: BTreeMap<u32, String>, inverse_images: BTreeMap<u32, String>) -> PyResult<Self> {
        aut::Automorphism::new(endo(images)?, endo(inverse_images)?)
            .map(Self)
            .map_err(err)
    }

    #[staticmethod]
    fn identity() -> Self {
        Self(aut::Automorphism::identity())
    }

    #[staticmethod]
    fn from_json(s: &str) -> PyResult<Self> {
        automorphism_from_str(s).map(Self).map_err(err)
    }

    fn to_json(&self) -> String {
        automorphism_to_string(&self.0)
    }

    fn image(&self, index: u32) -> String {
        self.0.image_of(index).to_string()
    }

    fn apply(&self, word: &str) -> PyResult<String> {
        Ok(self.0.apply(&parse(word)?).to_string())
    }

    fn images(&self) -> BTreeMap<u32, String> {
        self.0
            .fwd()
            .images()
            .iter()
            .map(|(g, w)| (g.index(), w.to_string()))
            .collect()
    }

    /// `self.compose(other)` applies `other` first.
    fn compose(&self, other: &PyAutomorphism) -> Self {
        Self(self.0.compose(&other.0))
    }

    fn __mul__(&self, other: &PyAutomorphism) -> Self {
        self.compose(other)
    }

    fn inverse(&self) -> Self {
        Self(self.0.inverse())
    }

    fn support_bound(&self) -> u32 {
        self.0.support_bound()
    }

    fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    /// Whether `x_1..x_m` are fixed.
    fn is_in_h(&self, m: u32) -> bool {
        aut::is_in_h(&self.0, m)
    }

    fn __repr__(&self) -> String {
        let body: Vec<String> = self
            .images()
            .into_iter()
            .map(|(i, w)| format!("x{i} -> {}", if w.is_empty() { "1" } else { &w }))
            .collect();
        format!("Automorphism({})", body.join(", "))
    }
}

fn wrap(a: aut::Automorphism) -> PyAutomorphism {
    PyAutomorphism(a)
}

fn unwrap(list: Vec<PyAutomorphism>) -> Vec<aut::Automorphism> {
    list.into_iter().map(|a| a.0).collect()
}

/// Free reduction, returned in the text grammar.
#[pyfunction]
fn reduce_word(word: &str) -> PyResult<String> {
    Ok(parse(word)?.to_string())
}

#[pyfunction]
fn nielsen_swap(i: u32, j: u32) -> PyResult<PyAutomorphism> {
    aut::nielsen_swap(i, j).map(wrap).map_err(err)
}

#[pyfunction]
fn nielsen_invert(i: u32) -> PyResult<PyAutomorphism> {
    aut::nielsen_invert(i).map(wrap).map_err(err)
}

#[pyfunction]
fn nielsen_right_mult(i: u32, j: u32) -> PyResult<PyAutomorphism> {
    aut::nielsen_right_mult(i, j).map(wrap).map_err(err)
}

#[pyfunction]
#[pyo3(signature = (m_fix, max_index, length, seed=0))]
fn random_automorphism(m_fix: u32, max_index: u32, length: usize, seed: u64) -> PyResult<PyAutomorphism> {
    aut::random_automorphism(m_fix, max_index, length, seed).map(wrap).map_err(err)
}

#[pyfunction]
fn theta(m: u32, j: u32) -> PyAutomorphism {
    wrap(cosets::theta(m, j))
}

/// Returns `(N, rep)` for `g theta_N h` at the canonical block size.
#[pyfunction]
fn coset_product(m: u32, g: &PyAutomorphism, h: &PyAutomorphism) -> (u32, PyAutomorphism) {
    let p = cosets::coset_product(m, &g.0, &h.0);
    (p.n, wrap(p.rep))
}

#[pyfunction]
fn star_product(m: u32, g: &PyAutomorphism, h: &PyAutomorphism) -> (u32, PyAutomorphism) {
    let p = cosets::star_product(m, &g.0, &h.0);
    (p.n, wrap(p.rep))
}

#[pyfunction]
fn tuple_product(m: u32, gs: Vec<PyAutomorphism>, hs: Vec<PyAutomorphism>) -> PyResult<(u32, Vec<PyAutomorphism>)> {
    let t = cosets::tuple_product(m, &unwrap(gs), &unwrap(hs)).map_err(err)?;
    Ok((t.n, t.reps.into_iter().map(wrap).collect()))
}

#[pyfunction]
fn product_formula_direct(m: u32, n: u32, g: &PyAutomorphism, h: &PyAutomorphism) -> PyResult<PyAutomorphism> {
    cosets::product_formula_direct(m, n, &g.0, &h.0).map(wrap).map_err(err)
}

#[pyfunction]
fn witness_left(m: u32, n: u32, r: &PyAutomorphism, g: &PyAutomorphism, h: &PyAutomorphism) -> PyResult<PyAutomorphism> {
    cosets::witness_left(m, n, &r.0, &g.0, &h.0).map(wrap).map_err(err)
}

#[pyfunction]
fn witness_right(m: u32, n: u32, q: &PyAutomorphism, g: &PyAutomorphism, h: &PyAutomorphism) -> PyResult<PyAutomorphism> {
    cosets::witness_right(m, n, &q.0, &g.0, &h.0).map(wrap).map_err(err)
}

#[pyfunction]
fn star_vs_pair_check(m: u32, g: &PyAutomorphism, h: &PyAutomorphism) -> bool {
    cosets::star_vs_pair_check(m, &g.0, &h.0)
}

#[pyfunction]
fn triple_product_disjoint(m: u32, g: &PyAutomorphism, h: &PyAutomorphism, f: &PyAutomorphism) -> PyAutomorphism {
    wrap(cosets::triple_product_disjoint(m, &g.0, &h.0, &f.0))
}

/// Markov matrix of `g` over a built-in group, as fraction strings. With
/// `subgroup` (element indices) the matrix is compressed to invariants.
#[pyfunction]
#[pyo3(signature = (group, m, g, subgroup=None, max_points=None))]
fn markov_matrix(
    group: &str,
    m: usize,
    g: &PyAutomorphism,
    subgroup: Option<Vec<usize>>,
    max_points: Option<u64>,
) -> PyResult<Vec<Vec<String>>> {
    let k = builtin_group(group).map_err(err)?;
    let mut engine = RepEngine::new(k.clone());
    if let Some(n) = max_points {
        engine = engine.with_max_points(n);
    }
    let mut t = engine.markov_matrix(&g.0, m).map_err(err)?;
    if let Some(members) = subgroup {
        let u = Subgroup::from_members(&k, &members).map_err(err)?;
        t = engine.compress_to_invariants(&u, m, &t).map_err(err)?;
    }
    Ok(t.to_strings())
}

#[pyfunction]
fn weak_limit_check(group: &str, m: usize, m_cyl: usize, j: usize) -> PyResult<bool> {
    let engine = RepEngine::new(builtin_group(group).map_err(err)?);
    engine.weak_limit_check(m, m_cyl, j).map_err(err)
}

/// Runs a named self-check suite; returns `(passed, report)`.
#[pyfunction]
#[pyo3(signature = (suite="all", seed=0))]
fn verify(suite: &str, seed: u64) -> PyResult<(bool, String)> {
    let suite: Suite = suite.parse().map_err(PyValueError::new_err)?;
    let report = run_suite(suite, seed);
    Ok((report.passed(), report.to_string()))
}

#[pymodule]
#[pyo3(name = "dcoset")]
pub fn dcoset_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyAutomorphism>()?;
    m.add_function(wrap_pyfunction!(reduce_word, m)?)?;
    m.add_function(wrap_pyfunction!(nielsen_swap, m)?)?;
    m.add_function(wrap_pyfunction!(nielsen_invert, m)?)?;
    m.add_function(wrap_pyfunction!(nielsen_right_mult, m)?)?;
    m.add_function(wrap_pyfunction!(random_automorphism, m)?)?;
    m.add_function(wrap_pyfunction!(theta, m)?)?;
    m.add_function(wrap_pyfunction!(coset_product, m)?)?;
    m.add_function(wrap_pyfunction!(star_product, m)?)?;
    m.add_function(wrap_pyfunction!(tuple_product, m)?)?;
    m.add_function(wrap_pyfunction!(product_formula_direct, m)?)?;
    m.add_function(wrap_pyfunction!(witness_left, m)?)?;
    m.add_function(wrap_pyfunction!(witness_right, m)?)?;
    m.add_function(wrap_pyfunction!(star_vs_pair_check, m)?)?;
    m.add_function(wrap_pyfunction!(triple_product_disjoint, m)?)?;
    m.add_function(wrap_pyfunction!(markov_matrix, m)?)?;
    m.add_function(wrap_pyfunction!(weak_limit_check, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    Ok(())
}
