use pyo3::prelude::*;
use pyo3::types::PyModule;

fn with_module<F: FnOnce(&Bound<'_, PyModule>)>(f: F) {
    Python::attach(|py| {
        let m = PyModule::new(py, "dcoset").unwrap();
        dcoset_py::dcoset_module(&m).unwrap();
        f(&m);
    });
}

#[test]
fn worked_example_through_python() {
    with_module(|m| {
        let py = m.py();
        let locals = pyo3::types::PyDict::new(py);
        locals.set_item("d", m).unwrap();
        py.run(
            c"
g = d.Automorphism({1: 'x1 x2'}, {1: 'x1 x2^-1'})
h = d.Automorphism({2: 'x2 x1'}, {2: 'x2 x1^-1'})
n, rep = d.coset_product(1, g, h)
assert n == 1
assert rep.images() == {1: 'x1 x2', 2: 'x3 x1 x2', 3: 'x2'}, rep.images()
assert rep == d.product_formula_direct(1, 1, g, h)
assert d.markov_matrix('c2', 1, g) == [['1/2', '1/2'], ['1/2', '1/2']]
assert d.reduce_word('x1 x1^-1') == ''
assert (g * g.inverse()).is_identity()
assert d.verify('words', 3)[0]
",
            None,
            Some(&locals),
        )
        .unwrap();
    });
}

#[test]
fn domain_errors_raise_value_error() {
    with_module(|m| {
        let py = m.py();
        let bad = m
            .getattr("Automorphism")
            .unwrap()
            .call1(([(1u32, "x1 x2")].into_iter().collect::<std::collections::BTreeMap<_, _>>(),
                    [(1u32, "x2 x1")].into_iter().collect::<std::collections::BTreeMap<_, _>>()));
        assert!(bad.unwrap_err().is_instance_of::<pyo3::exceptions::PyValueError>(py));
        let swap = m.getattr("nielsen_swap").unwrap().call1((2u32, 2u32));
        assert!(swap.unwrap_err().is_instance_of::<pyo3::exceptions::PyValueError>(py));
    });
}
