use pyo3::prelude::*;
use pyo3::types::PyDict;

fn run(code: &str) -> PyResult<()> {
    Python::initialize();
    Python::attach(|py| {
        let m = pyo3::wrap_pymodule!(unitri_py::unitri_py)(py);
        let globals = PyDict::new(py);
        globals.set_item("ut", m)?;
        let code = std::ffi::CString::new(code).unwrap();
        py.run(&code, Some(&globals), None)
    })
}

#[test]
fn classify_and_canonical() {
    run(r#"
c = ut.classify([[0, 0, 0], [1, 0, 0], [0, 0, 1], [5, 13, 1]])
assert (c.p, c.q, c.canonical_p, c.tetragonal) == (5, 13, 5, False), c
assert ut.canonical_p(8, 13) == 5
assert ut.paths_compatible(12, 13)
"#)
    .unwrap();
}

#[test]
fn triangulate_and_verify() {
    run(r#"
t = ut.triangulate(2, 7, 4)
assert len(t) == 4 ** 3 * 7
assert len(t.tetrahedra) == len(t) and len(t.vertices) == ut.dilate_point_count(2, 7, 4)
r = ut.verify(t, "dilate:2,7,4")
assert r.passed, r.failures()
assert ut.Triangulation.from_json(t.to_json()).to_json() == t.to_json()
"#)
    .unwrap();
}

#[test]
fn errors_become_value_errors() {
    let err = run("ut.triangulate(2, 7, 2)").unwrap_err();
    Python::attach(|py| assert!(err.is_instance_of::<pyo3::exceptions::PyValueError>(py)));
    assert!(run("ut.triangulate(2, 7, 4, boundary='sideways')").is_err());
}
