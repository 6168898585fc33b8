//! Python bindings: `import unitri_py`.

use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;
use unitri::dilation::{self, BoundaryStyle};
use unitri::empty_simplex;
use unitri::formats;
use unitri::fundamental_square::{paths_compatible as square_paths_compatible, SquareContext};
use unitri::lattice_core::{AmbientLattice, ConvexRegion, LatticePoint, LatticeSimplex};
use unitri::polytope_pipeline::{triangulate_dilation, LatticePolytope, PipelineOptions};
use unitri::verifier;

fn py_err(e: unitri::Error) -> PyErr {
    match e {
        unitri::Error::Domain(m) => PyValueError::new_err(m),
        unitri::Error::Internal(m) => PyRuntimeError::new_err(m),
    }
}

fn style(name: &str) -> PyResult<BoundaryStyle> {
    name.parse::<BoundaryStyle>().map_err(py_err)
}

fn points(v: &[[i64; 3]]) -> Vec<LatticePoint> {
    v.iter().map(|p| LatticePoint::from(*p)).collect()
}

fn lattice(basis: Option<[[i64; 3]; 3]>) -> PyResult<AmbientLattice> {
    match basis {
        None => Ok(AmbientLattice::integer()),
        Some(b) => AmbientLattice::new(b.map(LatticePoint::from)).map_err(py_err),
    }
}

/// Result of classifying an empty tetrahedron.
#[pyclass(frozen, get_all)]
struct EmptyClass {
    p: i64,
    q: i64,
    canonical_p: i64,
    tetragonal: bool,
    /// Affine map to the normal form, as (matrix, translation).
    linear: [[i64; 3]; 3],
    translation: [i64; 3],
}

#[pymethods]
impl EmptyClass {
    fn __repr__(&self) -> String {
        format!("EmptyClass(p={}, q={}, canonical_p={}, tetragonal={})", self.p, self.q, self.canonical_p, self.tetragonal)
    }
}

#[pyclass(frozen)]
struct Triangulation(unitri::lattice_core::Triangulation);

#[pymethods]
impl Triangulation {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        formats::read_triangulation(text).map(Triangulation).map_err(py_err)
    }

    fn to_json(&self) -> String {
        formats::write_triangulation(&self.0)
    }

    /// Boundary surface in OFF format.
    fn boundary_off(&self) -> String {
        formats::boundary_off(&self.0)
    }

    #[getter]
    fn vertices(&self) -> Vec<[i64; 3]> {
        self.0.vertices.iter().map(|v| v.to_array()).collect()
    }

    #[getter]
    fn tetrahedra(&self) -> Vec<[u32; 4]> {
        self.0.tetrahedra.clone()
    }

    #[getter]
    fn method(&self) -> String {
        self.0.meta.method.clone()
    }

    #[getter]
    fn boundary_style(&self) -> &'static str {
        self.0.boundary_style.name()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __repr__(&self) -> String {
        format!("Triangulation({} cells, {} vertices, method={:?})", self.0.len(), self.0.vertices.len(), self.0.meta.method)
    }
}

#[pyclass(frozen)]
struct Report(verifier::VerificationReport);

#[pymethods]
impl Report {
    #[getter]
    fn passed(&self) -> bool {
        self.0.passed()
    }

    fn failures(&self) -> Vec<String> {
        self.0.failures().into_iter().map(String::from).collect()
    }

    fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.0).expect("report serializes")
    }

    fn __repr__(&self) -> String {
        format!("Report(passed={}, failures={:?})", self.0.passed(), self.0.failures())
    }
}

/// Classify an empty lattice tetrahedron given by four vertices.
#[pyfunction]
#[pyo3(signature = (vertices, lattice_basis=None))]
fn classify(vertices: [[i64; 3]; 4], lattice_basis: Option<[[i64; 3]; 3]>) -> PyResult<EmptyClass> {
    let s = LatticeSimplex::new(vertices.map(LatticePoint::from), lattice(lattice_basis)?).map_err(py_err)?;
    let c = empty_simplex::classify(&s).map_err(py_err)?;
    Ok(EmptyClass {
        p: c.p,
        q: c.q,
        canonical_p: empty_simplex::canonical_p(c.p, c.q).map_err(py_err)?,
        tetragonal: empty_simplex::is_tetragonal(&c),
        linear: c.to_canonical.linear,
        translation: c.to_canonical.translation.to_array(),
    })
}

#[pyfunction]
fn canonical_p(p: i64, q: i64) -> PyResult<i64> {
    empty_simplex::canonical_p(p, q).map_err(py_err)
}

#[pyfunction]
fn paths_compatible(p: i64, q: i64) -> PyResult<bool> {
    let ctx = SquareContext::new(p, q).map_err(py_err)?;
    square_paths_compatible(&ctx).map_err(py_err)
}

/// Triangulation of `k·Δ'(p, q)`; `boundary` is "standard", "quasi" or "free".
#[pyfunction]
#[pyo3(signature = (p, q, k, boundary="standard"))]
fn triangulate(py: Python<'_>, p: i64, q: i64, k: i64, boundary: &str) -> PyResult<Triangulation> {
    let s = style(boundary)?;
    py.detach(|| dilation::triangulate(p, q, k, s)).map(Triangulation).map_err(py_err)
}

/// Unimodular triangulation of the dilation `kP` of the hull of `vertices`.
#[pyfunction]
#[pyo3(signature = (vertices, k, boundary="standard", dissection=false))]
fn triangulate_polytope(py: Python<'_>, vertices: Vec<[i64; 3]>, k: i64, boundary: &str, dissection: bool) -> PyResult<Triangulation> {
    let s = style(boundary)?;
    let poly = LatticePolytope::new(&points(&vertices)).map_err(py_err)?;
    py.detach(|| triangulate_dilation(&poly, PipelineOptions { k, style: s, dissection })).map(Triangulation).map_err(py_err)
}

/// Verify `t` against a region given as "dilate:p,q,k", "x,y,z;..." or a list of points.
#[pyfunction]
#[pyo3(signature = (t, region, boundary=None))]
fn verify(py: Python<'_>, t: &Triangulation, region: &Bound<'_, PyAny>, boundary: Option<&str>) -> PyResult<Report> {
    let (r, dilate) = if let Ok(spec) = region.extract::<String>() {
        let dilate = spec
            .strip_prefix("dilate:")
            .map(|s| s.split(',').map(|x| x.trim().parse::<i64>().unwrap_or(0)).collect::<Vec<_>>());
        (formats::parse_region(&spec).map_err(py_err)?, dilate)
    } else {
        let pts: Vec<[i64; 3]> = region.extract()?;
        (ConvexRegion::from_points(&points(&pts)).map_err(py_err)?, None)
    };
    let style = boundary.map(style).transpose()?;
    let report = py.detach(|| {
        let mut rep = verifier::verify_complex(&t.0, &r).merge(verifier::verify_unimodular(&t.0));
        if let Some([_, q, k]) = dilate.as_deref().and_then(|d| <[i64; 3]>::try_from(d).ok()) {
            let s = style.unwrap_or(t.0.boundary_style);
            rep = rep.merge(verifier::verify_boundary(&t.0, &empty_simplex::delta_prime(q, 1), k, s));
        }
        rep
    });
    Ok(Report(report))
}

/// Number of points of `Λ_{p,q}` in `k·Δ'(p, q)`.
#[pyfunction]
fn dilate_point_count(p: i64, q: i64, k: i64) -> usize {
    verifier::count_dilate_points(p, q, k)
}

#[pymodule]
pub fn unitri_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<EmptyClass>()?;
    m.add_class::<Triangulation>()?;
    m.add_class::<Report>()?;
    m.add_function(wrap_pyfunction!(classify, m)?)?;
    m.add_function(wrap_pyfunction!(canonical_p, m)?)?;
    m.add_function(wrap_pyfunction!(paths_compatible, m)?)?;
    m.add_function(wrap_pyfunction!(triangulate, m)?)?;
    m.add_function(wrap_pyfunction!(triangulate_polytope, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(dilate_point_count, m)?)?;
    Ok(())
}
