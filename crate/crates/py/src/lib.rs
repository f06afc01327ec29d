//! Python bindings: `import realcover`.

use pyo3::create_exception;
use pyo3::exceptions::{PyException, PyValueError};
use pyo3::prelude::*;

use realcover_core::bn;
use realcover_core::covering4::{build_covnum, covering_number, CoveringNumberTarget};
use realcover_core::pl;
use realcover_core::planner::{self, PlanError};
use realcover_core::topology::{self, CoverTarget};

create_exception!(realcover, Infeasible, PyException, "The requested covering does not exist.");

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

/// A covering specification: topological type, target, degree and
/// per-component degrees.
#[pyclass(frozen, skip_from_py_object, eq, hash, module = "realcover")]
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct CoverSpec(topology::CoverSpec);

#[pymethods]
impl CoverSpec {
    #[new]
    #[pyo3(signature = (g, s, a, k, deg=Vec::new(), target="P1"))]
    fn new(g: u32, s: u32, a: u8, k: u32, deg: Vec<u32>, target: &str) -> PyResult<Self> {
        let mut spec = topology::CoverSpec::projective(g, s, a, k, &deg).map_err(value_error)?;
        spec.target = target.parse::<CoverTarget>().map_err(value_error)?;
        Ok(Self(spec))
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text).map(Self).map_err(value_error)
    }

    fn to_json(&self) -> String {
        to_json(&self.0)
    }

    #[getter]
    fn g(&self) -> u32 {
        self.0.top.g
    }

    #[getter]
    fn s(&self) -> u32 {
        self.0.top.s
    }

    #[getter]
    fn a(&self) -> u8 {
        self.0.top.a
    }

    #[getter]
    fn k(&self) -> u32 {
        self.0.k
    }

    #[getter]
    fn deg(&self) -> Vec<u32> {
        self.0.degrees.entries().to_vec()
    }

    #[getter]
    fn target(&self) -> &'static str {
        self.0.target.as_str()
    }

    fn __repr__(&self) -> String {
        format!("CoverSpec({})", self.0)
    }
}

/// A seed covering and construction steps that certify a target.
#[pyclass(frozen, skip_from_py_object, eq, module = "realcover")]
#[derive(Clone, PartialEq, Eq)]
pub struct Plan(planner::Plan);

#[pymethods]
impl Plan {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text).map(Self).map_err(value_error)
    }

    fn to_json(&self) -> String {
        to_json(&self.0)
    }

    #[getter]
    fn provenance(&self) -> Option<&'static str> {
        self.0.provenance.map(|p| p.as_str())
    }

    fn __len__(&self) -> usize {
        self.0.steps.len()
    }

    /// Symbolic outcome of running the plan.
    fn execute(&self) -> PyResult<CoverSpec> {
        realcover_core::execute(&self.0.seed, &self.0.steps).map(CoverSpec).map_err(value_error)
    }

    fn __repr__(&self) -> String {
        format!("Plan({})", to_json(&self.0))
    }
}

/// Piecewise-linear model of the real locus.
#[pyclass(frozen, skip_from_py_object, module = "realcover")]
#[derive(Clone)]
pub struct PlCover(pl::PlCover);

#[pymethods]
impl PlCover {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text).map(Self).map_err(value_error)
    }

    fn to_json(&self) -> String {
        to_json(&self.0)
    }

    #[getter]
    fn k(&self) -> u32 {
        self.0.k
    }

    fn windings(&self) -> Vec<(String, i64)> {
        self.0.windings().into_iter().map(|(l, w)| (l.to_string(), w)).collect()
    }

    /// `(x, count)` pairs at regular sample values, `x` as a float.
    fn sample_fibers(&self) -> Vec<(f64, usize)> {
        use num_traits::ToPrimitive;
        self.0.sample_fibers().into_iter().map(|(x, n)| (x.to_f64().unwrap_or(f64::NAN), n)).collect()
    }

    fn fiber_csv(&self) -> String {
        self.0.fiber_csv()
    }

    fn covering_number(&self) -> usize {
        covering_number(&self.0)
    }

    fn __len__(&self) -> usize {
        self.0.components.len()
    }
}

/// Name of the first failed admissibility test, or None.
#[pyfunction]
fn admissible(spec: &CoverSpec) -> Option<&'static str> {
    topology::admissibility_violation(&spec.0).map(|v| v.name())
}

#[pyfunction]
fn plan(spec: &CoverSpec) -> PyResult<Plan> {
    match planner::plan(&spec.0) {
        Ok(p) => Ok(Plan(p)),
        Err(PlanError::Infeasible(why)) => Err(Infeasible::new_err(why)),
    }
}

#[pyfunction]
fn verify(plan: &Plan, spec: &CoverSpec) -> bool {
    planner::verify_plan(&plan.0, &spec.0)
}

#[pyfunction]
fn realize(plan: &Plan) -> PyResult<PlCover> {
    pl::realize(&plan.0).map(PlCover).map_err(value_error)
}

/// Degree-4 cover of type `(g, s, a)` with every degree 0 and covering
/// number `kcov`; returns the spec and the cover.
#[pyfunction]
fn covnum(g: u32, s: u32, a: u8, kcov: u32) -> PyResult<(CoverSpec, PlCover)> {
    let t = CoveringNumberTarget::new(g, s, a, kcov).map_err(|e| Infeasible::new_err(e.to_string()))?;
    let built = build_covnum(&t).map_err(value_error)?;
    Ok((CoverSpec(built.spec), PlCover(built.cover)))
}

#[pyfunction]
#[pyo3(signature = (g, k, r=1))]
fn rho(g: u32, k: u32, r: u32) -> PyResult<i64> {
    bn::check_query(k, r).map_err(value_error)?;
    Ok(bn::rho(g, k, r))
}

/// `(hurwitz, moduli, image_bound)`.
#[pyfunction]
fn dims(g: u32, k: u32) -> PyResult<(i64, i64, i64)> {
    let d = bn::dims(g, k).map_err(value_error)?;
    Ok((d.hurwitz, d.moduli, d.image_bound))
}

/// The recorded fact for `(g, s, a, k)` as a JSON string.
#[pyfunction]
fn facts(g: u32, s: u32, a: u8, k: u32) -> String {
    to_json(&bn::lookup(g, s, a, k))
}

#[pymodule]
fn realcover(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<CoverSpec>()?;
    m.add_class::<Plan>()?;
    m.add_class::<PlCover>()?;
    m.add("Infeasible", m.py().get_type::<Infeasible>())?;
    m.add_function(wrap_pyfunction!(admissible, m)?)?;
    m.add_function(wrap_pyfunction!(plan, m)?)?;
    m.add_function(wrap_pyfunction!(verify, m)?)?;
    m.add_function(wrap_pyfunction!(realize, m)?)?;
    m.add_function(wrap_pyfunction!(covnum, m)?)?;
    m.add_function(wrap_pyfunction!(rho, m)?)?;
    m.add_function(wrap_pyfunction!(dims, m)?)?;
    m.add_function(wrap_pyfunction!(facts, m)?)?;
    Ok(())
}
