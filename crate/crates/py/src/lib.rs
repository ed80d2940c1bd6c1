//! Python bindings: Hopf algebras over `F_p`, their doubles, diagrams of the
//! decorated category and the pivotal checks on its centre.

use std::collections::BTreeSet;
use std::path::PathBuf;

use pivotal_workbench::doubles::{self, DoubleAlgebra};
use pivotal_workbench::exalg::PrimeField;
use pivotal_workbench::freecat::{self as fc, CentreObject, Diagram, PivotalAssignment};
use pivotal_workbench::hopf::{self, HopfAlgebra};
use pivotal_workbench::{bundled, cli, io};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

/// `(label, beta, g)`
type PairTuple = (String, Vec<u64>, Vec<u64>);

fn value_err(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_assignment(name: &str) -> Result<PivotalAssignment, String> {
    match name {
        "lift_id" => Ok(PivotalAssignment::LiftId),
        "lift_rho" => Ok(PivotalAssignment::LiftRho),
        "zeta" => Ok(PivotalAssignment::Zeta),
        "signature_only" => Ok(PivotalAssignment::SignatureOnly),
        other => Err(format!(
            "unknown assignment `{other}` (expected lift_id, lift_rho, zeta or signature_only)"
        )),
    }
}

/// A finite-dimensional Hopf algebra over a prime field.
#[pyclass(name = "HopfAlgebra", frozen)]
struct PyHopf {
    inner: HopfAlgebra<PrimeField>,
}

#[pymethods]
impl PyHopf {
    /// One of the bundled algebras, e.g. `"sweedler_f5"`.
    #[staticmethod]
    fn bundled(name: &str) -> PyResult<Self> {
        bundled::by_name(name)
            .map(|inner| Self { inner })
            .ok_or_else(|| value_err(format!("no bundled algebra `{name}`; known: {:?}", bundled::BUNDLED)))
    }

    /// Load a JSON file; rational files need `field_override`.
    #[staticmethod]
    #[pyo3(signature = (path, field_override=None))]
    fn load(path: PathBuf, field_override: Option<u64>) -> PyResult<Self> {
        match io::load_path(&path, field_override).map_err(value_err)? {
            io::AnyHopf::Prime(inner) => Ok(Self { inner }),
            io::AnyHopf::Rational(_) => Err(value_err("rational algebra: pass field_override=p")),
        }
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name().to_string()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    #[getter]
    fn modulus(&self) -> u64 {
        self.inner.field().modulus()
    }

    /// `[(axiom, passed), ...]`
    fn check_axioms(&self) -> Vec<(String, bool)> {
        hopf::check_axioms(&self.inner)
            .checks
            .iter()
            .map(|c| (c.name.to_string(), c.passed))
            .collect()
    }

    fn group_likes(&self) -> PyResult<Vec<Vec<u64>>> {
        let gs = hopf::enumerate_group_likes(&self.inner).map_err(value_err)?;
        Ok(gs.into_iter().map(|g| g.element).collect())
    }

    fn characters(&self) -> PyResult<Vec<Vec<u64>>> {
        let cs = hopf::enumerate_characters(&self.inner).map_err(value_err)?;
        Ok(cs.into_iter().map(|c| c.functional).collect())
    }

    /// `[(label, beta, g), ...]`
    fn pairs_in_involution(&self) -> PyResult<Vec<PairTuple>> {
        let pairs = hopf::find_pairs_in_involution(&self.inner).map_err(value_err)?;
        Ok(pairs
            .iter()
            .map(|p| (hopf::pair_label(&self.inner, p), p.beta.functional.clone(), p.g.element.clone()))
            .collect())
    }

    /// Whether the pairs in involution, the one-dimensional anti-YD modules
    /// and the verified isomorphisms `D(H) -> A(H)` all match up.
    fn pairs_match_isomorphisms(&self) -> PyResult<bool> {
        let h = &self.inner;
        let pairs = hopf::find_pairs_in_involution(h).map_err(value_err)?;
        let ayd = doubles::enumerate_one_dim_ayd(h).map_err(value_err)?;
        let key = |p: &hopf::PairInInvolution<PrimeField>| (p.beta.functional.clone(), p.g.element.clone());
        let same = pairs.iter().map(key).collect::<BTreeSet<_>>() == ayd.iter().map(key).collect::<BTreeSet<_>>();
        let d = doubles::build_drinfeld_double_unchecked(h).map_err(value_err)?;
        let a = doubles::build_anti_double_unchecked(h).map_err(value_err)?;
        Ok(same && pairs.iter().all(|p| doubles::iso_from_pair(&d, &a, p).is_ok()))
    }

    fn drinfeld_double(&self) -> PyResult<PyDouble> {
        let inner = doubles::build_drinfeld_double(&self.inner).map_err(value_err)?;
        Ok(PyDouble { inner })
    }

    fn anti_double(&self) -> PyResult<PyDouble> {
        let inner = doubles::build_anti_double(&self.inner).map_err(value_err)?;
        Ok(PyDouble { inner })
    }

    fn mul(&self, x: Vec<u64>, y: Vec<u64>) -> PyResult<Vec<u64>> {
        let n = self.inner.dim();
        if x.len() != n || y.len() != n {
            return Err(value_err(format!("vectors must have length {n}")));
        }
        let p = self.inner.field().modulus();
        let (x, y): (Vec<u64>, Vec<u64>) = (x.iter().map(|v| v % p).collect(), y.iter().map(|v| v % p).collect());
        Ok(self.inner.mul(&x, &y))
    }

    fn to_json(&self) -> String {
        io::to_json_text(&io::hopf_to_file(&self.inner))
    }

    fn __repr__(&self) -> String {
        format!("HopfAlgebra({:?}, dim={}, p={})", self.inner.name(), self.inner.dim(), self.modulus())
    }
}

/// `D(H)` or `A(H)` on `H* (x) H`.
#[pyclass(name = "Double", frozen)]
struct PyDouble {
    inner: DoubleAlgebra<PrimeField>,
}

#[pymethods]
impl PyDouble {
    #[getter]
    fn kind(&self) -> String {
        self.inner.kind().to_string()
    }

    #[getter]
    fn name(&self) -> String {
        self.inner.name()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn unit(&self) -> Vec<u64> {
        self.inner.unit().to_vec()
    }

    fn basis_names(&self) -> Vec<String> {
        self.inner.basis_names()
    }

    fn mul(&self, x: Vec<u64>, y: Vec<u64>) -> PyResult<Vec<u64>> {
        let n = self.inner.dim();
        if x.len() != n || y.len() != n {
            return Err(value_err(format!("vectors must have length {n}")));
        }
        Ok(self.inner.mul(&x, &y))
    }

    fn to_json(&self) -> String {
        io::to_json_text(&self.inner.to_file())
    }

    fn __repr__(&self) -> String {
        format!("Double({:?}, dim={})", self.inner.name(), self.inner.dim())
    }
}

/// A morphism `X^n -> X^m` in normal form, written `"n>m (a-b)[d] ..."`.
#[pyclass(name = "Diagram", frozen, eq, hash)]
#[derive(PartialEq, Eq, Hash)]
struct PyDiagram {
    inner: Diagram,
}

#[pymethods]
impl PyDiagram {
    #[new]
    fn new(text: &str) -> PyResult<Self> {
        text.parse().map(|inner| Self { inner }).map_err(value_err)
    }

    #[staticmethod]
    fn identity(n: usize) -> Self {
        Self { inner: Diagram::identity(n) }
    }

    #[staticmethod]
    fn rho() -> Self {
        Self { inner: Diagram::rho() }
    }

    #[staticmethod]
    fn sigma() -> Self {
        Self { inner: Diagram::sigma() }
    }

    #[staticmethod]
    fn ev() -> Self {
        Self { inner: Diagram::ev() }
    }

    #[staticmethod]
    fn coev() -> Self {
        Self { inner: Diagram::coev() }
    }

    #[getter]
    fn source(&self) -> usize {
        self.inner.source()
    }

    #[getter]
    fn target(&self) -> usize {
        self.inner.target()
    }

    /// `(plain, decorated)` closed loops.
    #[getter]
    fn loops(&self) -> (u32, u32) {
        self.inner.loops()
    }

    /// `self ∘ other`
    fn compose(&self, other: &PyDiagram) -> PyResult<Self> {
        fc::compose(&self.inner, &other.inner).map(|inner| Self { inner }).map_err(value_err)
    }

    fn tensor(&self, other: &PyDiagram) -> Self {
        Self { inner: fc::tensor(&self.inner, &other.inner) }
    }

    fn dual(&self) -> Self {
        Self { inner: fc::dual(&self.inner) }
    }

    fn __matmul__(&self, other: &PyDiagram) -> PyResult<Self> {
        self.compose(other)
    }

    fn __str__(&self) -> String {
        self.inner.to_string()
    }

    fn __repr__(&self) -> String {
        format!("Diagram({:?})", self.inner.to_string())
    }
}

#[pyfunction]
fn bundled_names() -> Vec<String> {
    bundled::BUNDLED.iter().map(|s| s.to_string()).collect()
}

/// Labels of the centre objects on `X^n`.
#[pyfunction]
fn half_braidings(n: usize) -> PyResult<Vec<String>> {
    let hbs = fc::enumerate_half_braidings(n).map_err(value_err)?;
    Ok(hbs.into_iter().map(|hb| CentreObject::new(hb).label()).collect())
}

/// `(passed, witness)` for `lift_id`, `lift_rho`, `zeta` or
/// `signature_only`, checked on centre objects of width at most `bound`.
#[pyfunction]
#[pyo3(signature = (assignment, bound=3))]
fn verify_pivotal(assignment: &str, bound: usize) -> PyResult<(bool, Option<String>)> {
    let p = parse_assignment(assignment).map_err(value_err)?;
    let report = fc::verify_pivotal(&p, bound).map_err(value_err)?;
    let witness = report.witness.as_ref().map(|w| {
        format!(
            "{}: {} -> {} via {}: {} != {}",
            w.check, w.source, w.target, w.morphism, w.left, w.right
        )
    });
    Ok((report.passed(), witness))
}

/// Whether `zeta` is a pivotal structure not induced from the base.
#[pyfunction]
#[pyo3(signature = (bound=3))]
fn zeta_not_induced(bound: usize) -> PyResult<bool> {
    Ok(fc::non_inducedness_report(bound).map_err(value_err)?.passed())
}

/// Run a command-line invocation in-process: `(exit_code, stdout, stderr)`.
#[pyfunction]
fn run_cli(args: Vec<String>) -> (i32, String, String) {
    let out = cli::invoke(std::iter::once("pivotal-workbench".to_string()).chain(args));
    (out.code, out.stdout, out.stderr)
}

#[pymodule]
#[pyo3(name = "pivotal_workbench")]
fn py_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyHopf>()?;
    m.add_class::<PyDouble>()?;
    m.add_class::<PyDiagram>()?;
    m.add_function(wrap_pyfunction!(bundled_names, m)?)?;
    m.add_function(wrap_pyfunction!(half_braidings, m)?)?;
    m.add_function(wrap_pyfunction!(verify_pivotal, m)?)?;
    m.add_function(wrap_pyfunction!(zeta_not_induced, m)?)?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    Ok(())
}
