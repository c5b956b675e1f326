//! Python bindings: 2-categories, 2-diagrams, nerves, fibres and homology reports.
//!
//! Homology groups cross the boundary as their printed form (`"Z^2"`, `"Z/3"`, `"0"`),
//! which is also what the CLI reports.

use std::path::Path;

use laxnerve::cli::format::{self, Document};
use laxnerve::fibres::{fibre_over, fibre_under, StrictFunctor};
use laxnerve::grothendieck::{grothendieck, validate_two_diagram};
use laxnerve::hocolim::{thomason_iso_i, thomason_iso_ii};
use laxnerve::invariants::{homology, homology_compare};
use laxnerve::nerves::{double_nerve, geometric_nerve};
use laxnerve::simplicial::TruncSimplicialSet;
use laxnerve::twocat::{Category, TwoFunctor};
use laxnerve::{ValidationReport, DEFAULT_BUDGET, DEFAULT_CAP};
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

fn value_error(e: impl std::fmt::Display) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn violations(r: &ValidationReport) -> Vec<String> {
    r.violations().iter().map(|v| format!("{}: {}", v.kind, v.witness)).collect()
}

#[pyclass(name = "TwoCategory", module = "laxnerve_py", frozen, skip_from_py_object)]
#[derive(Clone)]
pub struct PyTwoCategory {
    inner: laxnerve::TwoCategory,
}

impl From<laxnerve::TwoCategory> for PyTwoCategory {
    fn from(inner: laxnerve::TwoCategory) -> Self {
        PyTwoCategory { inner }
    }
}

impl PyTwoCategory {
    fn object(&self, name: &str) -> PyResult<laxnerve::ObjId> {
        self.inner
            .find_obj(name)
            .ok_or_else(|| value_error(format!("no object named `{name}`")))
    }

    fn nerve(&self, kind: &str, cap: usize) -> PyResult<TruncSimplicialSet> {
        match kind {
            "geometric" => geometric_nerve(&self.inner, cap, DEFAULT_BUDGET).map_err(value_error),
            "diag" => Ok(double_nerve(&self.inner, cap).map_err(value_error)?.diag()),
            "wbar" => double_nerve(&self.inner, cap)
                .map_err(value_error)?
                .codiagonal()
                .map_err(value_error),
            _ => Err(value_error(format!("unknown nerve `{kind}`; use geometric, diag or wbar"))),
        }
    }

    fn identity_fibre(&self, name: &str, over: bool) -> PyResult<PyTwoCategory> {
        let x = self.object(name)?;
        let id = TwoFunctor::identity(&self.inner);
        let f = StrictFunctor::new(&self.inner, &self.inner, &id).map_err(value_error)?;
        let fibre = if over {
            fibre_over(&f, x, DEFAULT_BUDGET)
        } else {
            fibre_under(&f, x, DEFAULT_BUDGET)
        };
        Ok(fibre.map_err(value_error)?.cat.into())
    }
}

#[pymethods]
impl PyTwoCategory {
    #[staticmethod]
    pub fn terminal() -> Self {
        laxnerve::TwoCategory::terminal().into()
    }

    #[staticmethod]
    pub fn walking_two_cell() -> Self {
        laxnerve::TwoCategory::walking_two_cell().into()
    }

    /// The one-object 2-category of the cyclic group of order `n`.
    #[staticmethod]
    pub fn suspended_cyclic(n: u32) -> PyResult<Self> {
        if n == 0 {
            return Err(value_error("order must be positive"));
        }
        Ok(laxnerve::TwoCategory::suspended_cyclic(n).into())
    }

    /// The ordinal `0 < 1 < … < n` with identity 2-cells only.
    #[staticmethod]
    pub fn ordinal(n: usize) -> PyResult<Self> {
        Ok(Category::ordinal(n).to_two_category().map_err(value_error)?.into())
    }

    /// Loads a `twocat`, `category` or `monoidal` file.
    #[staticmethod]
    pub fn from_file(path: &str) -> PyResult<Self> {
        Ok(format::load_two_category(Path::new(path)).map_err(value_error)?.into())
    }

    #[staticmethod]
    pub fn from_text(text: &str) -> PyResult<Self> {
        let doc = format::parse_str(text, Path::new("<string>")).map_err(value_error)?;
        doc.as_two_category()
            .map(Into::into)
            .ok_or_else(|| value_error(format!("a {} file is not a 2-category", doc.kind())))
    }

    pub fn num_objects(&self) -> usize {
        self.inner.num_objects()
    }

    pub fn num_mors(&self) -> usize {
        self.inner.num_mors()
    }

    pub fn num_defs(&self) -> usize {
        self.inner.num_defs()
    }

    pub fn object_names(&self) -> Vec<String> {
        self.inner.objects().map(|x| self.inner.obj_name(x).to_string()).collect()
    }

    /// Violations found by full validation; empty when the 2-category is valid.
    pub fn validate(&self) -> Vec<String> {
        violations(&self.inner.validate())
    }

    pub fn canonical_text(&self) -> String {
        self.inner.canonical_text()
    }

    pub fn opposite(&self) -> Self {
        self.inner.opposite().into()
    }

    pub fn co_dual(&self) -> Self {
        self.inner.co_dual().into()
    }

    /// Simplices per dimension `0..=cap` of the chosen nerve.
    #[pyo3(signature = (kind = "geometric", cap = DEFAULT_CAP))]
    pub fn counts(&self, kind: &str, cap: usize) -> PyResult<Vec<usize>> {
        Ok(self.nerve(kind, cap)?.counts())
    }

    /// `H_0 … H_{cap−1}` of the chosen nerve.
    #[pyo3(signature = (kind = "geometric", cap = DEFAULT_CAP))]
    pub fn homology(&self, kind: &str, cap: usize) -> PyResult<Vec<String>> {
        let h = homology(&self.nerve(kind, cap)?).map_err(value_error)?;
        Ok(h.groups.iter().map(ToString::to_string).collect())
    }

    /// Whether two nerves of this 2-category agree in homology and π0 below `cap`.
    #[pyo3(signature = (a = "diag", b = "geometric", cap = DEFAULT_CAP))]
    pub fn nerves_agree(&self, a: &str, b: &str, cap: usize) -> PyResult<bool> {
        let cmp = homology_compare(&self.nerve(a, cap)?, &self.nerve(b, cap)?, None).map_err(value_error)?;
        Ok(cmp.agree())
    }

    /// `x//C`, objects equipped with a 1-cell from `x`.
    pub fn fibre_over(&self, x: &str) -> PyResult<Self> {
        self.identity_fibre(x, true)
    }

    /// `C//x`, objects equipped with a 1-cell to `x`.
    pub fn fibre_under(&self, x: &str) -> PyResult<Self> {
        self.identity_fibre(x, false)
    }

    fn __repr__(&self) -> String {
        format!(
            "TwoCategory(objects={}, mors={}, defs={})",
            self.inner.num_objects(),
            self.inner.num_mors(),
            self.inner.num_defs()
        )
    }
}

#[pyclass(name = "Diagram", module = "laxnerve_py", frozen)]
pub struct PyDiagram {
    inner: laxnerve::grothendieck::TwoDiagram,
}

#[pymethods]
impl PyDiagram {
    /// Loads a `diagram` file; fibre paths resolve relative to it.
    #[staticmethod]
    pub fn from_file(path: &str) -> PyResult<Self> {
        match format::parse(Path::new(path)).map_err(value_error)? {
            Document::Diagram(d) => Ok(PyDiagram { inner: d.diagram }),
            other => Err(value_error(format!("{path}: a {} file is not a diagram", other.kind()))),
        }
    }

    pub fn base(&self) -> PyTwoCategory {
        self.inner.base.clone().into()
    }

    pub fn validate(&self) -> Vec<String> {
        violations(&validate_two_diagram(&self.inner))
    }

    /// The total 2-category.
    pub fn grothendieck(&self) -> PyResult<PyTwoCategory> {
        Ok(grothendieck(&self.inner).map_err(value_error)?.cat.into())
    }

    /// Checks the chosen bijection through dimension `cap`; returns the violations.
    #[pyo3(signature = (variant = "ii", cap = DEFAULT_CAP))]
    pub fn thomason(&self, variant: &str, cap: usize) -> PyResult<Vec<String>> {
        let report = match variant {
            "i" => thomason_iso_i(&self.inner, cap).map_err(value_error)?.check(),
            "ii" => thomason_iso_ii(&self.inner, cap, DEFAULT_BUDGET).map_err(value_error)?.check(),
            _ => return Err(value_error(format!("unknown variant `{variant}`; use i or ii"))),
        };
        Ok(violations(&report))
    }
}

/// Runs the command-line tool in-process: `(exit code, stdout, stderr)`.
#[pyfunction]
pub fn run_cli(args: Vec<String>) -> (i32, String, String) {
    let out = laxnerve::cli::run(std::iter::once("laxnerve".to_string()).chain(args));
    (out.code, out.stdout, out.stderr)
}

#[pymodule]
fn laxnerve_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyTwoCategory>()?;
    m.add_class::<PyDiagram>()?;
    m.add_function(wrap_pyfunction!(run_cli, m)?)?;
    m.add("DEFAULT_CAP", DEFAULT_CAP)?;
    Ok(())
}
