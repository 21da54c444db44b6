use std::collections::BTreeMap;

use pyo3::create_exception;
use pyo3::exceptions::PyException;
use pyo3::prelude::*;

use bgg::bgg::{CHECK_SEED, CHECK_TRIALS};
use bgg::{Algebra, AlgebraKind, DegreewiseModule};

create_exception!(bggkit, BggkitError, PyException);

fn err(e: bgg::BggError) -> PyErr {
    BggkitError::new_err(e.to_string())
}

fn algebra(kind: &str, nvars: usize) -> PyResult<Algebra> {
    Algebra::new(AlgebraKind::parse(kind).map_err(err)?, nvars).map_err(err)
}

/// A finite-dimensional graded module over an exterior, symmetric or two-step algebra.
#[pyclass(name = "Module", module = "bggkit", frozen, skip_from_py_object)]
#[derive(Clone)]
struct Module {
    inner: DegreewiseModule,
}

impl From<DegreewiseModule> for Module {
    fn from(inner: DegreewiseModule) -> Module {
        Module { inner }
    }
}

#[pymethods]
impl Module {
    /// Parses and validates a module file.
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Module> {
        bgg::modfile::parse_module(text).map(Module::from).map_err(err)
    }

    #[staticmethod]
    #[pyo3(signature = (name, nvars = 3))]
    fn builtin(name: &str, nvars: usize) -> PyResult<Module> {
        Ok(bgg::corpus::builtin(name, nvars).map_err(err)?.module.into())
    }

    /// The residue field `k` placed in degree `degree`.
    #[staticmethod]
    #[pyo3(signature = (kind, nvars, degree = 0))]
    fn simple(kind: &str, nvars: usize, degree: i32) -> PyResult<Module> {
        Ok(bgg::grmodule::construct_simple(algebra(kind, nvars)?, degree).into())
    }

    #[staticmethod]
    #[pyo3(signature = (kind, nvars, generators, hi = None))]
    fn free(kind: &str, nvars: usize, generators: Vec<i32>, hi: Option<i32>) -> PyResult<Module> {
        bgg::grmodule::construct_free(algebra(kind, nvars)?, &generators, hi)
            .map(Module::from)
            .map_err(err)
    }

    #[staticmethod]
    #[pyo3(signature = (kind, nvars, profile, seed = 0))]
    fn random(kind: &str, nvars: usize, profile: BTreeMap<i32, usize>, seed: u64) -> PyResult<Module> {
        Ok(bgg::grmodule::random_module(algebra(kind, nvars)?, &profile, seed).into())
    }

    /// The twist module whose associated complex is the line bundle `O(t)`.
    #[staticmethod]
    fn twist(nvars: usize, t: i32) -> PyResult<Module> {
        bgg::bgg::sheaf_module_for_twist(Algebra::exterior(nvars), t)
            .map(Module::from)
            .map_err(err)
    }

    fn to_json(&self) -> String {
        bgg::modfile::export_module(&self.inner)
    }

    #[getter]
    fn kind(&self) -> &'static str {
        self.inner.kind().name()
    }

    #[getter]
    fn nvars(&self) -> usize {
        self.inner.nvars()
    }

    #[getter]
    fn window(&self) -> (i32, i32) {
        self.inner.window()
    }

    fn dims(&self) -> BTreeMap<i32, usize> {
        self.inner.dims()
    }

    fn total_dim(&self) -> usize {
        self.inner.total_dim()
    }

    /// `None` when every relation holds, otherwise the first violation.
    fn validate(&self) -> Option<String> {
        bgg::grmodule::validate(&self.inner).err().map(|v| v.to_string())
    }

    /// `M(i)`: degrees lowered by `i`.
    fn shift(&self, i: i32) -> Module {
        bgg::grmodule::shift(&self.inner, i).into()
    }

    fn omega(&self, i: i32) -> PyResult<Module> {
        bgg::stablecat::omega_power(&self.inner, i).map(Module::from).map_err(err)
    }

    fn tau(&self, power: u32) -> PyResult<Module> {
        bgg::stablecat::tau(&self.inner, power).map(Module::from).map_err(err)
    }

    fn strip(&self) -> PyResult<Module> {
        Ok(bgg::grmodule::strip_free_summands(&self.inner).map_err(err)?.core.into())
    }

    /// `{(i, j): beta_ij}`.
    #[pyo3(signature = (length = 4))]
    fn betti(&self, length: usize) -> PyResult<BTreeMap<(usize, i32), usize>> {
        Ok(bgg::homres::betti_table(&self.inner, length).map_err(err)?.entries().clone())
    }

    #[pyo3(signature = (bound = 4))]
    fn is_linear(&self, bound: usize) -> PyResult<bool> {
        match bgg::homres::is_linear(&self.inner, bound) {
            Err(bgg::BggError::NotSingleDegree(_)) => Ok(false),
            r => Ok(r.map_err(err)?.is_linear()),
        }
    }

    #[pyo3(signature = (trials = CHECK_TRIALS, seed = 0))]
    fn is_nice(&self, trials: usize, seed: u64) -> PyResult<bool> {
        Ok(!bgg::bgg::is_nice(&self.inner, trials, seed).map_err(err)?.is_not_nice())
    }

    #[pyo3(signature = (trials = CHECK_TRIALS, seed = 0))]
    fn rank(&self, trials: usize, seed: u64) -> PyResult<usize> {
        bgg::bgg::sheaf_rank(&self.inner, trials, seed).map_err(err)
    }

    /// `{(q, d): h^q}` with zero cells omitted; `qmax` defaults to `n`.
    #[pyo3(signature = (dmin = -3, dmax = 3, qmin = 0, qmax = None))]
    fn cohomology(&self, dmin: i32, dmax: i32, qmin: i32, qmax: Option<i32>) -> PyResult<BTreeMap<(i32, i32), usize>> {
        let qmax = qmax.unwrap_or(self.inner.algebra().n() as i32);
        Ok(bgg::bgg::cohomology_table(&self.inner, (dmin, dmax), (qmin, qmax)).map_err(err)?.grid)
    }

    /// `(end_stable_dim, {i: dim stable Ext^i}, indecomposable)`.
    #[pyo3(signature = (extbound = 1))]
    fn rigidity(&self, extbound: usize) -> PyResult<(usize, BTreeMap<usize, usize>, bool)> {
        let r = bgg::bgg::rigidity_report(&self.inner, extbound).map_err(err)?;
        Ok((r.end_stable_dim, r.ext_self_dims, r.indecomposable))
    }

    /// `(verdict, detail)` with verdict `verified`, `hypothesis-not-met` or `counterexample`.
    #[pyo3(signature = (trials = CHECK_TRIALS, seed = CHECK_SEED))]
    fn theorem15(&self, trials: usize, seed: u64) -> PyResult<(String, String)> {
        let v = bgg::bgg::theorem15_check_with(&self.inner, trials, seed).map_err(err)?;
        Ok((v.label().to_string(), format!("{v:?}")))
    }

    /// `(dual, round_trip_ok)` on the window `[0, hi]`.
    #[pyo3(signature = (hi = 4))]
    fn koszul_dual(&self, hi: usize) -> PyResult<(Module, bool)> {
        let c = bgg::koszul::koszul_dual(&self.inner, hi).map_err(err)?;
        Ok((c.dual.into(), c.round_trip_ok))
    }

    fn gamma(&self) -> PyResult<Module> {
        bgg::koszul::gamma_reduce(&self.inner).map(Module::from).map_err(err)
    }

    fn lemma13(&self, i: i32) -> PyResult<&'static str> {
        Ok(bgg::koszul::lemma13_check(&self.inner, i).map_err(err)?.label())
    }

    fn lemma14(&self) -> PyResult<&'static str> {
        Ok(bgg::koszul::lemma14_check(&self.inner).map_err(err)?.label())
    }

    fn hom_dim(&self, other: &Module) -> PyResult<usize> {
        Ok(bgg::grmodule::hom0(&self.inner, &other.inner).map_err(err)?.dim())
    }

    fn ext1_dim(&self, other: &Module) -> PyResult<usize> {
        Ok(bgg::grmodule::ext1_0(&self.inner, &other.inner).map_err(err)?.dim())
    }

    fn stable_hom_dim(&self, other: &Module) -> PyResult<usize> {
        Ok(bgg::stablecat::stable_hom0(&self.inner, &other.inner).map_err(err)?.stable_dim)
    }

    fn is_stably_isomorphic(&self, other: &Module) -> PyResult<bool> {
        bgg::stablecat::is_stably_isomorphic(&self.inner, &other.inner).map_err(err)
    }

    fn __repr__(&self) -> String {
        format!("{:?}", self.inner)
    }
}

/// `(lhs, rhs)` of the stable Serre duality comparison.
#[pyfunction]
fn serre_check(x: &Module, y: &Module, m: i32) -> PyResult<(usize, usize)> {
    let c = bgg::stablecat::serre_check(&x.inner, &y.inner, m).map_err(err)?;
    Ok((c.lhs, c.rhs))
}

/// `dim stHom(tau^i B, C)` for `i = 1..=imax`.
#[pyfunction]
#[pyo3(signature = (b, c, imax = 3))]
fn ar_vanishing(b: &Module, c: &Module, imax: u32) -> PyResult<Vec<usize>> {
    let rows = bgg::bgg::ar_vanishing_check(&b.inner, &c.inner, imax).map_err(err)?;
    Ok(rows.into_iter().map(|r| r.stable_dim).collect())
}

/// Smallest `i <= imax` with `tau^i B` stably isomorphic to `C`.
#[pyfunction]
#[pyo3(signature = (b, c, imax = 4))]
fn component_scan(b: &Module, c: &Module, imax: u32) -> PyResult<Option<u32>> {
    Ok(match bgg::bgg::component_scan(&b.inner, &c.inner, imax).map_err(err)? {
        bgg::bgg::ComponentVerdict::DistinctComponents => None,
        bgg::bgg::ComponentVerdict::SameComponent(i) => Some(i),
    })
}

#[pyfunction]
#[pyo3(signature = (a, m, r = 1))]
fn lemma12(a: &Module, m: i32, r: usize) -> PyResult<bool> {
    bgg::koszul::lemma12_check(&a.inner, m, r).map_err(err)
}

/// `(passed, skipped, failures)` of a seeded batch run.
#[pyfunction]
#[pyo3(signature = (suite, seed = 0, count = 20))]
fn sweep(suite: &str, seed: u64, count: usize) -> PyResult<(usize, usize, Vec<String>)> {
    let r = bgg::sweep::run_sweep(suite, seed, count).map_err(err)?;
    Ok((r.passed, r.skipped, r.failures))
}

#[pymodule]
fn bggkit(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<Module>()?;
    m.add("BggkitError", m.py().get_type::<BggkitError>())?;
    m.add_function(wrap_pyfunction!(serre_check, m)?)?;
    m.add_function(wrap_pyfunction!(ar_vanishing, m)?)?;
    m.add_function(wrap_pyfunction!(component_scan, m)?)?;
    m.add_function(wrap_pyfunction!(lemma12, m)?)?;
    m.add_function(wrap_pyfunction!(sweep, m)?)?;
    Ok(())
}
