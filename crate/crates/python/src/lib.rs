//! Python bindings. Agreements come back as `(matches, total)` pairs of
//! Python ints.

use num_bigint::BigUint;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyBytes;

use zkpoly::constructions;
use zkpoly::search::{ExactOptions, DEFAULT_BUDGET};

fn err(e: zkpoly::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn pair(a: &zkpoly::Agreement) -> (BigUint, BigUint) {
    (a.matches().clone(), a.total().clone())
}

#[pyclass(name = "BoolFn", frozen, skip_from_py_object, module = "zkpoly")]
#[derive(Clone)]
struct PyBoolFn(zkpoly::BoolFn);

#[pymethods]
impl PyBoolFn {
    /// Truth table as a list of bools, input x at index x.
    #[new]
    fn new(bits: Vec<bool>) -> PyResult<Self> {
        if !bits.len().is_power_of_two() {
            return Err(PyValueError::new_err("table length must be a power of two"));
        }
        let n = bits.len().trailing_zeros();
        zkpoly::BoolFn::from_bits(n, &bits).map(PyBoolFn).map_err(err)
    }

    #[staticmethod]
    fn majority(n: u32) -> PyResult<Self> {
        constructions::majority(n).map(PyBoolFn).map_err(err)
    }

    #[staticmethod]
    fn elem_sym(n: u32, t: u32) -> PyResult<Self> {
        constructions::elem_sym_fn(n, t).map(PyBoolFn).map_err(err)
    }

    #[staticmethod]
    fn random(n: u32, seed: u64) -> PyResult<Self> {
        zkpoly::BoolFn::random(n, seed).map(PyBoolFn).map_err(err)
    }

    /// F_H on 2n variables with H drawn from `h_seed`.
    #[staticmethod]
    fn f_h(n: u32, d: u32, h_seed: u64) -> PyResult<Self> {
        let h = zkpoly::BoolFn::random(2 * n, h_seed).map_err(err)?;
        constructions::construct_f_h(n, d, &h).map(PyBoolFn).map_err(err)
    }

    /// Parses the BFN1 file format.
    #[staticmethod]
    fn from_bytes(data: &[u8]) -> PyResult<Self> {
        zkpoly::BoolFn::from_bytes(data).map(PyBoolFn).map_err(err)
    }

    fn to_bytes<'py>(&self, py: Python<'py>) -> Bound<'py, PyBytes> {
        PyBytes::new(py, &self.0.to_bytes())
    }

    #[getter]
    fn n(&self) -> u32 {
        self.0.n()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn __getitem__(&self, x: u32) -> PyResult<bool> {
        if (x as usize) < self.0.len() {
            Ok(self.0.get(x))
        } else {
            Err(PyValueError::new_err(format!("input {x} outside the cube")))
        }
    }

    fn bits(&self) -> Vec<bool> {
        self.0.iter().collect()
    }

    fn lift(&self, k: u32) -> PyResult<Vec<u16>> {
        Ok(zkpoly::k_lift(&self.0, k).map_err(err)?.values().to_vec())
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

#[pyclass(name = "RingPoly", frozen, skip_from_py_object, module = "zkpoly")]
#[derive(Clone)]
struct PyRingPoly(zkpoly::RingPoly);

#[pymethods]
impl PyRingPoly {
    /// `terms` maps monomial masks to coefficients; they are reduced mod 2^k.
    #[new]
    fn new(n: u32, k: u32, d: u32, terms: Vec<(u32, u64)>) -> PyResult<Self> {
        zkpoly::RingPoly::from_terms(n, k, d, terms)
            .map(PyRingPoly)
            .map_err(err)
    }

    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        zkpoly::RingPoly::from_json(text).map(PyRingPoly).map_err(err)
    }

    /// Interpolates a value table of length 2^n.
    #[staticmethod]
    fn interpolate(values: Vec<u16>, k: u32, d_max: u32) -> PyResult<Self> {
        zkpoly::mobius_interpolate(&values, k, d_max)
            .map(PyRingPoly)
            .map_err(err)
    }

    fn to_json(&self) -> PyResult<String> {
        self.0.to_json().map_err(err)
    }

    #[getter]
    fn n(&self) -> u32 {
        self.0.n()
    }

    #[getter]
    fn k(&self) -> u32 {
        self.0.k()
    }

    #[getter]
    fn d(&self) -> u32 {
        self.0.d()
    }

    fn degree(&self) -> u32 {
        self.0.degree()
    }

    fn terms(&self) -> Vec<(u32, u16)> {
        self.0.terms().collect()
    }

    fn eval(&self, x: u32) -> u16 {
        self.0.eval(x)
    }

    fn eval_all(&self) -> PyResult<Vec<u16>> {
        self.0.eval_all().map_err(err)
    }

    /// Agreement with the k-lift of `f`.
    fn agreement(&self, f: &PyBoolFn) -> PyResult<(BigUint, BigUint)> {
        let lifted = zkpoly::k_lift(&f.0, self.0.k()).map_err(err)?;
        Ok(pair(&lifted.agreement_with(&self.0).map_err(err)?))
    }

    fn __eq__(&self, other: &Self) -> bool {
        self.0 == other.0
    }

    fn __repr__(&self) -> String {
        format!("RingPoly({})", self.0.to_json().unwrap_or_default())
    }
}

#[pyclass(name = "NCPoly", frozen, skip_from_py_object, module = "zkpoly")]
#[derive(Clone)]
struct PyNCPoly(zkpoly::NCPoly);

#[pymethods]
impl PyNCPoly {
    #[staticmethod]
    fn from_json(text: &str) -> PyResult<Self> {
        serde_json::from_str(text)
            .map(PyNCPoly)
            .map_err(|e| PyValueError::new_err(e.to_string()))
    }

    fn to_json(&self) -> PyResult<String> {
        serde_json::to_string(&self.0).map_err(|e| PyValueError::new_err(e.to_string()))
    }

    #[getter]
    fn depth(&self) -> u32 {
        self.0.depth()
    }

    fn degree(&self) -> u32 {
        self.0.degree()
    }

    /// Value at x as (numerator, log2 of the denominator), reduced.
    fn eval(&self, x: u32) -> (u32, u32) {
        let v = self.0.eval(x);
        (v.num(), v.log_den())
    }

    fn to_ring(&self, d: u32) -> PyResult<PyRingPoly> {
        zkpoly::nc_to_ring(&self.0, d).map(PyRingPoly).map_err(err)
    }

    fn agreement(&self, f: &PyBoolFn) -> PyResult<(BigUint, BigUint)> {
        Ok(pair(&zkpoly::nc_boolean_agreement(&self.0, &f.0).map_err(err)?))
    }
}

#[pyclass(name = "GammaResult", frozen, get_all, module = "zkpoly")]
struct PyGammaResult {
    gamma: (BigUint, BigUint),
    witness: PyRingPoly,
    mode: String,
    search_space_size: BigUint,
}

impl From<zkpoly::GammaResult> for PyGammaResult {
    fn from(r: zkpoly::GammaResult) -> Self {
        PyGammaResult {
            gamma: pair(&r.gamma),
            witness: PyRingPoly(r.witness),
            mode: match r.mode {
                zkpoly::SearchMode::Exact => "exact".into(),
                zkpoly::SearchMode::Heuristic => "heuristic".into(),
            },
            search_space_size: r.search_space_size,
        }
    }
}

#[pymethods]
impl PyGammaResult {
    fn __repr__(&self) -> String {
        format!("GammaResult({}/{}, {})", self.gamma.0, self.gamma.1, self.mode)
    }
}

#[pyfunction]
#[pyo3(signature = (f, d, k, budget = DEFAULT_BUDGET))]
fn gamma_exact(py: Python<'_>, f: &PyBoolFn, d: u32, k: u32, budget: u128) -> PyResult<PyGammaResult> {
    let opts = ExactOptions {
        budget,
        prefix: None,
    };
    py.detach(|| zkpoly::search::gamma_exact_with(&f.0, d, k, opts))
        .map(Into::into)
        .map_err(err)
}

#[pyfunction]
#[pyo3(signature = (f, d, k, restarts = 16, seed = 0))]
fn gamma_heuristic(f: &PyBoolFn, d: u32, k: u32, restarts: u32, seed: u64) -> PyResult<PyGammaResult> {
    zkpoly::gamma_heuristic(&f.0, d, k, restarts, seed)
        .map(Into::into)
        .map_err(err)
}

#[pyfunction]
fn agreement(a: Vec<u16>, b: Vec<u16>) -> PyResult<(BigUint, BigUint)> {
    Ok(pair(&zkpoly::agreement(&a, &b).map_err(err)?))
}

#[pyfunction]
fn nc_from_ring(p: &PyRingPoly) -> PyResult<PyNCPoly> {
    zkpoly::nc_from_ring(&p.0).map(PyNCPoly).map_err(err)
}

fn point_set(n: u32, points: Vec<u32>) -> PyResult<zkpoly::PointSet> {
    zkpoly::PointSet::new(n, points).map_err(err)
}

#[pyfunction]
fn is_forcing(n: u32, points: Vec<u32>, d: u32, k: u32) -> PyResult<bool> {
    zkpoly::is_forcing(&point_set(n, points)?, d, k).map_err(err)
}

#[pyfunction]
fn is_interpolating(n: u32, points: Vec<u32>, d: u32, k: u32) -> PyResult<bool> {
    zkpoly::is_interpolating(&point_set(n, points)?, d, k).map_err(err)
}

#[pyfunction]
fn sym_separation_agreement(n: u64, ell: u32) -> PyResult<(BigUint, BigUint)> {
    Ok(pair(&constructions::sym_separation_agreement(n, ell).map_err(err)?))
}

#[pyfunction]
fn sym_witness(n: u32, ell: u32) -> PyResult<PyRingPoly> {
    constructions::sym_witness(n, ell).map(PyRingPoly).map_err(err)
}

#[pyfunction]
fn quad_witness(n: u32, d: u32) -> PyResult<PyRingPoly> {
    constructions::quad_witness(n, d).map(PyRingPoly).map_err(err)
}

/// Best agreement in the five-variable base case.
#[pyfunction]
fn verify_rel_lbd() -> (BigUint, BigUint) {
    pair(&zkpoly::verify::verify_rel_lbd().max)
}

#[pymodule]
#[pyo3(name = "zkpoly")]
fn zkpoly_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyBoolFn>()?;
    m.add_class::<PyRingPoly>()?;
    m.add_class::<PyNCPoly>()?;
    m.add_class::<PyGammaResult>()?;
    m.add_function(wrap_pyfunction!(gamma_exact, m)?)?;
    m.add_function(wrap_pyfunction!(gamma_heuristic, m)?)?;
    m.add_function(wrap_pyfunction!(agreement, m)?)?;
    m.add_function(wrap_pyfunction!(nc_from_ring, m)?)?;
    m.add_function(wrap_pyfunction!(is_forcing, m)?)?;
    m.add_function(wrap_pyfunction!(is_interpolating, m)?)?;
    m.add_function(wrap_pyfunction!(sym_separation_agreement, m)?)?;
    m.add_function(wrap_pyfunction!(sym_witness, m)?)?;
    m.add_function(wrap_pyfunction!(quad_witness, m)?)?;
    m.add_function(wrap_pyfunction!(verify_rel_lbd, m)?)?;
    m.add("PRNG", zkpoly::rng::PRNG_NAME)?;
    Ok(())
}
