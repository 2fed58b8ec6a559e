//! Python bindings for the cavity phase-gate simulator.
//!
//! The module mirrors the core library: basis and state construction, the
//! closed-form amplitudes and gate-timing search, numerical evolution, and
//! the fidelity/concurrence experiments. Complex amplitudes cross the
//! boundary as Python `complex` values.

use num_complex::Complex64 as C64;
use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use qpg_core as core;

fn err(e: core::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn parse_atom(label: &str) -> PyResult<core::AtomLevel> {
    match label {
        "a" | "A" => Ok(core::AtomLevel::A),
        "b" | "B" => Ok(core::AtomLevel::B),
        "c" | "C" => Ok(core::AtomLevel::C),
        other => Err(PyValueError::new_err(format!(
            "unknown atom level '{other}'; expected a, b, or c"
        ))),
    }
}

fn parse_gate(label: &str) -> PyResult<core::GateKind> {
    match label {
        "u1" | "U1" => Ok(core::GateKind::U1),
        "u2" | "U2" => Ok(core::GateKind::U2),
        other => Err(PyValueError::new_err(format!(
            "unknown gate '{other}'; expected u1 or u2"
        ))),
    }
}

#[pyclass(name = "SystemBasis", frozen, skip_from_py_object)]
#[derive(Clone, Copy)]
struct PySystemBasis {
    inner: core::SystemBasis,
}

#[pymethods]
impl PySystemBasis {
    #[new]
    fn new(n_max: usize) -> PyResult<Self> {
        Ok(Self {
            inner: core::SystemBasis::new(n_max).map_err(err)?,
        })
    }

    #[getter]
    fn n_max(&self) -> usize {
        self.inner.n_max()
    }

    #[getter]
    fn dim(&self) -> usize {
        self.inner.dim()
    }

    fn index_of(&self, atom: &str, n_plus: usize, n_minus: usize) -> PyResult<usize> {
        let atom = parse_atom(atom)?;
        if n_plus > self.inner.n_max() || n_minus > self.inner.n_max() {
            return Err(PyValueError::new_err("photon number exceeds n_max"));
        }
        Ok(self.inner.index_of(atom, n_plus, n_minus))
    }

    fn state_at(&self, index: usize) -> PyResult<(String, usize, usize)> {
        if index >= self.inner.dim() {
            return Err(PyValueError::new_err("index out of range"));
        }
        let (atom, np, nm) = self.inner.state_at(index);
        Ok((atom.label().to_string(), np, nm))
    }

    fn __repr__(&self) -> String {
        format!("SystemBasis(n_max={})", self.inner.n_max())
    }
}

#[pyclass(name = "ModelParams", frozen, skip_from_py_object)]
#[derive(Clone, Copy)]
struct PyModelParams {
    inner: core::ModelParams,
}

#[pymethods]
impl PyModelParams {
    #[new]
    #[pyo3(signature = (g, delta_plus = 0.0, delta_minus = 0.0))]
    fn new(g: f64, delta_plus: f64, delta_minus: f64) -> PyResult<Self> {
        Ok(Self {
            inner: core::ModelParams::new(g, delta_plus, delta_minus).map_err(err)?,
        })
    }

    #[staticmethod]
    fn symmetric(g: f64, delta: f64) -> PyResult<Self> {
        Ok(Self {
            inner: core::ModelParams::symmetric(g, delta).map_err(err)?,
        })
    }

    #[getter]
    fn g(&self) -> f64 {
        self.inner.g()
    }

    #[getter]
    fn delta_plus(&self) -> f64 {
        self.inner.delta_plus()
    }

    #[getter]
    fn delta_minus(&self) -> f64 {
        self.inner.delta_minus()
    }

    fn is_symmetric(&self) -> bool {
        self.inner.is_symmetric()
    }

    fn __repr__(&self) -> String {
        format!(
            "ModelParams(g={}, delta_plus={}, delta_minus={})",
            self.inner.g(),
            self.inner.delta_plus(),
            self.inner.delta_minus()
        )
    }
}

#[pyclass(name = "StateVector", frozen, skip_from_py_object)]
#[derive(Clone)]
struct PyStateVector {
    inner: core::StateVector,
}

#[pymethods]
impl PyStateVector {
    #[getter]
    fn basis(&self) -> PySystemBasis {
        PySystemBasis {
            inner: self.inner.basis(),
        }
    }

    fn amplitudes(&self) -> Vec<C64> {
        self.inner.amplitudes().to_vec()
    }

    fn amplitude(&self, atom: &str, n_plus: usize, n_minus: usize) -> PyResult<C64> {
        let atom = parse_atom(atom)?;
        if n_plus > self.inner.basis().n_max() || n_minus > self.inner.basis().n_max() {
            return Err(PyValueError::new_err("photon number exceeds n_max"));
        }
        Ok(self.inner.amplitude(atom, n_plus, n_minus))
    }

    fn norm(&self) -> f64 {
        self.inner.norm()
    }

    fn computational_amplitudes(&self) -> (C64, C64, C64, C64) {
        let [c00, c01, c10, c11] = self.inner.computational_amplitudes();
        (c00, c01, c10, c11)
    }

    fn bright_dark_components(&self) -> (C64, C64) {
        self.inner.bright_dark_components()
    }

    fn __repr__(&self) -> String {
        format!("StateVector(dim={})", self.inner.basis().dim())
    }
}

#[pyclass(name = "GateSolution", frozen, skip_from_py_object)]
#[derive(Clone, Copy)]
struct PyGateSolution {
    inner: core::GateSolution,
}

#[pymethods]
impl PyGateSolution {
    #[getter]
    fn gate(&self) -> &'static str {
        self.inner.gate.label()
    }

    #[getter]
    fn m(&self) -> u32 {
        self.inner.m
    }

    #[getter]
    fn n(&self) -> u32 {
        self.inner.n
    }

    #[getter]
    fn p(&self) -> u32 {
        self.inner.p()
    }

    #[getter]
    fn p_star(&self) -> f64 {
        self.inner.p_star
    }

    #[getter]
    fn delta_over_g(&self) -> f64 {
        self.inner.delta_over_g
    }

    #[getter]
    fn gt(&self) -> f64 {
        self.inner.gt
    }

    #[getter]
    fn epsilon(&self) -> f64 {
        self.inner.epsilon
    }

    fn gate_time(&self, g: f64) -> f64 {
        self.inner.gate_time(g)
    }

    fn __repr__(&self) -> String {
        format!(
            "GateSolution(gate={}, m={}, n={}, p_star={:.4}, delta_over_g={:.4}, gt={:.3}, \
             epsilon={:.4})",
            self.inner.gate.label(),
            self.inner.m,
            self.inner.n,
            self.inner.p_star,
            self.inner.delta_over_g,
            self.inner.gt,
            self.inner.epsilon,
        )
    }
}

#[pyclass(name = "PhysicalSetup", frozen, skip_from_py_object)]
#[derive(Clone, Copy)]
struct PyPhysicalSetup {
    inner: core::PhysicalSetup,
}

#[pymethods]
impl PyPhysicalSetup {
    #[new]
    fn new(g_hz: f64, cavity_length_m: f64, g_j: f64, m_j: f64) -> PyResult<Self> {
        Ok(Self {
            inner: core::PhysicalSetup::new(g_hz, cavity_length_m, g_j, m_j).map_err(err)?,
        })
    }

    #[staticmethod]
    fn microwave() -> Self {
        Self {
            inner: core::PhysicalSetup::microwave(),
        }
    }

    #[staticmethod]
    fn optical() -> Self {
        Self {
            inner: core::PhysicalSetup::optical(),
        }
    }

    #[getter]
    fn g_hz(&self) -> f64 {
        self.inner.g_hz
    }

    #[getter]
    fn cavity_length_m(&self) -> f64 {
        self.inner.cavity_length_m
    }

    #[getter]
    fn g_angular(&self) -> f64 {
        self.inner.g_angular()
    }
}

#[pyfunction]
fn basis_state(
    basis: &PySystemBasis,
    atom: &str,
    n_plus: usize,
    n_minus: usize,
) -> PyResult<PyStateVector> {
    let inner = core::StateVector::basis_state(basis.inner, parse_atom(atom)?, n_plus, n_minus)
        .map_err(err)?;
    Ok(PyStateVector { inner })
}

#[pyfunction]
fn coherent_product_state(
    alpha_plus: C64,
    alpha_minus: C64,
    basis: &PySystemBasis,
) -> PyResult<PyStateVector> {
    let inner = core::coherent_product_state(alpha_plus, alpha_minus, basis.inner).map_err(err)?;
    Ok(PyStateVector { inner })
}

#[pyfunction]
fn hamiltonian_at(params: &PyModelParams, basis: &PySystemBasis, t: f64) -> Vec<Vec<C64>> {
    let h = core::hamiltonian_at(&params.inner, basis.inner, t);
    h.rows().into_iter().map(|row| row.to_vec()).collect()
}

#[pyfunction]
fn rabi_frequencies(g: f64, delta: f64) -> (f64, f64) {
    core::rabi_frequencies(g, delta)
}

#[pyfunction]
fn amplitude_cjk(g: f64, delta: f64, t: f64, j: bool, k: bool) -> C64 {
    core::amplitude_cjk(g, delta, t, j, k)
}

#[pyfunction]
fn solution_parameters(gate: &str, m: u32, n: u32) -> PyResult<PyGateSolution> {
    let inner = core::solution_parameters(parse_gate(gate)?, m, n).map_err(err)?;
    Ok(PyGateSolution { inner })
}

#[pyfunction]
fn search_solutions(gate: &str, max_n: u32, epsilon_max: f64) -> PyResult<Vec<PyGateSolution>> {
    let found = core::search_solutions(parse_gate(gate)?, max_n, epsilon_max).map_err(err)?;
    Ok(found
        .into_iter()
        .map(|inner| PyGateSolution { inner })
        .collect())
}

#[pyfunction]
fn table_solutions() -> Vec<PyGateSolution> {
    core::table_solutions()
        .into_iter()
        .map(|inner| PyGateSolution { inner })
        .collect()
}

fn config_for(
    params: &PyModelParams,
    basis: core::SystemBasis,
    dt: Option<f64>,
) -> core::IntegratorConfig {
    let cfg = core::IntegratorConfig::for_system(&params.inner, basis);
    match dt {
        Some(dt) => cfg.with_dt(dt),
        None => cfg,
    }
}

#[pyfunction]
#[pyo3(signature = (state, params, t, dt = None))]
fn evolve(
    state: &PyStateVector,
    params: &PyModelParams,
    t: f64,
    dt: Option<f64>,
) -> PyResult<PyStateVector> {
    let cfg = config_for(params, state.inner.basis(), dt);
    let inner = core::evolve(&state.inner, &params.inner, t, &cfg).map_err(err)?;
    Ok(PyStateVector { inner })
}

#[pyfunction]
#[pyo3(signature = (state, params, t_grid, dt = None))]
fn evolve_sampled(
    state: &PyStateVector,
    params: &PyModelParams,
    t_grid: Vec<f64>,
    dt: Option<f64>,
) -> PyResult<Vec<PyStateVector>> {
    let cfg = config_for(params, state.inner.basis(), dt);
    let states = core::evolve_sampled(&state.inner, &params.inner, &t_grid, &cfg).map_err(err)?;
    Ok(states
        .into_iter()
        .map(|inner| PyStateVector { inner })
        .collect())
}

#[pyfunction]
#[pyo3(signature = (params, gate, t, engine = "numeric"))]
fn gate_fidelity(params: &PyModelParams, gate: &str, t: f64, engine: &str) -> PyResult<f64> {
    let engine = match engine {
        "analytic" => core::Engine::Analytic,
        "numeric" => core::Engine::Numeric,
        other => {
            return Err(PyValueError::new_err(format!(
                "unknown engine '{other}'; expected analytic or numeric"
            )))
        }
    };
    core::gate_fidelity(&params.inner, parse_gate(gate)?, t, engine).map_err(err)
}

#[pyfunction]
fn fidelity_trace(
    params: &PyModelParams,
    gate: &str,
    gt_max: f64,
    samples: usize,
) -> PyResult<(Vec<f64>, Vec<f64>)> {
    let grid =
        core::fidelity_trace(&params.inner, parse_gate(gate)?, gt_max, samples).map_err(err)?;
    Ok((grid.x.values, grid.values))
}

#[pyfunction]
fn bfield_to_detuning(b_tesla: f64, setup: &PyPhysicalSetup) -> f64 {
    core::bfield_to_detuning(b_tesla, &setup.inner)
}

#[pyfunction]
fn velocity_bfield_map(
    setup: &PyPhysicalSetup,
    solution: &PyGateSolution,
    v_range: (f64, f64),
    b_range: (f64, f64),
    samples: usize,
) -> PyResult<(Vec<f64>, Vec<f64>, Vec<f64>)> {
    let grid = core::velocity_bfield_map(&setup.inner, &solution.inner, v_range, b_range, samples)
        .map_err(err)?;
    let y = grid.y.expect("two-dimensional grid");
    Ok((grid.x.values, y.values, grid.values))
}

#[pyfunction]
fn concurrence_computational(state: &PyStateVector) -> f64 {
    core::concurrence_computational(&state.inner)
}

#[pyfunction]
fn concurrence_map(
    solution: &PyGateSolution,
    n_max: usize,
    mean_max: f64,
    samples: usize,
) -> PyResult<(Vec<f64>, Vec<f64>, Vec<f64>)> {
    let grid = core::concurrence_map(&solution.inner, n_max, mean_max, samples).map_err(err)?;
    let y = grid.y.expect("two-dimensional grid");
    Ok((grid.x.values, y.values, grid.values))
}

#[pymodule]
fn qpg_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PySystemBasis>()?;
    m.add_class::<PyModelParams>()?;
    m.add_class::<PyStateVector>()?;
    m.add_class::<PyGateSolution>()?;
    m.add_class::<PyPhysicalSetup>()?;
    m.add_function(wrap_pyfunction!(basis_state, m)?)?;
    m.add_function(wrap_pyfunction!(coherent_product_state, m)?)?;
    m.add_function(wrap_pyfunction!(hamiltonian_at, m)?)?;
    m.add_function(wrap_pyfunction!(rabi_frequencies, m)?)?;
    m.add_function(wrap_pyfunction!(amplitude_cjk, m)?)?;
    m.add_function(wrap_pyfunction!(solution_parameters, m)?)?;
    m.add_function(wrap_pyfunction!(search_solutions, m)?)?;
    m.add_function(wrap_pyfunction!(table_solutions, m)?)?;
    m.add_function(wrap_pyfunction!(evolve, m)?)?;
    m.add_function(wrap_pyfunction!(evolve_sampled, m)?)?;
    m.add_function(wrap_pyfunction!(gate_fidelity, m)?)?;
    m.add_function(wrap_pyfunction!(fidelity_trace, m)?)?;
    m.add_function(wrap_pyfunction!(bfield_to_detuning, m)?)?;
    m.add_function(wrap_pyfunction!(concurrence_computational, m)?)?;
    m.add_function(wrap_pyfunction!(velocity_bfield_map, m)?)?;
    m.add_function(wrap_pyfunction!(concurrence_map, m)?)?;
    Ok(())
}
