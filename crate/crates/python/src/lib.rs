// Copyright 2026 The sparsevqe Developers
//
// Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except
// in compliance with the License. You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software distributed under the License
// is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express
// or implied. See the License for the specific language governing permissions and limitations under
// the License.

//! Python bindings: Pauli strings, sparse states, Pauli-sum operators, ansätze
//! and the analysis functions built on them.

use std::collections::HashMap;

use num_complex::Complex64;
use pyo3::create_exception;
use pyo3::exceptions::{PyArithmeticError, PyOSError, PyValueError};
use pyo3::prelude::*;
use pyo3::types::PyDict;
use sparsevqe_core::dense_oracle;
use sparsevqe_core::runner::{self, parse_reference};
use sparsevqe_core::sparsity::{prefix_ranks, DEFAULT_ENUMERATION_BUDGET};
use sparsevqe_core::{self as core, Error, ExponentialGate, GateCounts, SweepRow};

create_exception!(sparsevqe, NumericalError, PyArithmeticError);

fn to_py(e: Error) -> PyErr {
    match e {
        Error::Io(msg) => PyOSError::new_err(msg),
        e if e.is_numerical() => NumericalError::new_err(e.to_string()),
        e => PyValueError::new_err(e.to_string()),
    }
}

trait OrPy<T> {
    fn py(self) -> PyResult<T>;
}

impl<T> OrPy<T> for core::Result<T> {
    fn py(self) -> PyResult<T> {
        self.map_err(to_py)
    }
}

#[pyclass(module = "sparsevqe", name = "PauliString", frozen, eq, hash, from_py_object)]
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
struct PyPauli(core::PauliString);

#[pymethods]
impl PyPauli {
    /// Parses indexed factors such as `"X0 Y3 Z7"`, or `"I"`.
    #[new]
    fn new(text: &str, n_qubits: usize) -> PyResult<Self> {
        core::PauliString::parse(text, n_qubits).py().map(Self)
    }

    #[staticmethod]
    fn from_masks(n_qubits: usize, x_mask: u128, z_mask: u128) -> PyResult<Self> {
        core::PauliString::from_masks(n_qubits, x_mask, z_mask).py().map(Self)
    }

    #[getter]
    fn n_qubits(&self) -> usize {
        self.0.n_qubits()
    }

    #[getter]
    fn x_mask(&self) -> u128 {
        self.0.x_mask()
    }

    #[getter]
    fn z_mask(&self) -> u128 {
        self.0.z_mask()
    }

    /// Power `k` of the prefactor `i^k`.
    #[getter]
    fn phase(&self) -> u8 {
        self.0.phase_exponent()
    }

    fn is_identity(&self) -> bool {
        self.0.is_identity()
    }

    fn is_diagonal(&self) -> bool {
        self.0.is_diagonal()
    }

    /// Indices of the non-identity factors.
    fn support(&self) -> Vec<usize> {
        let mask = self.0.support();
        (0..128).filter(|q| mask >> q & 1 == 1).collect()
    }

    /// `(weight, n_x, n_y, n_z)`.
    fn weight_profile(&self) -> (usize, usize, usize, usize) {
        let w = self.0.weight_profile();
        (w.weight, w.n_x, w.n_y, w.n_z)
    }

    /// `P|x⟩ = coeff |index⟩`, returned as `(index, coeff)`.
    fn apply_to_basis(&self, x: u128) -> (u128, Complex64) {
        let r = self.0.apply_to_basis(x);
        (r.index, r.coeff())
    }

    fn commutes(&self, other: &PyPauli) -> PyResult<bool> {
        self.0.commutes(&other.0).py()
    }

    fn __mul__(&self, other: &PyPauli) -> PyResult<Self> {
        self.0.multiply(&other.0).py().map(Self)
    }

    fn __str__(&self) -> String {
        self.0.to_string()
    }

    fn __repr__(&self) -> String {
        match self.0.phase_exponent() {
            0 => format!("PauliString('{}', {})", self.0, self.0.n_qubits()),
            k => format!("PauliString('{}', {}) * i^{k}", self.0, self.0.n_qubits()),
        }
    }
}

#[pyclass(module = "sparsevqe", name = "SparseState", skip_from_py_object)]
#[derive(Clone)]
struct PyState(core::SparseState);

#[pymethods]
impl PyState {
    /// Basis state `|reference⟩`.
    #[new]
    #[pyo3(signature = (n_qubits, reference, cutoff = 0.0))]
    fn new(n_qubits: usize, reference: u128, cutoff: f64) -> PyResult<Self> {
        core::SparseState::from_reference(n_qubits, reference, cutoff).py().map(Self)
    }

    /// Normalized state from `{index: amplitude}`.
    #[staticmethod]
    #[pyo3(signature = (n_qubits, amplitudes, cutoff = 0.0))]
    fn from_amplitudes(n_qubits: usize, amplitudes: HashMap<u128, Complex64>, cutoff: f64) -> PyResult<Self> {
        core::SparseState::from_amplitudes(n_qubits, amplitudes, cutoff).py().map(Self)
    }

    #[getter]
    fn n_qubits(&self) -> usize {
        self.0.n_qubits()
    }

    #[getter]
    fn cutoff(&self) -> f64 {
        self.0.cutoff()
    }

    #[getter]
    fn truncated_weight(&self) -> f64 {
        self.0.truncated_weight()
    }

    fn __len__(&self) -> usize {
        self.0.len()
    }

    fn amplitude(&self, x: u128) -> Complex64 {
        self.0.amplitude(x)
    }

    fn to_dict(&self) -> HashMap<u128, Complex64> {
        self.0.iter().collect()
    }

    fn norm_sqr(&self) -> f64 {
        self.0.norm_sqr()
    }

    /// `⟨self|other⟩`.
    fn inner_product(&self, other: &PyState) -> PyResult<Complex64> {
        self.0.inner_product(&other.0).py()
    }

    /// Applies `exp(iθP)`; returns the new element count.
    fn apply_exponential(&mut self, pauli: &PyPauli, theta: f64) -> PyResult<usize> {
        let gate = ExponentialGate::new(pauli.0, theta).py()?;
        self.0.apply_exponential(&gate).py()
    }

    /// Applies `exp(-iβP/2)`; returns the new element count.
    fn apply_entangler(&mut self, pauli: &PyPauli, beta: f64) -> PyResult<usize> {
        let gate = ExponentialGate::from_beta(pauli.0, beta).py()?;
        self.0.apply_exponential(&gate).py()
    }

    fn __repr__(&self) -> String {
        format!("SparseState(n_qubits={}, elements={})", self.0.n_qubits(), self.0.len())
    }
}

#[pyclass(module = "sparsevqe", name = "PauliSumOperator", skip_from_py_object)]
#[derive(Clone)]
struct PyOperator(core::PauliSumOperator);

#[pymethods]
impl PyOperator {
    /// Real-weighted sum of Pauli strings, from `[(coeff, PauliString), ...]`.
    #[new]
    fn new(n_qubits: usize, terms: Vec<(f64, PyPauli)>) -> PyResult<Self> {
        core::PauliSumOperator::from_terms(n_qubits, terms.into_iter().map(|(c, p)| (c, p.0)))
            .py()
            .map(Self)
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        core::PauliSumOperator::parse(text).py().map(Self)
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        core::PauliSumOperator::load(path).py().map(Self)
    }

    fn to_text(&self) -> String {
        self.0.to_text()
    }

    #[getter]
    fn n_qubits(&self) -> usize {
        self.0.n_qubits()
    }

    fn __len__(&self) -> usize {
        self.0.term_count()
    }

    fn terms(&self) -> Vec<(f64, PyPauli)> {
        self.0.terms().iter().map(|t| (t.coeff, PyPauli(t.pauli))).collect()
    }

    /// `U†HU` for `U = exp(-iβP/2)`.
    fn similarity_transform(&self, pauli: &PyPauli, beta: f64) -> PyResult<Self> {
        self.0.similarity_transform(&pauli.0, beta).py().map(Self)
    }

    /// Drops terms with `|h| < threshold`; returns the pruned operator and
    /// the removed `Σ|h|`.
    fn prune(&self, threshold: f64) -> (Self, f64) {
        let (op, removed) = self.0.prune(threshold);
        (Self(op), removed)
    }

    /// `⟨x|H|x⟩`.
    fn basis_expectation(&self, x: u128) -> f64 {
        self.0.basis_expectation(x)
    }

    fn memory_estimate(&self) -> u64 {
        self.0.memory_estimate()
    }

    fn __repr__(&self) -> String {
        format!("PauliSumOperator(n_qubits={}, terms={})", self.0.n_qubits(), self.0.term_count())
    }
}

#[pyclass(module = "sparsevqe", name = "AnsatzBundle", skip_from_py_object)]
#[derive(Clone)]
struct PyAnsatz(core::AnsatzBundle);

#[pymethods]
impl PyAnsatz {
    /// Entanglers `exp(-iβP/2)` from `[(PauliString, beta), ...]`.
    #[new]
    #[pyo3(signature = (n_qubits, reference, entanglers, step_size = runner::DEFAULT_STEP_SIZE))]
    fn new(n_qubits: usize, reference: u128, entanglers: Vec<(PyPauli, f64)>, step_size: usize) -> PyResult<Self> {
        let entanglers = entanglers
            .into_iter()
            .map(|(p, beta)| core::Entangler { pauli: p.0, beta })
            .collect();
        core::AnsatzBundle::new(n_qubits, reference, entanglers, step_size).py().map(Self)
    }

    #[staticmethod]
    fn parse(text: &str) -> PyResult<Self> {
        core::AnsatzBundle::parse(text).py().map(Self)
    }

    #[staticmethod]
    fn load(path: &str) -> PyResult<Self> {
        core::AnsatzBundle::load(path).py().map(Self)
    }

    fn to_text(&self) -> String {
        self.0.to_text()
    }

    #[getter]
    fn n_qubits(&self) -> usize {
        self.0.n_qubits()
    }

    #[getter]
    fn reference(&self) -> u128 {
        self.0.reference()
    }

    #[getter]
    fn step_size(&self) -> usize {
        self.0.step_size()
    }

    fn steps(&self) -> usize {
        self.0.steps()
    }

    fn entanglers(&self) -> Vec<(PyPauli, f64)> {
        self.0.entanglers().iter().map(|e| (PyPauli(e.pauli), e.beta)).collect()
    }

    fn with_reference(&self, reference: u128) -> PyResult<Self> {
        self.0.clone().with_reference(reference).py().map(Self)
    }

    fn reversed(&self) -> Self {
        Self(self.0.clone().reversed())
    }

    fn __len__(&self) -> usize {
        self.0.entanglers().len()
    }
}

fn gates(paulis: &[PyPauli], thetas: &[f64]) -> PyResult<Vec<ExponentialGate>> {
    if paulis.len() != thetas.len() {
        return Err(PyValueError::new_err(format!(
            "{} Pauli strings but {} angles",
            paulis.len(),
            thetas.len()
        )));
    }
    paulis
        .iter()
        .zip(thetas)
        .map(|(p, &t)| ExponentialGate::new(p.0, t).py())
        .collect()
}

fn counts_dict<'py>(py: Python<'py>, c: &GateCounts) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("n_qubits", c.n_qubits)?;
    d.set_item("cnot", c.cnot)?;
    d.set_item("x", c.x)?;
    d.set_item("h", c.h)?;
    d.set_item("rx", c.rx)?;
    d.set_item("rz", c.rz)?;
    Ok(d)
}

fn row_dict<'py>(py: Python<'py>, r: &SweepRow) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    d.set_item("steps", r.steps)?;
    d.set_item("cutoff", r.cutoff)?;
    d.set_item("energy", r.energy)?;
    d.set_item("delta_mha", r.delta_mha)?;
    d.set_item("sim_time_s", r.sim_time_s)?;
    d.set_item("meas_time_s", r.meas_time_s)?;
    d.set_item("n_elements", r.n_elements)?;
    d.set_item("error", r.error.as_deref())?;
    Ok(d)
}

/// `⟨ψ|H|ψ⟩`, measured in parallel over terms.
#[pyfunction]
#[pyo3(signature = (state, hamiltonian, workers = 1))]
fn energy(py: Python<'_>, state: &PyState, hamiltonian: &PyOperator, workers: usize) -> PyResult<f64> {
    let (s, h) = (&state.0, &hamiltonian.0);
    py.detach(|| core::energy(s, h, workers)).py().map(|e| e.value)
}

#[pyfunction]
fn pauli_expectation(state: &PyState, pauli: &PyPauli) -> PyResult<f64> {
    core::pauli_expectation(&state.0, &pauli.0).py()
}

/// GF(2) rank of the X masks.
#[pyfunction]
fn gf2_rank(paulis: Vec<PyPauli>) -> PyResult<usize> {
    let g = gates(&paulis, &vec![0.0; paulis.len()])?;
    Ok(core::gf2_rank(&core::xy_matrix(&g).py()?))
}

/// `(step, entanglers, rank, log2_bound)` after every `step_size` entanglers.
#[pyfunction]
#[pyo3(signature = (paulis, step_size = runner::DEFAULT_STEP_SIZE))]
fn rank_profile(paulis: Vec<PyPauli>, step_size: usize) -> PyResult<Vec<(usize, usize, usize, usize)>> {
    let g = gates(&paulis, &vec![0.0; paulis.len()])?;
    Ok(prefix_ranks(&g, step_size)
        .py()?
        .into_iter()
        .map(|r| (r.step, r.entanglers, r.rank, r.log2_bound))
        .collect())
}

/// `⟨y|exp(iθ_m P_m) ⋯ exp(iθ_1 P_1)|x⟩` without building the state.
#[pyfunction]
#[pyo3(signature = (paulis, thetas, x, y, budget = DEFAULT_ENUMERATION_BUDGET))]
fn single_amplitude(
    py: Python<'_>,
    paulis: Vec<PyPauli>,
    thetas: Vec<f64>,
    x: u128,
    y: u128,
    budget: u64,
) -> PyResult<Complex64> {
    let g = gates(&paulis, &thetas)?;
    py.detach(|| core::single_amplitude(&g, x, y, budget)).py()
}

#[pyfunction]
fn entangler_resources<'py>(py: Python<'py>, pauli: &PyPauli) -> PyResult<Bound<'py, PyDict>> {
    counts_dict(py, &core::entangler_resources(&pauli.0).py()?)
}

#[pyfunction]
#[pyo3(signature = (ansatz, optimize = false))]
fn circuit_resources<'py>(py: Python<'py>, ansatz: &PyAnsatz, optimize: bool) -> PyResult<Bound<'py, PyDict>> {
    counts_dict(py, &core::circuit_resources(&ansatz.0.gates(), ansatz.0.reference(), optimize))
}

/// Simulates the ansatz once per cutoff; one dict per row, largest cutoff first.
#[pyfunction]
#[pyo3(signature = (hamiltonian, ansatz, cutoffs, workers = 1))]
fn run_sweep<'py>(
    py: Python<'py>,
    hamiltonian: &PyOperator,
    ansatz: &PyAnsatz,
    cutoffs: Vec<f64>,
    workers: usize,
) -> PyResult<Vec<Bound<'py, PyDict>>> {
    let (h, a) = (&hamiltonian.0, &ansatz.0);
    let result = py.detach(|| runner::run_sweep(h, a, &cutoffs, workers)).py()?;
    result.rows.iter().map(|r| row_dict(py, r)).collect()
}

/// Final state and row of a single run.
#[pyfunction]
#[pyo3(signature = (hamiltonian, ansatz, cutoff = runner::DEFAULT_CUTOFF, workers = 1))]
fn run_single<'py>(
    py: Python<'py>,
    hamiltonian: &PyOperator,
    ansatz: &PyAnsatz,
    cutoff: f64,
    workers: usize,
) -> PyResult<(Bound<'py, PyDict>, PyState)> {
    let (h, a) = (&hamiltonian.0, &ansatz.0);
    let (row, state) = py.detach(|| runner::run_single_with_state(h, a, cutoff, workers)).py()?;
    Ok((row_dict(py, &row)?, PyState(state)))
}

/// `(e_transform, e_simulation, difference)` for the first `prefix_len` entanglers.
#[pyfunction]
#[pyo3(signature = (hamiltonian, ansatz, prefix_len, prune_threshold = 0.0, max_terms = 10_000_000))]
fn transform_crosscheck(
    py: Python<'_>,
    hamiltonian: &PyOperator,
    ansatz: &PyAnsatz,
    prefix_len: usize,
    prune_threshold: f64,
    max_terms: usize,
) -> PyResult<(f64, f64, f64)> {
    let (h, a) = (&hamiltonian.0, &ansatz.0);
    let c = py
        .detach(|| runner::transform_crosscheck(h, a, prefix_len, prune_threshold, max_terms))
        .py()?;
    Ok((c.e_transform, c.e_simulation, c.difference))
}

/// Lowest eigenvalue by dense diagonalization (at most 10 qubits).
#[pyfunction]
fn ground_energy(py: Python<'_>, hamiltonian: &PyOperator) -> PyResult<f64> {
    let h = &hamiltonian.0;
    py.detach(|| dense_oracle::ground_energy(h)).py()
}

/// Basis index from `hf:N`, `occ:0,2-5` or a bitstring (qubit 0 rightmost).
#[pyfunction]
fn reference_index(text: &str) -> PyResult<u128> {
    parse_reference(text).py()
}

#[pymodule]
fn sparsevqe(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add("NumericalError", m.py().get_type::<NumericalError>())?;
    m.add_class::<PyPauli>()?;
    m.add_class::<PyState>()?;
    m.add_class::<PyOperator>()?;
    m.add_class::<PyAnsatz>()?;
    m.add_function(wrap_pyfunction!(energy, m)?)?;
    m.add_function(wrap_pyfunction!(pauli_expectation, m)?)?;
    m.add_function(wrap_pyfunction!(gf2_rank, m)?)?;
    m.add_function(wrap_pyfunction!(rank_profile, m)?)?;
    m.add_function(wrap_pyfunction!(single_amplitude, m)?)?;
    m.add_function(wrap_pyfunction!(entangler_resources, m)?)?;
    m.add_function(wrap_pyfunction!(circuit_resources, m)?)?;
    m.add_function(wrap_pyfunction!(run_sweep, m)?)?;
    m.add_function(wrap_pyfunction!(run_single, m)?)?;
    m.add_function(wrap_pyfunction!(transform_crosscheck, m)?)?;
    m.add_function(wrap_pyfunction!(ground_energy, m)?)?;
    m.add_function(wrap_pyfunction!(reference_index, m)?)?;
    Ok(())
}
