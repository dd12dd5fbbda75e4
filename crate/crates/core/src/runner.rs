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

//! Evaluation protocol for QCC ansätze: cutoff sweeps, per-step energy
//! traces, and comparison against iteratively transformed Hamiltonians.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::format::parse_lines;
use crate::hamiltonian::{energy, PauliSumOperator};
use crate::pauli::{check_basis, check_qubits, low_mask, BasisIndex, PauliString, MAX_QUBITS};
use crate::state::{check_cutoff, ExponentialGate, SparseState};

/// Entanglers per iQCC step when a file does not say otherwise.
pub const DEFAULT_STEP_SIZE: usize = 20;
/// Cutoff used when none is given.
pub const DEFAULT_CUTOFF: f64 = 1e-11;

/// Angle convention of an ansatz file.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Convention {
    /// `exp(iθP)`
    Theta,
    /// `exp(-iβP/2)`
    Beta,
}

/// One QCC entangler `exp(-iβP/2)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Entangler {
    pub pauli: PauliString,
    pub beta: f64,
}

/// Reference state, entanglers in application order, and step structure.
#[derive(Clone, Debug, PartialEq)]
pub struct AnsatzBundle {
    n_qubits: usize,
    reference: BasisIndex,
    entanglers: Vec<Entangler>,
    step_size: usize,
}

impl AnsatzBundle {
    pub fn new(
        n_qubits: usize,
        reference: BasisIndex,
        entanglers: Vec<Entangler>,
        step_size: usize,
    ) -> Result<Self> {
        check_qubits(n_qubits)?;
        check_basis(reference, n_qubits)?;
        if step_size == 0 {
            return Err(Error::Invalid("step size must be positive".into()));
        }
        for e in &entanglers {
            if e.pauli.n_qubits() != n_qubits {
                return Err(Error::DimensionMismatch {
                    left: n_qubits,
                    right: e.pauli.n_qubits(),
                });
            }
            if !e.beta.is_finite() {
                return Err(Error::Invalid(format!("non-finite angle for {}", e.pauli)));
            }
            if e.pauli.phase_exponent() != 0 {
                return Err(Error::Invalid(format!("entangler {} carries a phase", e.pauli)));
            }
        }
        Ok(Self {
            n_qubits,
            reference,
            entanglers,
            step_size,
        })
    }

    /// Parses an ansatz file.
    ///
    /// Headers: `convention: theta|beta` (required), `qubits: N`,
    /// `reference: <state>` (see [`parse_reference`]) and `step_size: K`.
    /// Each remaining line is `<angle> <pauli>`.
    pub fn parse(text: &str) -> Result<Self> {
        let file = parse_lines(text, &["convention", "qubits", "reference", "step_size"])?;
        let convention = match file.header("convention") {
            Some((_, "theta")) => Convention::Theta,
            Some((_, "beta")) => Convention::Beta,
            Some((line, other)) => {
                return Err(Error::Parse {
                    line,
                    message: format!("unknown convention `{other}`"),
                })
            }
            None => {
                return Err(Error::Parse {
                    line: 1,
                    message: "missing `convention: theta|beta` header".into(),
                })
            }
        };
        let mut n = file.n_qubits()?;
        let reference = match file.header("reference") {
            Some((line, text)) => parse_reference(text).map_err(|e| Error::Parse {
                line,
                message: e.to_string(),
            })?,
            None => 0,
        };
        if file.header("qubits").is_none() {
            n = n.max(128 - reference.leading_zeros() as usize);
        }
        let step_size = match file.header("step_size") {
            Some((line, v)) => v.parse().ok().filter(|&k: &usize| k > 0).ok_or_else(|| Error::Parse {
                line,
                message: format!("bad step size `{v}`"),
            })?,
            None => DEFAULT_STEP_SIZE,
        };
        let entanglers = file
            .paulis(n)?
            .into_iter()
            .map(|(angle, pauli)| Entangler {
                pauli,
                beta: match convention {
                    Convention::Beta => angle,
                    Convention::Theta => -2.0 * angle,
                },
            })
            .collect();
        Self::new(n, reference, entanglers, step_size)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Renders in the `beta` convention.
    pub fn to_text(&self) -> String {
        let mut s = format!(
            "convention: beta\nqubits: {}\nreference: {}\nstep_size: {}\n",
            self.n_qubits,
            render_reference(self.reference),
            self.step_size
        );
        for e in &self.entanglers {
            let _ = writeln!(s, "{:e} {}", e.beta, e.pauli);
        }
        s
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn reference(&self) -> BasisIndex {
        self.reference
    }

    pub fn entanglers(&self) -> &[Entangler] {
        &self.entanglers
    }

    pub fn step_size(&self) -> usize {
        self.step_size
    }

    /// Number of (possibly partial) steps.
    pub fn steps(&self) -> usize {
        self.entanglers.len().div_ceil(self.step_size)
    }

    pub fn with_reference(mut self, reference: BasisIndex) -> Result<Self> {
        check_basis(reference, self.n_qubits)?;
        self.reference = reference;
        Ok(self)
    }

    pub fn with_step_size(mut self, step_size: usize) -> Result<Self> {
        if step_size == 0 {
            return Err(Error::Invalid("step size must be positive".into()));
        }
        self.step_size = step_size;
        Ok(self)
    }

    /// Same entanglers applied in the opposite order.
    pub fn reversed(mut self) -> Self {
        self.entanglers.reverse();
        self
    }

    /// First `len` entanglers.
    pub fn prefix(&self, len: usize) -> Self {
        let mut out = self.clone();
        out.entanglers.truncate(len);
        out
    }

    pub fn widen(&self, n_qubits: usize) -> Result<Self> {
        let entanglers = self
            .entanglers
            .iter()
            .map(|e| {
                Ok(Entangler {
                    pauli: e.pauli.widen(n_qubits)?,
                    beta: e.beta,
                })
            })
            .collect::<Result<_>>()?;
        Self::new(n_qubits, self.reference, entanglers, self.step_size)
    }

    /// Entanglers as `exp(iθP)` gates with `θ = -β/2`.
    pub fn gates(&self) -> Vec<ExponentialGate> {
        self.entanglers
            .iter()
            .map(|e| ExponentialGate::from_beta(e.pauli, e.beta).expect("validated entangler"))
            .collect()
    }
}

/// Reference state text: `hf:N` (lowest `N` qubits occupied), `occ:i,j,…`
/// (comma-separated qubit indices or `a-b` ranges), or a bitstring of `0`/`1`
/// written with qubit 0 rightmost, optionally prefixed `bits:`.
pub fn parse_reference(text: &str) -> Result<BasisIndex> {
    let text = text.trim();
    let bad = || Error::Invalid(format!("bad reference `{text}`"));
    if let Some(n) = text.strip_prefix("hf:") {
        let n: usize = n.trim().parse().map_err(|_| bad())?;
        if n > MAX_QUBITS {
            return Err(bad());
        }
        return Ok(low_mask(n) * (n > 0) as u128);
    }
    if let Some(list) = text.strip_prefix("occ:") {
        let mut x = 0u128;
        for part in list.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let (a, b) = match part.split_once('-') {
                Some((a, b)) => (a.trim(), b.trim()),
                None => (part, part),
            };
            let a: usize = a.parse().map_err(|_| bad())?;
            let b: usize = b.parse().map_err(|_| bad())?;
            if a > b || b >= MAX_QUBITS {
                return Err(bad());
            }
            for q in a..=b {
                x |= 1 << q;
            }
        }
        return Ok(x);
    }
    let bits = text.strip_prefix("bits:").unwrap_or(text);
    if bits.is_empty() || bits.len() > MAX_QUBITS || !bits.bytes().all(|b| b == b'0' || b == b'1') {
        return Err(bad());
    }
    u128::from_str_radix(bits, 2).map_err(|_| bad())
}

fn render_reference(x: BasisIndex) -> String {
    let occ: Vec<String> = (0..128).filter(|q| x >> q & 1 == 1).map(|q| q.to_string()).collect();
    format!("occ:{}", occ.join(","))
}

/// One row in the column order of the cutoff-sweep tables.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub steps: usize,
    pub cutoff: f64,
    pub energy: Option<f64>,
    /// Distance above the lowest energy in the sweep, in mHa.
    pub delta_mha: Option<f64>,
    pub sim_time_s: f64,
    pub meas_time_s: f64,
    pub n_elements: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
}

pub const SWEEP_CSV_HEADER: &str = "steps,cutoff,energy_ha,delta_mha,sim_time_s,meas_time_s,n_elements";

impl SweepResult {
    /// Sorts by descending cutoff and fills `delta_mha` from the minimum energy.
    fn finalize(&mut self) {
        self.rows.sort_by(|a, b| b.cutoff.total_cmp(&a.cutoff));
        let min = self
            .rows
            .iter()
            .filter_map(|r| r.energy)
            .min_by(f64::total_cmp);
        for r in &mut self.rows {
            r.delta_mha = match (r.energy, min) {
                (Some(e), Some(m)) => Some((e - m) * 1e3),
                _ => None,
            };
        }
    }

    pub fn best(&self) -> Option<&SweepRow> {
        self.rows
            .iter()
            .filter(|r| r.energy.is_some())
            .min_by(|a, b| a.energy.unwrap().total_cmp(&b.energy.unwrap()))
    }

    /// CSV with header [`SWEEP_CSV_HEADER`]; failed rows leave their numeric
    /// cells empty.
    pub fn to_csv(&self) -> String {
        let mut s = String::from(SWEEP_CSV_HEADER);
        s.push('\n');
        let opt = |v: Option<f64>| v.map(|v| v.to_string()).unwrap_or_default();
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{},{:e},{},{},{},{},{}",
                r.steps,
                r.cutoff,
                opt(r.energy),
                opt(r.delta_mha),
                r.sim_time_s,
                r.meas_time_s,
                r.n_elements.map(|n| n.to_string()).unwrap_or_default()
            );
        }
        s
    }
}

fn check_dims(h: &PauliSumOperator, bundle: &AnsatzBundle) -> Result<()> {
    if h.n_qubits() != bundle.n_qubits() {
        return Err(Error::DimensionMismatch {
            left: h.n_qubits(),
            right: bundle.n_qubits(),
        });
    }
    Ok(())
}

/// Simulates the whole ansatz at one cutoff and measures the energy.
pub fn run_single(
    h: &PauliSumOperator,
    bundle: &AnsatzBundle,
    cutoff: f64,
    workers: usize,
) -> Result<SweepRow> {
    let (row, _) = run_single_with_state(h, bundle, cutoff, workers)?;
    Ok(row)
}

/// As [`run_single`], also returning the final state.
pub fn run_single_with_state(
    h: &PauliSumOperator,
    bundle: &AnsatzBundle,
    cutoff: f64,
    workers: usize,
) -> Result<(SweepRow, SparseState)> {
    check_dims(h, bundle)?;
    let mut state = SparseState::from_reference(bundle.n_qubits(), bundle.reference(), cutoff)?;
    let run = state.apply_circuit(&bundle.gates())?;
    let e = energy(&state, h, workers)?;
    Ok((
        SweepRow {
            steps: bundle.steps(),
            cutoff,
            energy: Some(e.value),
            delta_mha: Some(0.0),
            sim_time_s: run.wall_time.as_secs_f64(),
            meas_time_s: e.wall_time.as_secs_f64(),
            n_elements: Some(state.len()),
            error: None,
        },
        state,
    ))
}

/// One row per cutoff, run one after another. A failing cutoff is recorded in
/// its row and the sweep continues.
pub fn run_sweep(
    h: &PauliSumOperator,
    bundle: &AnsatzBundle,
    cutoffs: &[f64],
    workers: usize,
) -> Result<SweepResult> {
    check_dims(h, bundle)?;
    if cutoffs.is_empty() {
        return Err(Error::Invalid("empty cutoff list".into()));
    }
    for &c in cutoffs {
        check_cutoff(c)?;
    }
    let mut result = SweepResult::default();
    for &cutoff in cutoffs {
        let row = run_single(h, bundle, cutoff, workers).unwrap_or_else(|e| SweepRow {
            steps: bundle.steps(),
            cutoff,
            energy: None,
            delta_mha: None,
            sim_time_s: 0.0,
            meas_time_s: 0.0,
            n_elements: None,
            error: Some(e.to_string()),
        });
        result.rows.push(row);
    }
    result.finalize();
    Ok(result)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TraceRow {
    pub step: usize,
    pub energy: f64,
    pub n_elements: usize,
    pub meas_time_s: f64,
}

pub const TRACE_CSV_HEADER: &str = "step,energy_ha,n_elements,meas_time_s";

pub fn trace_to_csv(rows: &[TraceRow]) -> String {
    let mut s = String::from(TRACE_CSV_HEADER);
    s.push('\n');
    for r in rows {
        let _ = writeln!(s, "{},{},{},{}", r.step, r.energy, r.n_elements, r.meas_time_s);
    }
    s
}

/// Energy after the reference state (step 0) and after every block of
/// `step_size` entanglers.
pub fn per_step_trace(
    h: &PauliSumOperator,
    bundle: &AnsatzBundle,
    cutoff: f64,
    workers: usize,
) -> Result<Vec<TraceRow>> {
    check_dims(h, bundle)?;
    let mut state = SparseState::from_reference(bundle.n_qubits(), bundle.reference(), cutoff)?;
    let gates = bundle.gates();
    let mut rows = Vec::with_capacity(bundle.steps() + 1);
    let measure = |state: &SparseState, step: usize| -> Result<TraceRow> {
        let e = energy(state, h, workers)?;
        Ok(TraceRow {
            step,
            energy: e.value,
            n_elements: state.len(),
            meas_time_s: e.wall_time.as_secs_f64(),
        })
    };
    rows.push(measure(&state, 0)?);
    for (k, block) in gates.chunks(bundle.step_size()).enumerate() {
        state.apply_circuit(block)?;
        rows.push(measure(&state, k + 1)?);
    }
    Ok(rows)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Crosscheck {
    pub prefix_len: usize,
    /// `⟨Φ₀|H_k|Φ₀⟩` for the transformed operator.
    pub e_transform: f64,
    /// Cutoff-free simulated energy of the same prefix.
    pub e_simulation: f64,
    pub difference: f64,
    pub transformed_terms: usize,
    /// `Σ|h|` dropped by pruning across all transforms.
    pub removed_weight: f64,
}

/// Compares the energy of the first `prefix_len` entanglers obtained two ways:
/// conjugating the Hamiltonian by each entangler (pruning with
/// `prune_threshold` after every step) and reading off the reference-state
/// expectation, versus simulating the state without truncation.
///
/// The simulated state is `U_k ⋯ U_1 |Φ₀⟩`, so the conjugations are applied
/// from `U_k` back to `U_1`. Fails once the transformed operator exceeds
/// `max_terms`.
pub fn transform_crosscheck(
    h: &PauliSumOperator,
    bundle: &AnsatzBundle,
    prefix_len: usize,
    prune_threshold: f64,
    max_terms: usize,
) -> Result<Crosscheck> {
    check_dims(h, bundle)?;
    if prefix_len > bundle.entanglers().len() {
        return Err(Error::Invalid(format!(
            "prefix {prefix_len} longer than ansatz ({})",
            bundle.entanglers().len()
        )));
    }
    let prefix = bundle.prefix(prefix_len);
    let mut ht = h.clone();
    let mut removed_weight = 0.0;
    for e in prefix.entanglers().iter().rev() {
        let next = ht.similarity_transform(&e.pauli, e.beta)?;
        let (next, removed) = next.prune(prune_threshold);
        removed_weight += removed;
        if next.term_count() > max_terms {
            return Err(Error::TermGuard {
                terms: next.term_count(),
                limit: max_terms,
            });
        }
        ht = next;
    }
    let e_transform = ht.basis_expectation(bundle.reference());
    let e_simulation = run_single(h, &prefix, 0.0, 1)?.energy.expect("successful run");
    Ok(Crosscheck {
        prefix_len,
        e_transform,
        e_simulation,
        difference: (e_transform - e_simulation).abs(),
        transformed_terms: ht.term_count(),
        removed_weight,
    })
}
