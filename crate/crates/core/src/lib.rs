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

//! Sparse wavefunction simulation of VQE circuits made of Pauli exponentials.
//!
//! The state is a hash map from basis index to amplitude. Each gate
//! `exp(iθP)` touches at most two amplitudes per stored entry; after every
//! gate, amplitudes with `|α|² < cutoff` are dropped and the state is
//! renormalized. Energies are measured term by term against the untransformed
//! Hamiltonian, in parallel over terms.
//!
//! Alongside the simulator: GF(2) rank bounds on the number of nonzero
//! amplitudes, exact single-amplitude evaluation, Hamiltonian similarity
//! transforms for cross-checks, gate-count estimates, and a dense reference
//! simulator for testing.

pub mod dense_oracle;
pub mod error;
mod format;
pub mod hamiltonian;
pub mod pauli;
pub mod resources;
pub mod runner;
pub mod sparsity;
pub mod state;

pub use error::{Error, Result};
pub use hamiltonian::{energy, pauli_expectation, EnergyMeasurement, PauliSumOperator, Term};
pub use pauli::{BasisIndex, Factor, PauliString, PhasedIndex, WeightProfile, MAX_QUBITS};
pub use resources::{circuit_resources, entangler_resources, reference_resources, GateCounts};
pub use runner::{AnsatzBundle, Crosscheck, Entangler, SweepResult, SweepRow, TraceRow};
pub use sparsity::{gf2_rank, single_amplitude, xy_matrix, GF2Solution, NonzeroBound, RankRow, XYMatrix};
pub use state::{ExponentialGate, SparseState};
