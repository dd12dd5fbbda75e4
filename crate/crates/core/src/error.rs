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

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("qubit count {0} outside supported range 1..=128")]
    QubitCount(usize),
    #[error("qubit index {index} out of range for {n_qubits} qubits")]
    QubitIndex { index: usize, n_qubits: usize },
    #[error("qubit {0} appears more than once")]
    DuplicateQubit(usize),
    #[error("cannot parse Pauli factor `{0}`")]
    BadFactor(String),
    #[error("qubit-count mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("basis index {index:#x} does not fit in {n_qubits} qubits")]
    BasisIndex { index: u128, n_qubits: usize },
    #[error("cutoff {0} must lie in [0, 1)")]
    Cutoff(f64),
    #[error("state became empty after truncation at gate {gate}")]
    EmptyState { gate: usize },
    #[error("imaginary residue {residue:e} exceeds tolerance for {what}")]
    NonReal { what: String, residue: f64 },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("enumeration of 2^{nullity} solutions exceeds budget {budget}")]
    BudgetExceeded { nullity: usize, budget: u64 },
    #[error("identity entangler has no circuit")]
    IdentityEntangler,
    #[error("transformed operator has {terms} terms, above guard {limit}")]
    TermGuard { terms: usize, limit: usize },
    #[error("dense oracle limited to {max} qubits, got {n_qubits}")]
    DenseTooLarge { n_qubits: usize, max: usize },
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Invalid(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl Error {
    /// True for failures of the numerical pipeline rather than of its inputs.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::EmptyState { .. }
                | Error::BudgetExceeded { .. }
                | Error::NonReal { .. }
                | Error::TermGuard { .. }
        )
    }
}
