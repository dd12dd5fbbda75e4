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

//! Pauli-sum observables `H = Σ h_i P_i` with real coefficients.

use std::path::Path;
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::format::parse_lines;
use crate::pauli::{check_qubits, i_pow, BasisIndex, PauliString};
use crate::state::SparseState;

/// Largest imaginary coefficient residue accepted when building an operator.
pub const COEFF_IMAG_TOL: f64 = 1e-12;
/// Largest imaginary part accepted in a single Pauli expectation value.
pub const EXPECTATION_IMAG_TOL: f64 = 1e-8;
/// Bytes per term in the reporting model: two 128-bit masks and a double.
pub const TERM_BYTES: u64 = 40;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Term {
    pub coeff: f64,
    pub pauli: PauliString,
}

/// Hermitian Pauli sum. Stored Pauli strings are phase-free, pairwise
/// distinct, and carry nonzero real coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct PauliSumOperator {
    n_qubits: usize,
    terms: Vec<Term>,
}

impl PauliSumOperator {
    pub fn empty(n_qubits: usize) -> Result<Self> {
        check_qubits(n_qubits)?;
        Ok(Self {
            n_qubits,
            terms: Vec::new(),
        })
    }

    /// Builds an operator from complex-weighted, possibly phased Pauli strings.
    ///
    /// Phases are folded into the coefficients and repeated strings are summed
    /// in order of first appearance. A summed coefficient whose imaginary part
    /// exceeds [`COEFF_IMAG_TOL`] is rejected; exact zeros are dropped.
    pub fn from_complex_terms<I>(n_qubits: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Complex64, PauliString)>,
    {
        check_qubits(n_qubits)?;
        let mut index: FxHashMap<(u128, u128), usize> = FxHashMap::default();
        let mut acc: Vec<(Complex64, PauliString)> = Vec::new();
        for (c, p) in terms {
            if p.n_qubits() != n_qubits {
                return Err(Error::DimensionMismatch {
                    left: n_qubits,
                    right: p.n_qubits(),
                });
            }
            let c = c * i_pow(p.phase_exponent());
            let key = (p.x_mask(), p.z_mask());
            match index.get(&key) {
                Some(&k) => acc[k].0 += c,
                None => {
                    index.insert(key, acc.len());
                    acc.push((c, p.unphased()));
                }
            }
        }
        let mut out = Vec::with_capacity(acc.len());
        for (c, pauli) in acc {
            if c.im.abs() > COEFF_IMAG_TOL {
                return Err(Error::NonReal {
                    what: format!("coefficient of {pauli}"),
                    residue: c.im.abs(),
                });
            }
            if c.re != 0.0 {
                out.push(Term { coeff: c.re, pauli });
            }
        }
        Ok(Self {
            n_qubits,
            terms: out,
        })
    }

    pub fn from_terms<I>(n_qubits: usize, terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (f64, PauliString)>,
    {
        Self::from_complex_terms(
            n_qubits,
            terms.into_iter().map(|(h, p)| (Complex64::new(h, 0.0), p)),
        )
    }

    /// Parses the text format: `<coefficient> <pauli>` per line, optional
    /// `qubits: N` header.
    pub fn parse(text: &str) -> Result<Self> {
        let file = parse_lines(text, &["qubits"])?;
        let n = file.n_qubits()?;
        Self::from_terms(n, file.paulis(n)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Renders in the text format accepted by [`PauliSumOperator::parse`].
    pub fn to_text(&self) -> String {
        let mut s = format!("qubits: {}\n", self.n_qubits);
        for t in &self.terms {
            s.push_str(&format!("{:e} {}\n", t.coeff, t.pauli));
        }
        s
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    #[inline]
    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    #[inline]
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Storage estimate of [`TERM_BYTES`] per term.
    pub fn memory_estimate(&self) -> u64 {
        memory_estimate(self.terms.len() as u64)
    }

    pub fn widen(&self, n_qubits: usize) -> Result<Self> {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                Ok(Term {
                    coeff: t.coeff,
                    pauli: t.pauli.widen(n_qubits)?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(Self { n_qubits, terms })
    }

    /// Drops terms with `|h| < threshold`; also returns `Σ|h|` of what was dropped.
    pub fn prune(&self, threshold: f64) -> (Self, f64) {
        let mut removed = 0.0;
        let terms = self
            .terms
            .iter()
            .filter(|t| {
                let keep = t.coeff.abs() >= threshold;
                if !keep {
                    removed += t.coeff.abs();
                }
                keep
            })
            .copied()
            .collect();
        (
            Self {
                n_qubits: self.n_qubits,
                terms,
            },
            removed,
        )
    }

    /// `U†HU` for the entangler `U = exp(-iβP/2)`.
    ///
    /// Terms commuting with `P` are unchanged. An anticommuting term `h Q`
    /// becomes `h cos β · Q + h sin β · iPQ`.
    pub fn similarity_transform(&self, p: &PauliString, beta: f64) -> Result<Self> {
        if p.n_qubits() != self.n_qubits {
            return Err(Error::DimensionMismatch {
                left: self.n_qubits,
                right: p.n_qubits(),
            });
        }
        if p.phase_exponent() != 0 {
            return Err(Error::Invalid(format!("transform generator {p} carries a phase")));
        }
        let (sin, cos) = beta.sin_cos();
        let mut out = Vec::with_capacity(self.terms.len() * 2);
        for t in &self.terms {
            if t.pauli.commutes_unchecked(p) {
                out.push((Complex64::new(t.coeff, 0.0), t.pauli));
            } else {
                out.push((Complex64::new(t.coeff * cos, 0.0), t.pauli));
                let pq = p.multiply(&t.pauli)?;
                out.push((Complex64::new(0.0, t.coeff * sin), pq));
            }
        }
        Self::from_complex_terms(self.n_qubits, out)
    }

    /// `⟨x|H|x⟩` for a basis state: only diagonal terms contribute.
    pub fn basis_expectation(&self, x: BasisIndex) -> f64 {
        self.terms
            .iter()
            .filter(|t| t.pauli.is_diagonal())
            .map(|t| {
                if (x & t.pauli.z_mask()).count_ones() & 1 == 1 {
                    -t.coeff
                } else {
                    t.coeff
                }
            })
            .sum()
    }
}

pub fn memory_estimate(term_count: u64) -> u64 {
    TERM_BYTES * term_count
}

pub fn load_hamiltonian(path: impl AsRef<Path>) -> Result<PauliSumOperator> {
    PauliSumOperator::load(path)
}

/// `⟨Ψ|P|Ψ⟩ = Σ_x conj(α_{x⊕m}) c_x α_x` where `P|x⟩ = c_x|x⊕m⟩`.
pub fn pauli_expectation(state: &SparseState, p: &PauliString) -> Result<f64> {
    if p.n_qubits() != state.n_qubits() {
        return Err(Error::DimensionMismatch {
            left: state.n_qubits(),
            right: p.n_qubits(),
        });
    }
    let value = raw_expectation(state, p);
    if value.im.abs() > EXPECTATION_IMAG_TOL {
        return Err(Error::NonReal {
            what: format!("⟨{p}⟩"),
            residue: value.im.abs(),
        });
    }
    Ok(value.re)
}

#[inline]
fn raw_expectation(state: &SparseState, p: &PauliString) -> Complex64 {
    let mut acc = Complex64::default();
    if p.is_diagonal() {
        for (x, a) in state.iter() {
            acc += a.norm_sqr() * p.apply_to_basis(x).coeff();
        }
    } else {
        for (x, a) in state.iter() {
            let r = p.apply_to_basis(x);
            if let Some(b) = state.get(r.index) {
                acc += b.conj() * r.coeff() * a;
            }
        }
    }
    acc
}

#[derive(Clone, Copy, Debug)]
pub struct EnergyMeasurement {
    pub value: f64,
    pub wall_time: Duration,
}

/// `Σ_i h_i ⟨P_i⟩`, with the terms split into `workers` contiguous chunks that
/// are evaluated in parallel and summed in chunk order.
pub fn energy(state: &SparseState, h: &PauliSumOperator, workers: usize) -> Result<EnergyMeasurement> {
    if h.n_qubits() != state.n_qubits() {
        return Err(Error::DimensionMismatch {
            left: state.n_qubits(),
            right: h.n_qubits(),
        });
    }
    let start = Instant::now();
    let workers = workers.max(1);
    let value = if workers == 1 || h.term_count() < 2 {
        partial_energy(state, h.terms())?
    } else {
        let chunk = h.term_count().div_ceil(workers);
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|e| Error::Invalid(format!("cannot start {workers} workers: {e}")))?;
        let partials: Vec<f64> = pool.install(|| {
            h.terms()
                .par_chunks(chunk)
                .map(|c| partial_energy(state, c))
                .collect::<Result<_>>()
        })?;
        partials.iter().sum()
    };
    Ok(EnergyMeasurement {
        value,
        wall_time: start.elapsed(),
    })
}

fn partial_energy(state: &SparseState, terms: &[Term]) -> Result<f64> {
    let mut sum = 0.0;
    for t in terms {
        sum += t.coeff * pauli_expectation(state, &t.pauli)?;
    }
    Ok(sum)
}
