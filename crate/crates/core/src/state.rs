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

//! Sparse wavefunction storage and Pauli-exponential updates.

use std::io::{Read, Write};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rustc_hash::FxHashMap;

use crate::error::{Error, Result};
use crate::pauli::{check_basis, check_qubits, BasisIndex, PauliString};

pub type AmplitudeMap = FxHashMap<BasisIndex, Complex64>;

/// Squared magnitudes at or below this are round-off zeros (`|α| ≤ ε`) and are
/// never stored, whatever the cutoff.
pub const ZERO_FLOOR: f64 = f64::EPSILON * f64::EPSILON;

/// `exp(iθP)` for a bare Pauli string `P`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ExponentialGate {
    pauli: PauliString,
    theta: f64,
}

impl ExponentialGate {
    pub fn new(pauli: PauliString, theta: f64) -> Result<Self> {
        if pauli.phase_exponent() != 0 {
            return Err(Error::Invalid(format!(
                "exponential generator {pauli} carries a phase"
            )));
        }
        if !theta.is_finite() {
            return Err(Error::Invalid(format!("non-finite angle for {pauli}")));
        }
        Ok(Self { pauli, theta })
    }

    /// QCC entangler `exp(-iβP/2)`, i.e. `θ = -β/2`.
    pub fn from_beta(pauli: PauliString, beta: f64) -> Result<Self> {
        Self::new(pauli, -beta / 2.0)
    }

    #[inline]
    pub fn pauli(&self) -> &PauliString {
        &self.pauli
    }

    #[inline]
    pub fn theta(&self) -> f64 {
        self.theta
    }

    #[inline]
    pub fn beta(&self) -> f64 {
        -2.0 * self.theta
    }
}

/// Weight kept and weight removed by truncation during one update.
#[derive(Clone, Copy, Default)]
struct Tally {
    kept: f64,
    dropped: f64,
}

/// Element counts and timing of a circuit run.
#[derive(Clone, Debug, Default)]
pub struct CircuitRun {
    /// Stored amplitudes after each gate, in gate order.
    pub element_counts: Vec<usize>,
    pub wall_time: Duration,
}

/// Hash map from basis index to amplitude, truncated at a squared-magnitude cutoff.
///
/// After every gate, no stored amplitude has `|α|² < cutoff`, no stored
/// amplitude is exactly zero, and the state has unit norm.
#[derive(Clone, Debug)]
pub struct SparseState {
    n_qubits: usize,
    entries: AmplitudeMap,
    cutoff: f64,
    gates_applied: usize,
    truncated_weight: f64,
}

impl SparseState {
    /// The computational basis state `|occupied⟩`.
    pub fn from_reference(n_qubits: usize, occupied: BasisIndex, cutoff: f64) -> Result<Self> {
        check_qubits(n_qubits)?;
        check_basis(occupied, n_qubits)?;
        check_cutoff(cutoff)?;
        let mut entries = AmplitudeMap::default();
        entries.insert(occupied, Complex64::new(1.0, 0.0));
        Ok(Self {
            n_qubits,
            entries,
            cutoff,
            gates_applied: 0,
            truncated_weight: 0.0,
        })
    }

    /// Builds a state from arbitrary amplitudes; duplicates are summed, then
    /// the result is truncated and normalized.
    pub fn from_amplitudes<I>(n_qubits: usize, amplitudes: I, cutoff: f64) -> Result<Self>
    where
        I: IntoIterator<Item = (BasisIndex, Complex64)>,
    {
        check_qubits(n_qubits)?;
        check_cutoff(cutoff)?;
        let mut raw = AmplitudeMap::default();
        for (x, a) in amplitudes {
            check_basis(x, n_qubits)?;
            *raw.entry(x).or_default() += a;
        }
        let total: f64 = raw.values().map(|a| a.norm_sqr()).sum();
        if !(total > 0.0) || !total.is_finite() {
            return Err(Error::EmptyState { gate: 0 });
        }
        let scale = total.sqrt().recip();
        let mut state = Self {
            n_qubits,
            entries: AmplitudeMap::default(),
            cutoff,
            gates_applied: 0,
            truncated_weight: 0.0,
        };
        let mut tally = Tally::default();
        let mut next = AmplitudeMap::default();
        for (x, a) in raw {
            state.keep(&mut next, &mut tally, x, a * scale);
        }
        state.entries = next;
        state.finish(tally).map_err(|_| Error::EmptyState { gate: 0 })?;
        Ok(state)
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    #[inline]
    pub fn cutoff(&self) -> f64 {
        self.cutoff
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Number of gates applied since construction.
    pub fn gates_applied(&self) -> usize {
        self.gates_applied
    }

    /// Squared weight removed by truncation, summed over all gates (each
    /// measured before that gate's renormalization).
    pub fn truncated_weight(&self) -> f64 {
        self.truncated_weight
    }

    pub fn entries(&self) -> &AmplitudeMap {
        &self.entries
    }

    pub fn iter(&self) -> impl Iterator<Item = (BasisIndex, Complex64)> + '_ {
        self.entries.iter().map(|(&x, &a)| (x, a))
    }

    /// Stored amplitude, or exactly zero if absent.
    #[inline]
    pub fn amplitude(&self, x: BasisIndex) -> Complex64 {
        self.entries.get(&x).copied().unwrap_or_default()
    }

    #[inline]
    pub(crate) fn get(&self, x: BasisIndex) -> Option<&Complex64> {
        self.entries.get(&x)
    }

    pub fn norm_sqr(&self) -> f64 {
        self.entries.values().map(|a| a.norm_sqr()).sum()
    }

    /// `⟨self|other⟩`.
    pub fn inner_product(&self, other: &SparseState) -> Result<Complex64> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch {
                left: self.n_qubits,
                right: other.n_qubits,
            });
        }
        let (small, large, conj_small) = if self.len() <= other.len() {
            (self, other, true)
        } else {
            (other, self, false)
        };
        let mut acc = Complex64::default();
        for (x, a) in small.iter() {
            if let Some(&b) = large.get(x) {
                acc += if conj_small { a.conj() * b } else { b.conj() * a };
            }
        }
        Ok(acc)
    }

    /// Applies `exp(iθP) = cos θ + i sin θ P`, then truncates and renormalizes.
    ///
    /// Returns the number of stored amplitudes afterwards. If truncation
    /// removes everything the state is left untouched and the error names the
    /// gate's ordinal in this state's history (1-based).
    pub fn apply_exponential(&mut self, gate: &ExponentialGate) -> Result<usize> {
        let pauli = gate.pauli();
        if pauli.n_qubits() != self.n_qubits {
            return Err(Error::DimensionMismatch {
                left: self.n_qubits,
                right: pauli.n_qubits(),
            });
        }
        let (sin, cos) = gate.theta().sin_cos();
        let isin = Complex64::new(0.0, sin);
        let mask = pauli.x_mask();
        let mut next = AmplitudeMap::with_capacity_and_hasher(
            if mask == 0 { self.len() } else { 2 * self.len() },
            Default::default(),
        );
        let mut tally = Tally::default();
        if mask == 0 {
            for (&x, &a) in &self.entries {
                let c = pauli.apply_to_basis(x).coeff();
                self.keep(&mut next, &mut tally, x, (cos + isin * c) * a);
            }
        } else {
            for (&x, &ax) in &self.entries {
                let y = x ^ mask;
                let ay = match self.entries.get(&y) {
                    // the pair is handled once, from its smaller index
                    Some(_) if y < x => continue,
                    Some(&ay) => ay,
                    None => Complex64::default(),
                };
                // P|x⟩ = c_x|y⟩ and P|y⟩ = c_y|x⟩
                let c_x = pauli.apply_to_basis(x).coeff();
                let c_y = pauli.apply_to_basis(y).coeff();
                self.keep(&mut next, &mut tally, x, cos * ax + isin * c_y * ay);
                self.keep(&mut next, &mut tally, y, cos * ay + isin * c_x * ax);
            }
        }
        let before = std::mem::replace(&mut self.entries, next);
        if let Err(e) = self.finish(tally) {
            self.entries = before;
            return Err(e);
        }
        self.gates_applied += 1;
        Ok(self.entries.len())
    }

    /// Applies gates in sequence order, recording the element count after each.
    pub fn apply_circuit(&mut self, gates: &[ExponentialGate]) -> Result<CircuitRun> {
        let start = Instant::now();
        let mut element_counts = Vec::with_capacity(gates.len());
        for gate in gates {
            element_counts.push(self.apply_exponential(gate)?);
        }
        Ok(CircuitRun {
            element_counts,
            wall_time: start.elapsed(),
        })
    }

    /// Inserts `a` at `x` if it survives truncation.
    #[inline]
    fn keep(&self, next: &mut AmplitudeMap, tally: &mut Tally, x: BasisIndex, a: Complex64) {
        let w = a.norm_sqr();
        if w > ZERO_FLOOR && w >= self.cutoff {
            next.insert(x, a);
            tally.kept += w;
        } else if w > ZERO_FLOOR {
            tally.dropped += w;
        }
    }

    fn finish(&mut self, tally: Tally) -> Result<()> {
        if self.entries.is_empty() || !(tally.kept > 0.0) {
            return Err(Error::EmptyState {
                gate: self.gates_applied + 1,
            });
        }
        self.truncated_weight += tally.dropped;
        let scale = tally.kept.sqrt().recip();
        for a in self.entries.values_mut() {
            *a *= scale;
        }
        Ok(())
    }

    /// Writes the binary checkpoint format: an 8-byte magic, `u32` version,
    /// `u32` qubit count and `u64` entry count, followed per entry by the
    /// 16-byte index and the real and imaginary parts, all little-endian.
    /// Entries are written in ascending index order.
    pub fn write_to<W: Write>(&self, mut w: W) -> Result<()> {
        w.write_all(DUMP_MAGIC)?;
        w.write_all(&DUMP_VERSION.to_le_bytes())?;
        w.write_all(&(self.n_qubits as u32).to_le_bytes())?;
        w.write_all(&(self.len() as u64).to_le_bytes())?;
        let mut sorted: Vec<_> = self.iter().collect();
        sorted.sort_unstable_by_key(|&(x, _)| x);
        for (x, a) in sorted {
            w.write_all(&x.to_le_bytes())?;
            w.write_all(&a.re.to_le_bytes())?;
            w.write_all(&a.im.to_le_bytes())?;
        }
        w.flush()?;
        Ok(())
    }

    /// Reads a checkpoint written by [`SparseState::write_to`]. Amplitudes are
    /// restored as stored.
    pub fn read_from<R: Read>(mut r: R, cutoff: f64) -> Result<Self> {
        check_cutoff(cutoff)?;
        let mut magic = [0u8; 8];
        r.read_exact(&mut magic)?;
        if &magic != DUMP_MAGIC {
            return Err(Error::Io("not a sparse state dump".into()));
        }
        let version = u32::from_le_bytes(read_array(&mut r)?);
        if version != DUMP_VERSION {
            return Err(Error::Io(format!("unsupported dump version {version}")));
        }
        let n_qubits = u32::from_le_bytes(read_array(&mut r)?) as usize;
        check_qubits(n_qubits)?;
        let count = u64::from_le_bytes(read_array(&mut r)?);
        let mut entries = AmplitudeMap::default();
        for _ in 0..count {
            let x = u128::from_le_bytes(read_array(&mut r)?);
            check_basis(x, n_qubits)?;
            let re = f64::from_le_bytes(read_array(&mut r)?);
            let im = f64::from_le_bytes(read_array(&mut r)?);
            entries.insert(x, Complex64::new(re, im));
        }
        Ok(Self {
            n_qubits,
            entries,
            cutoff,
            gates_applied: 0,
            truncated_weight: 0.0,
        })
    }
}

const DUMP_MAGIC: &[u8; 8] = b"SPVQSTAT";
const DUMP_VERSION: u32 = 1;

fn read_array<const N: usize, R: Read>(r: &mut R) -> Result<[u8; N]> {
    let mut buf = [0u8; N];
    r.read_exact(&mut buf)?;
    Ok(buf)
}

pub(crate) fn check_cutoff(cutoff: f64) -> Result<()> {
    if !(0.0..1.0).contains(&cutoff) {
        return Err(Error::Cutoff(cutoff));
    }
    Ok(())
}

/// Memory model for an open-addressing hash map holding `n_elements`
/// amplitudes: 16-byte key, 16-byte amplitude and 1 byte of metadata per slot,
/// capacity starting at 10 slots and doubling whenever the load factor would
/// exceed 0.9375.
pub fn hashmap_memory_estimate(n_elements: u64) -> u64 {
    const SLOT_BYTES: u64 = 16 + 16 + 1;
    let mut capacity: u64 = 10;
    while n_elements as f64 > 0.9375 * capacity as f64 {
        capacity *= 2;
    }
    capacity * SLOT_BYTES
}
