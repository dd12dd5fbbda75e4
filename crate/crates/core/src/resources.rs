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

//! Gate counts for compiling the ansatz to CNOT and single-qubit gates.
//!
//! `exp(iθP)` is compiled as: a basis change per X factor (`H`) and per Y
//! factor (`Rx(π/2)`), a CNOT ladder accumulating the parity of the support
//! onto its highest qubit, `Rz(-2θ)` on that qubit, then the ladder and basis
//! change in reverse. Rotations follow `R_a(φ) = exp(-iφA/2)`.

use std::f64::consts::FRAC_PI_2;
use std::ops::{Add, AddAssign};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{BasisIndex, Factor, PauliString};
use crate::state::ExponentialGate;

const ANGLE_EPS: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Gate {
    H(usize),
    X(usize),
    Rx(usize, f64),
    Rz(usize, f64),
    Cnot { control: usize, target: usize },
}

impl Gate {
    fn qubits(&self) -> (usize, Option<usize>) {
        match *self {
            Gate::H(q) | Gate::X(q) | Gate::Rx(q, _) | Gate::Rz(q, _) => (q, None),
            Gate::Cnot { control, target } => (control, Some(target)),
        }
    }

    /// `Some(product)` if `self` followed by `next` collapses to one gate or
    /// nothing (`Some(None)`).
    fn fuse(&self, next: &Gate) -> Option<Option<Gate>> {
        let rotation = |g: Gate| match g {
            Gate::Rx(_, a) | Gate::Rz(_, a) if a.abs() < ANGLE_EPS => None,
            g => Some(g),
        };
        match (*self, *next) {
            (Gate::H(a), Gate::H(b)) if a == b => Some(None),
            (Gate::X(a), Gate::X(b)) if a == b => Some(None),
            (Gate::Rx(a, s), Gate::Rx(b, t)) if a == b => Some(rotation(Gate::Rx(a, s + t))),
            (Gate::Rz(a, s), Gate::Rz(b, t)) if a == b => Some(rotation(Gate::Rz(a, s + t))),
            (
                Gate::Cnot { control: c1, target: t1 },
                Gate::Cnot { control: c2, target: t2 },
            ) if c1 == c2 && t1 == t2 => Some(None),
            _ => None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GateCounts {
    pub n_qubits: usize,
    pub cnot: u64,
    pub x: u64,
    pub h: u64,
    pub rx: u64,
    pub rz: u64,
}

impl GateCounts {
    pub fn total(&self) -> u64 {
        self.cnot + self.x + self.h + self.rx + self.rz
    }

    pub fn tally(n_qubits: usize, gates: &[Gate]) -> Self {
        let mut c = GateCounts {
            n_qubits,
            ..Default::default()
        };
        for g in gates {
            match g {
                Gate::H(_) => c.h += 1,
                Gate::X(_) => c.x += 1,
                Gate::Rx(..) => c.rx += 1,
                Gate::Rz(..) => c.rz += 1,
                Gate::Cnot { .. } => c.cnot += 1,
            }
        }
        c
    }
}

impl Add for GateCounts {
    type Output = GateCounts;
    fn add(mut self, rhs: GateCounts) -> GateCounts {
        self += rhs;
        self
    }
}

impl AddAssign for GateCounts {
    fn add_assign(&mut self, rhs: GateCounts) {
        self.n_qubits = self.n_qubits.max(rhs.n_qubits);
        self.cnot += rhs.cnot;
        self.x += rhs.x;
        self.h += rhs.h;
        self.rx += rhs.rx;
        self.rz += rhs.rz;
    }
}

/// Gate sequence (in time order) implementing `exp(iθP)`.
pub fn entangler_gates(p: &PauliString, theta: f64) -> Result<Vec<Gate>> {
    if p.is_identity() {
        return Err(Error::IdentityEntangler);
    }
    let support: Vec<(Factor, usize)> = p.factors().collect();
    let mut basis = Vec::new();
    let mut unbasis = Vec::new();
    for &(f, q) in &support {
        match f {
            Factor::X => {
                basis.push(Gate::H(q));
                unbasis.push(Gate::H(q));
            }
            Factor::Y => {
                basis.push(Gate::Rx(q, FRAC_PI_2));
                unbasis.push(Gate::Rx(q, -FRAC_PI_2));
            }
            Factor::Z | Factor::I => {}
        }
    }
    let ladder: Vec<Gate> = support
        .windows(2)
        .map(|w| Gate::Cnot {
            control: w[0].1,
            target: w[1].1,
        })
        .collect();
    let top = support.last().expect("non-identity").1;
    let mut seq = basis;
    seq.extend(ladder.iter().copied());
    seq.push(Gate::Rz(top, -2.0 * theta));
    seq.extend(ladder.iter().rev().copied());
    seq.extend(unbasis);
    Ok(seq)
}

/// `X` on every occupied qubit of the reference state.
pub fn reference_gates(occupied: BasisIndex) -> Vec<Gate> {
    (0..128)
        .filter(|&q| occupied >> q & 1 == 1)
        .map(Gate::X)
        .collect()
}

/// Counts for one entangler: `2 n_x` H, `2 n_y` Rx, `2 (w - 1)` CNOT, one Rz.
pub fn entangler_resources(p: &PauliString) -> Result<GateCounts> {
    Ok(GateCounts::tally(p.n_qubits(), &entangler_gates(p, 1.0)?))
}

pub fn reference_resources(occupied: BasisIndex) -> GateCounts {
    GateCounts {
        x: occupied.count_ones() as u64,
        ..Default::default()
    }
}

/// Full circuit: reference preparation, then every entangler in order.
/// Identity entanglers contribute nothing.
pub fn circuit_gates(gates: &[ExponentialGate], occupied: BasisIndex) -> Vec<Gate> {
    let mut seq = reference_gates(occupied);
    for g in gates {
        if let Ok(sub) = entangler_gates(g.pauli(), g.theta()) {
            seq.extend(sub);
        }
    }
    seq
}

/// Cancels or merges gates that meet with nothing in between on their qubits:
/// `H·H`, `X·X` and repeated CNOTs vanish, rotations about the same axis add,
/// and rotations whose angle becomes zero are dropped.
pub fn peephole(gates: &[Gate]) -> Vec<Gate> {
    let n = gates
        .iter()
        .map(|g| {
            let (a, b) = g.qubits();
            a.max(b.unwrap_or(0)) + 1
        })
        .max()
        .unwrap_or(0);
    let mut out: Vec<Option<Gate>> = Vec::with_capacity(gates.len());
    // live gate indices touching each qubit, most recent last
    let mut last: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &g in gates {
        let g = match g {
            Gate::Rx(_, a) | Gate::Rz(_, a) if a.abs() < ANGLE_EPS => continue,
            g => g,
        };
        let (a, b) = g.qubits();
        let prev = last[a].last().copied();
        let same_wires = match (prev, b) {
            (Some(k), None) => out[k].map(|h| h.qubits() == (a, None)).unwrap_or(false),
            (Some(k), Some(b)) => last[b].last() == Some(&k),
            (None, _) => false,
        };
        if same_wires {
            let k = prev.expect("checked");
            if let Some(fused) = out[k].and_then(|h| h.fuse(&g)) {
                match fused {
                    Some(m) => out[k] = Some(m),
                    None => {
                        out[k] = None;
                        last[a].pop();
                        if let Some(b) = b {
                            last[b].pop();
                        }
                    }
                }
                continue;
            }
        }
        last[a].push(out.len());
        if let Some(b) = b {
            last[b].push(out.len());
        }
        out.push(Some(g));
    }
    out.into_iter().flatten().collect()
}

pub fn circuit_resources(gates: &[ExponentialGate], occupied: BasisIndex, optimize: bool) -> GateCounts {
    let n = gates.first().map(|g| g.pauli().n_qubits()).unwrap_or(0);
    let seq = circuit_gates(gates, occupied);
    if optimize {
        GateCounts::tally(n, &peephole(&seq))
    } else {
        GateCounts::tally(n, &seq)
    }
}
