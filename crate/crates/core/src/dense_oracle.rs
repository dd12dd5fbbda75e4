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

//! Full state-vector reference simulator and exact diagonalization.
//!
//! Used to check the sparse pipeline on small registers; nothing here is
//! tuned for speed.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::hamiltonian::PauliSumOperator;
use crate::pauli::{check_basis, BasisIndex, PauliString};
use crate::resources::Gate;
use crate::state::{ExponentialGate, SparseState};

pub const MAX_DENSE_QUBITS: usize = 24;
/// Largest register handed to the dense eigensolver.
pub const MAX_DIAG_QUBITS: usize = 10;

fn check_dense(n_qubits: usize, max: usize) -> Result<()> {
    if n_qubits == 0 || n_qubits > max {
        return Err(Error::DenseTooLarge { n_qubits, max });
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq)]
pub struct DenseState {
    n_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl DenseState {
    pub fn basis(n_qubits: usize, index: BasisIndex) -> Result<Self> {
        check_dense(n_qubits, MAX_DENSE_QUBITS)?;
        check_basis(index, n_qubits)?;
        let mut amplitudes = vec![Complex64::default(); 1 << n_qubits];
        amplitudes[index as usize] = Complex64::new(1.0, 0.0);
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    pub fn from_amplitudes(n_qubits: usize, amplitudes: Vec<Complex64>) -> Result<Self> {
        check_dense(n_qubits, MAX_DENSE_QUBITS)?;
        if amplitudes.len() != 1 << n_qubits {
            return Err(Error::DimensionMismatch {
                left: 1 << n_qubits,
                right: amplitudes.len(),
            });
        }
        Ok(Self {
            n_qubits,
            amplitudes,
        })
    }

    pub fn from_sparse(state: &SparseState) -> Result<Self> {
        check_dense(state.n_qubits(), MAX_DENSE_QUBITS)?;
        let mut amplitudes = vec![Complex64::default(); 1 << state.n_qubits()];
        for (x, a) in state.iter() {
            amplitudes[x as usize] = a;
        }
        Ok(Self {
            n_qubits: state.n_qubits(),
            amplitudes,
        })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn amplitude(&self, x: BasisIndex) -> Complex64 {
        self.amplitudes[x as usize]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// `P|ψ⟩`.
    pub fn apply_pauli(&self, p: &PauliString) -> Result<Self> {
        self.check_width(p.n_qubits())?;
        let mut out = vec![Complex64::default(); self.amplitudes.len()];
        for (x, &a) in self.amplitudes.iter().enumerate() {
            let r = p.apply_to_basis(x as BasisIndex);
            out[r.index as usize] += r.coeff() * a;
        }
        Ok(Self {
            n_qubits: self.n_qubits,
            amplitudes: out,
        })
    }

    /// `|ψ⟩ ← cos θ |ψ⟩ + i sin θ P|ψ⟩`, without any truncation.
    pub fn apply_exponential(&mut self, gate: &ExponentialGate) -> Result<()> {
        let flipped = self.apply_pauli(gate.pauli())?;
        let (s, c) = gate.theta().sin_cos();
        let is = Complex64::new(0.0, s);
        for (a, b) in self.amplitudes.iter_mut().zip(flipped.amplitudes) {
            *a = c * *a + is * b;
        }
        Ok(())
    }

    pub fn apply_circuit(&mut self, gates: &[ExponentialGate]) -> Result<()> {
        gates.iter().try_for_each(|g| self.apply_exponential(g))
    }

    /// Applies one compiled gate.
    pub fn apply_gate(&mut self, gate: &Gate) -> Result<()> {
        let one_qubit = |q: usize, m: [[Complex64; 2]; 2], amps: &mut [Complex64]| {
            let bit = 1usize << q;
            for i in 0..amps.len() {
                if i & bit == 0 {
                    let (a0, a1) = (amps[i], amps[i | bit]);
                    amps[i] = m[0][0] * a0 + m[0][1] * a1;
                    amps[i | bit] = m[1][0] * a0 + m[1][1] * a1;
                }
            }
        };
        let (lo, hi) = match *gate {
            Gate::Cnot { control, target } => (control, Some(target)),
            Gate::H(q) | Gate::X(q) | Gate::Rx(q, _) | Gate::Rz(q, _) => (q, None),
        };
        if lo >= self.n_qubits || hi.is_some_and(|t| t >= self.n_qubits) {
            return Err(Error::QubitIndex {
                index: lo.max(hi.unwrap_or(0)),
                n_qubits: self.n_qubits,
            });
        }
        let z = Complex64::default();
        let r = |v: f64| Complex64::new(v, 0.0);
        match *gate {
            Gate::H(q) => {
                let h = std::f64::consts::FRAC_1_SQRT_2;
                one_qubit(q, [[r(h), r(h)], [r(h), r(-h)]], &mut self.amplitudes)
            }
            Gate::X(q) => one_qubit(q, [[z, r(1.0)], [r(1.0), z]], &mut self.amplitudes),
            Gate::Rx(q, phi) => {
                let (s, c) = (phi / 2.0).sin_cos();
                let ms = Complex64::new(0.0, -s);
                one_qubit(q, [[r(c), ms], [ms, r(c)]], &mut self.amplitudes)
            }
            Gate::Rz(q, phi) => {
                let e0 = Complex64::from_polar(1.0, -phi / 2.0);
                let e1 = Complex64::from_polar(1.0, phi / 2.0);
                one_qubit(q, [[e0, z], [z, e1]], &mut self.amplitudes)
            }
            Gate::Cnot { control, target } => {
                let (cb, tb) = (1usize << control, 1usize << target);
                for i in 0..self.amplitudes.len() {
                    if i & cb != 0 && i & tb == 0 {
                        self.amplitudes.swap(i, i | tb);
                    }
                }
            }
        }
        Ok(())
    }

    pub fn inner_product(&self, other: &DenseState) -> Complex64 {
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    fn check_width(&self, n: usize) -> Result<()> {
        if n != self.n_qubits {
            return Err(Error::DimensionMismatch {
                left: self.n_qubits,
                right: n,
            });
        }
        Ok(())
    }
}

pub fn dense_apply_exponential(state: &DenseState, gate: &ExponentialGate) -> Result<DenseState> {
    let mut out = state.clone();
    out.apply_exponential(gate)?;
    Ok(out)
}

/// `⟨ψ|H|ψ⟩` computed as `Σ_i h_i ⟨ψ|P_i ψ⟩` over the full vector.
pub fn dense_energy(state: &DenseState, h: &PauliSumOperator) -> Result<f64> {
    state.check_width(h.n_qubits())?;
    let mut e = Complex64::default();
    for t in h.terms() {
        e += t.coeff * state.inner_product(&state.apply_pauli(&t.pauli)?);
    }
    Ok(e.re)
}

/// Dense Hermitian matrix of `h` (row = output index).
pub fn hamiltonian_matrix(h: &PauliSumOperator) -> Result<DMatrix<Complex64>> {
    check_dense(h.n_qubits(), MAX_DIAG_QUBITS)?;
    let dim = 1usize << h.n_qubits();
    let mut m = DMatrix::<Complex64>::zeros(dim, dim);
    for t in h.terms() {
        for col in 0..dim {
            let r = t.pauli.apply_to_basis(col as BasisIndex);
            m[(r.index as usize, col)] += t.coeff * r.coeff();
        }
    }
    Ok(m)
}

/// Eigenvalues in ascending order.
pub fn spectrum(h: &PauliSumOperator) -> Result<Vec<f64>> {
    let m = hamiltonian_matrix(h)?;
    let mut values: Vec<f64> = m.symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(f64::total_cmp);
    Ok(values)
}

/// Smallest eigenvalue, certified by the residual `‖Hv − λv‖ ≤ 1e-9` of a
/// vector obtained by shifted inverse iteration.
pub fn ground_energy(h: &PauliSumOperator) -> Result<f64> {
    let m = hamiltonian_matrix(h)?;
    let dim = m.nrows();
    let lambda = m.clone().symmetric_eigenvalues().min();
    let shift = lambda - 1e-10 * lambda.abs().max(1.0);
    let lu = (m.clone() - DMatrix::<Complex64>::identity(dim, dim) * Complex64::new(shift, 0.0)).lu();
    let mut v = DVector::<Complex64>::from_fn(dim, |i, _| Complex64::new(1.0 + (i % 7) as f64 * 0.1, (i % 3) as f64 * 0.1));
    let mut residual = f64::INFINITY;
    for _ in 0..4 {
        let Some(w) = lu.solve(&v) else { break };
        v = w.normalize();
        residual = (&m * &v - &v * Complex64::new(lambda, 0.0)).norm();
        if residual <= 1e-9 {
            return Ok(lambda);
        }
    }
    Err(Error::Invalid(format!("eigensolver residual {residual:e} above 1e-9")))
}
