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

//! GF(2) analysis of an ansatz through the XY masks of its generators.
//!
//! Column `i` of the XY matrix is the flip mask of gate `i`. Starting from a
//! basis state `|x⟩`, amplitude `α_y` can be nonzero only if `x ⊕ y` lies in
//! the column span, so the circuit output has at most `2^rank` nonzeros.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::pauli::{check_basis, i_pow, low_mask, BasisIndex};
use crate::state::ExponentialGate;

pub const DEFAULT_ENUMERATION_BUDGET: u64 = 1 << 24;

/// Dense bit vector over the gate positions of an ansatz.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BitVector {
    len: usize,
    words: Vec<u64>,
}

impl BitVector {
    pub fn zeros(len: usize) -> Self {
        Self {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn unit(len: usize, bit: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(bit, true);
        v
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, bit: usize) -> bool {
        self.words[bit / 64] >> (bit % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, bit: usize, value: bool) {
        let w = &mut self.words[bit / 64];
        if value {
            *w |= 1 << (bit % 64);
        } else {
            *w &= !(1 << (bit % 64));
        }
    }

    #[inline]
    pub fn xor_assign(&mut self, other: &BitVector) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }
}

/// Columns are the XY masks of the gates, in gate order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XYMatrix {
    n_qubits: usize,
    columns: Vec<u128>,
}

/// Solution set `particular ⊕ span(nullspace_basis)` of `M p = target`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GF2Solution {
    pub particular: BitVector,
    pub nullspace_basis: Vec<BitVector>,
}

impl GF2Solution {
    pub fn nullity(&self) -> usize {
        self.nullspace_basis.len()
    }
}

/// Upper bound `2^rank` on the number of nonzero amplitudes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NonzeroBound {
    Exact(u128),
    /// `2^rank` does not fit in 128 bits.
    Saturated { log2: usize },
}

impl NonzeroBound {
    fn from_rank(rank: usize) -> Self {
        if rank <= 127 {
            NonzeroBound::Exact(1u128 << rank)
        } else {
            NonzeroBound::Saturated { log2: rank }
        }
    }

    pub fn log2(&self) -> usize {
        match *self {
            NonzeroBound::Exact(v) => v.trailing_zeros() as usize,
            NonzeroBound::Saturated { log2 } => log2,
        }
    }
}

/// Row of the per-step rank report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RankRow {
    pub step: usize,
    pub entanglers: usize,
    pub rank: usize,
    pub log2_bound: usize,
}

/// Incremental XOR basis keyed by leading bit.
#[derive(Clone, Debug)]
struct Basis {
    pivots: [u128; 128],
    rank: usize,
}

impl Basis {
    fn new() -> Self {
        Self {
            pivots: [0; 128],
            rank: 0,
        }
    }

    /// Reduces `v` against the basis; returns the remainder.
    #[inline]
    fn reduce(&self, mut v: u128) -> u128 {
        while v != 0 {
            let lead = 127 - v.leading_zeros() as usize;
            let p = self.pivots[lead];
            if p == 0 {
                break;
            }
            v ^= p;
        }
        v
    }

    /// Inserts `v`; returns whether the rank grew.
    fn insert(&mut self, v: u128) -> bool {
        let r = self.reduce(v);
        if r == 0 {
            return false;
        }
        self.pivots[127 - r.leading_zeros() as usize] = r;
        self.rank += 1;
        true
    }
}

impl XYMatrix {
    pub fn new(n_qubits: usize, columns: Vec<u128>) -> Result<Self> {
        crate::pauli::check_qubits(n_qubits)?;
        if let Some(&c) = columns.iter().find(|&&c| c & !low_mask(n_qubits) != 0) {
            return Err(Error::BasisIndex { index: c, n_qubits });
        }
        Ok(Self { n_qubits, columns })
    }

    pub fn n_qubits(&self) -> usize {
        self.n_qubits
    }

    pub fn columns(&self) -> &[u128] {
        &self.columns
    }

    pub fn rank(&self) -> usize {
        let mut basis = Basis::new();
        for &c in &self.columns {
            basis.insert(c);
        }
        basis.rank
    }

    pub fn upper_bound(&self) -> NonzeroBound {
        NonzeroBound::from_rank(self.rank())
    }

    /// Whether `candidate` is an XOR of some columns.
    pub fn contains(&self, candidate: u128) -> bool {
        let mut basis = Basis::new();
        for &c in &self.columns {
            basis.insert(c);
        }
        basis.reduce(candidate) == 0
    }

    /// Solves `⊕_i p_i column_i = target` for `p`, or `None` if infeasible.
    pub fn solve(&self, target: u128) -> Option<GF2Solution> {
        let m = self.columns.len();
        // pivots[b] = (reduced vector with leading bit b, columns combined into it)
        let mut pivots: Vec<Option<(u128, BitVector)>> = vec![None; 128];
        let mut nullspace_basis = Vec::new();
        for (i, &col) in self.columns.iter().enumerate() {
            let mut v = col;
            let mut combo = BitVector::unit(m, i);
            while v != 0 {
                let lead = 127 - v.leading_zeros() as usize;
                match &pivots[lead] {
                    Some((pv, pc)) => {
                        v ^= pv;
                        combo.xor_assign(pc);
                    }
                    None => break,
                }
            }
            if v == 0 {
                nullspace_basis.push(combo);
            } else {
                pivots[127 - v.leading_zeros() as usize] = Some((v, combo));
            }
        }
        let mut t = target;
        let mut particular = BitVector::zeros(m);
        while t != 0 {
            let lead = 127 - t.leading_zeros() as usize;
            let (pv, pc) = pivots[lead].as_ref()?;
            t ^= pv;
            particular.xor_assign(pc);
        }
        Some(GF2Solution {
            particular,
            nullspace_basis,
        })
    }
}

pub fn xy_matrix(gates: &[ExponentialGate]) -> Result<XYMatrix> {
    let n = gates.first().map(|g| g.pauli().n_qubits()).unwrap_or(1);
    if let Some(g) = gates.iter().find(|g| g.pauli().n_qubits() != n) {
        return Err(Error::DimensionMismatch {
            left: n,
            right: g.pauli().n_qubits(),
        });
    }
    XYMatrix::new(n, gates.iter().map(|g| g.pauli().x_mask()).collect())
}

pub fn gf2_rank(m: &XYMatrix) -> usize {
    m.rank()
}

pub fn upper_bound_nonzeros(gates: &[ExponentialGate]) -> Result<NonzeroBound> {
    Ok(xy_matrix(gates)?.upper_bound())
}

pub fn solve_gf2(m: &XYMatrix, target: u128) -> Option<GF2Solution> {
    m.solve(target)
}

pub fn mask_in_span(m: &XYMatrix, candidate: u128) -> bool {
    m.contains(candidate)
}

/// Rank after each block of `step_size` gates; a trailing partial block gets
/// its own row.
pub fn prefix_ranks(gates: &[ExponentialGate], step_size: usize) -> Result<Vec<RankRow>> {
    let step_size = step_size.max(1);
    let m = xy_matrix(gates)?;
    let mut basis = Basis::new();
    let mut rows = Vec::new();
    for (step, block) in m.columns.chunks(step_size).enumerate() {
        for &c in block {
            basis.insert(c);
        }
        rows.push(RankRow {
            step: step + 1,
            entanglers: (step * step_size + block.len()),
            rank: basis.rank,
            log2_bound: basis.rank,
        });
    }
    Ok(rows)
}

/// `⟨y| U_m ⋯ U_1 |x⟩` by summing over the solutions of the XY system.
///
/// Each solution `p` selects the sine branch `i sin θ_k P_k` where `p_k = 1`
/// and the cosine branch elsewhere; the selected Pauli strings act on `|x⟩`
/// in gate order, contributing their exact phases.
pub fn single_amplitude(
    gates: &[ExponentialGate],
    x: BasisIndex,
    y: BasisIndex,
    budget: u64,
) -> Result<Complex64> {
    let m = xy_matrix(gates)?;
    check_basis(x, m.n_qubits)?;
    check_basis(y, m.n_qubits)?;
    let Some(solution) = m.solve(x ^ y) else {
        return Ok(Complex64::default());
    };
    let nullity = solution.nullity();
    if nullity >= 64 || (1u64 << nullity) > budget {
        return Err(Error::BudgetExceeded { nullity, budget });
    }
    let branch: Vec<(f64, Complex64)> = gates
        .iter()
        .map(|g| {
            let (s, c) = g.theta().sin_cos();
            (c, Complex64::new(0.0, s))
        })
        .collect();
    let term = |choice: u64| -> Complex64 {
        let mut p = solution.particular.clone();
        for (j, b) in solution.nullspace_basis.iter().enumerate() {
            if choice >> j & 1 == 1 {
                p.xor_assign(b);
            }
        }
        let mut amp = Complex64::new(1.0, 0.0);
        let mut index = x;
        let mut phase = 0u8;
        for (k, g) in gates.iter().enumerate() {
            if p.get(k) {
                let r = g.pauli().apply_to_basis(index);
                index = r.index;
                phase = phase.wrapping_add(r.phase);
                amp *= branch[k].1;
            } else {
                amp *= branch[k].0;
            }
        }
        debug_assert_eq!(index, y);
        amp * i_pow(phase)
    };
    let count = 1u64 << nullity;
    let total = if count <= 1 << 10 {
        (0..count).map(term).sum()
    } else {
        (0..count)
            .into_par_iter()
            .map(term)
            .reduce(Complex64::default, |a, b| a + b)
    };
    Ok(total)
}
