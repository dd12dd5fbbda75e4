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

//! Pauli strings as a pair of 128-bit masks.
//!
//! Qubit `j` lives in bit `j` of every mask and of every basis index, so bit 0
//! is the least significant. A factor is decoded from its `(x, z)` bit pair:
//! `(0,0) = I`, `(1,0) = X`, `(1,1) = Y`, `(0,1) = Z`. The represented matrix is
//! `i^phase · σ_{n-1} ⊗ … ⊗ σ_0` with the ordinary Pauli matrices (Y has `+i`
//! in its lower-left entry).

use std::fmt;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const MAX_QUBITS: usize = 128;

/// Computational basis state label. Qubit `j` is bit `j`.
pub type BasisIndex = u128;

/// `i^k` for `k` taken mod 4.
#[inline]
pub fn i_pow(k: u8) -> Complex64 {
    match k & 3 {
        0 => Complex64::new(1.0, 0.0),
        1 => Complex64::new(0.0, 1.0),
        2 => Complex64::new(-1.0, 0.0),
        _ => Complex64::new(0.0, -1.0),
    }
}

/// Mask with the low `n` bits set.
#[inline]
pub fn low_mask(n_qubits: usize) -> u128 {
    if n_qubits >= 128 {
        u128::MAX
    } else {
        (1u128 << n_qubits) - 1
    }
}

pub(crate) fn check_qubits(n_qubits: usize) -> Result<()> {
    if n_qubits == 0 || n_qubits > MAX_QUBITS {
        return Err(Error::QubitCount(n_qubits));
    }
    Ok(())
}

pub(crate) fn check_basis(index: BasisIndex, n_qubits: usize) -> Result<()> {
    if index & !low_mask(n_qubits) != 0 {
        return Err(Error::BasisIndex { index, n_qubits });
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Factor {
    I,
    X,
    Y,
    Z,
}

impl Factor {
    fn from_bits(x: bool, z: bool) -> Self {
        match (x, z) {
            (false, false) => Factor::I,
            (true, false) => Factor::X,
            (true, true) => Factor::Y,
            (false, true) => Factor::Z,
        }
    }

    fn bits(self) -> (bool, bool) {
        match self {
            Factor::I => (false, false),
            Factor::X => (true, false),
            Factor::Y => (true, true),
            Factor::Z => (false, true),
        }
    }

    fn letter(self) -> char {
        match self {
            Factor::I => 'I',
            Factor::X => 'X',
            Factor::Y => 'Y',
            Factor::Z => 'Z',
        }
    }
}

/// Result of applying a Pauli string to a basis state: `coeff · |index⟩`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PhasedIndex {
    pub index: BasisIndex,
    /// The coefficient is `i^phase`.
    pub phase: u8,
}

impl PhasedIndex {
    #[inline]
    pub fn coeff(&self) -> Complex64 {
        i_pow(self.phase)
    }
}

/// Non-identity factor counts of a Pauli string.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct WeightProfile {
    pub weight: usize,
    pub n_x: usize,
    pub n_y: usize,
    pub n_z: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PauliString {
    x_mask: u128,
    z_mask: u128,
    n_qubits: u32,
    phase: u8,
}

impl PauliString {
    pub fn identity(n_qubits: usize) -> Result<Self> {
        Self::from_masks(n_qubits, 0, 0)
    }

    /// Builds a phase-free Pauli string from its X and Z masks.
    pub fn from_masks(n_qubits: usize, x_mask: u128, z_mask: u128) -> Result<Self> {
        check_qubits(n_qubits)?;
        let outside = !low_mask(n_qubits);
        if (x_mask | z_mask) & outside != 0 {
            let index = 127 - ((x_mask | z_mask) & outside).leading_zeros() as usize;
            return Err(Error::QubitIndex { index, n_qubits });
        }
        Ok(Self {
            x_mask,
            z_mask,
            n_qubits: n_qubits as u32,
            phase: 0,
        })
    }

    pub fn from_factors(n_qubits: usize, factors: &[(Factor, usize)]) -> Result<Self> {
        check_qubits(n_qubits)?;
        let (mut x, mut z, mut seen) = (0u128, 0u128, 0u128);
        for &(f, q) in factors {
            if q >= n_qubits {
                return Err(Error::QubitIndex { index: q, n_qubits });
            }
            let bit = 1u128 << q;
            if seen & bit != 0 {
                return Err(Error::DuplicateQubit(q));
            }
            seen |= bit;
            let (xb, zb) = f.bits();
            if xb {
                x |= bit;
            }
            if zb {
                z |= bit;
            }
        }
        Self::from_masks(n_qubits, x, z)
    }

    /// Parses `"I"` or whitespace-separated factors such as `"X0 Y3 Z7"`.
    pub fn parse(text: &str, n_qubits: usize) -> Result<Self> {
        Self::from_factors(n_qubits, &parse_factors(text)?)
    }

    /// Returns the same string with global prefactor `i^phase`.
    pub fn with_phase(mut self, phase: u8) -> Self {
        self.phase = phase & 3;
        self
    }

    /// Drops the global phase.
    pub fn unphased(self) -> Self {
        self.with_phase(0)
    }

    /// Re-embeds the string into a register of `n_qubits >= self.n_qubits()` qubits.
    pub fn widen(self, n_qubits: usize) -> Result<Self> {
        if n_qubits < self.n_qubits() {
            return Err(Error::DimensionMismatch {
                left: self.n_qubits(),
                right: n_qubits,
            });
        }
        Ok(Self::from_masks(n_qubits, self.x_mask, self.z_mask)?.with_phase(self.phase))
    }

    #[inline]
    pub fn n_qubits(&self) -> usize {
        self.n_qubits as usize
    }

    /// Bits set where the factor is X or Y; these are the bits the string flips.
    #[inline]
    pub fn x_mask(&self) -> u128 {
        self.x_mask
    }

    #[inline]
    pub fn z_mask(&self) -> u128 {
        self.z_mask
    }

    #[inline]
    pub fn phase_exponent(&self) -> u8 {
        self.phase
    }

    #[inline]
    pub fn is_identity(&self) -> bool {
        self.x_mask == 0 && self.z_mask == 0
    }

    /// Whether the string maps every basis state onto itself (only I and Z factors).
    #[inline]
    pub fn is_diagonal(&self) -> bool {
        self.x_mask == 0
    }

    pub fn factor(&self, qubit: usize) -> Factor {
        if qubit >= 128 {
            return Factor::I;
        }
        Factor::from_bits(self.x_mask >> qubit & 1 == 1, self.z_mask >> qubit & 1 == 1)
    }

    /// Non-identity factors in ascending qubit order.
    pub fn factors(&self) -> impl Iterator<Item = (Factor, usize)> + '_ {
        let support = self.x_mask | self.z_mask;
        (0..self.n_qubits())
            .filter(move |&q| support >> q & 1 == 1)
            .map(move |q| (self.factor(q), q))
    }

    #[inline]
    pub fn support(&self) -> u128 {
        self.x_mask | self.z_mask
    }

    pub fn weight_profile(&self) -> WeightProfile {
        let n_y = (self.x_mask & self.z_mask).count_ones() as usize;
        let n_x = (self.x_mask & !self.z_mask).count_ones() as usize;
        let n_z = (self.z_mask & !self.x_mask).count_ones() as usize;
        WeightProfile {
            weight: n_x + n_y + n_z,
            n_x,
            n_y,
            n_z,
        }
    }

    /// `P|x⟩ = i^phase |x ⊕ x_mask⟩`.
    ///
    /// Each Y factor contributes `i·(-1)^{x_j}` and each Z factor `(-1)^{x_j}`.
    #[inline]
    pub fn apply_to_basis(&self, x: BasisIndex) -> PhasedIndex {
        let y_count = (self.x_mask & self.z_mask).count_ones();
        let signs = (x & self.z_mask).count_ones();
        PhasedIndex {
            index: x ^ self.x_mask,
            phase: ((self.phase as u32 + y_count + 2 * signs) & 3) as u8,
        }
    }

    /// Matrix product `self · other`, with the phase tracked exactly.
    pub fn multiply(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        // In the form i^e X^x Z^z every Y carries one factor of i, and moving
        // Z^{z_a} past X^{x_b} costs (-1)^{|z_a & x_b|}.
        let y_a = (self.x_mask & self.z_mask).count_ones();
        let y_b = (other.x_mask & other.z_mask).count_ones();
        let swap = (self.z_mask & other.x_mask).count_ones();
        let x = self.x_mask ^ other.x_mask;
        let z = self.z_mask ^ other.z_mask;
        let y_c = (x & z).count_ones();
        let e = self.phase as u32 + other.phase as u32 + y_a + y_b + 2 * swap + 4 * 128 - y_c;
        Ok(Self {
            x_mask: x,
            z_mask: z,
            n_qubits: self.n_qubits,
            phase: (e & 3) as u8,
        })
    }

    /// Symplectic commutation test.
    pub fn commutes(&self, other: &Self) -> Result<bool> {
        self.check_same(other)?;
        Ok(self.commutes_unchecked(other))
    }

    #[inline]
    pub(crate) fn commutes_unchecked(&self, other: &Self) -> bool {
        let form = (self.x_mask & other.z_mask).count_ones() ^ (self.z_mask & other.x_mask).count_ones();
        form & 1 == 0
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.n_qubits != other.n_qubits {
            return Err(Error::DimensionMismatch {
                left: self.n_qubits(),
                right: other.n_qubits(),
            });
        }
        Ok(())
    }
}

/// Canonical rendering: factors in ascending qubit order, `"I"` for identity.
/// The global phase is not rendered.
impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return f.write_str("I");
        }
        for (k, (factor, q)) in self.factors().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{}{}", factor.letter(), q)?;
        }
        Ok(())
    }
}

/// Splits Pauli text into `(factor, qubit)` pairs without range checks.
pub fn parse_factors(text: &str) -> Result<Vec<(Factor, usize)>> {
    let text = text.trim();
    if text == "I" {
        return Ok(Vec::new());
    }
    if text.is_empty() {
        return Err(Error::BadFactor(String::new()));
    }
    text.split_whitespace()
        .map(|tok| {
            let mut chars = tok.chars();
            let factor = match chars.next() {
                Some('X') => Factor::X,
                Some('Y') => Factor::Y,
                Some('Z') => Factor::Z,
                _ => return Err(Error::BadFactor(tok.to_string())),
            };
            let digits = chars.as_str();
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(Error::BadFactor(tok.to_string()));
            }
            let q = digits
                .parse::<usize>()
                .map_err(|_| Error::BadFactor(tok.to_string()))?;
            Ok((factor, q))
        })
        .collect()
}
