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

//! Test-only oracles built from explicit Kronecker products, independent of
//! the bit-mask code paths they check.

#![allow(dead_code)]

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

use sparsevqe_core::{ExponentialGate, PauliString, PauliSumOperator, SparseState};

pub type Matrix = Vec<Vec<Complex64>>;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn single(letter: char) -> [[Complex64; 2]; 2] {
    let (o, z, i) = (c(1.0, 0.0), c(0.0, 0.0), c(0.0, 1.0));
    match letter {
        'I' => [[o, z], [z, o]],
        'X' => [[z, o], [o, z]],
        'Y' => [[z, -i], [i, z]],
        'Z' => [[o, z], [z, -o]],
        _ => unreachable!(),
    }
}

pub fn identity(dim: usize) -> Matrix {
    let mut m = vec![vec![c(0.0, 0.0); dim]; dim];
    for (k, row) in m.iter_mut().enumerate() {
        row[k] = c(1.0, 0.0);
    }
    m
}

/// `i^phase · σ_{n-1} ⊗ … ⊗ σ_0` from the letter at each qubit.
pub fn kron_matrix(p: &PauliString) -> Matrix {
    let n = p.n_qubits();
    let letters: Vec<char> = (0..n)
        .map(|q| {
            let x = p.x_mask() >> q & 1 == 1;
            let z = p.z_mask() >> q & 1 == 1;
            match (x, z) {
                (false, false) => 'I',
                (true, false) => 'X',
                (true, true) => 'Y',
                (false, true) => 'Z',
            }
        })
        .collect();
    let mut m: Matrix = vec![vec![c(1.0, 0.0)]];
    // highest qubit is the leftmost Kronecker factor
    for q in (0..n).rev() {
        let s = single(letters[q]);
        let d = m.len();
        let mut next = vec![vec![c(0.0, 0.0); 2 * d]; 2 * d];
        for r in 0..d {
            for cc in 0..d {
                for a in 0..2 {
                    for b in 0..2 {
                        next[r * 2 + a][cc * 2 + b] = m[r][cc] * s[a][b];
                    }
                }
            }
        }
        m = next;
    }
    let ph = [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)][p.phase_exponent() as usize];
    scale(&m, ph)
}

pub fn scale(m: &Matrix, s: Complex64) -> Matrix {
    m.iter().map(|r| r.iter().map(|&v| v * s).collect()).collect()
}

pub fn add(a: &Matrix, b: &Matrix) -> Matrix {
    a.iter()
        .zip(b)
        .map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| x + y).collect())
        .collect()
}

pub fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    let n = a.len();
    let mut out = vec![vec![c(0.0, 0.0); n]; n];
    for i in 0..n {
        for k in 0..n {
            let aik = a[i][k];
            if aik == c(0.0, 0.0) {
                continue;
            }
            for j in 0..n {
                out[i][j] += aik * b[k][j];
            }
        }
    }
    out
}

pub fn matvec(a: &Matrix, v: &[Complex64]) -> Vec<Complex64> {
    a.iter()
        .map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum())
        .collect()
}

pub fn max_diff(a: &Matrix, b: &Matrix) -> f64 {
    a.iter()
        .zip(b)
        .flat_map(|(ra, rb)| ra.iter().zip(rb).map(|(x, y)| (x - y).norm()))
        .fold(0.0, f64::max)
}

/// `cos θ · 1 + i sin θ · P` as a dense matrix.
pub fn kron_exponential(g: &ExponentialGate) -> Matrix {
    let p = kron_matrix(g.pauli());
    let dim = p.len();
    let (s, co) = g.theta().sin_cos();
    add(&scale(&identity(dim), c(co, 0.0)), &scale(&p, c(0.0, s)))
}

/// Applies each gate's Kronecker matrix to `|x⟩`.
pub fn kron_circuit_state(n: usize, x: u128, gates: &[ExponentialGate]) -> Vec<Complex64> {
    let mut v = vec![c(0.0, 0.0); 1 << n];
    v[x as usize] = c(1.0, 0.0);
    for g in gates {
        let p = kron_matrix(g.pauli());
        let pv = matvec(&p, &v);
        let (s, co) = g.theta().sin_cos();
        for (a, b) in v.iter_mut().zip(pv) {
            *a = co * *a + c(0.0, s) * b;
        }
    }
    v
}

pub fn hamiltonian_kron(h: &PauliSumOperator) -> Matrix {
    let dim = 1 << h.n_qubits();
    let mut m = vec![vec![c(0.0, 0.0); dim]; dim];
    for t in h.terms() {
        m = add(&m, &scale(&kron_matrix(&t.pauli), c(t.coeff, 0.0)));
    }
    m
}

/// `⟨v|M|v⟩` for a dense vector.
pub fn expectation(m: &Matrix, v: &[Complex64]) -> Complex64 {
    let mv = matvec(m, v);
    v.iter().zip(mv).map(|(a, b)| a.conj() * b).sum()
}

pub fn random_pauli<R: Rng>(rng: &mut R, n: usize) -> PauliString {
    loop {
        let x: u128 = (0..n).map(|q| (rng.gen::<bool>() as u128) << q).sum();
        let z: u128 = (0..n).map(|q| (rng.gen::<bool>() as u128) << q).sum();
        let p = PauliString::from_masks(n, x, z).unwrap();
        if !p.is_identity() {
            return p;
        }
    }
}

/// Pauli string with at most `max_weight` non-identity factors.
pub fn random_sparse_pauli<R: Rng>(rng: &mut R, n: usize, max_weight: usize) -> PauliString {
    let w = rng.gen_range(1..=max_weight.min(n));
    let mut qubits: Vec<usize> = (0..n).collect();
    for k in 0..w {
        let j = rng.gen_range(k..n);
        qubits.swap(k, j);
    }
    let (mut x, mut z) = (0u128, 0u128);
    for &q in &qubits[..w] {
        match rng.gen_range(0..3) {
            0 => x |= 1 << q,
            1 => {
                x |= 1 << q;
                z |= 1 << q
            }
            _ => z |= 1 << q,
        }
    }
    PauliString::from_masks(n, x, z).unwrap()
}

pub fn random_gates<R: Rng>(rng: &mut R, n: usize, m: usize) -> Vec<ExponentialGate> {
    (0..m)
        .map(|_| {
            ExponentialGate::new(random_pauli(rng, n), rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI))
                .unwrap()
        })
        .collect()
}

pub fn random_hamiltonian<R: Rng>(rng: &mut R, n: usize, terms: usize) -> PauliSumOperator {
    let mut list = vec![(rng.gen_range(-1.0..1.0), PauliString::identity(n).unwrap())];
    for _ in 0..terms {
        list.push((rng.gen_range(-1.0..1.0), random_pauli(rng, n)));
    }
    PauliSumOperator::from_terms(n, list).unwrap()
}

pub fn random_state<R: Rng>(rng: &mut R, n: usize, entries: usize) -> SparseState {
    let amps = (0..entries).map(|_| {
        let x: u128 = rng.gen_range(0..1u128 << n);
        (x, c(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
    });
    SparseState::from_amplitudes(n, amps, 0.0).unwrap()
}

pub fn sparse_to_dense(s: &SparseState) -> Vec<Complex64> {
    let mut v = vec![c(0.0, 0.0); 1 << s.n_qubits()];
    for (x, a) in s.iter() {
        v[x as usize] = a;
    }
    v
}
