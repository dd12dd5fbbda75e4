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

mod common;

use common::*;
use rand::Rng;
use sparsevqe_core::dense_oracle::{dense_energy, ground_energy, spectrum, DenseState};
use sparsevqe_core::hamiltonian::{energy, pauli_expectation};
use sparsevqe_core::{ExponentialGate, PauliString, PauliSumOperator, SparseState};

#[test]
fn energy_matches_kronecker_oracle() {
    let mut r = rng(21);
    for _ in 0..20 {
        let n = r.gen_range(2..=7);
        let h = random_hamiltonian(&mut r, n, 30);
        let mut s = SparseState::from_reference(n, r.gen_range(0..1u128 << n), 0.0).unwrap();
        s.apply_circuit(&random_gates(&mut r, n, 12)).unwrap();
        let expect = expectation(&hamiltonian_kron(&h), &sparse_to_dense(&s));
        assert!(expect.im.abs() < 1e-12);
        let got = energy(&s, &h, 3).unwrap().value;
        assert!((got - expect.re).abs() < 1e-10);
    }
}

#[test]
fn energy_matches_dense_oracle_on_ten_qubits() {
    let mut r = rng(22);
    for _ in 0..5 {
        let h = random_hamiltonian(&mut r, 10, 200);
        let mut s = SparseState::from_reference(10, 0b1111, 0.0).unwrap();
        s.apply_circuit(&random_gates(&mut r, 10, 15)).unwrap();
        let d = DenseState::from_sparse(&s).unwrap();
        let e = energy(&s, &h, 4).unwrap().value;
        assert!((e - dense_energy(&d, &h).unwrap()).abs() < 1e-10);
    }
}

#[test]
fn worker_counts_agree() {
    let mut r = rng(23);
    let h = random_hamiltonian(&mut r, 12, 2000);
    let s = random_state(&mut r, 12, 3000);
    let reference = energy(&s, &h, 1).unwrap().value;
    for w in [2, 3, 5, 8, 64] {
        let e = energy(&s, &h, w).unwrap().value;
        assert!((e - reference).abs() <= 1e-10 * reference.abs().max(1.0), "workers {w}");
    }
}

#[test]
fn projector_formula_agrees() {
    let mut r = rng(24);
    for _ in 0..50 {
        let n = r.gen_range(1..=6);
        let s = random_state(&mut r, n, 20);
        let p = random_pauli(&mut r, n);
        let v = sparse_to_dense(&s);
        let pv = matvec(&kron_matrix(&p), &v);
        let p_plus: f64 = v.iter().zip(&pv).map(|(a, b)| ((a + b) * 0.5).norm_sqr()).sum();
        assert!((pauli_expectation(&s, &p).unwrap() - (2.0 * p_plus - 1.0)).abs() < 1e-12);
    }
}

#[test]
fn energies_are_variational() {
    let mut r = rng(25);
    for _ in 0..15 {
        let n = r.gen_range(2..=8);
        let h = random_hamiltonian(&mut r, n, 40);
        let e0 = ground_energy(&h).unwrap();
        let gates = random_gates(&mut r, n, 20);
        for cutoff in [0.0, 1e-4, 1e-2] {
            let mut s = SparseState::from_reference(n, 0, cutoff).unwrap();
            if s.apply_circuit(&gates).is_ok() {
                assert!(energy(&s, &h, 2).unwrap().value >= e0 - 1e-9);
            }
        }
    }
}

#[test]
fn transform_matches_matrix_conjugation() {
    let mut r = rng(26);
    for _ in 0..20 {
        let n = r.gen_range(1..=5);
        let h = random_hamiltonian(&mut r, n, 12);
        let p = random_pauli(&mut r, n);
        let beta = r.gen_range(-3.0..3.0);
        let t = h.similarity_transform(&p, beta).unwrap();
        // U = exp(-iβP/2) = cos(β/2) − i sin(β/2) P
        let pm = kron_matrix(&p);
        let dim = pm.len();
        let (s, co) = (beta / 2.0).sin_cos();
        let u = add(&scale(&identity(dim), c(co, 0.0)), &scale(&pm, c(0.0, -s)));
        let u_dag = add(&scale(&identity(dim), c(co, 0.0)), &scale(&pm, c(0.0, s)));
        let expect = matmul(&u_dag, &matmul(&hamiltonian_kron(&h), &u));
        assert!(max_diff(&hamiltonian_kron(&t), &expect) < 1e-12);
        // each anticommuting term spawns at most one extra term
        assert!(t.term_count() <= 2 * h.term_count());
    }
}

#[test]
fn transform_preserves_spectrum() {
    let mut r = rng(27);
    for _ in 0..8 {
        let n = r.gen_range(2..=8);
        let h = random_hamiltonian(&mut r, n, 30);
        let mut t = h.clone();
        for _ in 0..3 {
            t = t.similarity_transform(&random_pauli(&mut r, n), r.gen_range(-2.0..2.0)).unwrap();
        }
        let (a, b) = (spectrum(&h).unwrap(), spectrum(&t).unwrap());
        assert!(a.iter().zip(&b).all(|(x, y)| (x - y).abs() < 1e-9));
    }
}

#[test]
fn transform_is_dual_to_simulation() {
    let mut r = rng(28);
    for _ in 0..30 {
        let n = r.gen_range(1..=10);
        let h = random_hamiltonian(&mut r, n, 25);
        let p = random_pauli(&mut r, n);
        let beta = r.gen_range(-3.0..3.0);
        let x = r.gen_range(0..1u128 << n);
        let t = h.similarity_transform(&p, beta).unwrap();
        let mut s = SparseState::from_reference(n, x, 0.0).unwrap();
        s.apply_exponential(&ExponentialGate::from_beta(p, beta).unwrap()).unwrap();
        let sim = energy(&s, &h, 1).unwrap().value;
        assert!((t.basis_expectation(x) - sim).abs() < 1e-9);
    }
}

#[test]
fn transform_example_single_qubit() {
    // H = Z, P = X: both the commutator form and the direct conjugation give cos β Z + sin β Y
    let z = PauliString::parse("Z0", 1).unwrap();
    let y = PauliString::parse("Y0", 1).unwrap();
    let x = PauliString::parse("X0", 1).unwrap();
    for beta in [0.0, 0.3, -1.2, 2.9] {
        let h = PauliSumOperator::from_terms(1, [(1.0, z)]).unwrap();
        let t = h.similarity_transform(&x, beta).unwrap();
        let get = |p: PauliString| t.terms().iter().find(|term| term.pauli == p).map_or(0.0, |term| term.coeff);
        assert!((get(z) - beta.cos()).abs() < 1e-15);
        assert!((get(y) - beta.sin()).abs() < 1e-15);
    }
}
