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
use sparsevqe_core::dense_oracle::DenseState;
use sparsevqe_core::hamiltonian::pauli_expectation;
use sparsevqe_core::sparsity::upper_bound_nonzeros;
use sparsevqe_core::{ExponentialGate, NonzeroBound, PauliString, SparseState};

#[test]
fn cutoff_zero_matches_kronecker_oracle() {
    let mut r = rng(1);
    for _ in 0..60 {
        let n = r.gen_range(1..=6);
        let m = r.gen_range(1..=20);
        let gates = random_gates(&mut r, n, m);
        let x = r.gen_range(0..1u128 << n);
        let mut s = SparseState::from_reference(n, x, 0.0).unwrap();
        s.apply_circuit(&gates).unwrap();
        let expect = kron_circuit_state(n, x, &gates);
        for (y, e) in expect.iter().enumerate() {
            assert!((s.amplitude(y as u128) - e).norm() < 1e-10);
        }
    }
}

#[test]
fn cutoff_zero_matches_dense_oracle_up_to_twelve_qubits() {
    let mut r = rng(2);
    for _ in 0..40 {
        let n = r.gen_range(6..=12);
        let m = r.gen_range(1..=30);
        let gates = random_gates(&mut r, n, m);
        let x = r.gen_range(0..1u128 << n);
        let mut s = SparseState::from_reference(n, x, 0.0).unwrap();
        let mut d = DenseState::basis(n, x).unwrap();
        for g in &gates {
            s.apply_exponential(g).unwrap();
            d.apply_exponential(g).unwrap();
            assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
        }
        for (y, e) in d.amplitudes().iter().enumerate() {
            assert!((s.amplitude(y as u128) - e).norm() < 1e-10);
        }
    }
}

#[test]
fn each_gate_at_most_doubles_the_support() {
    let mut r = rng(3);
    for _ in 0..50 {
        let n = r.gen_range(2..=12);
        let gates = random_gates(&mut r, n, 25);
        let cutoff = [0.0, 1e-8, 1e-4][r.gen_range(0..3)];
        let mut s = SparseState::from_reference(n, 0, cutoff).unwrap();
        let mut prev = 1;
        for g in &gates {
            let now = s.apply_exponential(g).unwrap();
            assert!(now <= 2 * prev);
            assert!((s.norm_sqr() - 1.0).abs() < 1e-12);
            assert!(s.iter().all(|(_, a)| a.norm_sqr() >= cutoff && a.norm_sqr() > 0.0));
            prev = now;
        }
    }
}

#[test]
fn support_is_bounded_by_rank() {
    let mut r = rng(4);
    for _ in 0..100 {
        let n = r.gen_range(2..=12);
        let m = r.gen_range(1..=20);
        let gates = random_gates(&mut r, n, m);
        let mut s = SparseState::from_reference(n, r.gen_range(0..1u128 << n), 0.0).unwrap();
        s.apply_circuit(&gates).unwrap();
        let NonzeroBound::Exact(bound) = upper_bound_nonzeros(&gates).unwrap() else {
            panic!("rank ≤ 12 cannot saturate");
        };
        assert!(s.len() as u128 <= bound);
    }
}

#[test]
fn larger_cutoff_keeps_fewer_elements() {
    let mut r = rng(5);
    let cutoffs = [0.0, 1e-12, 1e-8, 1e-6, 1e-4, 1e-3, 1e-2];
    for _ in 0..60 {
        let n = r.gen_range(4..=12);
        let m = r.gen_range(5..=30);
        let gates = random_gates(&mut r, n, m);
        let counts: Vec<usize> = cutoffs
            .iter()
            .map(|&cut| {
                let mut s = SparseState::from_reference(n, 0, cut).unwrap();
                s.apply_circuit(&gates).map(|_| s.len()).unwrap_or(0)
            })
            .collect();
        assert!(counts.windows(2).all(|w| w[1] <= w[0]), "{counts:?}");
    }
}

#[test]
fn diagonal_gates_keep_counts_and_z_energies() {
    let mut r = rng(6);
    for _ in 0..30 {
        let n = r.gen_range(2..=10);
        let mut s = SparseState::from_reference(n, 0, 1e-10).unwrap();
        s.apply_circuit(&random_gates(&mut r, n, 10)).unwrap();
        let z_obs = PauliString::from_masks(n, 0, r.gen_range(1..1u128 << n)).unwrap();
        let before = (s.len(), pauli_expectation(&s, &z_obs).unwrap());
        let diag = PauliString::from_masks(n, 0, r.gen_range(1..1u128 << n)).unwrap();
        s.apply_exponential(&ExponentialGate::new(diag, r.gen_range(-3.0..3.0)).unwrap())
            .unwrap();
        assert_eq!(s.len(), before.0);
        assert!((pauli_expectation(&s, &z_obs).unwrap() - before.1).abs() < 1e-12);
    }
}

#[test]
fn inner_product_matches_dense() {
    let mut r = rng(7);
    for _ in 0..20 {
        let a = random_state(&mut r, 8, 120);
        let b = random_state(&mut r, 8, 120);
        let (da, db) = (sparse_to_dense(&a), sparse_to_dense(&b));
        let expect: num_complex::Complex64 = da.iter().zip(&db).map(|(x, y)| x.conj() * y).sum();
        assert!((a.inner_product(&b).unwrap() - expect).norm() < 1e-12);
        assert!((b.inner_product(&a).unwrap() - expect.conj()).norm() < 1e-12);
        assert!((a.inner_product(&a).unwrap() - c(1.0, 0.0)).norm() < 1e-12);
    }
}

#[test]
fn dump_preserves_state_exactly() {
    let mut r = rng(8);
    let mut s = SparseState::from_reference(40, (1 << 20) - 1, 1e-9).unwrap();
    s.apply_circuit(&random_gates(&mut r, 40, 12)).unwrap();
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("state.bin");
    s.write_to(std::io::BufWriter::new(std::fs::File::create(&path).unwrap())).unwrap();
    let back = SparseState::read_from(std::fs::File::open(&path).unwrap(), 1e-9).unwrap();
    assert_eq!(back.len(), s.len());
    assert!(s.iter().all(|(x, a)| back.amplitude(x) == a));
}
