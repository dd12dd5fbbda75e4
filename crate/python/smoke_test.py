# Copyright 2026 The sparsevqe Developers
#
# Licensed under the Apache License, Version 2.0 (the "License"); you may not use this file except
# in compliance with the License. You may obtain a copy of the License at
#
#     https://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software distributed under the License
# is distributed on an "AS IS" BASIS, WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express
# or implied. See the License for the specific language governing permissions and limitations under
# the License.

"""Smoke test for the sparsevqe extension module.

Build and install first:
    pip install maturin
    maturin develop -m crates/python/Cargo.toml --release
then run `python python/smoke_test.py`.
"""

import math

import numpy as np

import sparsevqe as sv


def dense(state):
    v = np.zeros(1 << state.n_qubits, dtype=complex)
    for x, a in state.to_dict().items():
        v[x] = a
    return v


def pauli_matrix(p):
    single = {
        "I": np.eye(2),
        "X": np.array([[0, 1], [1, 0]]),
        "Y": np.array([[0, -1j], [1j, 0]]),
        "Z": np.diag([1, -1]),
    }
    factors = ["I"] * p.n_qubits
    for q in range(p.n_qubits):
        x, z = p.x_mask >> q & 1, p.z_mask >> q & 1
        factors[q] = {(0, 0): "I", (1, 0): "X", (1, 1): "Y", (0, 1): "Z"}[(x, z)]
    m = np.eye(1)
    for f in reversed(factors):
        m = np.kron(m, single[f])
    return (1j ** p.phase) * m


def main():
    xy = sv.PauliString("X0 Y1", 3)
    assert str(xy) == "X0 Y1"
    assert xy.weight_profile() == (2, 1, 1, 0)
    product = xy * sv.PauliString("Z0", 3)
    assert np.allclose(pauli_matrix(product), pauli_matrix(xy) @ pauli_matrix(sv.PauliString("Z0", 3)))
    assert not xy.commutes(sv.PauliString("Z0", 3))

    state = sv.SparseState(3, 0b001)
    assert len(state) == 1
    state.apply_exponential(xy, 0.4)
    assert len(state) == 2
    expected = (math.cos(0.4) * np.eye(8) + 1j * math.sin(0.4) * pauli_matrix(xy))[:, 1]
    assert np.allclose(dense(state), expected)

    h = sv.PauliSumOperator.parse("-1.0 I\n0.5 Z0\n0.2 X0 X1\n-0.1 Y1 Y2\n")
    e = sv.energy(state, h, workers=2)
    hm = sum(c * pauli_matrix(p) for c, p in h.terms())
    psi = dense(state)
    assert abs(e - np.vdot(psi, hm @ psi).real) < 1e-12
    assert e >= sv.ground_energy(h) - 1e-9

    transformed = h.similarity_transform(xy, 0.7)
    entangled = sv.SparseState(3, 0b001)
    entangled.apply_entangler(xy, 0.7)
    assert abs(transformed.basis_expectation(0b001) - sv.energy(entangled, h)) < 1e-12

    paulis = [sv.PauliString("X0 Y1", 3), sv.PauliString("Y1 X2", 3), sv.PauliString("X0 X2", 3)]
    assert sv.gf2_rank(paulis) == 2
    thetas = [0.3, -0.2, 0.5]
    full = sv.SparseState(3, 0)
    for p, t in zip(paulis, thetas):
        full.apply_exponential(p, t)
    for y in range(8):
        assert abs(sv.single_amplitude(paulis, thetas, 0, y) - full.amplitude(y)) < 1e-12

    assert sv.entangler_resources(sv.PauliString("X0 Y1 Z2", 3)) == {
        "n_qubits": 3, "cnot": 4, "x": 0, "h": 2, "rx": 2, "rz": 1,
    }

    ansatz = sv.AnsatzBundle(3, sv.reference_index("hf:1"), [(p, 0.2) for p in paulis], step_size=2)
    rows = sv.run_sweep(h, ansatz, [0.0, 1e-3], workers=1)
    assert [r["cutoff"] for r in rows] == [1e-3, 0.0]
    row, final = sv.run_single(h, ansatz, cutoff=0.0)
    assert row["n_elements"] == len(final)
    assert sv.transform_crosscheck(h, ansatz, 3)[2] < 1e-12
    assert sv.rank_profile(paulis, 2) == [(1, 2, 2, 2), (2, 3, 2, 2)]

    try:
        sv.single_amplitude([sv.PauliString("X0", 1)] * 12, [0.1] * 12, 0, 1, budget=16)
    except sv.NumericalError:
        pass
    else:
        raise AssertionError("budget not enforced")
    try:
        sv.PauliString("Q0", 1)
    except ValueError:
        pass
    else:
        raise AssertionError("bad factor accepted")

    print("sparsevqe", sv.__version__, "smoke test passed")


if __name__ == "__main__":
    main()
