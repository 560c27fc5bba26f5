# Copyright 2026 The photonmesh Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

import numpy as np
import pytest

import photonmesh as pm


def test_permanent_of_ones():
    assert abs(pm.permanent(np.ones((3, 3), dtype=complex)) - 6) < 1e-12


def test_hom_dip():
    u = pm.qft_matrix(2)
    assert pm.output_distribution(u, [1, 1])[(1, 1)] < 1e-12
    assert abs(pm.noisy_distribution(u, 1.0, [1, 1])[(1, 1)] - 0.5) < 1e-12


def test_noisy_matches_oracle():
    u = pm.random_unitary(4, 3)
    fast = pm.noisy_distribution(u, 0.2, [1, 1, 1, 0])
    slow = pm.oracle_distribution(u, 0.2, [1, 1, 1, 0])
    assert max(abs(fast[k] - slow[k]) for k in fast) < 1e-9
    assert abs(sum(fast.values()) - 1) < 1e-9


def test_decompositions_round_trip():
    u = pm.random_unitary(5, 11)
    for circuit in (pm.reck_decompose(u), pm.clements_decompose(u)):
        assert np.max(np.abs(circuit.unitary() - u)) < 1e-8
        assert circuit.pairs() == 10
        assert pm.Circuit.from_json(circuit.to_json()) == circuit


def test_qfft_pairs():
    assert [pm.cooley_tukey_qfft(n).pairs() for n in (2, 3)] == [4, 12]


def test_ztl():
    assert pm.ztl_allowed([2, 0])
    assert not pm.ztl_allowed([1, 1])
    assert pm.verify_suppression(4)["passed"]


def test_fourier_slope():
    fit = pm.error_slope("fourier", m=4)
    assert abs(fit["slope"] - 0.25) < 0.02


def test_distill_visibility_identity():
    for out in pm.distill("hom", 0.1):
        assert abs(out["visibility_out"] - 0.9 * (1 - out["epsilon_out"])) < 1e-9
        assert out["epsilon_out"] < 0.1


def test_tree_improves_visibility():
    t = pm.run_tree(0.2)
    assert t["final_visibility"] > t["raw_visibility"]


def test_mesh_layers():
    hom = pm.protocol_circuit("hom")
    assert pm.place(hom, "feed-forward")["layer_depth"] == 2
    assert pm.place(hom, "recirculating")["layer_depth"] == 1
    assert "hom-one-layer" in pm.fixture_names()
    assert "o-" in pm.render_mesh(1, 1)


def test_errors_are_python_exceptions():
    with pytest.raises(ValueError):
        pm.verify_suppression(9)
    with pytest.raises(ValueError):
        pm.Circuit.from_json("{")
