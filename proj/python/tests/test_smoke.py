# Copyright 2026 The qgpr Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.


import math
import os

import numpy as np
import pytest

import qgpr

DATA = os.environ.get("QGPR_DATA_DIR", os.path.join(os.path.dirname(__file__), "..", "..", "data"))


def test_exact_mode_matches_oracle():
    d = qgpr.load_dataset(os.path.join(DATA, "m4_n2.csv"))
    q = qgpr.qgpr_predict(d, qgpr.RunConfig())
    c = qgpr.predict_cholesky(d, 0.1)
    assert abs(q.mean - c.mean) < 1e-7
    assert abs(q.variance - c.variance) < 1e-7


def test_numpy_dataset_and_scalar_case():
    d = qgpr.Dataset(np.array([[0.2]]), np.array([1.5]), np.array([0.2]))
    p = qgpr.qgpr_predict(d, qgpr.RunConfig(noise_variance=0.5))
    assert p.mean == pytest.approx(1.5 / 1.5, abs=1e-8)
    assert p.variance == pytest.approx(1.0 - 1.0 / 1.5, abs=1e-8)


def test_compare_report_fields():
    d = qgpr.load_dataset(os.path.join(DATA, "m2_n1.csv"))
    r = qgpr.compare(d, qgpr.RunConfig(eigenvalue_mode="qpe", qpe_bits=6))
    assert list(r)[:6] == [
        "classical_mean",
        "classical_variance",
        "quantum_mean",
        "quantum_variance",
        "abs_error_mean",
        "abs_error_variance",
    ]
    assert r["config"]["eigenvalue_mode"] == "qpe"
    assert r["abs_error_mean"] >= 0.0


def test_shots_are_deterministic():
    d = qgpr.load_dataset(os.path.join(DATA, "m4_n1.csv"))
    cfg = qgpr.RunConfig(shots=20000, seed=3)
    a = qgpr.run_quantum(d, cfg)
    b = qgpr.run_quantum(d, cfg)
    assert a["mean"] == b["mean"]
    assert a["mean_outcome"]["shots"] == 20000


def test_encoding_and_kernels():
    v = np.array([3.0, -4.0, 0.0])
    unit, p, norm_sq = qgpr.encode(v)
    assert np.allclose(unit[:3], v / 5.0)
    assert norm_sq == pytest.approx(25.0)
    assert p == pytest.approx(25.0 / (4 * 16.0))
    pts = np.array([[0.1, -0.3], [1.2, 0.4], [-0.5, 0.9]])
    k = qgpr.coherent_kernel(pts, 1e-8)
    ref = np.exp(-0.5 * ((pts[:, None, :] - pts[None, :, :]) ** 2).sum(-1))
    assert np.abs(k - ref).max() < 1e-7
    assert qgpr.truncation_level(1.0, 0.1) == 5
    assert qgpr.tail_bound(1.0, 5) == pytest.approx(1.0 / 120.0)
    assert qgpr.se_kernel(np.zeros(2), np.ones(2)) == pytest.approx(math.exp(-1.0))


def test_errors_are_python_exceptions():
    d = qgpr.load_dataset(os.path.join(DATA, "m2_n2.csv"))
    with pytest.raises(RuntimeError):
        qgpr.qgpr_predict(d, qgpr.RunConfig(noise_variance=0.0, eigenvalue_mode="qpe"))
    with pytest.raises(ValueError):
        qgpr.RunConfig(eigenvalue_mode="fast")
    with pytest.raises(ValueError):
        qgpr.Dataset(np.zeros((2, 1)), np.zeros(3), np.zeros(1))


def test_cli_entry_point():
    code, out, _ = qgpr.run_cli(["compare", "--data", os.path.join(DATA, "m2_n1.csv")])
    assert code == 0
    assert '"abs_error_mean"' in out
    code, _, _ = qgpr.run_cli(["compare", "--mode", "bogus"])
    assert code == 2
