# Copyright 2026 The qknoise Authors
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

import json
import math

import numpy as np
import pytest

import qknoise as qk


def test_embedding_is_normalized_and_zero_maps_to_basis():
    cfg = qk.CircuitConfig(4)
    amps = qk.embed_iqp(np.zeros(4), cfg)
    assert abs(amps[0] - 1.0) < 1e-12
    assert np.all(np.abs(amps[1:]) < 1e-12)

    amps = qk.embed_iqp(np.array([0.3, -0.2, 0.9, 0.5]), cfg)
    assert abs(np.vdot(amps, amps).real - 1.0) < 1e-10


def test_fast_path_agrees_with_dense_oracle():
    cfg = qk.CircuitConfig(3)
    x = np.array([0.4, -0.8, 0.1])
    fast = qk.embed_iqp(x, cfg)
    dense = qk.dense_oracle_embed(x, cfg)
    assert abs(abs(np.vdot(dense, fast)) ** 2 - 1.0) < 1e-10


def test_noise_pipeline_and_worst_collapse():
    cfg = qk.CircuitConfig(3)
    points = qk.synthetic_points(6, 3, seed=5)
    gram = qk.gram_matrix(points, cfg)
    assert gram.kind == qk.KernelKind.ideal
    assert np.allclose(np.diag(gram.entries), 1.0)

    noise = qk.compose_depolarization(0.1, 4)
    assert math.isclose(noise.composed_rate, 1.0 - 0.9**8, rel_tol=1e-12)
    noisy = qk.apply_depolarization(gram, noise)
    assert noisy.kind == qk.KernelKind.noisy

    estimated = qk.sample_estimated_kernel(noisy, qk.ShotConfig(2000, master_seed=1))
    assert np.allclose(estimated.entries, estimated.entries.T)
    assert np.max(np.abs(estimated.entries - noisy.entries)) < 0.1

    labels = np.where(np.arange(6) % 2 == 0, 1.0, -1.0)
    sample = qk.LabeledSample(points, labels)
    flat = qk.worst_kernel(6, gram.dim_D)
    model = qk.fit(flat, sample, 0.5)
    h_bar = qk.worst_hypothesis(sample, 0.5, gram.dim_D)
    predictions = qk.predict_batch(model, flat.entries)
    assert np.allclose(predictions, h_bar, atol=1e-10)


def test_bounds_match_reference_values():
    noise = qk.compose_depolarization(0.1, 40)
    inputs = qk.BoundInputs(500, 0.5, noise, 1024, 0.01)
    report = qk.theorem1_bound(inputs)
    assert math.isclose(report["bound"], 13.172404570842444, rel_tol=1e-10)
    assert not report["informative"]
    assert math.isclose(qk.demarcation_layers(500, 0.1), 29.492111250693957, rel_tol=1e-12)

    region = qk.classify_region(500, 10, 0.1, 40)
    assert region["verdict"] == "fail_red"

    with pytest.raises(ValueError):
        qk.demarcation_layers(500, 0.0)


def test_sweep_from_config(tmp_path):
    config = {
        "schema_version": 1,
        "dataset": {"type": "synthetic", "num_points": 16, "concept_seed": 7,
                    "concept_layers": 2},
        "num_qubits": 3,
        "n_train": 8,
        "n_test": 8,
        "layer_rate": 0.1,
        "layers": [1, 4],
        "lambda": 0.5,
        "delta": 0.05,
        "shots_m": None,
        "seed": 3,
        "out_dir": str(tmp_path / "out"),
    }
    path = tmp_path / "config.json"
    path.write_text(json.dumps(config))
    summary = json.loads(qk.run_sweep_file(str(path)))
    assert summary["layers"] == [1, 4]
    assert (tmp_path / "out" / "sweep.csv").exists()
    assert len(summary["test_hypothesis_histograms"]) == 2
