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

"""Quantum fidelity kernels under global depolarizing noise.

Statevector simulation of IQP embeddings, noisy/estimated kernel matrices,
clipped kernel-ridge hypotheses, and the closed-form concentration bounds.
"""

from ._core import (  # noqa: F401
    BoundInputs,
    CircuitConfig,
    ConceptCircuit,
    ConfigError,
    DataError,
    KernelKind,
    KernelMatrix,
    LabeledSample,
    NoiseModel,
    NumericalError,
    RidgeModel,
    ShotConfig,
    apply_depolarization,
    classify_region,
    compose_depolarization,
    corollary1_bound,
    cross_gram,
    demarcation_layers,
    dense_oracle_embed,
    depolarization_argument,
    embed_iqp,
    empirical_difference,
    f_of_z,
    fit,
    geometric_difference_bound,
    geometric_difference_exact,
    gram_matrix,
    ideal_kernel,
    lemma2_bound,
    misclassification_rate,
    omega_star_norm,
    predict,
    predict_batch,
    run_sweep_file,
    sample_estimated_kernel,
    synthesize_concept_labels,
    synthetic_points,
    theorem1_bound,
    theorem2_bound,
    worst_hypothesis,
    worst_kernel,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
