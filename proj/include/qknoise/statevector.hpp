// Copyright 2026 The qknoise Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <vector>

#include "qknoise/types.hpp"

namespace qknoise {

// IQP-type embedding |phi(x)> = U_Z(x) H^N U_Z(x) H^N |0...0>, where U_Z is
// the diagonal phase exp(i * [sum_i x_i Z_i + sum_{i,j} x_i x_j Z_i Z_j]).
// The data sum runs over the full i,j grid: diagonal terms contribute a
// global phase and off-diagonal pairs are counted twice. Qubit q maps to bit
// q of the amplitude index, so Z_q has eigenvalue +1 on indices with bit q
// clear. Cost O(N * 2^N) via the normalized fast Walsh-Hadamard transform.
EncodedState embed_iqp(const FeatureVector& x, const CircuitConfig& cfg);

// Verification oracle: builds H^N by iterated Kronecker product and U_Z by
// exponentiating the literal double-sum phase, then multiplies the dense
// 2^N x 2^N matrices onto |0...0>. Agrees with embed_iqp up to global phase.
// Refused for N > 6 (cost guard).
EncodedState dense_oracle_embed(const FeatureVector& x, const CircuitConfig& cfg);

// Fidelity kernel K(x, x') = |<phi(x)|phi(x')>|^2. Rounding excursions
// outside [0, 1] by at most 1e-12 are clamped; larger ones are errors.
double ideal_kernel(const EncodedState& a, const EncodedState& b);

// Symmetric Gram matrix of pairwise fidelities. Each point is embedded
// exactly once; the diagonal is exactly 1; tagged ideal.
KernelMatrix gram_matrix(const std::vector<FeatureVector>& points, const CircuitConfig& cfg);

// Rectangular block of ideal kernel values K(row_points[r], col_points[c]),
// e.g. test-against-train rows for prediction.
Eigen::MatrixXd cross_gram(const std::vector<FeatureVector>& row_points,
                           const std::vector<FeatureVector>& col_points,
                           const CircuitConfig& cfg);

// In-place statevector gate application; used by the quantum-concept label
// generator and exposed for test oracles.
void apply_single_qubit(Eigen::VectorXcd& state, int qubit, const Eigen::Matrix2cd& gate);
void apply_cz(Eigen::VectorXcd& state, int qubit_a, int qubit_b);

// Normalized in-place Walsh-Hadamard transform (H on every qubit).
void fwht(Eigen::VectorXcd& state);

namespace detail {
// Shared [0,1] clamp for fidelity values: tolerance 1e-12, beyond is an error.
double clamp_unit_interval(double value);
}  // namespace detail

}  // namespace qknoise
