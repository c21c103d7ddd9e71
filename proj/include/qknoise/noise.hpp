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

#include "qknoise/types.hpp"

namespace qknoise {

// Composes 2L layerwise global depolarizing channels of rate layer_rate into
// the single end-to-end rate p = 1 - (1 - layer_rate)^(2L). Evaluated as
// -expm1(2L * log1p(-rate)) so large L does not underflow.
NoiseModel compose_depolarization(double layer_rate, int noisy_layers);

// Entrywise affine map of an ideal kernel matrix to its noisy counterpart
// K~ = (1-p) K + p/D, using the matrix's own D. Exact at both endpoints:
// p = 0 reproduces K bit for bit, p = 1 yields 1/D everywhere.
KernelMatrix apply_depolarization(const KernelMatrix& ideal, const NoiseModel& noise);

// Same affine map for a rectangular block of kernel values (prediction rows).
Eigen::MatrixXd apply_depolarization_rows(const Eigen::MatrixXd& rows, const NoiseModel& noise,
                                          std::int64_t dim_D);

// Fully depolarized kernel: every entry 1/D.
KernelMatrix worst_kernel(Eigen::Index n, std::int64_t dim_D);

// Finite-shot estimate of a noisy kernel. Each unordered pair (i, j), i <= j,
// including the diagonal, is the mean of `shots` Bernoulli draws with success
// probability K~_ij, taken from the substream keyed by (master_seed, i, j),
// then mirrored. Reproducible regardless of evaluation order.
KernelMatrix sample_estimated_kernel(const KernelMatrix& noisy, const ShotConfig& shots);

// Shot-sampled prediction rows. Row r, column j draws from the substream
// keyed by (master_seed, row_index_offset + r, j); passing the training
// sample size as offset keeps row streams disjoint from the Gram streams.
Eigen::MatrixXd sample_estimated_rows(const Eigen::MatrixXd& noisy_rows, const ShotConfig& shots,
                                      std::uint64_t row_index_offset);

namespace detail {
// Mean of `shots` Bernoulli(probability) draws from the given stream key.
// The endpoints 0 and 1 are exact.
double bernoulli_mean(std::uint64_t stream_key, double probability, std::int64_t shots);
}  // namespace detail

}  // namespace qknoise
