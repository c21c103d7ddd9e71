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

#include "qknoise/noise.hpp"

#include <cmath>

#include "qknoise/rng.hpp"

namespace qknoise {

NoiseModel compose_depolarization(double layer_rate, int noisy_layers) {
    if (!(layer_rate >= 0.0 && layer_rate <= 1.0))
        throw ConfigError("layer rate " + std::to_string(layer_rate) + " outside [0, 1]");
    if (noisy_layers < 1) throw ConfigError("noisy layer count must be >= 1");

    NoiseModel nm;
    nm.layer_rate = layer_rate;
    nm.noisy_layers = noisy_layers;
    if (layer_rate >= 1.0) {
        nm.composed_rate = 1.0;
    } else {
        nm.composed_rate = -std::expm1(2.0 * noisy_layers * std::log1p(-layer_rate));
    }
    return nm;
}

KernelMatrix apply_depolarization(const KernelMatrix& ideal, const NoiseModel& noise) {
    if (ideal.kind != KernelKind::ideal)
        throw ConfigError(std::string("apply_depolarization expects an ideal kernel, got ") +
                          to_string(ideal.kind));
    KernelMatrix out;
    out.entries = apply_depolarization_rows(ideal.entries, noise, ideal.dim_D);
    out.kind = KernelKind::noisy;
    out.dim_D = ideal.dim_D;
    out.noise = noise;
    return out;
}

Eigen::MatrixXd apply_depolarization_rows(const Eigen::MatrixXd& rows, const NoiseModel& noise,
                                          std::int64_t dim_D) {
    const double p = noise.composed_rate;
    Eigen::MatrixXd out = (1.0 - p) * rows;
    out.array() += p / static_cast<double>(dim_D);
    return out;
}

KernelMatrix worst_kernel(Eigen::Index n, std::int64_t dim_D) {
    if (n < 1) throw ConfigError("worst_kernel needs n >= 1");
    if (dim_D < 2) throw ConfigError("worst_kernel needs D >= 2");
    KernelMatrix out;
    out.entries = Eigen::MatrixXd::Constant(n, n, 1.0 / static_cast<double>(dim_D));
    out.kind = KernelKind::worst;
    out.dim_D = dim_D;
    return out;
}

namespace detail {
double bernoulli_mean(std::uint64_t stream_key, double probability, std::int64_t shots) {
    if (probability <= 0.0) return 0.0;
    if (probability >= 1.0) return 1.0;
    // probability in (0, 1): the scaled threshold fits in 64 bits.
    const auto threshold = static_cast<std::uint64_t>(probability * 0x1.0p64);
    SplitMix64 stream(stream_key);
    std::int64_t successes = 0;
    for (std::int64_t k = 0; k < shots; ++k)
        successes += (stream.next_u64() < threshold) ? 1 : 0;
    return static_cast<double>(successes) / static_cast<double>(shots);
}
}  // namespace detail

KernelMatrix sample_estimated_kernel(const KernelMatrix& noisy, const ShotConfig& shots) {
    if (noisy.kind != KernelKind::noisy)
        throw ConfigError(std::string("sample_estimated_kernel expects a noisy kernel, got ") +
                          to_string(noisy.kind));
    shots.validate();
    const Eigen::Index n = noisy.size();
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j)
            if (!(noisy.entries(i, j) >= 0.0 && noisy.entries(i, j) <= 1.0))
                throw NumericalError("noisy kernel entry (" + std::to_string(i) + ", " +
                                     std::to_string(j) + ") = " +
                                     std::to_string(noisy.entries(i, j)) +
                                     " outside [0, 1]; upstream corruption");

    KernelMatrix out;
    out.entries.resize(n, n);
    out.kind = KernelKind::estimated;
    out.dim_D = noisy.dim_D;
    out.noise = noisy.noise;
    out.shots = shots;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = i; j < n; ++j) {
            const std::uint64_t key = pair_stream_key(shots.master_seed,
                                                      static_cast<std::uint64_t>(i),
                                                      static_cast<std::uint64_t>(j));
            const double mean = detail::bernoulli_mean(key, noisy.entries(i, j), shots.shots);
            out.entries(i, j) = mean;
            out.entries(j, i) = mean;
        }
    }
    return out;
}

Eigen::MatrixXd sample_estimated_rows(const Eigen::MatrixXd& noisy_rows, const ShotConfig& shots,
                                      std::uint64_t row_index_offset) {
    shots.validate();
    Eigen::MatrixXd out(noisy_rows.rows(), noisy_rows.cols());
    for (Eigen::Index r = 0; r < noisy_rows.rows(); ++r) {
        for (Eigen::Index j = 0; j < noisy_rows.cols(); ++j) {
            const double value = noisy_rows(r, j);
            if (!(value >= 0.0 && value <= 1.0))
                throw NumericalError("noisy kernel row entry " + std::to_string(value) +
                                     " outside [0, 1]; upstream corruption");
            const std::uint64_t key =
                pair_stream_key(shots.master_seed, row_index_offset + static_cast<std::uint64_t>(r),
                                static_cast<std::uint64_t>(j));
            out(r, j) = detail::bernoulli_mean(key, value, shots.shots);
        }
    }
    return out;
}

}  // namespace qknoise
