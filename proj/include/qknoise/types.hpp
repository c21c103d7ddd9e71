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

#include <Eigen/Dense>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qknoise/errors.hpp"

namespace qknoise {

// Classical feature vector fed to the embedding circuit; its length must
// equal the qubit count of the circuit it feeds.
using FeatureVector = Eigen::VectorXd;

// Embedding circuit geometry. depth_L counts the layers the noise model
// sees; the IQP embedding itself always has the fixed two-block structure.
struct CircuitConfig {
    int num_qubits = 1;
    int depth_L = 1;
    int max_qubits = 20;  // 2^N amplitudes must fit in memory

    std::int64_t dim() const { return std::int64_t{1} << num_qubits; }

    void validate() const {
        if (num_qubits < 1) throw ConfigError("num_qubits must be >= 1");
        if (num_qubits > max_qubits)
            throw ConfigError("num_qubits " + std::to_string(num_qubits) +
                              " exceeds the hard cap of " + std::to_string(max_qubits));
        if (depth_L < 1) throw ConfigError("depth_L must be >= 1");
    }
};

// Amplitude vector of an embedded data point, unit 2-norm within 1e-10.
struct EncodedState {
    Eigen::VectorXcd amplitudes;
    FeatureVector source_point;
};

enum class KernelKind { ideal, noisy, estimated, worst };

inline const char* to_string(KernelKind k) {
    switch (k) {
        case KernelKind::ideal: return "ideal";
        case KernelKind::noisy: return "noisy";
        case KernelKind::estimated: return "estimated";
        case KernelKind::worst: return "worst";
    }
    return "unknown";
}

// Layerwise global depolarization with per-layer rate and the composed
// end-to-end rate p = 1 - (1 - layer_rate)^(2L). The factor 2L reflects the
// kernel circuit traversing the encoding unitary twice.
struct NoiseModel {
    double layer_rate = 0.0;
    int noisy_layers = 1;
    double composed_rate = 0.0;
};

// Finite-measurement configuration for kernel estimation.
struct ShotConfig {
    std::int64_t shots = 1;
    std::uint64_t master_seed = 0;

    void validate() const {
        if (shots < 1) throw ConfigError("shots must be >= 1");
    }
};

// Symmetric kernel matrix tagged with its provenance. dim_D is the Hilbert
// space dimension 2^N the entries refer to.
struct KernelMatrix {
    Eigen::MatrixXd entries;
    KernelKind kind = KernelKind::ideal;
    std::int64_t dim_D = 2;
    std::optional<NoiseModel> noise;
    std::optional<ShotConfig> shots;

    Eigen::Index size() const { return entries.rows(); }
};

// Training or test sample: points plus labels with every |y_i| <= 1.
struct LabeledSample {
    std::vector<FeatureVector> points;
    Eigen::VectorXd labels;

    Eigen::Index size() const { return labels.size(); }

    void validate() const {
        if (labels.size() < 1) throw ConfigError("sample must be nonempty");
        if (static_cast<Eigen::Index>(points.size()) != labels.size())
            throw ConfigError("sample has " + std::to_string(points.size()) + " points but " +
                              std::to_string(labels.size()) + " labels");
        for (Eigen::Index i = 0; i < labels.size(); ++i) {
            if (!(std::abs(labels[i]) <= 1.0))
                throw ConfigError("label " + std::to_string(i) + " outside [-1, 1]");
        }
    }
};

}  // namespace qknoise
