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

#include <string>
#include <vector>

#include "qknoise/types.hpp"

namespace qknoise {

// Raw IDX image archive: `count` images of rows x cols unsigned bytes plus
// one class index per image.
struct RawImageSet {
    std::vector<std::uint8_t> pixels;  // count * rows * cols, row-major
    std::vector<std::uint8_t> labels;
    std::size_t count = 0;
    int rows = 0;
    int cols = 0;
};

// Two-class subset with labels mapped to +-1.
struct BinaryImageSet {
    std::vector<std::uint8_t> pixels;
    Eigen::VectorXd labels;
    std::size_t count = 0;
    int rows = 0;
    int cols = 0;

    Eigen::VectorXd image_as_unit_doubles(std::size_t index) const;
};

// Parses an IDX image/label file pair (big-endian, magic 0x00000803 /
// 0x00000801). Gzip-compressed archives are accepted transparently.
// Bad magic, truncation, and image/label count mismatch raise distinct
// DataError messages.
RawImageSet load_idx(const std::string& images_path, const std::string& labels_path);

// Keeps only the two requested classes, class_a -> +1 and class_b -> -1.
// For fashion-MNIST dress-vs-shirt this is (3, 6) per the dataset's label
// table.
BinaryImageSet filter_binary(const RawImageSet& set, int class_a, int class_b);

// Top-10 principal components fitted on training images only. Projection
// rescales each component by the maximum absolute training value so the
// features feeding the embedding circuit stay in [-1, 1].
struct PcaProjector {
    Eigen::VectorXd mean;
    Eigen::MatrixXd components;  // out_dim x pixel_count, orthonormal rows
    Eigen::VectorXd explained_variance;
    Eigen::VectorXd scale;

    int out_dim() const { return static_cast<int>(components.rows()); }
};

// train_rows: one image per row, pixel values already mapped to doubles.
// Raises DataError when the training covariance has rank below out_dim.
PcaProjector fit_pca(const Eigen::MatrixXd& train_rows, int out_dim = 10);

FeatureVector project(const PcaProjector& projector, const Eigen::VectorXd& image);

// Seeded label-generating circuit: `layers` rounds of per-qubit RY/RZ
// rotations followed by a CZ ring, measured with Pauli-Z on one qubit
// (spectral norm 1 by construction).
struct ConceptCircuit {
    std::uint64_t seed = 0;
    int layers = 3;
    int observable_qubit = 0;
};

// Rotation angles the circuit applies, in application order (per layer, per
// qubit: RY angle then RZ angle). Exposed so independent oracles can rebuild
// the same unitary.
std::vector<double> concept_rotation_angles(const ConceptCircuit& circuit, int num_qubits);

// <state| U^dag O U |state> for the concept circuit; always in [-1, 1].
double concept_value(const Eigen::VectorXcd& state, const ConceptCircuit& circuit, int num_qubits);

// Labels y_i = <phi(x_i)| U^dag O U |phi(x_i)> for every point.
Eigen::VectorXd synthesize_concept_labels(const std::vector<FeatureVector>& points,
                                          const ConceptCircuit& circuit,
                                          const CircuitConfig& cfg);

// Deterministic feature vectors uniform in [-1, 1]^num_qubits.
std::vector<FeatureVector> synthetic_points(std::size_t count, int num_qubits,
                                            std::uint64_t seed);

struct SplitResult {
    LabeledSample train;
    LabeledSample test;
};

// Seeded shuffle then split. With balance_classes the labels must be exactly
// +-1, both split sizes must be even, and each split receives equal counts
// of both classes.
SplitResult split(const LabeledSample& sample, Eigen::Index n_train, Eigen::Index n_test,
                  std::uint64_t seed, bool balance_classes = false);

}  // namespace qknoise
