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

#include <array>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "qknoise/bounds.hpp"
#include "qknoise/types.hpp"

namespace qknoise {

struct DatasetSpec {
    enum class Type { synthetic, fashion_mnist };
    Type type = Type::synthetic;

    // synthetic
    std::size_t num_points = 0;
    std::uint64_t concept_seed = 7;
    int concept_layers = 3;

    // fashion-MNIST; dress = 3, shirt = 6 in the dataset's label table
    std::string images_path;
    std::string labels_path;
    int class_a = 3;
    int class_b = 6;
};

// One experiment, loadable from a versioned JSON document. Unknown keys are
// rejected so typos fail loudly.
struct ExperimentConfig {
    DatasetSpec dataset;
    int num_qubits = 10;
    Eigen::Index n_train = 500;
    Eigen::Index n_test = 500;
    double layer_rate = 0.1;
    std::vector<int> layers{8, 16, 24, 32, 40};
    double lambda = 0.5;
    double delta = 0.01;
    std::optional<std::int64_t> shots_m;
    std::uint64_t seed = 0;
    std::string out_dir = "out";
    bool balanced_split = false;
    std::vector<std::int64_t> bounds_m_values;  // cmd_bounds grid, optional
    std::vector<Eigen::Index> region_n_values;  // cmd_regions grid

    static ExperimentConfig from_json(const nlohmann::json& doc);
    static ExperimentConfig from_json_file(const std::string& path);

    void validate() const;
    CircuitConfig circuit(int layers_L) const;
};

// Prepared features: the first n_train rows are the training sample and the
// following n_test rows the test sample (the split happens before any
// train-only fitting, so PCA never sees test images).
struct FeatureBuild {
    LabeledSample features;
    Eigen::Index n_train = 0;
    Eigen::Index n_test = 0;
    nlohmann::json manifest;
};

FeatureBuild build_features(const ExperimentConfig& config);

// One row of the L-sweep.
struct SweepRecord {
    int layers_L = 0;
    double composed_rate = 0.0;
    double train_error = 0.0;
    double test_error = 0.0;
    double h_mean = 0.0;  // of h~ over the test sample
    double h_max = 0.0;
    double h_min = 0.0;
    double h_bar = 0.0;
    double empirical_difference = 0.0;  // train-sample mean |h~ - h_bar|
    double test_mean_distance = 0.0;    // test-sample mean |h~ - h_bar|
    BoundReport lemma2;
    BoundReport theorem1;
    std::optional<BoundReport> theorem2;

    // estimated-kernel columns, present when shots are configured
    std::optional<double> est_train_error;
    std::optional<double> est_test_error;
    std::optional<double> est_h_mean;
    std::optional<double> est_h_max;
    std::optional<double> est_h_min;
    std::optional<double> est_empirical_difference;

    std::array<int, 20> histogram{};  // test h~ counts, 20 fixed bins on [-1, 1]
    double wall_time_s = 0.0;
};

struct SweepResult {
    std::vector<SweepRecord> records;  // ordered by L ascending
    double h_bar = 0.0;
    double h_bar_train_error = 0.0;
    double h_bar_test_error = 0.0;
    std::optional<int> phase_transition_layer;
    std::optional<double> demarcation;
    nlohmann::json summary;
};

// Pipeline entry points behind the CLI subcommands. Each writes its outputs
// under config.out_dir; see README for the file schemas.
void run_data(const ExperimentConfig& config);
void run_kernel(const ExperimentConfig& config);
SweepResult run_sweep(const ExperimentConfig& config, int threads = 1);
void run_bounds(const ExperimentConfig& config);
void run_regions(const ExperimentConfig& config);

// First L whose training error exceeds the midpoint between the sweep's
// minimum training error and the worst hypothesis' training error.
std::optional<int> detect_phase_transition(const std::vector<SweepRecord>& records,
                                           double h_bar_train_error);

const std::string& sweep_csv_header();

}  // namespace qknoise
