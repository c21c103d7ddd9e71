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

#include "qknoise/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <mutex>
#include <sstream>
#include <thread>

#include "qknoise/data.hpp"
#include "qknoise/io.hpp"
#include "qknoise/krr.hpp"
#include "qknoise/noise.hpp"
#include "qknoise/rng.hpp"
#include "qknoise/statevector.hpp"

namespace fs = std::filesystem;

namespace qknoise {

namespace {

// Seed-stream tags so the pipeline stages never share substreams.
constexpr std::uint64_t kTagSyntheticPoints = 0x51;
constexpr std::uint64_t kTagSplit = 0x52;
constexpr std::uint64_t kTagShotBase = 0x53;

void require_keys(const nlohmann::json& object, const std::vector<std::string>& known,
                  const std::string& where) {
    for (const auto& item : object.items()) {
        bool ok = false;
        for (const std::string& key : known)
            if (item.key() == key) { ok = true; break; }
        if (!ok) throw ConfigError("unknown key '" + item.key() + "' in " + where);
    }
}

std::string join_path(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

std::string bound_to_csv(const std::optional<double>& value) {
    return value ? format_double(*value) : std::string("uninformative");
}

std::string optional_to_csv(const std::optional<double>& value) {
    return value ? format_double(*value) : std::string();
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& doc) {
    if (!doc.is_object()) throw ConfigError("config root must be a JSON object");
    require_keys(doc,
                 {"schema_version", "dataset", "num_qubits", "n_train", "n_test", "layer_rate",
                  "layers", "lambda", "delta", "shots_m", "seed", "out_dir", "balanced_split",
                  "bounds_m_values", "region_n_values"},
                 "config");
    if (!doc.contains("schema_version") || doc["schema_version"].get<int>() != 1)
        throw ConfigError("config schema_version must be 1");

    ExperimentConfig cfg;
    const nlohmann::json& ds = doc.at("dataset");
    if (!ds.is_object()) throw ConfigError("dataset must be an object");
    const std::string type = ds.at("type").get<std::string>();
    if (type == "synthetic") {
        require_keys(ds, {"type", "num_points", "concept_seed", "concept_layers"}, "dataset");
        cfg.dataset.type = DatasetSpec::Type::synthetic;
        cfg.dataset.num_points = ds.at("num_points").get<std::size_t>();
        if (ds.contains("concept_seed"))
            cfg.dataset.concept_seed = ds["concept_seed"].get<std::uint64_t>();
        if (ds.contains("concept_layers"))
            cfg.dataset.concept_layers = ds["concept_layers"].get<int>();
    } else if (type == "fashion_mnist") {
        require_keys(ds, {"type", "images", "labels", "class_a", "class_b"}, "dataset");
        cfg.dataset.type = DatasetSpec::Type::fashion_mnist;
        cfg.dataset.images_path = ds.at("images").get<std::string>();
        cfg.dataset.labels_path = ds.at("labels").get<std::string>();
        if (ds.contains("class_a")) cfg.dataset.class_a = ds["class_a"].get<int>();
        if (ds.contains("class_b")) cfg.dataset.class_b = ds["class_b"].get<int>();
    } else {
        throw ConfigError("dataset type must be 'synthetic' or 'fashion_mnist', got '" + type + "'");
    }

    cfg.num_qubits = doc.at("num_qubits").get<int>();
    cfg.n_train = doc.at("n_train").get<Eigen::Index>();
    cfg.n_test = doc.at("n_test").get<Eigen::Index>();
    cfg.layer_rate = doc.at("layer_rate").get<double>();
    cfg.layers = doc.at("layers").get<std::vector<int>>();
    cfg.lambda = doc.at("lambda").get<double>();
    cfg.delta = doc.at("delta").get<double>();
    if (doc.contains("shots_m") && !doc["shots_m"].is_null())
        cfg.shots_m = doc["shots_m"].get<std::int64_t>();
    cfg.seed = doc.at("seed").get<std::uint64_t>();
    cfg.out_dir = doc.at("out_dir").get<std::string>();
    if (doc.contains("balanced_split")) cfg.balanced_split = doc["balanced_split"].get<bool>();
    if (doc.contains("bounds_m_values"))
        cfg.bounds_m_values = doc["bounds_m_values"].get<std::vector<std::int64_t>>();
    if (doc.contains("region_n_values"))
        cfg.region_n_values = doc["region_n_values"].get<std::vector<Eigen::Index>>();

    cfg.validate();
    return cfg;
}

ExperimentConfig ExperimentConfig::from_json_file(const std::string& path) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_text_file(path));
    } catch (const nlohmann::json::parse_error& err) {
        throw ConfigError("malformed config '" + path + "': " + err.what());
    } catch (const DataError& err) {
        throw ConfigError(err.what());
    }
    return from_json(doc);
}

void ExperimentConfig::validate() const {
    CircuitConfig probe{num_qubits, 1};
    probe.validate();
    if (n_train < 1 || n_test < 1) throw ConfigError("n_train and n_test must be >= 1");
    if (!(layer_rate >= 0.0 && layer_rate <= 1.0))
        throw ConfigError("layer_rate must lie in [0, 1]");
    if (layers.empty()) throw ConfigError("layers list must be nonempty");
    for (const int L : layers)
        if (L < 1) throw ConfigError("layer count " + std::to_string(L) + " must be >= 1");
    if (!(lambda > 0.0)) throw ConfigError("lambda must be positive");
    if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("delta must lie in (0, 1)");
    if (shots_m && *shots_m < 1) throw ConfigError("shots_m must be >= 1");
    if (out_dir.empty()) throw ConfigError("out_dir must be set");
    if (dataset.type == DatasetSpec::Type::synthetic) {
        if (dataset.num_points < static_cast<std::size_t>(n_train + n_test))
            throw ConfigError("synthetic num_points must cover n_train + n_test");
        if (dataset.concept_layers < 0) throw ConfigError("concept_layers must be >= 0");
    } else {
        if (dataset.images_path.empty() || dataset.labels_path.empty())
            throw ConfigError("fashion_mnist dataset needs images and labels paths");
        if (dataset.class_a == dataset.class_b)
            throw ConfigError("fashion_mnist classes must be distinct");
    }
}

CircuitConfig ExperimentConfig::circuit(int layers_L) const {
    return CircuitConfig{num_qubits, layers_L};
}

FeatureBuild build_features(const ExperimentConfig& config) {
    config.validate();
    const CircuitConfig circuit = config.circuit(1);

    FeatureBuild build;
    build.n_train = config.n_train;
    build.n_test = config.n_test;
    build.manifest["schema_version"] = 1;
    build.manifest["seed"] = config.seed;
    build.manifest["num_qubits"] = config.num_qubits;
    build.manifest["n_train"] = config.n_train;
    build.manifest["n_test"] = config.n_test;
    build.manifest["layout"] = "train rows first, then test rows";
    build.manifest["balanced_split"] = config.balanced_split;

    if (config.dataset.type == DatasetSpec::Type::synthetic) {
        const std::vector<FeatureVector> points = synthetic_points(
            config.dataset.num_points, config.num_qubits, derive_seed(config.seed, kTagSyntheticPoints));
        const ConceptCircuit circuit_spec{config.dataset.concept_seed, config.dataset.concept_layers, 0};
        const Eigen::VectorXd raw = synthesize_concept_labels(points, circuit_spec, circuit);

        LabeledSample pool;
        pool.points = points;
        pool.labels.resize(raw.size());
        for (Eigen::Index i = 0; i < raw.size(); ++i)
            pool.labels[i] = (raw[i] >= 0.0) ? 1.0 : -1.0;  // sign(0) := +1

        const SplitResult sr = split(pool, config.n_train, config.n_test,
                                     derive_seed(config.seed, kTagSplit), config.balanced_split);
        build.features = sr.train;
        build.features.points.insert(build.features.points.end(), sr.test.points.begin(),
                                     sr.test.points.end());
        Eigen::VectorXd all(config.n_train + config.n_test);
        all.head(config.n_train) = sr.train.labels;
        all.tail(config.n_test) = sr.test.labels;
        build.features.labels = std::move(all);

        build.manifest["dataset_type"] = "synthetic";
        build.manifest["num_points"] = config.dataset.num_points;
        build.manifest["concept_seed"] = config.dataset.concept_seed;
        build.manifest["concept_layers"] = config.dataset.concept_layers;
        build.manifest["label_rule"] = "sign of the concept expectation, sign(0) = +1";
        return build;
    }

    const RawImageSet raw = load_idx(config.dataset.images_path, config.dataset.labels_path);
    const BinaryImageSet binary = filter_binary(raw, config.dataset.class_a, config.dataset.class_b);
    if (binary.count < static_cast<std::size_t>(config.n_train + config.n_test))
        throw DataError("binary subset has " + std::to_string(binary.count) +
                        " images, need " + std::to_string(config.n_train + config.n_test));

    LabeledSample image_pool;
    image_pool.labels = binary.labels;
    image_pool.points.reserve(binary.count);
    for (std::size_t i = 0; i < binary.count; ++i)
        image_pool.points.push_back(binary.image_as_unit_doubles(i));

    const SplitResult sr = split(image_pool, config.n_train, config.n_test,
                                 derive_seed(config.seed, kTagSplit), config.balanced_split);

    // PCA is fitted on the training images only; the same projector (and
    // per-component rescaling) then applies to the test images.
    Eigen::MatrixXd train_rows(config.n_train, sr.train.points.front().size());
    for (Eigen::Index i = 0; i < config.n_train; ++i)
        train_rows.row(i) = sr.train.points[static_cast<std::size_t>(i)].transpose();
    const PcaProjector projector = fit_pca(train_rows, config.num_qubits);

    build.features.points.reserve(static_cast<std::size_t>(config.n_train + config.n_test));
    for (const FeatureVector& img : sr.train.points)
        build.features.points.push_back(project(projector, img));
    for (const FeatureVector& img : sr.test.points)
        build.features.points.push_back(project(projector, img));
    Eigen::VectorXd all(config.n_train + config.n_test);
    all.head(config.n_train) = sr.train.labels;
    all.tail(config.n_test) = sr.test.labels;
    build.features.labels = std::move(all);

    build.manifest["dataset_type"] = "fashion_mnist";
    build.manifest["class_map"] = {{"+1", config.dataset.class_a}, {"-1", config.dataset.class_b}};
    std::vector<double> scale(projector.scale.data(), projector.scale.data() + projector.scale.size());
    std::vector<double> variance(projector.explained_variance.data(),
                                 projector.explained_variance.data() +
                                     projector.explained_variance.size());
    build.manifest["pca_scale"] = scale;
    build.manifest["pca_explained_variance"] = variance;
    return build;
}

void run_data(const ExperimentConfig& config) {
    const FeatureBuild build = build_features(config);
    fs::create_directories(config.out_dir);
    write_features_csv(join_path(config.out_dir, "features.csv"), build.features);
    write_text_file(join_path(config.out_dir, "manifest.json"), build.manifest.dump(2) + "\n");
}

namespace {

struct PreparedSample {
    LabeledSample train;
    LabeledSample test;
};

PreparedSample load_or_build_features(const ExperimentConfig& config, bool require_cache) {
    const std::string cache = join_path(config.out_dir, "features.csv");
    LabeledSample features;
    if (fs::exists(cache)) {
        features = read_features_csv(cache);
        if (features.size() != config.n_train + config.n_test)
            throw DataError("feature cache '" + cache + "' holds " +
                            std::to_string(features.size()) + " rows, config expects " +
                            std::to_string(config.n_train + config.n_test));
        if (features.points.front().size() != config.num_qubits)
            throw DataError("feature cache '" + cache + "' has " +
                            std::to_string(features.points.front().size()) +
                            "-dimensional rows, config expects " +
                            std::to_string(config.num_qubits));
    } else if (require_cache) {
        throw DataError("feature cache '" + cache + "' not found; run the data stage first");
    } else {
        run_data(config);
        features = read_features_csv(cache);
    }

    PreparedSample out;
    out.train.points.assign(features.points.begin(), features.points.begin() + config.n_train);
    out.train.labels = features.labels.head(config.n_train);
    out.test.points.assign(features.points.begin() + config.n_train,
                           features.points.begin() + config.n_train + config.n_test);
    out.test.labels = features.labels.segment(config.n_train, config.n_test);
    return out;
}

}  // namespace

void run_kernel(const ExperimentConfig& config) {
    const PreparedSample sample = load_or_build_features(config, /*require_cache=*/true);
    fs::create_directories(config.out_dir);

    const KernelMatrix ideal = gram_matrix(sample.train.points, config.circuit(1));
    write_kernel_csv(join_path(config.out_dir, "kernel_ideal.csv"),
                     join_path(config.out_dir, "kernel_ideal.meta.json"), ideal);

    for (const int L : config.layers) {
        const NoiseModel nm = compose_depolarization(config.layer_rate, L);
        const KernelMatrix noisy = apply_depolarization(ideal, nm);
        const std::string tag = "L" + std::to_string(L);
        write_kernel_csv(join_path(config.out_dir, "kernel_noisy_" + tag + ".csv"),
                         join_path(config.out_dir, "kernel_noisy_" + tag + ".meta.json"), noisy);
        if (config.shots_m) {
            const ShotConfig sc{*config.shots_m,
                                derive_seed(config.seed, kTagShotBase + static_cast<std::uint64_t>(L))};
            const KernelMatrix estimated = sample_estimated_kernel(noisy, sc);
            write_kernel_csv(join_path(config.out_dir, "kernel_estimated_" + tag + ".csv"),
                             join_path(config.out_dir, "kernel_estimated_" + tag + ".meta.json"),
                             estimated);
        }
    }
}

namespace {

SweepRecord sweep_one_layer(const ExperimentConfig& config, int layers_L,
                            const KernelMatrix& ideal, const Eigen::MatrixXd& ideal_test_rows,
                            const PreparedSample& sample, double h_bar) {
    const auto started = std::chrono::steady_clock::now();
    SweepRecord record;
    record.layers_L = layers_L;

    const NoiseModel nm = compose_depolarization(config.layer_rate, layers_L);
    record.composed_rate = nm.composed_rate;

    const KernelMatrix noisy = apply_depolarization(ideal, nm);
    const Eigen::MatrixXd noisy_test_rows =
        apply_depolarization_rows(ideal_test_rows, nm, ideal.dim_D);

    const RidgeModel model = fit(noisy, sample.train, config.lambda);
    const Eigen::VectorXd h_train = predict_batch(model, noisy.entries);
    const Eigen::VectorXd h_test = predict_batch(model, noisy_test_rows);

    record.h_bar = h_bar;
    record.train_error = misclassification_rate(h_train, sample.train.labels);
    record.test_error = misclassification_rate(h_test, sample.test.labels);
    record.h_mean = h_test.mean();
    record.h_max = h_test.maxCoeff();
    record.h_min = h_test.minCoeff();
    const Eigen::VectorXd h_bar_vec = Eigen::VectorXd::Constant(h_train.size(), h_bar);
    record.empirical_difference = empirical_difference(h_train, h_bar_vec);
    record.test_mean_distance =
        empirical_difference(h_test, Eigen::VectorXd::Constant(h_test.size(), h_bar));

    for (Eigen::Index i = 0; i < h_test.size(); ++i) {
        const double v = h_test[i];
        int bin = static_cast<int>(std::floor((v + 1.0) / 0.1));
        bin = std::min(19, std::max(0, bin));
        ++record.histogram[static_cast<std::size_t>(bin)];
    }

    BoundInputs inputs{config.n_train, config.lambda, nm,
                       std::int64_t{1} << config.num_qubits, config.delta, config.shots_m};
    record.theorem1 = theorem1_bound(inputs);
    record.lemma2 = lemma2_bound(noisy, inputs);
    if (config.shots_m) {
        record.theorem2 = theorem2_bound(inputs);

        const ShotConfig sc{*config.shots_m,
                            derive_seed(config.seed, kTagShotBase + static_cast<std::uint64_t>(layers_L))};
        const KernelMatrix estimated = sample_estimated_kernel(noisy, sc);
        const Eigen::MatrixXd estimated_rows = sample_estimated_rows(
            noisy_test_rows, sc, static_cast<std::uint64_t>(config.n_train));
        const RidgeModel est_model = fit(estimated, sample.train, config.lambda);
        const Eigen::VectorXd est_train = predict_batch(est_model, estimated.entries);
        const Eigen::VectorXd est_test = predict_batch(est_model, estimated_rows);
        record.est_train_error = misclassification_rate(est_train, sample.train.labels);
        record.est_test_error = misclassification_rate(est_test, sample.test.labels);
        record.est_h_mean = est_test.mean();
        record.est_h_max = est_test.maxCoeff();
        record.est_h_min = est_test.minCoeff();
        record.est_empirical_difference = empirical_difference(est_train, h_bar_vec);
    }

    record.wall_time_s =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
    return record;
}

const std::string kSweepHeader =
    "L,p,train_error,test_error,h_mean,h_max,h_min,h_bar,empirical_difference,"
    "test_mean_distance,lemma2_bound,theorem1_bound,theorem2_bound,est_train_error,"
    "est_test_error,est_h_mean,est_h_max,est_h_min,est_empirical_difference,wall_time_s";

}  // namespace

const std::string& sweep_csv_header() { return kSweepHeader; }

std::optional<int> detect_phase_transition(const std::vector<SweepRecord>& records,
                                           double h_bar_train_error) {
    if (records.empty()) return std::nullopt;
    double min_error = records.front().train_error;
    for (const SweepRecord& r : records) min_error = std::min(min_error, r.train_error);
    const double midpoint = 0.5 * (min_error + h_bar_train_error);
    for (const SweepRecord& r : records)
        if (r.train_error > midpoint) return r.layers_L;
    return std::nullopt;
}

SweepResult run_sweep(const ExperimentConfig& config, int threads) {
    config.validate();
    if (threads < 1) throw ConfigError("threads must be >= 1");
    const PreparedSample sample = load_or_build_features(config, /*require_cache=*/false);

    std::vector<int> layer_grid = config.layers;
    std::sort(layer_grid.begin(), layer_grid.end());

    const KernelMatrix ideal = gram_matrix(sample.train.points, config.circuit(1));
    const Eigen::MatrixXd ideal_test_rows =
        cross_gram(sample.test.points, sample.train.points, config.circuit(1));

    SweepResult result;
    const WorstHypothesis wh =
        worst_hypothesis(sample.train, config.lambda, std::int64_t{1} << config.num_qubits);
    result.h_bar = wh.constant_value;
    const Eigen::VectorXd h_bar_train =
        Eigen::VectorXd::Constant(sample.train.size(), wh.constant_value);
    const Eigen::VectorXd h_bar_test =
        Eigen::VectorXd::Constant(sample.test.size(), wh.constant_value);
    result.h_bar_train_error = misclassification_rate(h_bar_train, sample.train.labels);
    result.h_bar_test_error = misclassification_rate(h_bar_test, sample.test.labels);

    result.records.resize(layer_grid.size());
    // A failing row aborts the sweep naming its L; the error type is kept so
    // the CLI exit code stays faithful.
    auto run_row = [&](std::size_t k) {
        try {
            result.records[k] = sweep_one_layer(config, layer_grid[k], ideal, ideal_test_rows,
                                                sample, wh.constant_value);
        } catch (const ConfigError& err) {
            throw ConfigError("sweep aborted at L=" + std::to_string(layer_grid[k]) + ": " +
                              err.what());
        } catch (const DataError& err) {
            throw DataError("sweep aborted at L=" + std::to_string(layer_grid[k]) + ": " +
                            err.what());
        } catch (const NumericalError& err) {
            throw NumericalError("sweep aborted at L=" + std::to_string(layer_grid[k]) + ": " +
                                 err.what());
        }
    };
    // L values are independent; rows land in their slots, so the output
    // order never depends on scheduling.
    const int workers = std::min<int>(threads, static_cast<int>(layer_grid.size()));
    if (workers <= 1) {
        for (std::size_t k = 0; k < layer_grid.size(); ++k) run_row(k);
    } else {
        std::exception_ptr failure;
        std::mutex failure_mutex;
        std::atomic<std::size_t> next{0};
        std::vector<std::thread> pool;
        for (int w = 0; w < workers; ++w) {
            pool.emplace_back([&]() {
                for (;;) {
                    const std::size_t k = next.fetch_add(1);
                    if (k >= layer_grid.size()) return;
                    try {
                        run_row(k);
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(failure_mutex);
                        if (!failure) failure = std::current_exception();
                        return;
                    }
                }
            });
        }
        for (std::thread& t : pool) t.join();
        if (failure) std::rethrow_exception(failure);
    }

    result.phase_transition_layer =
        detect_phase_transition(result.records, result.h_bar_train_error);
    if (config.layer_rate > 0.0 && config.layer_rate < 1.0)
        result.demarcation = demarcation_layers(config.n_train, config.layer_rate);

    std::ostringstream csv;
    csv << kSweepHeader << "\n";
    for (const SweepRecord& r : result.records) {
        csv << r.layers_L << ',' << format_double(r.composed_rate) << ','
            << format_double(r.train_error) << ',' << format_double(r.test_error) << ','
            << format_double(r.h_mean) << ',' << format_double(r.h_max) << ','
            << format_double(r.h_min) << ',' << format_double(r.h_bar) << ','
            << format_double(r.empirical_difference) << ','
            << format_double(r.test_mean_distance) << ',' << bound_to_csv(r.lemma2.bound) << ','
            << bound_to_csv(r.theorem1.bound) << ','
            << (r.theorem2 ? bound_to_csv(r.theorem2->bound) : std::string()) << ','
            << optional_to_csv(r.est_train_error) << ',' << optional_to_csv(r.est_test_error)
            << ',' << optional_to_csv(r.est_h_mean) << ',' << optional_to_csv(r.est_h_max) << ','
            << optional_to_csv(r.est_h_min) << ',' << optional_to_csv(r.est_empirical_difference)
            << ',' << format_double(r.wall_time_s) << "\n";
    }
    fs::create_directories(config.out_dir);
    write_text_file(join_path(config.out_dir, "sweep.csv"), csv.str());

    nlohmann::json summary;
    summary["schema_version"] = 1;
    summary["seed"] = config.seed;
    summary["num_qubits"] = config.num_qubits;
    summary["n_train"] = config.n_train;
    summary["n_test"] = config.n_test;
    summary["layer_rate"] = config.layer_rate;
    summary["lambda"] = config.lambda;
    summary["delta"] = config.delta;
    summary["layers"] = layer_grid;
    summary["h_bar"] = result.h_bar;
    summary["h_bar_train_error"] = result.h_bar_train_error;
    summary["h_bar_test_error"] = result.h_bar_test_error;
    if (result.demarcation) summary["demarcation_layers"] = *result.demarcation;
    else summary["demarcation_layers"] = nullptr;
    if (result.phase_transition_layer)
        summary["phase_transition_layer"] = *result.phase_transition_layer;
    else summary["phase_transition_layer"] = nullptr;
    nlohmann::json histograms = nlohmann::json::object();
    for (const SweepRecord& r : result.records)
        histograms[std::to_string(r.layers_L)] = r.histogram;
    summary["test_hypothesis_histograms"] = histograms;
    summary["histogram_bins"] = "20 uniform bins on [-1, 1]";
    write_text_file(join_path(config.out_dir, "summary.json"), summary.dump(2) + "\n");
    result.summary = std::move(summary);
    return result;
}

void run_bounds(const ExperimentConfig& config) {
    config.validate();
    fs::create_directories(config.out_dir);

    std::vector<std::int64_t> m_values = config.bounds_m_values;
    if (m_values.empty() && config.shots_m) m_values.push_back(*config.shots_m);

    std::ostringstream csv;
    csv << "n,D,lambda,delta,L,p,m,z,theorem1_bound,theorem1_informative,corollary1_bound,"
           "corollary1_informative,theorem2_bound,theorem2_informative,theorem2_deficit,"
           "geometric_bound\n";

    auto emit_row = [&](const std::string& layer_label, const NoiseModel& nm,
                        std::optional<std::int64_t> m) {
        BoundInputs inputs{config.n_train, config.lambda, nm,
                           std::int64_t{1} << config.num_qubits, config.delta, m};
        const BoundReport t1 = theorem1_bound(inputs);
        const BoundReport c1 = corollary1_bound(inputs);
        csv << config.n_train << ',' << (std::int64_t{1} << config.num_qubits) << ','
            << format_double(config.lambda) << ',' << format_double(config.delta) << ','
            << layer_label << ',' << format_double(nm.composed_rate) << ','
            << (m ? std::to_string(*m) : std::string()) << ','
            << format_double(depolarization_argument(inputs)) << ',' << bound_to_csv(t1.bound)
            << ',' << (t1.informative ? 1 : 0) << ',' << bound_to_csv(c1.bound) << ','
            << (c1.informative ? 1 : 0) << ',';
        if (m) {
            const BoundReport t2 = theorem2_bound(inputs);
            csv << bound_to_csv(t2.bound) << ',' << (t2.informative ? 1 : 0) << ','
                << format_double(*t2.probability_deficit);
        } else {
            csv << ",,";
        }
        csv << ',' << bound_to_csv(geometric_difference_bound(inputs)) << "\n";
    };

    auto emit_layer = [&](const std::string& label, const NoiseModel& nm) {
        if (m_values.empty()) {
            emit_row(label, nm, std::nullopt);
        } else {
            for (const std::int64_t m : m_values) emit_row(label, nm, m);
        }
    };

    for (const int L : config.layers)
        emit_layer(std::to_string(L), compose_depolarization(config.layer_rate, L));

    // Fully depolarized endpoint row: p = 1 regardless of the layer rate.
    NoiseModel endpoint;
    endpoint.layer_rate = config.layer_rate;
    endpoint.noisy_layers = 1;
    endpoint.composed_rate = 1.0;
    emit_layer("inf", endpoint);

    write_text_file(join_path(config.out_dir, "bounds.csv"), csv.str());
}

void run_regions(const ExperimentConfig& config) {
    config.validate();
    if (!(config.layer_rate > 0.0 && config.layer_rate < 1.0))
        throw ConfigError("region map undefined for layer_rate " +
                          std::to_string(config.layer_rate) + "; needs (0, 1) exclusive");
    if (config.region_n_values.empty())
        throw ConfigError("region map needs region_n_values in the config");

    std::ostringstream csv;
    csv << "n,L,L_star,verdict,regime\n";
    for (const Eigen::Index n : config.region_n_values) {
        for (const int L : config.layers) {
            const RegionReport report =
                classify_region(n, config.num_qubits, config.layer_rate, L);
            csv << n << ',' << L << ',' << format_double(report.threshold_layers) << ','
                << to_string(report.verdict) << ',' << to_string(report.regime) << "\n";
        }
    }
    fs::create_directories(config.out_dir);
    write_text_file(join_path(config.out_dir, "regions.csv"), csv.str());
}

}  // namespace qknoise
