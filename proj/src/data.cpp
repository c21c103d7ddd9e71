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

#include "qknoise/data.hpp"

#include <zlib.h>

#include <cmath>
#include <numbers>

#include "qknoise/rng.hpp"
#include "qknoise/statevector.hpp"

namespace qknoise {

namespace {

constexpr std::uint32_t kImageMagic = 0x00000803;
constexpr std::uint32_t kLabelMagic = 0x00000801;

// gzread handles both raw and gzip-wrapped files.
std::vector<std::uint8_t> read_file_bytes(const std::string& path) {
    gzFile file = gzopen(path.c_str(), "rb");
    if (file == nullptr) throw DataError("cannot open '" + path + "'");
    std::vector<std::uint8_t> bytes;
    std::uint8_t chunk[1 << 16];
    for (;;) {
        const int got = gzread(file, chunk, sizeof(chunk));
        if (got < 0) {
            gzclose(file);
            throw DataError("read error in '" + path + "'");
        }
        if (got == 0) break;
        bytes.insert(bytes.end(), chunk, chunk + got);
    }
    gzclose(file);
    return bytes;
}

std::uint32_t read_u32_be(const std::vector<std::uint8_t>& bytes, std::size_t offset,
                          const std::string& path) {
    if (offset + 4 > bytes.size())
        throw DataError("truncated IDX file '" + path + "': header ends at byte " +
                        std::to_string(bytes.size()));
    return (std::uint32_t(bytes[offset]) << 24) | (std::uint32_t(bytes[offset + 1]) << 16) |
           (std::uint32_t(bytes[offset + 2]) << 8) | std::uint32_t(bytes[offset + 3]);
}

}  // namespace

RawImageSet load_idx(const std::string& images_path, const std::string& labels_path) {
    const std::vector<std::uint8_t> image_bytes = read_file_bytes(images_path);
    const std::uint32_t image_magic = read_u32_be(image_bytes, 0, images_path);
    if (image_magic != kImageMagic)
        throw DataError("bad IDX magic in '" + images_path + "': got 0x" +
                        std::to_string(image_magic) + ", expected image magic 0x00000803");
    const std::uint32_t count = read_u32_be(image_bytes, 4, images_path);
    const std::uint32_t rows = read_u32_be(image_bytes, 8, images_path);
    const std::uint32_t cols = read_u32_be(image_bytes, 12, images_path);
    const std::size_t expected = 16 + std::size_t(count) * rows * cols;
    if (image_bytes.size() < expected)
        throw DataError("truncated IDX file '" + images_path + "': expected " +
                        std::to_string(expected) + " bytes, got " +
                        std::to_string(image_bytes.size()));

    const std::vector<std::uint8_t> label_bytes = read_file_bytes(labels_path);
    const std::uint32_t label_magic = read_u32_be(label_bytes, 0, labels_path);
    if (label_magic != kLabelMagic)
        throw DataError("bad IDX magic in '" + labels_path + "': got 0x" +
                        std::to_string(label_magic) + ", expected label magic 0x00000801");
    const std::uint32_t label_count = read_u32_be(label_bytes, 4, labels_path);
    if (label_bytes.size() < 8 + std::size_t(label_count))
        throw DataError("truncated IDX file '" + labels_path + "': expected " +
                        std::to_string(8 + std::size_t(label_count)) + " bytes, got " +
                        std::to_string(label_bytes.size()));
    if (label_count != count)
        throw DataError("IDX count mismatch: " + std::to_string(count) + " images in '" +
                        images_path + "' vs " + std::to_string(label_count) + " labels in '" +
                        labels_path + "'");

    RawImageSet set;
    set.count = count;
    set.rows = static_cast<int>(rows);
    set.cols = static_cast<int>(cols);
    set.pixels.assign(image_bytes.begin() + 16, image_bytes.begin() + expected);
    set.labels.assign(label_bytes.begin() + 8, label_bytes.begin() + 8 + label_count);
    return set;
}

Eigen::VectorXd BinaryImageSet::image_as_unit_doubles(std::size_t index) const {
    const std::size_t stride = std::size_t(rows) * cols;
    Eigen::VectorXd out(stride);
    for (std::size_t k = 0; k < stride; ++k)
        out[static_cast<Eigen::Index>(k)] = pixels[index * stride + k] / 255.0;
    return out;
}

BinaryImageSet filter_binary(const RawImageSet& set, int class_a, int class_b) {
    if (class_a == class_b)
        throw ConfigError("filter_binary needs two distinct classes, got " +
                          std::to_string(class_a) + " twice");
    const std::size_t stride = std::size_t(set.rows) * set.cols;
    BinaryImageSet out;
    out.rows = set.rows;
    out.cols = set.cols;
    std::vector<double> labels;
    for (std::size_t i = 0; i < set.count; ++i) {
        const int label = set.labels[i];
        if (label != class_a && label != class_b) continue;
        out.pixels.insert(out.pixels.end(), set.pixels.begin() + i * stride,
                          set.pixels.begin() + (i + 1) * stride);
        labels.push_back(label == class_a ? 1.0 : -1.0);
    }
    if (labels.empty())
        throw DataError("no images of classes " + std::to_string(class_a) + " or " +
                        std::to_string(class_b) + " in the archive");
    out.count = labels.size();
    out.labels = Eigen::Map<Eigen::VectorXd>(labels.data(), static_cast<Eigen::Index>(labels.size()));
    return out;
}

PcaProjector fit_pca(const Eigen::MatrixXd& train_rows, int out_dim) {
    const Eigen::Index n = train_rows.rows();
    const Eigen::Index d = train_rows.cols();
    if (n < out_dim)
        throw ConfigError("fit_pca needs at least " + std::to_string(out_dim) +
                          " training images, got " + std::to_string(n));

    PcaProjector proj;
    proj.mean = train_rows.colwise().mean();
    const Eigen::MatrixXd centered = train_rows.rowwise() - proj.mean.transpose();
    const Eigen::MatrixXd covariance =
        centered.transpose() * centered / static_cast<double>(n - 1);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(covariance);
    if (eig.info() != Eigen::Success) throw NumericalError("PCA eigendecomposition failed");

    // Eigenvalues come ascending; take the top out_dim in descending order.
    proj.components.resize(out_dim, d);
    proj.explained_variance.resize(out_dim);
    const double rank_floor = 1e-12 * std::max(eig.eigenvalues().maxCoeff(), 0.0) +
                              1e-300;
    for (int k = 0; k < out_dim; ++k) {
        const Eigen::Index src = d - 1 - k;
        const double variance = eig.eigenvalues()[src];
        if (variance <= rank_floor)
            throw DataError("training covariance rank below " + std::to_string(out_dim) +
                            ": component " + std::to_string(k) + " has variance " +
                            std::to_string(variance));
        proj.components.row(k) = eig.eigenvectors().col(src).transpose();
        proj.explained_variance[k] = variance;
    }

    const Eigen::MatrixXd train_proj = centered * proj.components.transpose();
    proj.scale = train_proj.cwiseAbs().colwise().maxCoeff();
    for (int k = 0; k < out_dim; ++k)
        if (proj.scale[k] <= 0.0)
            throw DataError("degenerate PCA component " + std::to_string(k) +
                            ": zero spread on the training data");
    return proj;
}

FeatureVector project(const PcaProjector& projector, const Eigen::VectorXd& image) {
    if (image.size() != projector.mean.size())
        throw ConfigError("image of length " + std::to_string(image.size()) +
                          " fed to a projector fitted on length " +
                          std::to_string(projector.mean.size()));
    FeatureVector out = projector.components * (image - projector.mean);
    out.array() /= projector.scale.array();
    return out;
}

std::vector<double> concept_rotation_angles(const ConceptCircuit& circuit, int num_qubits) {
    SplitMix64 stream(circuit.seed);
    std::vector<double> angles;
    angles.reserve(static_cast<std::size_t>(circuit.layers) * num_qubits * 2);
    for (int layer = 0; layer < circuit.layers; ++layer)
        for (int q = 0; q < num_qubits; ++q) {
            angles.push_back(std::numbers::pi * stream.next_symmetric());  // RY
            angles.push_back(std::numbers::pi * stream.next_symmetric());  // RZ
        }
    return angles;
}

double concept_value(const Eigen::VectorXcd& state, const ConceptCircuit& circuit, int num_qubits) {
    if (circuit.observable_qubit < 0 || circuit.observable_qubit >= num_qubits)
        throw ConfigError("observable qubit outside the register");

    Eigen::VectorXcd psi = state;
    const std::vector<double> angles = concept_rotation_angles(circuit, num_qubits);
    std::size_t next = 0;
    for (int layer = 0; layer < circuit.layers; ++layer) {
        for (int q = 0; q < num_qubits; ++q) {
            const double theta = angles[next++];
            const double phi = angles[next++];
            Eigen::Matrix2cd ry;
            ry << std::cos(theta / 2), -std::sin(theta / 2), std::sin(theta / 2),
                std::cos(theta / 2);
            apply_single_qubit(psi, q, ry);
            Eigen::Matrix2cd rz;
            rz << std::polar(1.0, -phi / 2), 0.0, 0.0, std::polar(1.0, phi / 2);
            apply_single_qubit(psi, q, rz);
        }
        // CZ ring; the closing edge only exists for N > 2, otherwise it
        // would cancel the chain edge.
        for (int q = 0; q + 1 < num_qubits; ++q) apply_cz(psi, q, q + 1);
        if (num_qubits > 2) apply_cz(psi, num_qubits - 1, 0);
    }

    const Eigen::Index mask = Eigen::Index{1} << circuit.observable_qubit;
    double expectation = 0.0;
    for (Eigen::Index b = 0; b < psi.size(); ++b) {
        const double weight = std::norm(psi[b]);
        expectation += (b & mask) ? -weight : weight;
    }
    return std::min(1.0, std::max(-1.0, expectation));
}

Eigen::VectorXd synthesize_concept_labels(const std::vector<FeatureVector>& points,
                                          const ConceptCircuit& circuit,
                                          const CircuitConfig& cfg) {
    Eigen::VectorXd labels(static_cast<Eigen::Index>(points.size()));
    for (std::size_t i = 0; i < points.size(); ++i) {
        const EncodedState state = embed_iqp(points[i], cfg);
        labels[static_cast<Eigen::Index>(i)] =
            concept_value(state.amplitudes, circuit, cfg.num_qubits);
    }
    return labels;
}

std::vector<FeatureVector> synthetic_points(std::size_t count, int num_qubits,
                                            std::uint64_t seed) {
    SplitMix64 stream(seed);
    std::vector<FeatureVector> points(count);
    for (std::size_t i = 0; i < count; ++i) {
        FeatureVector x(num_qubits);
        for (int k = 0; k < num_qubits; ++k) x[k] = stream.next_symmetric();
        points[i] = std::move(x);
    }
    return points;
}

namespace {

std::vector<Eigen::Index> shuffled_indices(Eigen::Index n, SplitMix64& stream) {
    std::vector<Eigen::Index> idx(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) idx[static_cast<std::size_t>(i)] = i;
    for (Eigen::Index i = n - 1; i > 0; --i) {
        const auto j = static_cast<Eigen::Index>(
            stream.next_below(static_cast<std::uint64_t>(i) + 1));
        std::swap(idx[static_cast<std::size_t>(i)], idx[static_cast<std::size_t>(j)]);
    }
    return idx;
}

LabeledSample take(const LabeledSample& sample, const std::vector<Eigen::Index>& order,
                   std::size_t begin, std::size_t count) {
    LabeledSample out;
    out.labels.resize(static_cast<Eigen::Index>(count));
    out.points.reserve(count);
    for (std::size_t k = 0; k < count; ++k) {
        const Eigen::Index src = order[begin + k];
        out.points.push_back(sample.points[static_cast<std::size_t>(src)]);
        out.labels[static_cast<Eigen::Index>(k)] = sample.labels[src];
    }
    return out;
}

}  // namespace

SplitResult split(const LabeledSample& sample, Eigen::Index n_train, Eigen::Index n_test,
                  std::uint64_t seed, bool balance_classes) {
    sample.validate();
    if (n_train < 1 || n_test < 1) throw ConfigError("split sizes must be >= 1");
    if (n_train + n_test > sample.size())
        throw DataError("insufficient data: requested " + std::to_string(n_train) + "+" +
                        std::to_string(n_test) + " from a pool of " +
                        std::to_string(sample.size()));

    SplitMix64 stream(seed);
    if (!balance_classes) {
        const std::vector<Eigen::Index> order = shuffled_indices(sample.size(), stream);
        SplitResult out;
        out.train = take(sample, order, 0, static_cast<std::size_t>(n_train));
        out.test = take(sample, order, static_cast<std::size_t>(n_train),
                        static_cast<std::size_t>(n_test));
        return out;
    }

    if (n_train % 2 != 0 || n_test % 2 != 0)
        throw ConfigError("balanced split needs even sizes; got odd request " +
                          std::to_string(n_train) + "+" + std::to_string(n_test));
    std::vector<Eigen::Index> positive, negative;
    for (Eigen::Index i = 0; i < sample.size(); ++i) {
        if (sample.labels[i] == 1.0) positive.push_back(i);
        else if (sample.labels[i] == -1.0) negative.push_back(i);
        else throw ConfigError("balanced split needs labels in {-1, +1}");
    }
    const std::size_t per_class =
        static_cast<std::size_t>(n_train / 2) + static_cast<std::size_t>(n_test / 2);
    if (positive.size() < per_class || negative.size() < per_class)
        throw DataError("insufficient data per class: need " + std::to_string(per_class) +
                        " of each, have " + std::to_string(positive.size()) + " positive and " +
                        std::to_string(negative.size()) + " negative");

    // Shuffle within each class, then interleave so both splits balance.
    for (auto* bucket : {&positive, &negative}) {
        for (std::size_t i = bucket->size() - 1; i > 0; --i) {
            const auto j = static_cast<std::size_t>(stream.next_below(i + 1));
            std::swap((*bucket)[i], (*bucket)[j]);
        }
    }
    std::vector<Eigen::Index> order;
    order.reserve(2 * per_class);
    for (std::size_t k = 0; k < per_class; ++k) {
        order.push_back(positive[k]);
        order.push_back(negative[k]);
    }
    SplitResult out;
    out.train = take(sample, order, 0, static_cast<std::size_t>(n_train));
    out.test = take(sample, order, static_cast<std::size_t>(n_train),
                    static_cast<std::size_t>(n_test));
    return out;
}

}  // namespace qknoise
