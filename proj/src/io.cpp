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

#include "qknoise/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace qknoise {

std::string format_double(double value) {
    char buffer[40];
    std::snprintf(buffer, sizeof(buffer), "%.17g", value);
    return buffer;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DataError("cannot open '" + path + "'");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DataError("cannot write '" + path + "'");
    out << content;
    if (!out) throw DataError("write failed for '" + path + "'");
}

namespace detail {

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (;;) {
        const std::size_t comma = line.find(',', start);
        if (comma == std::string::npos) {
            fields.push_back(line.substr(start));
            return fields;
        }
        fields.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
}

double parse_double(const std::string& token, const std::string& context) {
    char* end = nullptr;
    const double value = std::strtod(token.c_str(), &end);
    if (end == token.c_str() || *end != '\0')
        throw DataError("cannot parse '" + token + "' as a number in " + context);
    return value;
}

}  // namespace detail

void write_features_csv(const std::string& path, const LabeledSample& sample) {
    sample.validate();
    const int dims = static_cast<int>(sample.points.front().size());
    std::ostringstream out;
    out << "id,y";
    for (int k = 1; k <= dims; ++k) out << ",x" << k;
    out << "\n";
    for (Eigen::Index i = 0; i < sample.size(); ++i) {
        out << i << ',' << format_double(sample.labels[i]);
        const FeatureVector& x = sample.points[static_cast<std::size_t>(i)];
        for (Eigen::Index k = 0; k < x.size(); ++k) out << ',' << format_double(x[k]);
        out << "\n";
    }
    write_text_file(path, out.str());
}

LabeledSample read_features_csv(const std::string& path) {
    std::istringstream in(read_text_file(path));
    std::string line;
    if (!std::getline(in, line)) throw DataError("empty feature cache '" + path + "'");
    const std::vector<std::string> header = detail::split_csv_line(line);
    if (header.size() < 3 || header[0] != "id" || header[1] != "y")
        throw DataError("unexpected feature-cache header in '" + path + "'");
    const std::size_t dims = header.size() - 2;
    for (std::size_t k = 0; k < dims; ++k)
        if (header[2 + k] != "x" + std::to_string(k + 1))
            throw DataError("unexpected feature column '" + header[2 + k] + "' in '" + path + "'");

    LabeledSample sample;
    std::vector<double> labels;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const std::vector<std::string> fields = detail::split_csv_line(line);
        if (fields.size() != header.size())
            throw DataError("row with " + std::to_string(fields.size()) + " fields in '" + path +
                            "', expected " + std::to_string(header.size()));
        labels.push_back(detail::parse_double(fields[1], path));
        FeatureVector x(static_cast<Eigen::Index>(dims));
        for (std::size_t k = 0; k < dims; ++k)
            x[static_cast<Eigen::Index>(k)] = detail::parse_double(fields[2 + k], path);
        sample.points.push_back(std::move(x));
    }
    sample.labels =
        Eigen::Map<Eigen::VectorXd>(labels.data(), static_cast<Eigen::Index>(labels.size()));
    sample.validate();
    return sample;
}

void write_kernel_csv(const std::string& csv_path, const std::string& meta_path,
                      const KernelMatrix& kernel) {
    std::ostringstream out;
    for (Eigen::Index i = 0; i < kernel.entries.rows(); ++i) {
        for (Eigen::Index j = 0; j < kernel.entries.cols(); ++j) {
            if (j > 0) out << ',';
            out << format_double(kernel.entries(i, j));
        }
        out << "\n";
    }
    write_text_file(csv_path, out.str());

    nlohmann::json meta;
    meta["schema_version"] = 1;
    meta["kind"] = to_string(kernel.kind);
    meta["n"] = kernel.entries.rows();
    meta["dim_D"] = kernel.dim_D;
    if (kernel.noise) {
        meta["noise"] = {{"layer_rate", kernel.noise->layer_rate},
                         {"noisy_layers", kernel.noise->noisy_layers},
                         {"composed_rate", kernel.noise->composed_rate}};
    } else {
        meta["noise"] = nullptr;
    }
    if (kernel.shots) {
        meta["shots"] = {{"shots", kernel.shots->shots},
                         {"master_seed", kernel.shots->master_seed}};
    } else {
        meta["shots"] = nullptr;
    }
    write_text_file(meta_path, meta.dump(2) + "\n");
}

KernelMatrix read_kernel_csv(const std::string& csv_path, const std::string& meta_path) {
    nlohmann::json meta;
    try {
        meta = nlohmann::json::parse(read_text_file(meta_path));
    } catch (const nlohmann::json::parse_error& err) {
        throw DataError("malformed kernel metadata '" + meta_path + "': " + err.what());
    }

    KernelMatrix kernel;
    const std::string kind = meta.at("kind").get<std::string>();
    if (kind == "ideal") kernel.kind = KernelKind::ideal;
    else if (kind == "noisy") kernel.kind = KernelKind::noisy;
    else if (kind == "estimated") kernel.kind = KernelKind::estimated;
    else if (kind == "worst") kernel.kind = KernelKind::worst;
    else throw DataError("unknown kernel kind '" + kind + "' in '" + meta_path + "'");
    kernel.dim_D = meta.at("dim_D").get<std::int64_t>();
    if (!meta.at("noise").is_null()) {
        NoiseModel nm;
        nm.layer_rate = meta["noise"].at("layer_rate").get<double>();
        nm.noisy_layers = meta["noise"].at("noisy_layers").get<int>();
        nm.composed_rate = meta["noise"].at("composed_rate").get<double>();
        kernel.noise = nm;
    }
    if (!meta.at("shots").is_null()) {
        ShotConfig sc;
        sc.shots = meta["shots"].at("shots").get<std::int64_t>();
        sc.master_seed = meta["shots"].at("master_seed").get<std::uint64_t>();
        kernel.shots = sc;
    }

    std::istringstream in(read_text_file(csv_path));
    std::string line;
    std::vector<std::vector<double>> rows;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        for (const std::string& token : detail::split_csv_line(line))
            row.push_back(detail::parse_double(token, csv_path));
        rows.push_back(std::move(row));
    }
    const Eigen::Index n = meta.at("n").get<Eigen::Index>();
    if (static_cast<Eigen::Index>(rows.size()) != n)
        throw DataError("kernel CSV '" + csv_path + "' has " + std::to_string(rows.size()) +
                        " rows, metadata says " + std::to_string(n));
    kernel.entries.resize(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (static_cast<Eigen::Index>(rows[static_cast<std::size_t>(i)].size()) != n)
            throw DataError("kernel CSV '" + csv_path + "' row " + std::to_string(i) +
                            " has the wrong width");
        for (Eigen::Index j = 0; j < n; ++j)
            kernel.entries(i, j) = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    }
    return kernel;
}

}  // namespace qknoise
