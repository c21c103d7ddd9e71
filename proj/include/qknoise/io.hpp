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

// 17 significant digits: doubles round-trip losslessly through text.
std::string format_double(double value);

// Feature cache, header `id,y,x1..xN`.
void write_features_csv(const std::string& path, const LabeledSample& sample);
LabeledSample read_features_csv(const std::string& path);

// Kernel matrix as a plain numeric CSV plus a side JSON carrying kind, D,
// noise, and shot metadata.
void write_kernel_csv(const std::string& csv_path, const std::string& meta_path,
                      const KernelMatrix& kernel);
KernelMatrix read_kernel_csv(const std::string& csv_path, const std::string& meta_path);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

namespace detail {
std::vector<std::string> split_csv_line(const std::string& line);
double parse_double(const std::string& token, const std::string& context);
}  // namespace detail

}  // namespace qknoise
