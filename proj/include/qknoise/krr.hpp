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

// Dual solution alpha = (K + lambda I)^{-1} Y of the regularized
// least-squares problem, for one training kernel. Predictions clip the
// linear form to [-1, 1]; the dual coefficients themselves are never
// clipped. Immutable after construction.
struct RidgeModel {
    Eigen::VectorXd dual_coefficients;
    double lambda = 0.0;
    KernelKind train_kernel_kind = KernelKind::ideal;
    std::vector<FeatureVector> train_points;
    // Estimated kernels can make K + lambda I indefinite; when the SPD
    // factorization fails the fit falls back to a symmetric indefinite solve
    // and records it here instead of failing.
    bool spd_fallback = false;
};

// Constant hypothesis of the fully depolarized kernel:
// h_bar = (sum_i y_i) / (D lambda + n), independent of the query point.
struct WorstHypothesis {
    double constant_value = 0.0;
};

// Solves (K + lambda I) alpha = Y. Ideal/noisy/worst kernels are PSD, so the
// system is SPD and solved by Cholesky; estimated kernels attempt Cholesky
// first and fall back to LDLT with a warning flag. A numerically singular
// system raises NumericalError naming the minimum eigenvalue, which for
// estimated kernels signals too few measurement shots.
RidgeModel fit(const KernelMatrix& train_kernel, const LabeledSample& sample, double lambda);

// Clipped prediction min{1, max{-1, k_row . alpha}}. The caller must supply
// kernel values produced by the same kind/noise/shot pipeline as training.
double predict(const RidgeModel& model, const Eigen::VectorXd& kernel_row);

// Row-wise predict over a block of kernel rows.
Eigen::VectorXd predict_batch(const RidgeModel& model, const Eigen::MatrixXd& kernel_rows);

WorstHypothesis worst_hypothesis(const LabeledSample& sample, double lambda, std::int64_t dim_D);

// Mean absolute difference (1/n) sum_i |a_i - b_i|.
double empirical_difference(const Eigen::VectorXd& hypothesis_a, const Eigen::VectorXd& hypothesis_b);

// Fraction of points where sign(hypothesis) disagrees with the +-1 label;
// sign(0) counts as +1.
double misclassification_rate(const Eigen::VectorXd& hypothesis_values, const Eigen::VectorXd& labels);

// Feature-space norm of the optimal parameter,
// sqrt(Y^T (K+lambda I)^{-1} K (K+lambda I)^{-1} Y).
double omega_star_norm(const KernelMatrix& kernel, const LabeledSample& sample, double lambda);

}  // namespace qknoise
