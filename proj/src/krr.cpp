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

#include "qknoise/krr.hpp"

#include <cmath>

namespace qknoise {

namespace {

constexpr double kResidualTol = 1e-8;

double clip(double v) { return std::min(1.0, std::max(-1.0, v)); }

[[noreturn]] void throw_singular(const Eigen::MatrixXd& system, const char* stage) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(system, Eigen::EigenvaluesOnly);
    const double min_eig = eig.eigenvalues().minCoeff();
    throw NumericalError(std::string("regularized kernel system singular during ") + stage +
                         "; minimum eigenvalue " + std::to_string(min_eig) +
                         " (for estimated kernels this signals too few shots)");
}

struct RidgeSolve {
    Eigen::VectorXd solution;
    bool spd_fallback = false;
};

// Solve (K + lambda I) u = rhs with one step of iterative refinement.
RidgeSolve ridge_solve(const Eigen::MatrixXd& kernel_entries, KernelKind kind, double lambda,
                       const Eigen::VectorXd& rhs) {
    Eigen::MatrixXd system = kernel_entries;
    system.diagonal().array() += lambda;

    RidgeSolve result;
    Eigen::LLT<Eigen::MatrixXd> llt(system);
    if (llt.info() == Eigen::Success) {
        result.solution = llt.solve(rhs);
        result.solution += llt.solve(rhs - system * result.solution);
    } else if (kind == KernelKind::estimated) {
        Eigen::LDLT<Eigen::MatrixXd> ldlt(system);
        const double pivot_floor = 1e-13 * system.diagonal().cwiseAbs().maxCoeff();
        if (ldlt.info() != Eigen::Success ||
            ldlt.vectorD().cwiseAbs().minCoeff() <= pivot_floor)
            throw_singular(system, "the indefinite fallback solve");
        result.solution = ldlt.solve(rhs);
        result.solution += ldlt.solve(rhs - system * result.solution);
        result.spd_fallback = true;
    } else {
        throw_singular(system, "the SPD factorization");
    }

    const double rhs_norm = rhs.norm();
    const double residual = (system * result.solution - rhs).norm();
    if (residual > kResidualTol * std::max(rhs_norm, 1e-300)) throw_singular(system, "residual verification");
    return result;
}

}  // namespace

RidgeModel fit(const KernelMatrix& train_kernel, const LabeledSample& sample, double lambda) {
    if (!(lambda > 0.0)) throw ConfigError("lambda must be positive");
    sample.validate();
    const Eigen::Index n = sample.size();
    if (train_kernel.entries.rows() != n || train_kernel.entries.cols() != n)
        throw ConfigError("training kernel is " + std::to_string(train_kernel.entries.rows()) + "x" +
                          std::to_string(train_kernel.entries.cols()) + " for a sample of size " +
                          std::to_string(n));

    RidgeSolve solve = ridge_solve(train_kernel.entries, train_kernel.kind, lambda, sample.labels);

    RidgeModel model;
    model.dual_coefficients = std::move(solve.solution);
    model.lambda = lambda;
    model.train_kernel_kind = train_kernel.kind;
    model.train_points = sample.points;
    model.spd_fallback = solve.spd_fallback;
    return model;
}

double predict(const RidgeModel& model, const Eigen::VectorXd& kernel_row) {
    if (kernel_row.size() != model.dual_coefficients.size())
        throw ConfigError("kernel row of length " + std::to_string(kernel_row.size()) +
                          " against " + std::to_string(model.dual_coefficients.size()) +
                          " training points");
    return clip(kernel_row.dot(model.dual_coefficients));
}

Eigen::VectorXd predict_batch(const RidgeModel& model, const Eigen::MatrixXd& kernel_rows) {
    if (kernel_rows.cols() != model.dual_coefficients.size())
        throw ConfigError("kernel rows with " + std::to_string(kernel_rows.cols()) +
                          " columns against " + std::to_string(model.dual_coefficients.size()) +
                          " training points");
    Eigen::VectorXd out = kernel_rows * model.dual_coefficients;
    for (Eigen::Index i = 0; i < out.size(); ++i) out[i] = clip(out[i]);
    return out;
}

WorstHypothesis worst_hypothesis(const LabeledSample& sample, double lambda, std::int64_t dim_D) {
    if (!(lambda > 0.0)) throw ConfigError("lambda must be positive");
    sample.validate();
    const double n = static_cast<double>(sample.size());
    return WorstHypothesis{sample.labels.sum() / (static_cast<double>(dim_D) * lambda + n)};
}

double empirical_difference(const Eigen::VectorXd& hypothesis_a, const Eigen::VectorXd& hypothesis_b) {
    if (hypothesis_a.size() != hypothesis_b.size())
        throw ConfigError("empirical_difference over vectors of lengths " +
                          std::to_string(hypothesis_a.size()) + " and " +
                          std::to_string(hypothesis_b.size()));
    return (hypothesis_a - hypothesis_b).cwiseAbs().mean();
}

double misclassification_rate(const Eigen::VectorXd& hypothesis_values, const Eigen::VectorXd& labels) {
    if (hypothesis_values.size() != labels.size())
        throw ConfigError("misclassification_rate over vectors of lengths " +
                          std::to_string(hypothesis_values.size()) + " and " +
                          std::to_string(labels.size()));
    Eigen::Index wrong = 0;
    for (Eigen::Index i = 0; i < labels.size(); ++i) {
        if (labels[i] != 1.0 && labels[i] != -1.0)
            throw ConfigError("label " + std::to_string(labels[i]) + " at index " +
                              std::to_string(i) + " is not in {-1, +1}");
        const double predicted = (hypothesis_values[i] >= 0.0) ? 1.0 : -1.0;  // sign(0) := +1
        if (predicted != labels[i]) ++wrong;
    }
    return static_cast<double>(wrong) / static_cast<double>(labels.size());
}

double omega_star_norm(const KernelMatrix& kernel, const LabeledSample& sample, double lambda) {
    if (!(lambda > 0.0)) throw ConfigError("lambda must be positive");
    sample.validate();
    if (kernel.entries.rows() != sample.size())
        throw ConfigError("kernel size does not match sample size");
    const Eigen::VectorXd u =
        ridge_solve(kernel.entries, kernel.kind, lambda, sample.labels).solution;
    const double quad = u.dot(kernel.entries * u);
    return std::sqrt(std::max(0.0, quad));
}

}  // namespace qknoise
