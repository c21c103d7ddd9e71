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

#include "qknoise/bounds.hpp"

#include <cmath>

#include "qknoise/noise.hpp"

namespace qknoise {

namespace {

constexpr double kInformativeCeiling = 2.0;  // |h - h_bar| lives in [0, 2]
constexpr Eigen::Index kDenseEigLimit = 2000;

double d_term_theorem1(const BoundInputs& in) {
    const double n = static_cast<double>(in.n);
    const double D = static_cast<double>(in.dim_D);
    return 8.0 * std::sqrt(D * n) / (D * in.lambda + n);
}

double delta_term(double log_numerator, double delta, Eigen::Index n) {
    return 6.0 * std::sqrt(std::log(log_numerator / delta) / (2.0 * static_cast<double>(n)));
}

BoundReport assemble_f_report(double f_argument, double d_term, double delta_t, double lambda) {
    BoundReport report;
    report.f_argument = f_argument;
    report.d_term = d_term;
    report.delta_term = delta_t;
    report.f_term = f_of_z(f_argument, lambda);
    if (report.f_term) {
        report.bound = *report.f_term + d_term + delta_t;
        report.informative = (f_argument < 1.0) && (*report.bound <= kInformativeCeiling);
    }
    return report;
}

Eigen::MatrixXd resolvent(const Eigen::MatrixXd& entries, double lambda) {
    Eigen::MatrixXd system = entries;
    system.diagonal().array() += lambda;
    Eigen::LLT<Eigen::MatrixXd> llt(system);
    if (llt.info() == Eigen::Success)
        return llt.solve(Eigen::MatrixXd::Identity(entries.rows(), entries.cols()));
    Eigen::LDLT<Eigen::MatrixXd> ldlt(system);
    if (ldlt.info() != Eigen::Success)
        throw NumericalError("resolvent factorization failed");
    return ldlt.solve(Eigen::MatrixXd::Identity(entries.rows(), entries.cols()));
}

}  // namespace

std::optional<double> f_of_z(double z, double lambda) {
    if (z < 0.0) throw ConfigError("f is undefined for negative arguments");
    if (!(lambda > 0.0)) throw ConfigError("f needs lambda > 0");
    if (z >= 1.0) return std::nullopt;
    return (z + 8.0 * std::sqrt(z / lambda)) / (1.0 - z);
}

double depolarization_argument(const BoundInputs& in) {
    const double n = static_cast<double>(in.n);
    const double D = static_cast<double>(in.dim_D);
    return n / in.lambda * (1.0 - in.noise.composed_rate) * (1.0 + 1.0 / D);
}

BoundReport theorem1_bound(const BoundInputs& in) {
    in.validate();
    return assemble_f_report(depolarization_argument(in), d_term_theorem1(in),
                             delta_term(4.0, in.delta, in.n), in.lambda);
}

BoundReport corollary1_bound(const BoundInputs& in) {
    in.validate();
    const double n = static_cast<double>(in.n);
    const double D = static_cast<double>(in.dim_D);
    const double d_term =
        8.0 * std::sqrt(2.0 * D * std::log(4.0 / in.delta)) / (D * in.lambda + n);
    return assemble_f_report(depolarization_argument(in), d_term,
                             delta_term(8.0, in.delta, in.n), in.lambda);
}

BoundReport theorem2_bound(const BoundInputs& in) {
    in.validate();
    if (!in.shots_m) throw ConfigError("theorem2_bound needs a shot count m");
    const double n = static_cast<double>(in.n);
    const double m = static_cast<double>(*in.shots_m);

    const double shift = n / in.lambda * std::sqrt(std::log(4.0 * n * n / in.delta) / (2.0 * m));
    BoundReport report = assemble_f_report(depolarization_argument(in) + shift,
                                           d_term_theorem1(in),
                                           delta_term(8.0, in.delta, in.n), in.lambda);
    report.shot_shift = shift;
    report.probability_deficit = n * std::exp(-in.lambda * in.lambda * m / (4.0 * n));
    return report;
}

double geometric_difference_exact(const KernelMatrix& noisy, const KernelMatrix& worst,
                                  double lambda) {
    if (noisy.entries.rows() != worst.entries.rows() ||
        noisy.entries.cols() != worst.entries.cols())
        throw ConfigError("geometric difference of kernels with mismatched shapes");
    if (!(lambda > 0.0)) throw ConfigError("geometric difference needs lambda > 0");
    const Eigen::MatrixXd difference =
        resolvent(noisy.entries, lambda) - resolvent(worst.entries, lambda);
    return detail::spectral_norm(difference);
}

std::optional<double> geometric_difference_bound(const BoundInputs& in) {
    in.validate();
    const double z = depolarization_argument(in);
    if (z >= 1.0) return std::nullopt;
    return (z / in.lambda) / (1.0 - z);
}

BoundReport lemma2_bound(const KernelMatrix& noisy, const BoundInputs& in) {
    in.validate();
    const double m_norm =
        geometric_difference_exact(noisy, worst_kernel(noisy.size(), in.dim_D), in.lambda);
    BoundReport report;
    report.geometric_norm = m_norm;
    report.exact_m = true;
    const double lambda_m = in.lambda * m_norm;
    report.f_term = lambda_m + 8.0 * std::sqrt((1.0 + lambda_m) * m_norm);
    report.d_term = d_term_theorem1(in);
    report.delta_term = delta_term(4.0, in.delta, in.n);
    report.bound = *report.f_term + report.d_term + report.delta_term;
    report.informative = *report.bound <= kInformativeCeiling;
    return report;
}

double demarcation_layers(Eigen::Index n, double layer_rate) {
    if (n < 2) throw ConfigError("demarcation threshold needs n >= 2");
    if (!(layer_rate > 0.0 && layer_rate < 1.0))
        throw ConfigError("demarcation threshold undefined for layer rate " +
                          std::to_string(layer_rate) + " outside (0, 1)");
    return std::log(static_cast<double>(n)) / (-2.0 * std::log1p(-layer_rate));
}

const char* to_string(RegionVerdict v) {
    return v == RegionVerdict::fail_red ? "fail_red" : "uninformative_yellow";
}

const char* to_string(SampleRegime r) {
    switch (r) {
        case SampleRegime::logarithmic: return "logarithmic";
        case SampleRegime::polynomial: return "polynomial";
        case SampleRegime::exponential: return "exponential";
    }
    return "unknown";
}

RegionReport classify_region(Eigen::Index n, int num_qubits, double layer_rate, int layers_L) {
    if (num_qubits < 1) throw ConfigError("classify_region needs N >= 1");
    if (layers_L < 1) throw ConfigError("classify_region needs L >= 1");
    RegionReport report;
    report.threshold_layers = demarcation_layers(n, layer_rate);
    report.verdict = (static_cast<double>(layers_L) > report.threshold_layers)
                         ? RegionVerdict::fail_red
                         : RegionVerdict::uninformative_yellow;

    // c = 2 breakpoints: n <= c log2 N is logarithmic, n >= 2^(cN) exponential.
    constexpr double c = 2.0;
    const double log2_n = std::log2(static_cast<double>(n));
    if (static_cast<double>(n) <= c * std::log2(static_cast<double>(num_qubits)))
        report.regime = SampleRegime::logarithmic;
    else if (log2_n >= c * static_cast<double>(num_qubits))
        report.regime = SampleRegime::exponential;
    else
        report.regime = SampleRegime::polynomial;
    return report;
}

namespace detail {

double spectral_norm(const Eigen::MatrixXd& symmetric) {
    if (symmetric.rows() <= kDenseEigLimit) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(symmetric, Eigen::EigenvaluesOnly);
        if (eig.info() != Eigen::Success)
            throw NumericalError("symmetric eigendecomposition failed in spectral_norm");
        return eig.eigenvalues().cwiseAbs().maxCoeff();
    }
    return power_iteration_norm(symmetric, 1e-10, 10000);
}

double power_iteration_norm(const Eigen::MatrixXd& symmetric, double tol, int max_iters) {
    const Eigen::Index n = symmetric.rows();
    Eigen::VectorXd v = Eigen::VectorXd::Ones(n) / std::sqrt(static_cast<double>(n));
    double estimate = 0.0;
    for (int it = 0; it < max_iters; ++it) {
        Eigen::VectorXd w = symmetric * v;
        const double norm = w.norm();
        if (norm == 0.0) return 0.0;
        v = w / norm;
        if (std::abs(norm - estimate) <= tol * std::max(1.0, norm)) return norm;
        estimate = norm;
    }
    return estimate;
}

}  // namespace detail

}  // namespace qknoise
