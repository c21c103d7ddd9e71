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

#include "qknoise/statevector.hpp"

#include <bit>
#include <cmath>
#include <complex>

namespace qknoise {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;
constexpr double kClampTol = 1e-12;

void check_point(const FeatureVector& x, const CircuitConfig& cfg) {
    cfg.validate();
    if (x.size() != cfg.num_qubits)
        throw ConfigError("feature vector of length " + std::to_string(x.size()) +
                          " fed to a " + std::to_string(cfg.num_qubits) + "-qubit circuit");
}

// s_i(b) = (-1)^{bit i of b}. The embedding phase collapses to t + t^2 with
// t(b) = sum_i x_i s_i(b), since the full double sum equals t^2.
Eigen::VectorXd sign_weighted_sums(const FeatureVector& x, std::int64_t dim) {
    Eigen::VectorXd t(dim);
    t[0] = x.sum();
    for (std::int64_t b = 1; b < dim; ++b) {
        const int lowest = std::countr_zero(static_cast<std::uint64_t>(b));
        t[b] = t[b & (b - 1)] - 2.0 * x[lowest];
    }
    return t;
}

}  // namespace

void fwht(Eigen::VectorXcd& state) {
    const Eigen::Index dim = state.size();
    for (Eigen::Index h = 1; h < dim; h <<= 1) {
        for (Eigen::Index start = 0; start < dim; start += h << 1) {
            for (Eigen::Index k = start; k < start + h; ++k) {
                const std::complex<double> a = state[k];
                const std::complex<double> b = state[k + h];
                state[k] = (a + b) * kInvSqrt2;
                state[k + h] = (a - b) * kInvSqrt2;
            }
        }
    }
}

EncodedState embed_iqp(const FeatureVector& x, const CircuitConfig& cfg) {
    check_point(x, cfg);
    const std::int64_t dim = cfg.dim();

    const Eigen::VectorXd t = sign_weighted_sums(x, dim);
    Eigen::VectorXcd phase(dim);
    for (std::int64_t b = 0; b < dim; ++b) {
        const double theta = t[b] + t[b] * t[b];
        phase[b] = std::complex<double>(std::cos(theta), std::sin(theta));
    }

    Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(dim);
    amps[0] = 1.0;
    fwht(amps);
    amps.array() *= phase.array();
    fwht(amps);
    amps.array() *= phase.array();

    return EncodedState{std::move(amps), x};
}

EncodedState dense_oracle_embed(const FeatureVector& x, const CircuitConfig& cfg) {
    check_point(x, cfg);
    if (cfg.num_qubits > 6)
        throw ConfigError("dense_oracle_embed refused for N > 6 (cost guard)");
    const std::int64_t dim = cfg.dim();
    const int n = cfg.num_qubits;

    // H^N with qubit 0 on the least-significant index bit: each new factor
    // goes on the high side of the Kronecker product.
    Eigen::MatrixXcd hn = Eigen::MatrixXcd::Ones(1, 1);
    Eigen::Matrix2cd h1;
    h1 << kInvSqrt2, kInvSqrt2, kInvSqrt2, -kInvSqrt2;
    for (int q = 0; q < n; ++q) {
        Eigen::MatrixXcd next(hn.rows() * 2, hn.cols() * 2);
        next.topLeftCorner(hn.rows(), hn.cols()) = h1(0, 0) * hn;
        next.topRightCorner(hn.rows(), hn.cols()) = h1(0, 1) * hn;
        next.bottomLeftCorner(hn.rows(), hn.cols()) = h1(1, 0) * hn;
        next.bottomRightCorner(hn.rows(), hn.cols()) = h1(1, 1) * hn;
        hn = std::move(next);
    }

    // U_Z from the literal double sum, independent of the fast path's
    // algebraic shortcut.
    Eigen::MatrixXcd uz = Eigen::MatrixXcd::Zero(dim, dim);
    for (std::int64_t b = 0; b < dim; ++b) {
        double theta = 0.0;
        for (int i = 0; i < n; ++i) {
            const double si = ((b >> i) & 1) ? -1.0 : 1.0;
            theta += x[i] * si;
            for (int j = 0; j < n; ++j) {
                const double sj = ((b >> j) & 1) ? -1.0 : 1.0;
                theta += x[i] * x[j] * si * sj;
            }
        }
        uz(b, b) = std::complex<double>(std::cos(theta), std::sin(theta));
    }

    const Eigen::MatrixXcd full = uz * hn * uz * hn;
    Eigen::VectorXcd amps = full.col(0);
    return EncodedState{std::move(amps), x};
}

namespace detail {
double clamp_unit_interval(double value) {
    if (value < 0.0) {
        if (value >= -kClampTol) return 0.0;
        throw NumericalError("kernel value " + std::to_string(value) +
                             " below 0 beyond the rounding tolerance");
    }
    if (value > 1.0) {
        if (value <= 1.0 + kClampTol) return 1.0;
        throw NumericalError("kernel value " + std::to_string(value) +
                             " above 1 beyond the rounding tolerance");
    }
    return value;
}
}  // namespace detail

double ideal_kernel(const EncodedState& a, const EncodedState& b) {
    if (a.amplitudes.size() != b.amplitudes.size())
        throw ConfigError("kernel of states with mismatched dimensions " +
                          std::to_string(a.amplitudes.size()) + " and " +
                          std::to_string(b.amplitudes.size()));
    const std::complex<double> overlap = a.amplitudes.dot(b.amplitudes);
    return detail::clamp_unit_interval(std::norm(overlap));
}

KernelMatrix gram_matrix(const std::vector<FeatureVector>& points, const CircuitConfig& cfg) {
    if (points.empty()) throw ConfigError("gram_matrix needs at least one point");
    const Eigen::Index n = static_cast<Eigen::Index>(points.size());
    const std::int64_t dim = cfg.dim();

    Eigen::MatrixXcd phi(n, dim);
    for (Eigen::Index i = 0; i < n; ++i) {
        if (points[i].size() != points[0].size())
            throw ConfigError("gram_matrix points have mixed dimensions");
        phi.row(i) = embed_iqp(points[i], cfg).amplitudes;
    }

    const Eigen::MatrixXcd overlaps = phi.conjugate() * phi.transpose();

    KernelMatrix out;
    out.entries.resize(n, n);
    out.kind = KernelKind::ideal;
    out.dim_D = dim;
    for (Eigen::Index i = 0; i < n; ++i) {
        out.entries(i, i) = 1.0;  // self-fidelity of a normalized state
        for (Eigen::Index j = i + 1; j < n; ++j) {
            const double k = detail::clamp_unit_interval(std::norm(overlaps(i, j)));
            out.entries(i, j) = k;
            out.entries(j, i) = k;
        }
    }
    return out;
}

Eigen::MatrixXd cross_gram(const std::vector<FeatureVector>& row_points,
                           const std::vector<FeatureVector>& col_points,
                           const CircuitConfig& cfg) {
    if (row_points.empty() || col_points.empty())
        throw ConfigError("cross_gram needs nonempty point lists");
    const Eigen::Index nr = static_cast<Eigen::Index>(row_points.size());
    const Eigen::Index nc = static_cast<Eigen::Index>(col_points.size());
    const std::int64_t dim = cfg.dim();

    Eigen::MatrixXcd rows(nr, dim), cols(nc, dim);
    for (Eigen::Index i = 0; i < nr; ++i) rows.row(i) = embed_iqp(row_points[i], cfg).amplitudes;
    for (Eigen::Index j = 0; j < nc; ++j) cols.row(j) = embed_iqp(col_points[j], cfg).amplitudes;

    const Eigen::MatrixXcd overlaps = rows.conjugate() * cols.transpose();
    Eigen::MatrixXd out(nr, nc);
    for (Eigen::Index i = 0; i < nr; ++i)
        for (Eigen::Index j = 0; j < nc; ++j)
            out(i, j) = detail::clamp_unit_interval(std::norm(overlaps(i, j)));
    return out;
}

void apply_single_qubit(Eigen::VectorXcd& state, int qubit, const Eigen::Matrix2cd& gate) {
    const Eigen::Index dim = state.size();
    const Eigen::Index stride = Eigen::Index{1} << qubit;
    for (Eigen::Index base = 0; base < dim; base += stride << 1) {
        for (Eigen::Index k = base; k < base + stride; ++k) {
            const std::complex<double> a0 = state[k];
            const std::complex<double> a1 = state[k + stride];
            state[k] = gate(0, 0) * a0 + gate(0, 1) * a1;
            state[k + stride] = gate(1, 0) * a0 + gate(1, 1) * a1;
        }
    }
}

void apply_cz(Eigen::VectorXcd& state, int qubit_a, int qubit_b) {
    const Eigen::Index dim = state.size();
    const Eigen::Index mask =
        (Eigen::Index{1} << qubit_a) | (Eigen::Index{1} << qubit_b);
    for (Eigen::Index b = 0; b < dim; ++b)
        if ((b & mask) == mask) state[b] = -state[b];
}

}  // namespace qknoise
