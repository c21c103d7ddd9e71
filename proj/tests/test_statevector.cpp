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

#include <doctest.h>

#include "oracles.hpp"
#include "qknoise/statevector.hpp"

using namespace qknoise;

namespace {

double fidelity(const EncodedState& a, const EncodedState& b) {
    return std::norm(a.amplitudes.dot(b.amplitudes));
}

}  // namespace

TEST_SUITE("statevector") {

TEST_CASE("zero input embeds to the all-zeros basis state") {
    const CircuitConfig cfg{4, 1};
    const EncodedState state = embed_iqp(Eigen::VectorXd::Zero(4), cfg);
    CHECK(std::abs(state.amplitudes[0] - 1.0) < 1e-12);
    for (Eigen::Index b = 1; b < state.amplitudes.size(); ++b)
        CHECK(std::abs(state.amplitudes[b]) < 1e-12);
}

TEST_CASE("embedded states are normalized") {
    SplitMix64 stream(11);
    const CircuitConfig cfg{10, 1};
    for (int trial = 0; trial < 5; ++trial) {
        const EncodedState state = embed_iqp(testing::random_point(stream, 10), cfg);
        CHECK(std::abs(state.amplitudes.squaredNorm() - 1.0) < 1e-10);
    }
}

TEST_CASE("embedding is deterministic") {
    SplitMix64 stream(12);
    const Eigen::VectorXd x = testing::random_point(stream, 6);
    const CircuitConfig cfg{6, 1};
    const EncodedState a = embed_iqp(x, cfg);
    const EncodedState b = embed_iqp(x, cfg);
    for (Eigen::Index k = 0; k < a.amplitudes.size(); ++k)
        CHECK(a.amplitudes[k] == b.amplitudes[k]);
}

TEST_CASE("embedding rejects bad inputs") {
    CHECK_THROWS_AS(embed_iqp(Eigen::VectorXd::Zero(3), CircuitConfig{4, 1}), ConfigError);
    CHECK_THROWS_AS(embed_iqp(Eigen::VectorXd::Zero(21), CircuitConfig{21, 1}), ConfigError);
    CHECK_THROWS_AS(embed_iqp(Eigen::VectorXd::Zero(2), CircuitConfig{2, 0}), ConfigError);
}

TEST_CASE("dense oracle reproduces the basis state at zero input") {
    const CircuitConfig cfg{3, 1};
    const EncodedState state = dense_oracle_embed(Eigen::VectorXd::Zero(3), cfg);
    CHECK(std::abs(state.amplitudes[0] - 1.0) < 1e-12);
    for (Eigen::Index b = 1; b < 8; ++b) CHECK(std::abs(state.amplitudes[b]) < 1e-12);
}

TEST_CASE("dense oracle refuses N above the cost guard") {
    CHECK_THROWS_AS(dense_oracle_embed(Eigen::VectorXd::Zero(7), CircuitConfig{7, 1}),
                    ConfigError);
}

TEST_CASE("fast path matches the dense oracle entrywise up to global phase") {
    const CircuitConfig cfg{2, 1};
    Eigen::VectorXd x(2);
    x << 0.3, -0.7;
    const EncodedState fast = embed_iqp(x, cfg);
    const EncodedState dense = dense_oracle_embed(x, cfg);

    Eigen::Index pivot = 0;
    fast.amplitudes.cwiseAbs().maxCoeff(&pivot);
    const std::complex<double> phase = dense.amplitudes[pivot] / fast.amplitudes[pivot];
    CHECK(std::abs(std::abs(phase) - 1.0) < 1e-10);
    for (Eigen::Index b = 0; b < 4; ++b)
        CHECK(std::abs(dense.amplitudes[b] - phase * fast.amplitudes[b]) < 1e-10);
}

TEST_CASE("oracle equivalence holds for N up to 4") {
    SplitMix64 stream(21);
    for (int n = 1; n <= 4; ++n) {
        const CircuitConfig cfg{n, 1};
        for (int trial = 0; trial < 50; ++trial) {
            const Eigen::VectorXd x = testing::random_point(stream, n);
            const double overlap = fidelity(dense_oracle_embed(x, cfg), embed_iqp(x, cfg));
            CHECK(std::abs(overlap - 1.0) < 1e-10);
        }
    }
}

TEST_CASE("single-qubit embedding agrees with a hand-rolled 2x2 computation") {
    const CircuitConfig cfg{1, 1};
    Eigen::VectorXd x(1);
    x << 1.0;
    const EncodedState fast = embed_iqp(x, cfg);

    // theta(b) = x s + x^2 s^2 with s = +-1: theta(0) = 2, theta(1) = 0.
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    Eigen::Vector2cd psi(inv_sqrt2, inv_sqrt2);  // H |0>
    psi[0] *= std::polar(1.0, 2.0);
    Eigen::Vector2cd after_h((psi[0] + psi[1]) * inv_sqrt2, (psi[0] - psi[1]) * inv_sqrt2);
    after_h[0] *= std::polar(1.0, 2.0);

    const std::complex<double> overlap =
        after_h[0] * std::conj(fast.amplitudes[0]) + after_h[1] * std::conj(fast.amplitudes[1]);
    CHECK(std::abs(std::norm(overlap) - 1.0) < 1e-10);
}

TEST_CASE("self kernel is one and orthogonal basis states give zero") {
    const CircuitConfig cfg{1, 1};
    Eigen::VectorXd x(1);
    x << 0.4;
    const EncodedState phi = embed_iqp(x, cfg);
    CHECK(ideal_kernel(phi, phi) == doctest::Approx(1.0).epsilon(1e-12));

    EncodedState zero, one;
    zero.amplitudes = Eigen::Vector2cd(1.0, 0.0);
    one.amplitudes = Eigen::Vector2cd(0.0, 1.0);
    CHECK(ideal_kernel(zero, one) == 0.0);
}

TEST_CASE("kernel is exactly symmetric and matches the dense brute force") {
    const CircuitConfig cfg{2, 1};
    Eigen::VectorXd x(2), y(2);
    x << 0.3, -0.7;
    y << 1.1, 0.2;
    const EncodedState a = embed_iqp(x, cfg);
    const EncodedState b = embed_iqp(y, cfg);
    CHECK(ideal_kernel(a, b) == ideal_kernel(b, a));

    const double brute = fidelity(dense_oracle_embed(y, cfg), dense_oracle_embed(x, cfg));
    CHECK(ideal_kernel(a, b) == doctest::Approx(brute).epsilon(1e-10));
}

TEST_CASE("kernel rejects mismatched dimensions and corrupted values") {
    EncodedState a, b;
    a.amplitudes = Eigen::Vector2cd(1.0, 0.0);
    b.amplitudes = Eigen::VectorXcd::Zero(4);
    b.amplitudes[0] = 1.0;
    CHECK_THROWS_AS(ideal_kernel(a, b), ConfigError);

    EncodedState oversized;  // norm far above 1 escapes the clamp band
    oversized.amplitudes = Eigen::Vector2cd(1.5, 0.0);
    CHECK_THROWS_AS(ideal_kernel(oversized, oversized), NumericalError);
}

TEST_CASE("gram matrix of a single point is the 1x1 identity") {
    const CircuitConfig cfg{3, 1};
    const KernelMatrix gram = gram_matrix({Eigen::VectorXd::Constant(3, 0.2)}, cfg);
    CHECK(gram.entries.rows() == 1);
    CHECK(gram.entries(0, 0) == 1.0);
    CHECK(gram.kind == KernelKind::ideal);
    CHECK(gram.dim_D == 8);
}

TEST_CASE("duplicate points give the all-ones gram matrix") {
    const CircuitConfig cfg{3, 1};
    const Eigen::VectorXd x = Eigen::VectorXd::Constant(3, -0.4);
    const KernelMatrix gram = gram_matrix({x, x}, cfg);
    CHECK(gram.entries(0, 0) == 1.0);
    CHECK(gram.entries(1, 1) == 1.0);
    CHECK(gram.entries(0, 1) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(gram.entries(0, 1) == gram.entries(1, 0));
}

TEST_CASE("gram matrices are positive semi-definite") {
    SplitMix64 stream(31);
    const CircuitConfig cfg{3, 1};
    std::vector<FeatureVector> points;
    for (int i = 0; i < 5; ++i) points.push_back(testing::random_point(stream, 3));
    const KernelMatrix gram = gram_matrix(points, cfg);

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram.entries, Eigen::EigenvaluesOnly);
    CHECK(eig.eigenvalues().minCoeff() >= -1e-9);
}

TEST_CASE("cross gram agrees with pairwise kernels") {
    SplitMix64 stream(32);
    const CircuitConfig cfg{3, 1};
    std::vector<FeatureVector> rows, cols;
    for (int i = 0; i < 3; ++i) rows.push_back(testing::random_point(stream, 3));
    for (int j = 0; j < 4; ++j) cols.push_back(testing::random_point(stream, 3));
    const Eigen::MatrixXd block = cross_gram(rows, cols, cfg);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 4; ++j) {
            const double direct = ideal_kernel(embed_iqp(rows[i], cfg), embed_iqp(cols[j], cfg));
            CHECK(block(i, j) == doctest::Approx(direct).epsilon(1e-12));
        }
}

}  // TEST_SUITE
