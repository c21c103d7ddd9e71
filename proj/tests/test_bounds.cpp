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
#include "qknoise/bounds.hpp"
#include "qknoise/krr.hpp"
#include "qknoise/noise.hpp"
#include "qknoise/statevector.hpp"

using namespace qknoise;

namespace {

// n = 500, lambda = 0.5, p~ = 0.1, N = 10, delta = 0.01
BoundInputs reference_inputs(int layers_L) {
    return BoundInputs{500, 0.5, compose_depolarization(0.1, layers_L), 1024, 0.01,
                       std::nullopt};
}

KernelMatrix random_noisy_instance(SplitMix64& stream, int n, int num_qubits, double rate,
                                   int layers) {
    std::vector<FeatureVector> points;
    for (int i = 0; i < n; ++i) points.push_back(testing::random_point(stream, num_qubits));
    const KernelMatrix ideal = gram_matrix(points, CircuitConfig{num_qubits, 1});
    return apply_depolarization(ideal, compose_depolarization(rate, layers));
}

}  // namespace

TEST_SUITE("bounds") {

TEST_CASE("f at zero, at the pole, and at a closed-form point") {
    CHECK(f_of_z(0.0, 0.5).value() == 0.0);
    CHECK_FALSE(f_of_z(1.0, 0.5).has_value());
    CHECK_FALSE(f_of_z(3.2, 0.5).has_value());
    CHECK(f_of_z(0.5, 0.5).value() == doctest::Approx(17.0).epsilon(1e-12));
    CHECK_THROWS_AS(f_of_z(-0.1, 0.5), ConfigError);
}

TEST_CASE("theorem 1 at the fully depolarized endpoint") {
    BoundInputs in = reference_inputs(1);
    in.noise.composed_rate = 1.0;
    const BoundReport report = theorem1_bound(in);
    CHECK(report.f_argument.value() == 0.0);
    CHECK(report.f_term.value() == 0.0);
    CHECK(report.bound.value() ==
          doctest::Approx(report.d_term + report.delta_term).epsilon(1e-15));
}

TEST_CASE("theorem 1 regression fixture at the reference configuration, L = 40") {
    const BoundReport report = theorem1_bound(reference_inputs(40));
    CHECK(report.f_argument.value() == doctest::Approx(0.21868785453281438).epsilon(1e-12));
    CHECK(report.f_term.value() == doctest::Approx(7.0515207197448645).epsilon(1e-12));
    CHECK(report.d_term == doctest::Approx(5.6564565438729858).epsilon(1e-12));
    CHECK(report.delta_term == doctest::Approx(0.46442730722459392).epsilon(1e-12));
    CHECK(report.bound.value() == doctest::Approx(13.172404570842444).epsilon(1e-12));
    CHECK_FALSE(report.informative);  // finite but far above the [0, 2] range
}

TEST_CASE("theorem 1 is uninformative at shallow depth") {
    const BoundReport report = theorem1_bound(reference_inputs(8));
    CHECK(report.f_argument.value() > 1.0);
    CHECK_FALSE(report.bound.has_value());
    CHECK_FALSE(report.informative);
}

TEST_CASE("corollary 1 tightens the D-term for large n") {
    const BoundInputs in = reference_inputs(40);
    const BoundReport t1 = theorem1_bound(in);
    const BoundReport c1 = corollary1_bound(in);
    CHECK(c1.d_term == doctest::Approx(0.87567096036795464).epsilon(1e-12));
    CHECK(c1.d_term < t1.d_term);  // holds whenever n > 2 log(4/delta)
    CHECK(c1.delta_term == doctest::Approx(0.49055684909706987).epsilon(1e-12));

    BoundInputs depolarized = in;
    depolarized.noise.composed_rate = 1.0;
    CHECK(corollary1_bound(depolarized).f_term.value() == 0.0);

    BoundInputs loose = in;
    loose.delta = 0.999;
    const double expected =
        6.0 * std::sqrt(std::log(8.0 / 0.999) / (2.0 * 500.0));
    CHECK(corollary1_bound(loose).delta_term == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("theorem 2 shot arithmetic") {
    BoundInputs in = reference_inputs(40);
    in.shots_m = 500 * 500;
    const BoundReport report = theorem2_bound(in);
    CHECK(report.shot_shift.value() == doctest::Approx(6.0697085175405854).epsilon(1e-12));
    CHECK(report.f_argument.value() ==
          doctest::Approx(0.21868785453281438 + 6.0697085175405854).epsilon(1e-12));
    CHECK_FALSE(report.bound.has_value());  // the shifted argument is past the pole

    BoundInputs tiny = in;
    tiny.shots_m = 1;
    const BoundReport small = theorem2_bound(tiny);
    CHECK(small.probability_deficit.value() > 0.99 * 500.0);  // near-certain failure

    BoundInputs missing = reference_inputs(40);
    CHECK_THROWS_AS(theorem2_bound(missing), ConfigError);
}

TEST_CASE("theorem 2 regression fixture at m = 1e12 and its true limit") {
    BoundInputs in = reference_inputs(40);
    in.shots_m = std::int64_t{1000000000000};
    const BoundReport t2 = theorem2_bound(in);
    const BoundReport t1 = theorem1_bound(reference_inputs(40));
    CHECK(t2.bound.value() == doctest::Approx(13.276938127271013).epsilon(1e-12));
    CHECK(t2.bound.value() - t1.bound.value() ==
          doctest::Approx(0.10453355642856901).epsilon(1e-9));

    // As m grows the displayed forms converge to theorem 1 plus the constant
    // confidence-term gap log(8/delta) vs log(4/delta).
    BoundInputs huge = in;
    huge.shots_m = std::int64_t{1000000000000000000};
    const double gap = theorem2_bound(huge).bound.value() - t1.bound.value();
    CHECK(gap == doctest::Approx(0.026129541872475949).epsilon(1e-2));
    CHECK(gap < 0.027);
}

TEST_CASE("theorem 2 is nonincreasing in the shot count") {
    double previous = std::numeric_limits<double>::infinity();
    for (const std::int64_t m : {std::int64_t{100000000}, std::int64_t{10000000000},
                                 std::int64_t{1000000000000}, std::int64_t{100000000000000}}) {
        BoundInputs in = reference_inputs(40);
        in.shots_m = m;
        const BoundReport report = theorem2_bound(in);
        REQUIRE(report.bound.has_value());
        CHECK(report.bound.value() <= previous + 1e-12);
        previous = report.bound.value();
    }
}

TEST_CASE("theorem 1 f-term is nonincreasing in the depolarization rate") {
    double previous = std::numeric_limits<double>::infinity();
    for (const double p : {0.9995, 0.9999, 0.99999, 1.0}) {
        BoundInputs in = reference_inputs(1);
        in.noise.composed_rate = p;
        const BoundReport report = theorem1_bound(in);
        REQUIRE(report.f_term.has_value());
        CHECK(report.f_term.value() <= previous + 1e-12);
        previous = report.f_term.value();
    }
}

TEST_CASE("geometric difference vanishes when the kernels coincide") {
    const KernelMatrix flat = worst_kernel(6, 16);
    KernelMatrix noisy_flat = flat;
    noisy_flat.kind = KernelKind::noisy;
    CHECK(geometric_difference_exact(noisy_flat, flat, 0.5) <= 1e-14);
}

TEST_CASE("worst-kernel resolvent has spectral norm 1/lambda") {
    const double lambda = 0.5;
    const KernelMatrix flat = worst_kernel(9, 32);
    Eigen::MatrixXd system = flat.entries;
    system.diagonal().array() += lambda;
    const Eigen::MatrixXd inverse = system.inverse();
    CHECK(detail::spectral_norm(inverse) == doctest::Approx(1.0 / lambda).epsilon(1e-10));
}

TEST_CASE("exact geometric difference obeys the closed-form bound") {
    SplitMix64 stream(61);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 4 + static_cast<int>(stream.next_below(12));
        const int qubits = 4 + static_cast<int>(stream.next_below(3));
        const double rate = 0.05 + 0.3 * stream.next_unit();
        const int layers = 20 + static_cast<int>(stream.next_below(40));
        const KernelMatrix noisy = random_noisy_instance(stream, n, qubits, rate, layers);

        BoundInputs in{n, 0.5, *noisy.noise, noisy.dim_D, 0.01, std::nullopt};
        const auto closed_form = geometric_difference_bound(in);
        if (!closed_form) continue;
        const double exact =
            geometric_difference_exact(noisy, worst_kernel(n, noisy.dim_D), in.lambda);
        CHECK(exact <= *closed_form + 1e-10);
    }
}

TEST_CASE("geometric bound endpoints") {
    BoundInputs in = reference_inputs(40);
    CHECK(geometric_difference_bound(in).value() ==
          doctest::Approx(0.55979637793048763).epsilon(1e-12));

    in.noise.composed_rate = 1.0;
    CHECK(geometric_difference_bound(in).value() == 0.0);

    CHECK_FALSE(geometric_difference_bound(reference_inputs(8)).has_value());
}

TEST_CASE("lemma 2 collapses to the tail terms at p = 1") {
    const Eigen::Index n = 6;
    BoundInputs in{n, 0.5, compose_depolarization(0.1, 1), 16, 0.05, std::nullopt};
    in.noise.composed_rate = 1.0;
    KernelMatrix depolarized = worst_kernel(n, 16);
    depolarized.kind = KernelKind::noisy;
    const BoundReport report = lemma2_bound(depolarized, in);
    CHECK(report.geometric_norm.value() <= 1e-12);
    CHECK(report.exact_m);
    CHECK(report.bound.value() ==
          doctest::Approx(report.d_term + report.delta_term).epsilon(1e-9));
}

TEST_CASE("lemma 2 matches an independent scalar evaluation on a small instance") {
    SplitMix64 stream(62);
    const KernelMatrix noisy = random_noisy_instance(stream, 4, 3, 0.2, 3);
    BoundInputs in{4, 0.5, *noisy.noise, noisy.dim_D, 0.05, std::nullopt};
    const BoundReport report = lemma2_bound(noisy, in);

    // independent route: LU inverses and an SVD for the spectral norm
    Eigen::MatrixXd a = noisy.entries;
    a.diagonal().array() += in.lambda;
    Eigen::MatrixXd b = worst_kernel(4, noisy.dim_D).entries;
    b.diagonal().array() += in.lambda;
    const Eigen::MatrixXd difference = a.inverse() - b.inverse();
    const double m_norm = difference.jacobiSvd().singularValues().maxCoeff();
    const double n_d = 4.0, big_d = static_cast<double>(noisy.dim_D);
    const double expected = in.lambda * m_norm +
                            8.0 * std::sqrt((1.0 + in.lambda * m_norm) * m_norm) +
                            8.0 * std::sqrt(big_d * n_d) / (big_d * in.lambda + n_d) +
                            6.0 * std::sqrt(std::log(4.0 / in.delta) / (2.0 * n_d));
    CHECK(report.bound.value() == doctest::Approx(expected).epsilon(1e-10));
    CHECK(report.geometric_norm.value() == doctest::Approx(m_norm).epsilon(1e-8));
}

TEST_CASE("lemma 2 refines theorem 1 whenever theorem 1 is informative") {
    SplitMix64 stream(63);
    int informative_seen = 0;
    for (int trial = 0; trial < 40; ++trial) {
        const int n = 3 + static_cast<int>(stream.next_below(10));
        const int qubits = 5;
        const double rate = 0.05 + 0.3 * stream.next_unit();
        const int layers = 25 + static_cast<int>(stream.next_below(35));
        const KernelMatrix noisy = random_noisy_instance(stream, n, qubits, rate, layers);
        BoundInputs in{n, 0.5, *noisy.noise, noisy.dim_D, 0.05, std::nullopt};
        const BoundReport t1 = theorem1_bound(in);
        if (!t1.bound) continue;
        ++informative_seen;
        const BoundReport l2 = lemma2_bound(noisy, in);
        CHECK(l2.bound.value() <= t1.bound.value() + 1e-10);
    }
    CHECK(informative_seen > 5);
}

TEST_CASE("expected-difference containment holds on held-out test sets") {
    // The bounded quantity is the test-set mean |h~ - h_bar|. With D = 2^15
    // and n = 50 the right-hand side is informative (about 1.90 <= 2), and it
    // must contain the measured mean in at least 95 of 100 seeded trials.
    const int n = 50, n_test = 10, qubits = 15, layers = 80;
    const double lambda = 0.5, delta = 0.05, rate = 0.1;
    const CircuitConfig cfg{qubits, layers};
    const NoiseModel nm = compose_depolarization(rate, layers);
    BoundInputs in{n, lambda, nm, std::int64_t{1} << qubits, delta, std::nullopt};
    const BoundReport t1 = theorem1_bound(in);
    REQUIRE(t1.informative);

    int contained = 0;
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        SplitMix64 stream(seed);
        std::vector<FeatureVector> train_points, test_points;
        for (int i = 0; i < n; ++i) train_points.push_back(testing::random_point(stream, qubits));
        for (int i = 0; i < n_test; ++i)
            test_points.push_back(testing::random_point(stream, qubits));

        const KernelMatrix ideal = gram_matrix(train_points, cfg);
        const KernelMatrix noisy = apply_depolarization(ideal, nm);
        const Eigen::MatrixXd test_rows = apply_depolarization_rows(
            cross_gram(test_points, train_points, cfg), nm, ideal.dim_D);

        LabeledSample sample;
        sample.points = train_points;
        sample.labels = testing::random_pm1_labels(stream, n);
        const RidgeModel model = fit(noisy, sample, lambda);
        const double h_bar = worst_hypothesis(sample, lambda, ideal.dim_D).constant_value;
        const Eigen::VectorXd h_test = predict_batch(model, test_rows);
        const double mean_distance =
            (h_test.array() - h_bar).abs().mean();
        if (mean_distance <= t1.bound.value()) ++contained;
    }
    CHECK(contained >= 95);
}

TEST_CASE("power iteration agrees with the dense eigensolver") {
    SplitMix64 stream(64);
    const Eigen::MatrixXd symmetric = testing::random_spd(stream, 40, 0.0) -
                                      0.7 * Eigen::MatrixXd::Identity(40, 40);
    const double dense = detail::spectral_norm(symmetric);
    const double iterative = detail::power_iteration_norm(symmetric, 1e-12, 20000);
    CHECK(iterative == doctest::Approx(dense).epsilon(1e-7));
}

TEST_CASE("demarcation threshold fixtures and errors") {
    CHECK(demarcation_layers(500, 0.1) == doctest::Approx(29.492111250693957).epsilon(1e-12));
    CHECK(demarcation_layers(1 << 20, 0.01) ==
          doctest::Approx(689.67563936528493).epsilon(1e-12));

    // inversion: n = (1 - rate)^{-2} makes the threshold exactly one layer;
    // rate = 1 - 1/sqrt(2) gives n = 2
    CHECK(demarcation_layers(2, 1.0 - 1.0 / std::sqrt(2.0)) ==
          doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(demarcation_layers(1, 0.1), ConfigError);
    CHECK_THROWS_AS(demarcation_layers(500, 0.0), ConfigError);
    CHECK_THROWS_AS(demarcation_layers(500, 1.0), ConfigError);
}

TEST_CASE("region verdicts flip exactly at the threshold") {
    const RegionReport fail = classify_region(500, 10, 0.1, 40);
    CHECK(fail.verdict == RegionVerdict::fail_red);
    CHECK(fail.threshold_layers == doctest::Approx(29.492111250693957).epsilon(1e-12));

    CHECK(classify_region(500, 10, 0.1, 29).verdict == RegionVerdict::uninformative_yellow);
    CHECK(classify_region(500, 10, 0.1, 30).verdict == RegionVerdict::fail_red);
    CHECK(classify_region(1 << 20, 10, 0.1, 1).verdict == RegionVerdict::uninformative_yellow);
}

TEST_CASE("regime labels follow the c = 2 breakpoints") {
    // n = ceil(log2 N) with N = 16 is logarithmic; deep circuits still fail
    const RegionReport log_regime = classify_region(4, 16, 0.4, 5);
    CHECK(log_regime.regime == SampleRegime::logarithmic);
    CHECK(log_regime.verdict == RegionVerdict::fail_red);

    CHECK(classify_region(500, 10, 0.1, 10).regime == SampleRegime::polynomial);
    CHECK(classify_region(256, 4, 0.1, 10).regime == SampleRegime::exponential);
}

}  // TEST_SUITE
