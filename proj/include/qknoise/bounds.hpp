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

#include <optional>
#include <string>

#include "qknoise/types.hpp"

namespace qknoise {

// Everything the closed-form concentration bounds consume.
struct BoundInputs {
    Eigen::Index n = 1;        // training sample size
    double lambda = 0.5;       // ridge hyperparameter
    NoiseModel noise;          // supplies the composed rate p
    std::int64_t dim_D = 2;    // 2^N
    double delta = 0.01;       // confidence level
    std::optional<std::int64_t> shots_m;

    void validate() const {
        if (n < 1) throw ConfigError("bound inputs need n >= 1");
        if (!(lambda > 0.0)) throw ConfigError("bound inputs need lambda > 0");
        if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("delta must lie in (0, 1)");
        if (dim_D < 2) throw ConfigError("bound inputs need D >= 2");
        if (shots_m && *shots_m < 1) throw ConfigError("shots m must be >= 1");
    }
};

// Evaluated right-hand side of one bound. An empty `bound` means the f-pole
// made the statement vacuous ("uninformative"). The bounded quantity lives in
// [0, 2], so a finite bound is only called informative when it is <= 2 and
// the f-argument, when present, is < 1.
struct BoundReport {
    std::optional<double> bound;
    std::optional<double> f_argument;
    bool informative = false;

    // term breakdown
    std::optional<double> f_term;
    double d_term = 0.0;
    double delta_term = 0.0;
    std::optional<double> shot_shift;           // added to the f-argument (shots)
    std::optional<double> probability_deficit;  // n * exp(-lambda^2 m / 4n)
    std::optional<double> geometric_norm;       // exact ||M||_2 when used
    bool exact_m = false;
};

// f(z) = (z + 8 sqrt(z / lambda)) / (1 - z) for z in [0, 1); empty at the
// pole z >= 1. Negative z is an error.
std::optional<double> f_of_z(double z, double lambda);

// Argument of f in the noise bounds: z = (n / lambda)(1 - p)(1 + 1/D).
double depolarization_argument(const BoundInputs& in);

// Expected |h~ - h_bar| bound:
// f(z) + 8 sqrt(D n)/(D lambda + n) + 6 sqrt(log(4/delta) / (2n)).
BoundReport theorem1_bound(const BoundInputs& in);

// Balanced-label refinement: the D-term becomes
// 8 sqrt(2 D log(4/delta))/(D lambda + n) and the confidence term
// 6 sqrt(log(8/delta) / (2n)).
BoundReport corollary1_bound(const BoundInputs& in);

// Finite-shot bound: f evaluated at
// z + (n / lambda) sqrt(log(4 n^2 / delta) / (2m)), with the confidence term
// 6 sqrt(log(8/delta) / (2n)) and success probability
// 1 - delta - n exp(-lambda^2 m / 4n); the deficit is reported in the
// breakdown.
BoundReport theorem2_bound(const BoundInputs& in);

// Exact geometric difference
// ||M||_2 = ||(K~ + lambda I)^{-1} - (K_bar + lambda I)^{-1}||_2
// by symmetric eigendecomposition up to n = 2000, power iteration beyond.
double geometric_difference_exact(const KernelMatrix& noisy, const KernelMatrix& worst,
                                  double lambda);

// Closed-form bound on ||M||_2:
// (n / lambda^2)(1 - p)(1 + 1/D) / (1 - z); empty when the denominator is
// not positive.
std::optional<double> geometric_difference_bound(const BoundInputs& in);

// Bound with the exact ||M||_2 in place of its closed form:
// lambda ||M|| + 8 sqrt((1 + lambda ||M||) ||M||)
//   + 8 sqrt(D n)/(D lambda + n) + 6 sqrt(log(4/delta) / (2n)).
// Always finite.
BoundReport lemma2_bound(const KernelMatrix& noisy, const BoundInputs& in);

// Layer threshold L* = ln(n) / ln((1 - layer_rate)^{-2}) past which the
// prediction collapses onto the worst hypothesis.
double demarcation_layers(Eigen::Index n, double layer_rate);

enum class RegionVerdict { fail_red, uninformative_yellow };
enum class SampleRegime { logarithmic, polynomial, exponential };

const char* to_string(RegionVerdict v);
const char* to_string(SampleRegime r);

struct RegionReport {
    double threshold_layers = 0.0;
    RegionVerdict verdict = RegionVerdict::uninformative_yellow;
    SampleRegime regime = SampleRegime::polynomial;  // presentation metadata only
};

// fail_red iff L > demarcation_layers(n, layer_rate). The regime label
// classifies n against log(N) / 2^N breakpoints with c = 2 and does not
// affect the verdict.
RegionReport classify_region(Eigen::Index n, int num_qubits, double layer_rate, int layers_L);

namespace detail {
// Spectral norm of a symmetric matrix; eigendecomposition for n <= 2000,
// power iteration (tol 1e-10, 10^4 iteration cap) beyond.
double spectral_norm(const Eigen::MatrixXd& symmetric);
double power_iteration_norm(const Eigen::MatrixXd& symmetric, double tol, int max_iters);
}  // namespace detail

}  // namespace qknoise
