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

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qknoise/bounds.hpp"
#include "qknoise/data.hpp"
#include "qknoise/experiment.hpp"
#include "qknoise/krr.hpp"
#include "qknoise/noise.hpp"
#include "qknoise/statevector.hpp"

namespace py = pybind11;
using namespace qknoise;

namespace {

py::dict report_to_dict(const BoundReport& r) {
    py::dict d;
    d["bound"] = r.bound;
    d["f_argument"] = r.f_argument;
    d["informative"] = r.informative;
    d["f_term"] = r.f_term;
    d["d_term"] = r.d_term;
    d["delta_term"] = r.delta_term;
    d["shot_shift"] = r.shot_shift;
    d["probability_deficit"] = r.probability_deficit;
    d["geometric_norm"] = r.geometric_norm;
    d["exact_m"] = r.exact_m;
    return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "quantum fidelity kernels under global depolarizing noise";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<DataError>(m, "DataError", PyExc_IOError);
    py::register_exception<NumericalError>(m, "NumericalError", PyExc_ArithmeticError);

    py::class_<CircuitConfig>(m, "CircuitConfig")
        .def(py::init<int, int>(), py::arg("num_qubits"), py::arg("depth_L") = 1)
        .def_readwrite("num_qubits", &CircuitConfig::num_qubits)
        .def_readwrite("depth_L", &CircuitConfig::depth_L)
        .def_readwrite("max_qubits", &CircuitConfig::max_qubits)
        .def("dim", &CircuitConfig::dim);

    py::enum_<KernelKind>(m, "KernelKind")
        .value("ideal", KernelKind::ideal)
        .value("noisy", KernelKind::noisy)
        .value("estimated", KernelKind::estimated)
        .value("worst", KernelKind::worst);

    py::class_<NoiseModel>(m, "NoiseModel")
        .def_readonly("layer_rate", &NoiseModel::layer_rate)
        .def_readonly("noisy_layers", &NoiseModel::noisy_layers)
        .def_readonly("composed_rate", &NoiseModel::composed_rate);

    py::class_<ShotConfig>(m, "ShotConfig")
        .def(py::init<std::int64_t, std::uint64_t>(), py::arg("shots"),
             py::arg("master_seed") = 0)
        .def_readwrite("shots", &ShotConfig::shots)
        .def_readwrite("master_seed", &ShotConfig::master_seed);

    py::class_<KernelMatrix>(m, "KernelMatrix")
        .def_property_readonly("entries",
                               [](const KernelMatrix& k) { return k.entries; })
        .def_readonly("kind", &KernelMatrix::kind)
        .def_readonly("dim_D", &KernelMatrix::dim_D)
        .def_property_readonly("noise",
                               [](const KernelMatrix& k) { return k.noise; })
        .def_property_readonly("composed_rate", [](const KernelMatrix& k) {
            return k.noise ? std::optional<double>(k.noise->composed_rate) : std::nullopt;
        });

    py::class_<LabeledSample>(m, "LabeledSample")
        .def(py::init([](const std::vector<Eigen::VectorXd>& points, const Eigen::VectorXd& labels) {
                 LabeledSample s{points, labels};
                 s.validate();
                 return s;
             }),
             py::arg("points"), py::arg("labels"))
        .def_readonly("points", &LabeledSample::points)
        .def_readonly("labels", &LabeledSample::labels);

    m.def(
        "embed_iqp",
        [](const Eigen::VectorXd& x, const CircuitConfig& cfg) {
            return embed_iqp(x, cfg).amplitudes;
        },
        py::arg("x"), py::arg("config"), "IQP-embedded amplitude vector of a feature vector");
    m.def(
        "dense_oracle_embed",
        [](const Eigen::VectorXd& x, const CircuitConfig& cfg) {
            return dense_oracle_embed(x, cfg).amplitudes;
        },
        py::arg("x"), py::arg("config"));
    m.def(
        "ideal_kernel",
        [](const Eigen::VectorXd& x, const Eigen::VectorXd& y, const CircuitConfig& cfg) {
            return ideal_kernel(embed_iqp(x, cfg), embed_iqp(y, cfg));
        },
        py::arg("x"), py::arg("y"), py::arg("config"), "fidelity kernel of two feature vectors");
    m.def("gram_matrix", &gram_matrix, py::arg("points"), py::arg("config"));
    m.def("cross_gram", &cross_gram, py::arg("row_points"), py::arg("col_points"),
          py::arg("config"));

    m.def("compose_depolarization", &compose_depolarization, py::arg("layer_rate"),
          py::arg("noisy_layers"));
    m.def("apply_depolarization", &apply_depolarization, py::arg("ideal"), py::arg("noise"));
    m.def("worst_kernel", &worst_kernel, py::arg("n"), py::arg("dim_D"));
    m.def("sample_estimated_kernel", &sample_estimated_kernel, py::arg("noisy"),
          py::arg("shots"));

    py::class_<RidgeModel>(m, "RidgeModel")
        .def_readonly("dual_coefficients", &RidgeModel::dual_coefficients)
        .def_readonly("lambda_", &RidgeModel::lambda)
        .def_readonly("train_kernel_kind", &RidgeModel::train_kernel_kind)
        .def_readonly("spd_fallback", &RidgeModel::spd_fallback);

    m.def("fit", &fit, py::arg("train_kernel"), py::arg("sample"), py::arg("lambda_"));
    m.def("predict", &predict, py::arg("model"), py::arg("kernel_row"));
    m.def("predict_batch", &predict_batch, py::arg("model"), py::arg("kernel_rows"));
    m.def(
        "worst_hypothesis",
        [](const LabeledSample& sample, double lambda, std::int64_t dim_D) {
            return worst_hypothesis(sample, lambda, dim_D).constant_value;
        },
        py::arg("sample"), py::arg("lambda_"), py::arg("dim_D"));
    m.def("empirical_difference", &empirical_difference, py::arg("hypothesis_a"),
          py::arg("hypothesis_b"));
    m.def("misclassification_rate", &misclassification_rate, py::arg("hypothesis_values"),
          py::arg("labels"));
    m.def("omega_star_norm", &omega_star_norm, py::arg("kernel"), py::arg("sample"),
          py::arg("lambda_"));

    py::class_<BoundInputs>(m, "BoundInputs")
        .def(py::init([](Eigen::Index n, double lambda, const NoiseModel& noise, std::int64_t dim_D,
                         double delta, std::optional<std::int64_t> shots_m) {
                 BoundInputs in{n, lambda, noise, dim_D, delta, shots_m};
                 in.validate();
                 return in;
             }),
             py::arg("n"), py::arg("lambda_"), py::arg("noise"), py::arg("dim_D"),
             py::arg("delta"), py::arg("shots_m") = std::nullopt);

    m.def("f_of_z", &f_of_z, py::arg("z"), py::arg("lambda_"));
    m.def("depolarization_argument", &depolarization_argument, py::arg("inputs"));
    m.def("theorem1_bound", [](const BoundInputs& in) { return report_to_dict(theorem1_bound(in)); },
          py::arg("inputs"));
    m.def("corollary1_bound",
          [](const BoundInputs& in) { return report_to_dict(corollary1_bound(in)); },
          py::arg("inputs"));
    m.def("theorem2_bound", [](const BoundInputs& in) { return report_to_dict(theorem2_bound(in)); },
          py::arg("inputs"));
    m.def("lemma2_bound",
          [](const KernelMatrix& noisy, const BoundInputs& in) {
              return report_to_dict(lemma2_bound(noisy, in));
          },
          py::arg("noisy"), py::arg("inputs"));
    m.def("geometric_difference_exact", &geometric_difference_exact, py::arg("noisy"),
          py::arg("worst"), py::arg("lambda_"));
    m.def("geometric_difference_bound", &geometric_difference_bound, py::arg("inputs"));
    m.def("demarcation_layers", &demarcation_layers, py::arg("n"), py::arg("layer_rate"));
    m.def(
        "classify_region",
        [](Eigen::Index n, int num_qubits, double layer_rate, int layers_L) {
            const RegionReport r = classify_region(n, num_qubits, layer_rate, layers_L);
            py::dict d;
            d["threshold_layers"] = r.threshold_layers;
            d["verdict"] = std::string(to_string(r.verdict));
            d["regime"] = std::string(to_string(r.regime));
            return d;
        },
        py::arg("n"), py::arg("num_qubits"), py::arg("layer_rate"), py::arg("layers_L"));

    py::class_<ConceptCircuit>(m, "ConceptCircuit")
        .def(py::init<std::uint64_t, int, int>(), py::arg("seed"), py::arg("layers") = 3,
             py::arg("observable_qubit") = 0)
        .def_readwrite("seed", &ConceptCircuit::seed)
        .def_readwrite("layers", &ConceptCircuit::layers)
        .def_readwrite("observable_qubit", &ConceptCircuit::observable_qubit);

    m.def("synthesize_concept_labels", &synthesize_concept_labels, py::arg("points"),
          py::arg("concept"), py::arg("config"));
    m.def("synthetic_points", &synthetic_points, py::arg("count"), py::arg("num_qubits"),
          py::arg("seed"));

    m.def(
        "run_sweep_file",
        [](const std::string& config_path, int threads) {
            const SweepResult result =
                run_sweep(ExperimentConfig::from_json_file(config_path), threads);
            return result.summary.dump();
        },
        py::arg("config_path"), py::arg("threads") = 1,
        "run the L-sweep for a config file and return the summary JSON as text");
}
