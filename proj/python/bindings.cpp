/*
 * Copyright 2026 The qgpr Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include <sstream>

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qgpr/amplitude_encoding.hpp"
#include "qgpr/classical_gpr.hpp"
#include "qgpr/cli.hpp"
#include "qgpr/coherent_kernel.hpp"
#include "qgpr/dataset_io.hpp"
#include "qgpr/errors.hpp"
#include "qgpr/pipeline.hpp"

namespace py = pybind11;
using namespace qgpr;

namespace {

Dataset make_dataset(const Eigen::MatrixXd& inputs, const Eigen::VectorXd& targets, const Eigen::VectorXd& test_point) {
  Dataset d{inputs, targets, test_point};
  d.validate();
  return d;
}

py::dict outcome_dict(const InterferenceOutcome& o) {
  py::dict d;
  d["probability"] = o.probability;
  d["signed_sum"] = o.signed_sum;
  d["constant_used"] = o.constant_used;
  if (o.shots) {
    d["shots"] = o.shots->shots;
    d["hits"] = o.shots->hits;
    d["probability_interval"] = py::make_tuple(o.shots->probability_interval.low, o.shots->probability_interval.high);
  }
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Statevector simulation of quantum Gaussian process regression";

  py::register_exception<InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);
  py::register_exception<StageError>(m, "StageError", PyExc_RuntimeError);
  py::register_exception<NumericalFailure>(m, "NumericalFailure", PyExc_ArithmeticError);

  py::class_<Dataset>(m, "Dataset")
      .def(py::init(&make_dataset), py::arg("inputs"), py::arg("targets"), py::arg("test_point"))
      .def_readonly("inputs", &Dataset::inputs)
      .def_readonly("targets", &Dataset::targets)
      .def_readonly("test_point", &Dataset::test_point)
      .def_property_readonly("size", &Dataset::size)
      .def_property_readonly("dimension", &Dataset::dimension);

  py::class_<Prediction>(m, "Prediction")
      .def_readonly("mean", &Prediction::mean)
      .def_readonly("variance", &Prediction::variance)
      .def("__repr__", [](const Prediction& p) {
        std::ostringstream os;
        os.precision(17);
        os << "Prediction(mean=" << p.mean << ", variance=" << p.variance << ")";
        return os.str();
      });

  py::class_<RunConfig>(m, "RunConfig")
      .def(py::init([](double noise_variance, int qpe_bits, std::optional<double> rotation_constant,
                       double truncation_delta, const std::string& eigenvalue_mode, const std::string& kernel_source,
                       std::uint64_t shots, std::uint64_t seed) {
             RunConfig c;
             c.noise_variance = noise_variance;
             c.qpe_bits = qpe_bits;
             c.rotation_constant = rotation_constant;
             c.truncation_delta = truncation_delta;
             c.eigenvalue_mode = parse_eigenvalue_mode(eigenvalue_mode);
             c.kernel_source = parse_kernel_source(kernel_source);
             c.shots = shots;
             c.seed = seed;
             c.validate();
             return c;
           }),
           py::arg("noise_variance") = 0.1, py::arg("qpe_bits") = 8, py::arg("rotation_constant") = py::none(),
           py::arg("truncation_delta") = 1e-6, py::arg("eigenvalue_mode") = "exact",
           py::arg("kernel_source") = "classical", py::arg("shots") = 0, py::arg("seed") = 0)
      .def_readonly("noise_variance", &RunConfig::noise_variance)
      .def_readonly("qpe_bits", &RunConfig::qpe_bits)
      .def_readonly("rotation_constant", &RunConfig::rotation_constant)
      .def_readonly("shots", &RunConfig::shots);

  m.def("load_dataset", &load_dataset, py::arg("path"));
  m.def("se_kernel", [](const Eigen::VectorXd& a, const Eigen::VectorXd& b) { return se_kernel(a, b); });
  m.def("kernel_matrix", [](const Dataset& d) { return kernel_matrix(d).gram; });
  m.def("kernel_vector", &kernel_vector);
  m.def("predict_cholesky", [](const Dataset& d, double noise) { return predict_cholesky(d, {noise}); },
        py::arg("dataset"), py::arg("noise_variance") = 0.1);
  m.def("qgpr_predict", &qgpr_predict, py::arg("dataset"), py::arg("config") = RunConfig{});
  m.def(
      "run_quantum",
      [](const Dataset& d, const RunConfig& cfg) {
        const QuantumResult q = run_quantum(d, cfg);
        py::dict out;
        out["mean"] = q.prediction.mean;
        out["variance"] = q.prediction.variance;
        out["rotation_constant"] = q.rotation_constant;
        out["evolution_time"] = q.evolution_time;
        py::dict probs;
        for (const auto& [k, v] : q.success_probabilities) probs[py::str(k)] = v;
        out["success_probabilities"] = probs;
        if (q.mean_outcome) out["mean_outcome"] = outcome_dict(*q.mean_outcome);
        if (q.variance_outcome) out["variance_outcome"] = outcome_dict(*q.variance_outcome);
        return out;
      },
      py::arg("dataset"), py::arg("config") = RunConfig{});
  m.def(
      "compare",
      [](const Dataset& d, const RunConfig& cfg) { return dump_json(report_to_json(compare(d, cfg))); },
      py::arg("dataset"), py::arg("config") = RunConfig{}, "Comparison report as a JSON string.");
  m.def(
      "encode",
      [](const Eigen::VectorXd& v) {
        const EncodedVector e = encode(v);
        return py::make_tuple(decode(e), e.success_probability, estimate_norm_sq(e));
      },
      py::arg("vector"), "Returns (unit vector, success probability, norm^2 estimate).");
  m.def("truncation_level", &truncation_level, py::arg("r"), py::arg("delta"));
  m.def("tail_bound", &tail_bound, py::arg("r"), py::arg("truncation"));
  m.def(
      "coherent_kernel",
      [](const Eigen::MatrixXd& points, double delta) {
        const int t = truncation_for_points(points, delta);
        return kernel_from_density(kernel_density(training_superposition(points, t)), points.rows());
      },
      py::arg("points"), py::arg("delta") = 1e-6, "Kernel matrix M rho from the coherent-state superposition.");
  m.def(
      "run_cli",
      [](const std::vector<std::string>& args) {
        std::ostringstream out, err;
        const int code = run_cli(args, out, err);
        return py::make_tuple(code, out.str(), err.str());
      },
      py::arg("args"));
}
