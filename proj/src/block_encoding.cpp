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

#include "qgpr/block_encoding.hpp"

#include <cmath>

#include "qgpr/coherent_kernel.hpp"
#include "qgpr/errors.hpp"

namespace qgpr {

namespace {
constexpr const char* kTarget = "target";
constexpr double kMinExtractionProbability = 1e-12;
}  // namespace

AugmentedSystem augment(const Dataset& d) {
  d.validate();
  const Eigen::Index m = d.size();
  AugmentedSystem a;
  a.original_size = m;
  a.dataset.inputs.resize(m + 1, d.dimension());
  a.dataset.inputs.topRows(m) = d.inputs;
  a.dataset.inputs.row(m) = d.test_point.transpose();
  a.dataset.targets = Eigen::VectorXd::Zero(m + 1);
  a.dataset.targets.head(m) = d.targets;
  a.dataset.test_point = d.test_point;
  a.gram_prime.resize(m + 1, m + 1);
  for (Eigen::Index p = 0; p <= m; ++p)
    for (Eigen::Index q = 0; q <= m; ++q)
      a.gram_prime(p, q) =
          se_kernel(a.dataset.inputs.row(p).transpose(), a.dataset.inputs.row(q).transpose()) /
          static_cast<double>(m + 1);
  return a;
}

PurificationUnitary::PurificationUnitary(StateVector purification) : psi_(std::move(purification)) {
  const Eigen::VectorXcd& v = psi_.amplitudes();
  phase_ = std::abs(v(0)) > 0.0 ? v(0) / std::abs(v(0)) : cplx(1.0);
  Eigen::VectorXcd w = -v;
  w(0) += phase_;
  if (w.squaredNorm() > 1e-30) w_ = w / w.norm();
}

StateVector PurificationUnitary::apply(StateVector s, bool adjoint) const {
  const Layout& mine = layout();
  if (s.layout().size() < mine.size()) throw InvalidArgument("purification: state has too few registers");
  for (std::size_t r = 0; r < mine.size(); ++r)
    if (s.layout()[r].name != mine[r].name || s.layout()[r].width != mine[r].width)
      throw InvalidArgument("purification: leading registers do not match");
  const Eigen::Index dim = static_cast<Eigen::Index>(psi_.dimension());
  const Eigen::Index stride = static_cast<Eigen::Index>(s.dimension()) / dim;
  const cplx ph = adjoint ? std::conj(phase_) : phase_;
  Eigen::VectorXcd amps = s.amplitudes();
  // G = phase (I - 2 w w^dagger); the reflection is Hermitian.
  for (Eigen::Index t = 0; t < stride; ++t) {
    Eigen::Map<Eigen::VectorXcd, 0, Eigen::InnerStride<>> slice(amps.data() + t, dim, Eigen::InnerStride<>(stride));
    if (w_.size() > 0) {
      const cplx proj = w_.dot(slice);
      slice -= 2.0 * proj * w_;
    }
    slice *= ph;
  }
  return StateVector(s.layout(), std::move(amps), s.subnormalized());
}

UnitaryOp PurificationUnitary::to_unitary() const {
  if (psi_.num_qubits() > 12) throw InvalidArgument("to_unitary(): matrix would exceed 4096 dimensions");
  const Eigen::Index dim = static_cast<Eigen::Index>(psi_.dimension());
  Eigen::MatrixXcd m(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim);
    e(c) = 1.0;
    m.col(c) = apply(StateVector(layout(), e)).amplitudes();
  }
  std::vector<std::string> targets;
  for (const auto& r : layout()) targets.push_back(r.name);
  return UnitaryOp(std::move(m), std::move(targets));
}

PurificationUnitary purify_points(const Eigen::MatrixXd& points, int truncation) {
  return PurificationUnitary(training_superposition(points, truncation));
}

PurificationUnitary purify(const AugmentedSystem& a, int truncation) {
  return purify_points(a.dataset.inputs, truncation);
}

BlockEncoding::BlockEncoding(PurificationUnitary g, double error)
    : g_(std::move(g)), error_(error), target_width_(g_.layout().front().width) {
  if (g_.layout().front().name != "index") throw InvalidArgument("block encoding: first register must be 'index'");
}

Layout BlockEncoding::layout() const {
  Layout l = g_.layout();
  l.push_back({kTarget, target_width_});
  return l;
}

StateVector BlockEncoding::apply(StateVector s) const {
  s = g_.apply(std::move(s));
  s = swap_registers("index", kTarget, std::move(s));
  return g_.apply(std::move(s), /*adjoint=*/true);
}

Eigen::MatrixXcd BlockEncoding::block() const {
  const Eigen::Index d = encoded_dim();
  Eigen::MatrixXcd b(d, d);
  const Layout l = layout();
  for (Eigen::Index j = 0; j < d; ++j) {
    std::vector<std::uint64_t> values(l.size(), 0);
    values.back() = static_cast<std::uint64_t>(j);
    const StateVector out = apply(StateVector::basis(l, values));
    // Ancilla |0> occupies the first d amplitudes (target is least significant).
    b.col(j) = out.amplitudes().head(d);
  }
  return b;
}

UnitaryOp BlockEncoding::to_unitary() const {
  const Layout l = layout();
  int qubits = 0;
  for (const auto& r : l) qubits += r.width;
  if (qubits > 12) throw InvalidArgument("to_unitary(): matrix would exceed 4096 dimensions");
  const Eigen::Index dim = Eigen::Index{1} << qubits;
  Eigen::MatrixXcd m(dim, dim);
  for (Eigen::Index c = 0; c < dim; ++c) {
    Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim);
    e(c) = 1.0;
    m.col(c) = apply(StateVector(l, e)).amplitudes();
  }
  std::vector<std::string> targets;
  for (const auto& r : l) targets.push_back(r.name);
  return UnitaryOp(std::move(m), std::move(targets));
}

BlockEncoding encode_density(const PurificationUnitary& g, double error_budget) {
  return BlockEncoding(g, error_budget);
}

Extraction extract_kernel_vector(const BlockEncoding& be, std::uint64_t index) {
  if (static_cast<Eigen::Index>(index) >= be.encoded_dim())
    throw InvalidArgument("extract_kernel_vector(): index outside the encoded register");
  const Layout l = be.layout();
  std::vector<std::uint64_t> values(l.size(), 0);
  values.back() = index;
  const StateVector out = be.apply(StateVector::basis(l, values));
  const Eigen::Index d = be.encoded_dim();
  const Eigen::VectorXcd branch = out.amplitudes().head(d);
  const double p = branch.squaredNorm();
  if (p < kMinExtractionProbability)
    throw DegenerateExtraction("extraction success probability " + std::to_string(p) + " below 1e-12");
  return {StateVector({{kTarget, l.back().width}}, branch / std::sqrt(p)), p};
}

double mixed_input_success_probability(const BlockEncoding& be, Eigen::Index valid) {
  if (valid < 1 || valid > be.encoded_dim()) throw InvalidArgument("mixed_input_success_probability(): bad size");
  double total = 0.0;
  for (Eigen::Index q = 0; q < valid; ++q) total += extract_kernel_vector(be, static_cast<std::uint64_t>(q)).success_probability;
  return total / static_cast<double>(valid);
}

KernelVectorEstimate kernel_vector_from_extraction(const Extraction& e, Eigen::Index m) {
  const Eigen::VectorXcd amps = e.state.amplitudes();
  if (m < 1 || m >= amps.size()) throw InvalidArgument("kernel_vector_from_extraction(): bad size");
  const Eigen::VectorXd head = amps.head(m).real();
  return {static_cast<double>(m + 1) * std::sqrt(e.success_probability) * head, head.squaredNorm()};
}

}  // namespace qgpr
