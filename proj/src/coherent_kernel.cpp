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

#include "qgpr/coherent_kernel.hpp"

#include <cmath>

#include <unsupported/Eigen/MatrixFunctions>

#include "qgpr/amplitude_encoding.hpp"
#include "qgpr/errors.hpp"

namespace qgpr {

namespace {

void check_amplitude(double r) {
  if (!std::isfinite(r) || r * r > kMaxCoherentAmplitudeSq)
    throw InvalidArgument("coherent amplitude too large (r^2 > 700)");
}

Eigen::VectorXd padded(const Eigen::VectorXd& v, Eigen::Index size) {
  Eigen::VectorXd out = Eigen::VectorXd::Zero(size);
  out.head(v.size()) = v;
  return out;
}

}  // namespace

LadderOperators::LadderOperators(int dim) : dimension(dim) {
  if (dim < 1) throw InvalidArgument("ladder operators need a positive dimension");
  annihilation = Eigen::MatrixXd::Zero(dim, dim);
  for (int n = 1; n < dim; ++n) annihilation(n - 1, n) = std::sqrt(static_cast<double>(n));
  creation = annihilation.transpose();
}

double tail_bound(double r, int truncation) {
  if (r == 0.0) return 0.0;
  return std::exp(2.0 * truncation * std::log(std::abs(r)) - std::lgamma(truncation + 1.0));
}

double exact_tail(double r, int truncation) {
  if (r == 0.0) return 0.0;
  const double r2 = r * r;
  double sum = 0.0;
  for (int k = truncation; k < truncation + 100000; ++k) {
    const double term = std::exp(-r2 + k * std::log(r2) - std::lgamma(k + 1.0));
    sum += term;
    if (k > r2 && term < sum * 1e-18) break;
  }
  return sum;
}

int truncation_level(double r, double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw InvalidArgument("truncation_level(): delta must lie in (0, 1)");
  check_amplitude(r);
  if (r == 0.0) return 1;
  const double target = 2.0 * std::log(delta);
  for (int t = 1; t < 100000; ++t)
    if (2.0 * t * std::log(std::abs(r)) - std::lgamma(t + 1.0) <= target) return t;
  throw NumericalFailure("truncation_level(): no truncation found");
}

int truncation_for_points(const Eigen::MatrixXd& points, double delta) {
  return truncation_level(points.size() == 0 ? 0.0 : points.cwiseAbs().maxCoeff(), delta);
}

TruncatedCoherentState coherent_state(double r, int truncation) {
  check_amplitude(r);
  if (truncation < 1) throw InvalidArgument("coherent_state(): truncation must be >= 1");
  Eigen::VectorXd amps(truncation);
  for (int k = 0; k < truncation; ++k) {
    if (r == 0.0) {
      amps(k) = k == 0 ? 1.0 : 0.0;
      continue;
    }
    const double mag = std::exp(-0.5 * r * r + k * std::log(std::abs(r)) - 0.5 * std::lgamma(k + 1.0));
    amps(k) = (r < 0.0 && (k % 2 == 1)) ? -mag : mag;
  }
  amps.normalize();
  const double bound = tail_bound(r, truncation);
  return {r, std::move(amps), truncation, bound, std::sqrt(bound)};
}

TruncatedCoherentState displacement_prepare(double r, int truncation) {
  check_amplitude(r);
  if (truncation < 1) throw InvalidArgument("displacement_prepare(): truncation must be >= 1");
  const LadderOperators ops(truncation + 4);
  const Eigen::MatrixXd generator = r * (ops.creation - ops.annihilation);
  const Eigen::MatrixXd displacement = generator.exp();
  Eigen::VectorXd amps = displacement.col(0).head(truncation);
  amps.normalize();
  const double bound = tail_bound(r, truncation);
  return {r, std::move(amps), truncation, bound, std::sqrt(bound)};
}

int fock_register_width(int truncation) { return qubits_for(std::max(truncation, 2)); }

StateVector encode_point(const Eigen::VectorXd& x, int truncation) {
  if (x.size() < 1) throw InvalidArgument("encode_point(): empty point");
  const int w = fock_register_width(truncation);
  const Eigen::Index dim = Eigen::Index{1} << w;
  Eigen::VectorXcd amps = Eigen::VectorXcd::Ones(1);
  Layout layout;
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    const Eigen::VectorXd phi = padded(coherent_state(x(i), truncation).fock_amplitudes, dim);
    Eigen::VectorXcd next(amps.size() * dim);
    for (Eigen::Index a = 0; a < amps.size(); ++a) next.segment(a * dim, dim) = amps(a) * phi.cast<cplx>();
    amps = std::move(next);
    layout.push_back({"fock_" + std::to_string(i), w});
  }
  return StateVector(std::move(layout), amps.normalized());
}

Eigen::MatrixXcd householder_from_zero(const Eigen::VectorXcd& v) {
  const Eigen::Index n = v.size();
  Eigen::MatrixXcd h = Eigen::MatrixXcd::Identity(n, n);
  Eigen::VectorXcd target = v.normalized();
  // Align the phase of target(0) so the reflection is well defined.
  const cplx phase = std::abs(target(0)) > 0.0 ? target(0) / std::abs(target(0)) : cplx(1.0);
  Eigen::VectorXcd e0 = Eigen::VectorXcd::Zero(n);
  e0(0) = phase;
  const Eigen::VectorXcd w = e0 - target;
  const double wn = w.squaredNorm();
  if (wn < 1e-30) return h * phase;
  h -= 2.0 * w * w.adjoint() / wn;
  // h maps e0 -> target; rescale so that |0> (not phase |0>) lands on target.
  return h * phase;
}

StateVector training_superposition(const Eigen::MatrixXd& points, int truncation) {
  const Eigen::Index m = points.rows();
  const Eigen::Index n = points.cols();
  if (m < 1 || n < 1) throw InvalidArgument("training_superposition(): need at least one point");
  const int iw = qubits_for(std::max<Eigen::Index>(m, 2));
  const int fw = fock_register_width(truncation);
  Layout layout{{"index", iw}};
  for (Eigen::Index i = 0; i < n; ++i) layout.push_back({"fock_" + std::to_string(i), fw});
  StateVector s = StateVector::zero(layout);

  if (m > 1 && (m & (m - 1)) == 0) {
    s = qft(std::move(s), "index");
  } else if (m > 1) {
    Eigen::VectorXcd uniform = Eigen::VectorXcd::Zero(Eigen::Index{1} << iw);
    uniform.head(m).setConstant(1.0 / std::sqrt(static_cast<double>(m)));
    s = apply(UnitaryOp(householder_from_zero(uniform), {"index"}), std::move(s));
  }

  const Eigen::Index fdim = Eigen::Index{1} << fw;
  for (Eigen::Index i = 0; i < n; ++i) {
    std::vector<Eigen::MatrixXcd> prep;
    prep.reserve(static_cast<std::size_t>(m));
    for (Eigen::Index p = 0; p < m; ++p) {
      const Eigen::VectorXd phi = padded(coherent_state(points(p, i), truncation).fock_amplitudes, fdim);
      prep.push_back(householder_from_zero(phi.cast<cplx>()));
    }
    s = apply_multiplexed("index", prep, {"fock_" + std::to_string(i)}, std::move(s));
  }
  return s;
}

StateVector training_superposition(const Dataset& d, int truncation) {
  d.validate();
  return training_superposition(d.inputs, truncation);
}

DensityOperator kernel_density(const StateVector& psi) { return partial_trace(psi, "index"); }

Eigen::MatrixXd kernel_from_density(const DensityOperator& rho, Eigen::Index m) {
  if (m < 1 || m > rho.dimension()) throw InvalidArgument("kernel_from_density(): invalid size");
  return static_cast<double>(m) * rho.matrix().topLeftCorner(m, m).real();
}

double kernel_entry_error_bound(const Eigen::MatrixXd& points, int truncation) {
  double b = 0.0;
  for (Eigen::Index i = 0; i < points.size(); ++i) b = std::max(b, tail_bound(points(i), truncation));
  return 2.0 * static_cast<double>(points.cols()) * std::sqrt(2.0 * b);
}

RescaledDataset rescale_inputs(const Dataset& d, double bound) {
  d.validate();
  if (!(bound > 0.0)) throw InvalidArgument("rescale_inputs(): bound must be positive");
  const double largest = std::max(d.inputs.cwiseAbs().maxCoeff(), d.test_point.cwiseAbs().maxCoeff());
  const double scale = largest > bound ? bound / largest : 1.0;
  Dataset out = d;
  out.inputs *= scale;
  out.test_point *= scale;
  return {std::move(out), scale};
}

}  // namespace qgpr
