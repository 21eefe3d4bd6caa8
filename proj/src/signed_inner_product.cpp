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

#include "qgpr/signed_inner_product.hpp"

#include <algorithm>
#include <cmath>

#include "qgpr/errors.hpp"

namespace qgpr {

namespace {

constexpr const char* kCtrl = "ctrl";   // register 1
constexpr const char* kAnc = "anc";     // register 2
constexpr const char* kSel = "sel";     // register 3
constexpr const char* kSys = "system";  // register 4
constexpr const char* kEig = "eigen";
constexpr const char* kFlag = "flag";   // register 5

Eigen::VectorXcd single_register(const StateVector& s, int width, const char* what) {
  if (s.layout().size() != 1) throw InvalidArgument(std::string(what) + " must be a single-register state");
  if (s.layout()[0].width != width)
    throw InvalidArgument(std::string(what) + " register width does not match the inversion unitary");
  if (s.subnormalized()) throw InvalidArgument(std::string(what) + " must be normalized");
  return s.amplitudes();
}

InversionRegisters circuit_registers() { return {kSys, kEig, kFlag}; }

// Layout (system, [eigen], flag) with |v>|0>|flag>.
Eigen::VectorXcd embed(const Eigen::VectorXcd& v, int eigen_width, int flag) {
  const Eigen::Index stride = Eigen::Index{1} << (eigen_width + 1);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(v.size() * stride);
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i * stride + flag) = v(i);
  return out;
}

InterferenceOutcome run_circuit(const InversionUnitary& u, const Eigen::VectorXcd& k, const Eigen::VectorXcd& y,
                                InterferenceMode mode, const Sampling& sampling) {
  const int ew = u.eigen_width();
  Layout layout{{kCtrl, 1}, {kAnc, 1}, {kSel, 1}, {kSys, u.system_width()}};
  if (ew > 0) layout.push_back({kEig, ew});
  layout.push_back({kFlag, 1});

  // |0>_1 |0>_2 (|0>_3 |k>_4 + |1>_3 |y>_4) |0>_5 / sqrt(2); registers 1 and 2
  // are the leading zero bits, so the amplitudes are a plain concatenation.
  const Eigen::VectorXcd k_part = embed(k, ew, 0);
  const Eigen::VectorXcd y_part = embed(y, ew, 0);
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(k_part.size() * 8);
  amps.segment(0, k_part.size()) = k_part / std::sqrt(2.0);
  amps.segment(k_part.size(), y_part.size()) = y_part / std::sqrt(2.0);
  StateVector s(layout, std::move(amps));

  // Step 1: controlled-U on |0>_3, controlled-X on the flag for |1>_3.
  s = u.apply(std::move(s), circuit_registers(), {{kSel, 0}});
  s = apply_multiplexed("", {gates::pauli_x()}, {kFlag}, std::move(s), {{kSel, 1}});
  // Step 2: H on register 1; X then H on register 2.
  s = apply_each_qubit(gates::hadamard(), kCtrl, std::move(s));
  s = apply_each_qubit(gates::pauli_x(), kAnc, std::move(s));
  s = apply_each_qubit(gates::hadamard(), kAnc, std::move(s));
  // Step 3: swap registers 2 and 3 when register 1 is |1>.
  s = swap_registers(kAnc, kSel, std::move(s), {{kCtrl, 1}});

  InterferenceOutcome o;
  o.mode = mode;
  o.constant_used = u.rotation_constant();
  if (sampling.shots == 0) {
    Eigen::MatrixXcd minus(2, 2);
    minus << 0.5, -0.5, -0.5, 0.5;
    o.probability = 2.0 * measure_probability(s, kCtrl, minus);
  } else {
    // Measuring in the |+>, |-> basis: rotate by H, read outcome 1 as |->.
    const StateVector rotated = apply_each_qubit(gates::hadamard(), kCtrl, std::move(s));
    const auto counts = sample_shots(rotated, kCtrl, sampling.shots, sampling.seed);
    const auto it = counts.find(1);
    const std::uint64_t hits = it == counts.end() ? 0 : it->second;
    const Interval raw = wilson_interval(hits, sampling.shots, sampling.wilson_z);
    o.probability = 2.0 * static_cast<double>(hits) / static_cast<double>(sampling.shots);
    o.shots = ShotRecord{sampling.shots, hits, {2.0 * raw.low, 2.0 * raw.high}};
  }
  o.probability = std::clamp(o.probability, 0.0, 1.0);
  o.signed_sum = 2.0 * o.probability - 1.0;
  return o;
}

}  // namespace

Interval wilson_interval(std::uint64_t hits, std::uint64_t shots, double z) {
  if (shots == 0) throw InvalidArgument("wilson_interval(): zero shots");
  if (hits > shots) throw InvalidArgument("wilson_interval(): more hits than shots");
  if (!(z > 0.0)) throw InvalidArgument("wilson_interval(): z must be positive");
  const double n = static_cast<double>(shots);
  const double phat = static_cast<double>(hits) / n;
  const double z2 = z * z;
  const double denom = 1.0 + z2 / n;
  const double center = (phat + z2 / (2.0 * n)) / denom;
  const double half = z / denom * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n));
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

InterferenceOutcome mean_circuit(const InversionUnitary& u, const StateVector& k_state, const StateVector& y_state,
                                 const Sampling& sampling) {
  const auto k = single_register(k_state, u.system_width(), "k_state");
  const auto y = single_register(y_state, u.system_width(), "y_state");
  return run_circuit(u, k, y, InterferenceMode::mean, sampling);
}

InterferenceOutcome variance_circuit(const InversionUnitary& u, const StateVector& k_state, const Sampling& sampling) {
  const auto k = single_register(k_state, u.system_width(), "k_state");
  return run_circuit(u, k, k, InterferenceMode::variance, sampling);
}

double recover_mean(const InterferenceOutcome& o, double norm_k, double norm_y) {
  if (o.mode != InterferenceMode::mean) throw InvalidArgument("recover_mean(): outcome is not from the mean circuit");
  if (o.constant_used == 0.0) throw InvalidArgument("recover_mean(): rotation constant is zero");
  return o.signed_sum / o.constant_used * norm_k * norm_y;
}

double recover_variance(const InterferenceOutcome& o, double norm_k) {
  if (o.mode != InterferenceMode::variance)
    throw InvalidArgument("recover_variance(): outcome is not from the variance circuit");
  if (o.constant_used == 0.0) throw InvalidArgument("recover_variance(): rotation constant is zero");
  return 1.0 - o.signed_sum / o.constant_used * norm_k * norm_k;
}

std::complex<double> branch_overlap(const InversionUnitary& u, const StateVector& k_state, const StateVector& y_state) {
  const auto k = single_register(k_state, u.system_width(), "k_state");
  const auto y = single_register(y_state, u.system_width(), "y_state");
  const Layout l = u.layout(circuit_registers());
  const StateVector out = u.apply(StateVector(l, embed(k, u.eigen_width(), 0)), circuit_registers());
  return embed(y, u.eigen_width(), 1).dot(out.amplitudes());
}

std::complex<double> flag0_overlap_with_marker(const InversionUnitary& u, const StateVector& k_state,
                                               const StateVector& y_state) {
  const auto k = single_register(k_state, u.system_width(), "k_state");
  const auto y = single_register(y_state, u.system_width(), "y_state");
  const Layout l = u.layout(circuit_registers());
  const StateVector out = u.apply(StateVector(l, embed(k, u.eigen_width(), 0)), circuit_registers());
  Eigen::VectorXcd flag0 = out.amplitudes();
  for (std::uint64_t i = 0; i < out.dimension(); ++i)
    if (out.register_value(i, kFlag) == 1) flag0(static_cast<Eigen::Index>(i)) = 0.0;
  return embed(y, u.eigen_width(), 1).dot(flag0);
}

double swap_test_probability(const Eigen::VectorXcd& a, const Eigen::VectorXcd& b) {
  if (a.size() != b.size() || a.size() < 2 || (a.size() & (a.size() - 1)) != 0)
    throw InvalidArgument("swap_test_probability(): states must share a power-of-two dimension");
  int w = 0;
  while ((Eigen::Index{1} << w) < a.size()) ++w;
  const StateVector sa = StateVector::from_vector("a", a);
  const StateVector sb = StateVector::from_vector("b", b);
  StateVector s = tensor(StateVector::zero({{"swap_anc", 1}}), tensor(sa, sb));
  s = apply_each_qubit(gates::hadamard(), "swap_anc", std::move(s));
  s = swap_registers("a", "b", std::move(s), {{"swap_anc", 1}});
  s = apply_each_qubit(gates::hadamard(), "swap_anc", std::move(s));
  return measure_probability(s, "swap_anc", 0);
}

}  // namespace qgpr
