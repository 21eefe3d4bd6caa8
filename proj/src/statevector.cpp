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

#include "qgpr/statevector.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <numeric>
#include <set>

#include "qgpr/errors.hpp"

namespace qgpr {

namespace {

bool is_power_of_two(std::uint64_t n) { return n != 0 && (n & (n - 1)) == 0; }

int log2_exact(std::uint64_t n) {
  int k = 0;
  while ((std::uint64_t{1} << k) < n) ++k;
  return k;
}

struct TargetMap {
  std::vector<std::uint64_t> offsets;  // combined target value -> index bits
  std::uint64_t mask = 0;
};

TargetMap target_map(const StateVector& s, const std::vector<std::string>& targets) {
  std::set<std::string> seen;
  int total = 0;
  for (const auto& t : targets) {
    if (!seen.insert(t).second) throw InvalidArgument("duplicate target register '" + t + "'");
    total += s.reg(t).width;
  }
  TargetMap tm;
  tm.offsets.resize(std::size_t{1} << total);
  for (std::uint64_t combined = 0; combined < tm.offsets.size(); ++combined) {
    std::uint64_t rest = combined;
    std::uint64_t off = 0;
    for (auto it = targets.rbegin(); it != targets.rend(); ++it) {
      const int w = s.reg(*it).width;
      off |= (rest & ((std::uint64_t{1} << w) - 1)) << s.shift(*it);
      rest >>= w;
    }
    tm.offsets[combined] = off;
  }
  for (const auto& t : targets) tm.mask |= s.register_mask(t);
  return tm;
}

struct ControlMask {
  std::uint64_t mask = 0;
  std::uint64_t value = 0;
};

ControlMask control_mask(const StateVector& s, const Controls& controls, std::uint64_t target_mask) {
  ControlMask cm;
  for (const auto& c : controls) {
    const auto m = s.register_mask(c.reg);
    if (m & target_mask) throw InvalidArgument("control register '" + c.reg + "' is also a target");
    if (c.value >> s.reg(c.reg).width) throw InvalidArgument("control value out of range for '" + c.reg + "'");
    if (cm.mask & m) throw InvalidArgument("duplicate control register '" + c.reg + "'");
    cm.mask |= m;
    cm.value |= c.value << s.shift(c.reg);
  }
  return cm;
}

// Visits every index whose target bits are zero and whose controls match.
template <typename F>
void for_each_base(std::uint64_t dim, std::uint64_t target_mask, const ControlMask& cm, F&& f) {
  for (std::uint64_t i = 0; i < dim; ++i) {
    if (i & target_mask) continue;
    if ((i & cm.mask) != cm.value) continue;
    f(i);
  }
}

// In-place radix-2 transform with kernel exp(sign * 2 pi i j k / N) / sqrt(N).
void unitary_fft(std::vector<cplx>& a, int sign) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = sign * 2.0 * std::numbers::pi / static_cast<double>(len);
    const cplx wlen(std::cos(ang), std::sin(ang));
    for (std::size_t i = 0; i < n; i += len) {
      cplx w(1.0, 0.0);
      for (std::size_t k = 0; k < len / 2; ++k) {
        const cplx u = a[i + k];
        const cplx v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (auto& x : a) x *= scale;
}

StateVector fourier_impl(StateVector s, std::string_view reg, const Controls& controls, int sign) {
  const TargetMap tm = target_map(s, {std::string(reg)});
  const ControlMask cm = control_mask(s, controls, tm.mask);
  Eigen::VectorXcd amps = s.amplitudes();
  std::vector<cplx> buf(tm.offsets.size());
  for_each_base(s.dimension(), tm.mask, cm, [&](std::uint64_t base) {
    for (std::size_t k = 0; k < buf.size(); ++k) buf[k] = amps[static_cast<Eigen::Index>(base + tm.offsets[k])];
    unitary_fft(buf, sign);
    for (std::size_t k = 0; k < buf.size(); ++k) amps[static_cast<Eigen::Index>(base + tm.offsets[k])] = buf[k];
  });
  return StateVector(s.layout(), std::move(amps), s.subnormalized());
}

}  // namespace

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(Layout layout, Eigen::VectorXcd amplitudes, bool subnormalized)
    : layout_(std::move(layout)), amps_(std::move(amplitudes)), subnormalized_(subnormalized) {
  std::set<std::string> names;
  for (const auto& r : layout_) {
    if (r.name.empty()) throw InvalidArgument("register name must be non-empty");
    if (r.width < 1) throw InvalidArgument("register '" + r.name + "' must have positive width");
    if (!names.insert(r.name).second) throw InvalidArgument("duplicate register '" + r.name + "'");
    num_qubits_ += r.width;
  }
  if (num_qubits_ > kMaxQubits)
    throw InvalidArgument("state needs " + std::to_string(num_qubits_) + " qubits; the dense engine is capped at " +
                          std::to_string(kMaxQubits));
  if (static_cast<std::uint64_t>(amps_.size()) != (std::uint64_t{1} << num_qubits_))
    throw InvalidArgument("amplitude vector length does not match register layout");
  if (!subnormalized_ && std::abs(amps_.norm() - 1.0) > 1e-10)
    throw InvalidArgument("state is not normalized (norm " + std::to_string(amps_.norm()) + ")");
}

StateVector StateVector::zero(Layout layout) {
  return basis(std::move(layout), std::vector<std::uint64_t>{});
}

StateVector StateVector::basis(Layout layout, const std::vector<std::uint64_t>& values) {
  if (!values.empty() && values.size() != layout.size())
    throw InvalidArgument("basis(): one value per register required");
  int n = 0;
  std::uint64_t index = 0;
  for (std::size_t r = 0; r < layout.size(); ++r) {
    n += layout[r].width;
    const std::uint64_t v = values.empty() ? 0 : values[r];
    if (layout[r].width < 1 || v >> layout[r].width) throw InvalidArgument("basis value out of range");
    index = (index << layout[r].width) | v;
  }
  if (n > kMaxQubits) throw InvalidArgument("basis(): too many qubits");
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(std::uint64_t{1} << n));
  amps[static_cast<Eigen::Index>(index)] = 1.0;
  return StateVector(std::move(layout), std::move(amps));
}

StateVector StateVector::from_vector(std::string name, const Eigen::VectorXcd& amplitudes) {
  const auto n = static_cast<std::uint64_t>(amplitudes.size());
  if (!is_power_of_two(n) || n < 2) throw InvalidArgument("from_vector(): length must be a power of two >= 2");
  const double nrm = amplitudes.norm();
  if (nrm == 0.0) throw InvalidArgument("from_vector(): zero vector");
  return StateVector({{std::move(name), log2_exact(n)}}, amplitudes / nrm);
}

bool StateVector::has_register(std::string_view name) const {
  return std::any_of(layout_.begin(), layout_.end(), [&](const Register& r) { return r.name == name; });
}

const Register& StateVector::reg(std::string_view name) const {
  for (const auto& r : layout_)
    if (r.name == name) return r;
  throw InvalidArgument("unknown register '" + std::string(name) + "'");
}

int StateVector::shift(std::string_view name) const {
  int s = 0;
  for (auto it = layout_.rbegin(); it != layout_.rend(); ++it) {
    if (it->name == name) return s;
    s += it->width;
  }
  throw InvalidArgument("unknown register '" + std::string(name) + "'");
}

std::uint64_t StateVector::register_mask(std::string_view name) const {
  return ((std::uint64_t{1} << reg(name).width) - 1) << shift(name);
}

std::uint64_t StateVector::register_value(std::uint64_t index, std::string_view name) const {
  return (index & register_mask(name)) >> shift(name);
}

StateVector StateVector::normalized() const {
  const double n = amps_.norm();
  if (n == 0.0) throw InvalidState("cannot normalize the zero vector");
  return StateVector(layout_, amps_ / n);
}

StateVector StateVector::append_register(Register r) const {
  Layout layout = layout_;
  layout.push_back(r);
  const auto w = r.width;
  if (w < 1 || num_qubits_ + w > kMaxQubits) throw InvalidArgument("append_register(): invalid width");
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(amps_.size() << w);
  for (Eigen::Index i = 0; i < amps_.size(); ++i) amps[i << w] = amps_[i];
  return StateVector(std::move(layout), std::move(amps), subnormalized_);
}

Eigen::VectorXcd StateVector::register_amplitudes(std::string_view name) const {
  const auto mask = register_mask(name);
  const int sh = shift(name);
  Eigen::VectorXcd out = Eigen::VectorXcd::Zero(Eigen::Index{1} << reg(name).width);
  for (std::uint64_t i = 0; i < dimension(); ++i) {
    const cplx a = amps_[static_cast<Eigen::Index>(i)];
    if (a == cplx{}) continue;
    if (i & ~mask) throw InvalidState("register_amplitudes(): other registers are not in |0>");
    out[static_cast<Eigen::Index>((i & mask) >> sh)] = a;
  }
  return out;
}

StateVector tensor(const StateVector& a, const StateVector& b) {
  Layout layout = a.layout();
  layout.insert(layout.end(), b.layout().begin(), b.layout().end());
  Eigen::VectorXcd amps(a.amplitudes().size() * b.amplitudes().size());
  for (Eigen::Index i = 0; i < a.amplitudes().size(); ++i)
    amps.segment(i * b.amplitudes().size(), b.amplitudes().size()) = a.amplitudes()[i] * b.amplitudes();
  return StateVector(std::move(layout), std::move(amps), a.subnormalized() || b.subnormalized());
}

// ---------------------------------------------------------------------------
// UnitaryOp / DensityOperator

double spectral_norm(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(0);
}

bool is_unitary(const Eigen::MatrixXcd& m, double tolerance) {
  if (m.rows() != m.cols()) return false;
  const Eigen::MatrixXcd d = m.adjoint() * m - Eigen::MatrixXcd::Identity(m.rows(), m.cols());
  // Frobenius bounds the spectral norm; only fall back to the SVD when needed.
  return d.norm() <= tolerance || spectral_norm(d) <= tolerance;
}

UnitaryOp::UnitaryOp(Eigen::MatrixXcd matrix, std::vector<std::string> targets, double tolerance)
    : matrix_(std::move(matrix)), targets_(std::move(targets)) {
  const auto n = static_cast<std::uint64_t>(matrix_.rows());
  if (matrix_.rows() != matrix_.cols() || !is_power_of_two(n) || n < 2)
    throw InvalidArgument("unitary must be square with power-of-two dimension >= 2");
  if (targets_.empty()) throw InvalidArgument("unitary needs at least one target register");
  width_ = log2_exact(n);
  if (!is_unitary(matrix_, tolerance)) throw InvalidArgument("matrix is not unitary");
}

UnitaryOp UnitaryOp::adjoint() const { return UnitaryOp(matrix_.adjoint(), targets_); }

UnitaryOp UnitaryOp::retarget(std::vector<std::string> targets) const { return UnitaryOp(matrix_, std::move(targets)); }

DensityOperator::DensityOperator(Eigen::MatrixXcd matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols() || matrix_.rows() == 0) throw InvalidArgument("density operator must be square");
  if ((matrix_ - matrix_.adjoint()).cwiseAbs().maxCoeff() > 1e-12)
    throw InvalidArgument("density operator is not Hermitian");
  if (std::abs(matrix_.trace() - cplx(1.0)) > 1e-10) throw InvalidArgument("density operator trace is not 1");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(matrix_, Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10) throw InvalidArgument("density operator is not positive semidefinite");
}

namespace gates {

Eigen::MatrixXcd identity(int qubits) {
  const Eigen::Index n = Eigen::Index{1} << qubits;
  return Eigen::MatrixXcd::Identity(n, n);
}

Eigen::MatrixXcd pauli_x() {
  Eigen::MatrixXcd x(2, 2);
  x << 0, 1, 1, 0;
  return x;
}

Eigen::MatrixXcd hadamard() {
  Eigen::MatrixXcd h(2, 2);
  h << 1, 1, 1, -1;
  return h / std::sqrt(2.0);
}

Eigen::MatrixXcd flag_rotation(double amplitude) {
  if (!(std::abs(amplitude) <= 1.0 + 1e-12)) throw InvalidArgument("rotation amplitude outside [-1, 1]");
  const double a = std::clamp(amplitude, -1.0, 1.0);
  const double b = std::sqrt(std::max(0.0, 1.0 - a * a));
  Eigen::MatrixXcd r(2, 2);
  r << b, -a, a, b;
  return r;
}

Eigen::MatrixXcd fourier(int qubits) {
  const Eigen::Index n = Eigen::Index{1} << qubits;
  Eigen::MatrixXcd f(n, n);
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  for (Eigen::Index j = 0; j < n; ++j)
    for (Eigen::Index k = 0; k < n; ++k) {
      const double ang = 2.0 * std::numbers::pi * static_cast<double>((j * k) % n) / static_cast<double>(n);
      f(k, j) = std::polar(scale, ang);
    }
  return f;
}

}  // namespace gates

// ---------------------------------------------------------------------------
// Gate application

StateVector apply(const UnitaryOp& u, StateVector s, const Controls& controls) {
  int width = 0;
  for (const auto& t : u.targets()) width += s.reg(t).width;
  if (width != u.width())
    throw InvalidArgument("unitary acts on " + std::to_string(u.width()) + " qubits but targets span " +
                          std::to_string(width));
  return apply_multiplexed("", {u.matrix()}, u.targets(), std::move(s), controls);
}

StateVector apply_multiplexed(std::string_view selector, const std::vector<Eigen::MatrixXcd>& blocks,
                              const std::vector<std::string>& targets, StateVector s, const Controls& controls) {
  const TargetMap tm = target_map(s, targets);
  const auto d = static_cast<Eigen::Index>(tm.offsets.size());
  for (const auto& b : blocks)
    if (b.rows() != d || b.cols() != d) throw InvalidArgument("multiplexed block dimension mismatch");
  std::uint64_t sel_mask = 0;
  int sel_shift = 0;
  if (!selector.empty()) {
    sel_mask = s.register_mask(selector);
    sel_shift = s.shift(selector);
    if (sel_mask & tm.mask) throw InvalidArgument("selector register is also a target");
  }
  const ControlMask cm = control_mask(s, controls, tm.mask);
  Eigen::VectorXcd amps = s.amplitudes();
  Eigen::VectorXcd buf(d);
  for_each_base(s.dimension(), tm.mask, cm, [&](std::uint64_t base) {
    const std::uint64_t v = (base & sel_mask) >> sel_shift;
    if (v >= blocks.size()) return;
    for (Eigen::Index k = 0; k < d; ++k) buf[k] = amps[static_cast<Eigen::Index>(base + tm.offsets[k])];
    buf = blocks[v] * buf;
    for (Eigen::Index k = 0; k < d; ++k) amps[static_cast<Eigen::Index>(base + tm.offsets[k])] = buf[k];
  });
  return StateVector(s.layout(), std::move(amps), s.subnormalized());
}

StateVector apply_each_qubit(const Eigen::MatrixXcd& gate, std::string_view reg, StateVector s,
                             const Controls& controls) {
  if (gate.rows() != 2 || gate.cols() != 2) throw InvalidArgument("apply_each_qubit(): gate must be 2x2");
  const ControlMask cm = control_mask(s, controls, s.register_mask(reg));
  const int width = s.reg(reg).width;
  const int sh = s.shift(reg);
  Eigen::VectorXcd amps = s.amplitudes();
  for (int q = 0; q < width; ++q) {
    const std::uint64_t bit = std::uint64_t{1} << (sh + q);
    for_each_base(s.dimension(), bit, cm, [&](std::uint64_t base) {
      const auto i0 = static_cast<Eigen::Index>(base);
      const auto i1 = static_cast<Eigen::Index>(base | bit);
      const cplx a0 = amps[i0];
      const cplx a1 = amps[i1];
      amps[i0] = gate(0, 0) * a0 + gate(0, 1) * a1;
      amps[i1] = gate(1, 0) * a0 + gate(1, 1) * a1;
    });
  }
  return StateVector(s.layout(), std::move(amps), s.subnormalized());
}

StateVector qft(StateVector s, std::string_view reg, const Controls& controls) {
  return fourier_impl(std::move(s), reg, controls, +1);
}

StateVector inverse_qft(StateVector s, std::string_view reg, const Controls& controls) {
  return fourier_impl(std::move(s), reg, controls, -1);
}

StateVector swap_registers(std::string_view a, std::string_view b, StateVector s, const Controls& controls) {
  const int w = s.reg(a).width;
  if (s.reg(b).width != w) throw InvalidArgument("swap_registers(): widths differ");
  const Eigen::Index d = Eigen::Index{1} << w;
  Eigen::MatrixXcd swap = Eigen::MatrixXcd::Zero(d * d, d * d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j) swap(j * d + i, i * d + j) = 1.0;
  return apply_multiplexed("", {swap}, {std::string(a), std::string(b)}, std::move(s), controls);
}

// ---------------------------------------------------------------------------
// Measurement

DensityOperator partial_trace(const StateVector& s, std::string_view keep) {
  if (s.layout().size() < 2) throw InvalidArgument("partial_trace(): state needs at least two registers");
  const int w = s.reg(keep).width;
  const int sh = s.shift(keep);
  const std::uint64_t low = (std::uint64_t{1} << sh) - 1;
  const Eigen::Index dk = Eigen::Index{1} << w;
  const Eigen::Index dr = static_cast<Eigen::Index>(s.dimension() >> w);
  Eigen::MatrixXcd psi(dk, dr);
  for (std::uint64_t i = 0; i < s.dimension(); ++i) {
    const auto a = static_cast<Eigen::Index>(s.register_value(i, keep));
    const auto rest = static_cast<Eigen::Index>(((i >> (sh + w)) << sh) | (i & low));
    psi(a, rest) = s.amplitudes()[static_cast<Eigen::Index>(i)];
  }
  Eigen::MatrixXcd rho = psi * psi.adjoint();
  const double tr = rho.trace().real();
  if (tr <= 0.0) throw InvalidState("partial_trace(): zero state");
  rho /= tr;
  rho = 0.5 * (rho + rho.adjoint()).eval();
  return DensityOperator(std::move(rho));
}

std::vector<double> register_distribution(const StateVector& s, std::string_view reg) {
  std::vector<double> p(std::size_t{1} << s.reg(reg).width, 0.0);
  for (std::uint64_t i = 0; i < s.dimension(); ++i) p[s.register_value(i, reg)] += std::norm(s.amplitudes()[static_cast<Eigen::Index>(i)]);
  return p;
}

double measure_probability(const StateVector& s, std::string_view reg, std::uint64_t value) {
  if (value >> s.reg(reg).width) throw InvalidArgument("measure_probability(): value out of range");
  return register_distribution(s, reg)[value];
}

double measure_probability(const StateVector& s, std::string_view reg, const Eigen::MatrixXcd& projector) {
  const Eigen::Index d = Eigen::Index{1} << s.reg(reg).width;
  if (projector.rows() != d || projector.cols() != d) throw InvalidArgument("projector dimension mismatch");
  if ((projector - projector.adjoint()).cwiseAbs().maxCoeff() > 1e-10 ||
      (projector * projector - projector).cwiseAbs().maxCoeff() > 1e-10)
    throw InvalidArgument("operator is not an orthogonal projector");
  const TargetMap tm = target_map(s, {std::string(reg)});
  double p = 0.0;
  Eigen::VectorXcd buf(d);
  for_each_base(s.dimension(), tm.mask, ControlMask{}, [&](std::uint64_t base) {
    for (Eigen::Index k = 0; k < d; ++k) buf[k] = s.amplitudes()[static_cast<Eigen::Index>(base + tm.offsets[k])];
    p += buf.dot(projector * buf).real();
  });
  return p;
}

std::map<std::uint64_t, std::uint64_t> sample_shots(const StateVector& s, std::string_view reg, std::uint64_t shots,
                                                    std::uint64_t seed) {
  if (shots < 1) throw InvalidArgument("sample_shots(): shots must be >= 1");
  const std::vector<double> p = register_distribution(s, reg);
  double remaining_mass = std::accumulate(p.begin(), p.end(), 0.0);
  if (remaining_mass <= 0.0) throw InvalidState("sample_shots(): zero state");
  // Multinomial draw as a chain of conditional binomials.
  std::mt19937_64 rng(seed);
  std::map<std::uint64_t, std::uint64_t> counts;
  std::uint64_t remaining = shots;
  for (std::size_t v = 0; v < p.size() && remaining > 0; ++v) {
    if (p[v] <= 0.0) continue;
    std::uint64_t k = remaining;
    const double q = p[v] / remaining_mass;
    if (q < 1.0) {
      std::binomial_distribution<std::uint64_t> draw(remaining, q);
      k = draw(rng);
    }
    if (k > 0) counts[v] = k;
    remaining -= k;
    remaining_mass -= p[v];
  }
  return counts;
}

PostSelection postselect(const StateVector& s, const Controls& outcomes) {
  const ControlMask cm = control_mask(s, outcomes, 0);
  Layout layout;
  for (const auto& r : s.layout()) {
    const bool selected = std::any_of(outcomes.begin(), outcomes.end(), [&](const Control& c) { return c.reg == r.name; });
    if (!selected) layout.push_back(r);
  }
  if (layout.empty()) throw InvalidArgument("postselect(): cannot select every register");
  // Remaining bits keep their relative order; compress them out of the index.
  std::vector<int> kept_bits;
  for (int b = 0; b < s.num_qubits(); ++b)
    if (!((cm.mask >> b) & 1U)) kept_bits.push_back(b);
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(Eigen::Index{1} << kept_bits.size());
  for (std::uint64_t i = 0; i < s.dimension(); ++i) {
    if ((i & cm.mask) != cm.value) continue;
    std::uint64_t j = 0;
    for (std::size_t k = 0; k < kept_bits.size(); ++k) j |= ((i >> kept_bits[k]) & 1U) << k;
    amps[static_cast<Eigen::Index>(j)] = s.amplitudes()[static_cast<Eigen::Index>(i)];
  }
  const double n2 = amps.squaredNorm();
  const double total = s.amplitudes().squaredNorm();
  if (n2 == 0.0) throw InvalidState("postselect(): selected branch is empty");
  return {StateVector(std::move(layout), amps / std::sqrt(n2)), n2 / total};
}

}  // namespace qgpr
