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

#include "qgpr/qpe_conditioning.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "qgpr/errors.hpp"

namespace qgpr {

namespace {

std::vector<Eigen::MatrixXcd> evolution_powers(const EvolutionOracle& oracle, int n_bits) {
  std::vector<Eigen::MatrixXcd> p;
  p.reserve(std::size_t{1} << n_bits);
  for (std::uint64_t x = 0; x < (std::uint64_t{1} << n_bits); ++x) p.push_back(oracle.power(x));
  return p;
}

std::vector<Eigen::MatrixXcd> adjoints(const std::vector<Eigen::MatrixXcd>& ms) {
  std::vector<Eigen::MatrixXcd> out;
  out.reserve(ms.size());
  for (const auto& m : ms) out.push_back(m.adjoint());
  return out;
}

double rotation_amplitude(double c, double lambda, double noise) {
  const double denom = lambda + noise;
  if (denom <= 0.0) return std::numeric_limits<double>::infinity();
  return c / denom;
}

std::vector<Eigen::MatrixXcd> rotation_blocks(const QpeConfig& cfg, double noise, const std::vector<double>* weights) {
  std::vector<Eigen::MatrixXcd> blocks;
  const std::uint64_t n = std::uint64_t{1} << cfg.n_bits;
  blocks.reserve(n);
  for (std::uint64_t x = 0; x < n; ++x) {
    const double lambda = decode_eigenvalue(x, cfg);
    const double a = rotation_amplitude(cfg.rotation_constant, lambda, noise);
    const bool populated = weights == nullptr || (*weights)[x] > kPopulatedThreshold;
    if (std::abs(a) > 1.0) {
      if (populated) {
        std::ostringstream os;
        os << "rotation constant c = " << cfg.rotation_constant << " too large: c / (lambda~ + sigma^2) = " << a
           << " at lambda~ = " << lambda;
        throw InvalidArgument(os.str());
      }
      blocks.push_back(gates::identity(1));
      continue;
    }
    blocks.push_back(gates::flag_rotation(a));
  }
  return blocks;
}

StateVector forward_qpe(StateVector s, const std::vector<Eigen::MatrixXcd>& powers, const InversionRegisters& regs,
                        const Controls& controls) {
  s = apply_each_qubit(gates::hadamard(), regs.eigen, std::move(s), controls);
  s = apply_multiplexed(regs.eigen, powers, {regs.system}, std::move(s), controls);
  return qft(std::move(s), regs.eigen, controls);
}

StateVector backward_qpe(StateVector s, const std::vector<Eigen::MatrixXcd>& inverse_powers,
                         const InversionRegisters& regs, const Controls& controls) {
  s = inverse_qft(std::move(s), regs.eigen, controls);
  s = apply_multiplexed(regs.eigen, inverse_powers, {regs.system}, std::move(s), controls);
  return apply_each_qubit(gates::hadamard(), regs.eigen, std::move(s), controls);
}

void check_n_bits(int n_bits) {
  if (n_bits < 1 || n_bits > 12) throw InvalidArgument("QPE register width must lie in [1, 12]");
}

}  // namespace

double decode_eigenvalue(std::uint64_t register_value, const QpeConfig& cfg) {
  return static_cast<double>(register_value) / std::ldexp(1.0, cfg.n_bits) * 2.0 * std::numbers::pi /
         cfg.evolution_time;
}

void validate_qpe(const EvolutionOracle& oracle, const QpeConfig& cfg) {
  check_n_bits(cfg.n_bits);
  if (!(cfg.evolution_time > 0.0)) throw InvalidArgument("evolution time must be positive");
  if (static_cast<int>(oracle.unitaries().size()) < cfg.n_bits)
    throw InvalidArgument("evolution oracle caches fewer powers than the QPE register needs");
  if (std::abs(oracle.time() - cfg.evolution_time) > 1e-14 * std::max(1.0, cfg.evolution_time))
    throw InvalidArgument("QPE evolution time differs from the oracle's base time");
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(oracle.hamiltonian(), Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -1e-10)
    throw InvalidArgument("negative eigenvalues are not supported by the eigenvalue register");
  const double phase = es.eigenvalues().maxCoeff() * cfg.evolution_time / (2.0 * std::numbers::pi);
  if (phase >= 1.0) {
    std::ostringstream os;
    os << "phase wraparound: lambda_max t / 2pi = " << phase << " >= 1";
    throw InvalidArgument(os.str());
  }
}

StateVector phase_estimate(const EvolutionOracle& oracle, const StateVector& input, const QpeConfig& cfg) {
  validate_qpe(oracle, cfg);
  if (input.layout().size() != 1) throw InvalidArgument("phase_estimate(): input must be a single system register");
  InversionRegisters regs;
  regs.system = input.layout()[0].name;
  if (Eigen::Index{1} << input.layout()[0].width != oracle.dimension())
    throw InvalidArgument("phase_estimate(): system register does not match the Hamiltonian dimension");
  StateVector s = input.append_register({regs.eigen, cfg.n_bits});
  return forward_qpe(std::move(s), evolution_powers(oracle, cfg.n_bits), regs, {});
}

StateVector inverse_phase_estimate(const EvolutionOracle& oracle, const StateVector& s, const QpeConfig& cfg) {
  validate_qpe(oracle, cfg);
  InversionRegisters regs;
  regs.system = s.layout()[0].name;
  return backward_qpe(s, adjoints(evolution_powers(oracle, cfg.n_bits)), regs, {});
}

ConditionedState conditioned_rotation(const StateVector& s, const QpeConfig& cfg, double noise) {
  check_n_bits(cfg.n_bits);
  if (s.reg("eigen").width != cfg.n_bits) throw InvalidArgument("eigenvalue register width differs from n_bits");
  const std::vector<double> weights = register_distribution(s, "eigen");
  const auto blocks = rotation_blocks(cfg, noise, &weights);
  StateVector out = s.append_register({"flag", 1});
  return {apply_multiplexed("eigen", blocks, {"flag"}, std::move(out))};
}

double default_rotation_constant(double lambda_min, double noise) {
  const double c = 0.99 * (lambda_min + noise);
  if (!(c > 0.0)) throw InvalidArgument("cannot choose a rotation constant: lambda_min + sigma^2 <= 0");
  return c;
}

InversionUnitary InversionUnitary::exact(const KernelSystem& spectrum, double rotation_constant, double noise) {
  const Eigen::Index m = spectrum.eigenvalues.size();
  if (m < 2 || (m & (m - 1)) != 0) throw InvalidArgument("exact inversion needs a power-of-two dimension >= 2");
  if (spectrum.eigenvalues.minCoeff() < -1e-10) throw InvalidArgument("negative eigenvalue in exact inversion");
  InversionUnitary u;
  u.mode_ = Mode::exact;
  u.noise_ = noise;
  u.cfg_.rotation_constant = rotation_constant;
  u.cfg_.n_bits = 0;
  while ((Eigen::Index{1} << u.system_width_) < m) ++u.system_width_;
  u.exact_matrix_ = Eigen::MatrixXcd::Zero(2 * m, 2 * m);
  for (Eigen::Index j = 0; j < m; ++j) {
    const double a = rotation_amplitude(rotation_constant, spectrum.eigenvalues(j), noise);
    if (std::abs(a) > 1.0) {
      std::ostringstream os;
      os << "rotation constant c = " << rotation_constant << " too large for lambda = " << spectrum.eigenvalues(j);
      throw InvalidArgument(os.str());
    }
    const Eigen::MatrixXcd r = gates::flag_rotation(a);
    const Eigen::VectorXd uj = spectrum.eigenvectors.col(j);
    const Eigen::MatrixXd proj = uj * uj.transpose();
    for (Eigen::Index a1 = 0; a1 < m; ++a1)
      for (Eigen::Index b1 = 0; b1 < m; ++b1) u.exact_matrix_.block(2 * a1, 2 * b1, 2, 2) += proj(a1, b1) * r;
  }
  return u;
}

InversionUnitary InversionUnitary::qpe(std::shared_ptr<const EvolutionOracle> oracle, const QpeConfig& cfg,
                                       double noise) {
  if (!oracle) throw InvalidArgument("null evolution oracle");
  validate_qpe(*oracle, cfg);
  const int dim = oracle->dimension();
  if (dim < 2 || (dim & (dim - 1)) != 0) throw InvalidArgument("QPE inversion needs a power-of-two dimension >= 2");
  InversionUnitary u;
  u.mode_ = Mode::qpe;
  u.noise_ = noise;
  u.cfg_ = cfg;
  while ((1 << u.system_width_) < dim) ++u.system_width_;
  u.powers_ = evolution_powers(*oracle, cfg.n_bits);
  u.inverse_powers_ = adjoints(u.powers_);
  u.rotations_ = rotation_blocks(cfg, noise, nullptr);
  u.oracle_ = std::move(oracle);
  return u;
}

Layout InversionUnitary::layout(const InversionRegisters& regs) const {
  if (mode_ == Mode::exact) return {{regs.system, system_width_}, {regs.flag, 1}};
  return {{regs.system, system_width_}, {regs.eigen, cfg_.n_bits}, {regs.flag, 1}};
}

StateVector InversionUnitary::apply(StateVector s, const InversionRegisters& regs, const Controls& controls) const {
  if (s.reg(regs.system).width != system_width_ || s.reg(regs.flag).width != 1)
    throw InvalidArgument("inversion unitary: register widths do not match");
  if (mode_ == Mode::exact)
    return apply_multiplexed("", {exact_matrix_}, {regs.system, regs.flag}, std::move(s), controls);
  if (s.reg(regs.eigen).width != cfg_.n_bits) throw InvalidArgument("inversion unitary: eigenvalue register width");
  s = forward_qpe(std::move(s), powers_, regs, controls);
  s = apply_multiplexed(regs.eigen, rotations_, {regs.flag}, std::move(s), controls);
  return backward_qpe(std::move(s), inverse_powers_, regs, controls);
}

UnitaryOp InversionUnitary::to_unitary(const InversionRegisters& regs) const {
  const Layout l = layout(regs);
  int qubits = 0;
  for (const auto& r : l) qubits += r.width;
  if (qubits > 12) throw InvalidArgument("to_unitary(): matrix would exceed 4096 dimensions");
  const Eigen::Index dim = Eigen::Index{1} << qubits;
  Eigen::MatrixXcd m(dim, dim);
  Eigen::VectorXcd e = Eigen::VectorXcd::Zero(dim);
  for (Eigen::Index col = 0; col < dim; ++col) {
    e.setZero();
    e(col) = 1.0;
    m.col(col) = apply(StateVector(l, e), regs).amplitudes();
  }
  std::vector<std::string> targets;
  for (const auto& r : l) targets.push_back(r.name);
  return UnitaryOp(std::move(m), std::move(targets));
}

InversionUnitary build_inversion(std::shared_ptr<const EvolutionOracle> oracle, const QpeConfig& cfg, double noise) {
  return InversionUnitary::qpe(std::move(oracle), cfg, noise);
}

}  // namespace qgpr
