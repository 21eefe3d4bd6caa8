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

#include "qgpr/hamiltonian_sim.hpp"

#include <cmath>
#include <numbers>

#include "qgpr/errors.hpp"

namespace qgpr {

Eigen::MatrixXcd evolution_matrix(const Eigen::MatrixXcd& hamiltonian, double t) {
  if (hamiltonian.rows() != hamiltonian.cols() || hamiltonian.rows() == 0)
    throw InvalidArgument("evolve(): Hamiltonian must be square");
  if ((hamiltonian - hamiltonian.adjoint()).cwiseAbs().maxCoeff() > 1e-10)
    throw InvalidArgument("evolve(): Hamiltonian is not Hermitian");
  const Eigen::MatrixXcd h = 0.5 * (hamiltonian + hamiltonian.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
  if (es.info() != Eigen::Success) throw NumericalFailure("evolve(): eigendecomposition failed");
  Eigen::VectorXcd phases(h.rows());
  for (Eigen::Index j = 0; j < h.rows(); ++j) phases(j) = std::polar(1.0, -es.eigenvalues()(j) * t);
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

UnitaryOp evolve(const Eigen::MatrixXcd& hamiltonian, double t, const std::string& reg) {
  return UnitaryOp(evolution_matrix(hamiltonian, t), {reg});
}

Eigen::MatrixXd shift_matrix(int j, int m) {
  if (m < 1 || j < 0 || j >= m) throw InvalidArgument("shift_operator(): index out of range");
  Eigen::MatrixXd v = Eigen::MatrixXd::Zero(m, m);
  for (int l = 0; l < m; ++l) v(((l - j + 1) % m + m) % m, l) = 1.0;
  return v;
}

UnitaryOp shift_operator(int j, int m, const std::string& reg) { return UnitaryOp(shift_matrix(j, m), {reg}); }

LcuResult lcu_decompose(const Eigen::MatrixXd& k) {
  if (k.rows() != k.cols() || k.rows() == 0) throw InvalidArgument("lcu_decompose(): matrix must be square");
  const int m = static_cast<int>(k.rows());
  LcuDecomposition d;
  d.coefficients.resize(m);
  d.shift_index.resize(static_cast<std::size_t>(m));
  // V_j occupies the wrapped diagonal {((l - j + 1) mod m, l)}; these supports
  // partition the matrix, so the per-diagonal mean is the least-squares fit.
  for (int j = 0; j < m; ++j) {
    double sum = 0.0;
    for (int l = 0; l < m; ++l) sum += k(((l - j + 1) % m + m) % m, l);
    d.coefficients(j) = sum / m;
    d.shift_index[static_cast<std::size_t>(j)] = j;
  }
  const double residual = (lcu_reconstruct(d) - k).norm();
  if (residual <= kLcuTolerance) return d;
  return NotRepresentable{residual, std::move(d)};
}

Eigen::MatrixXd lcu_reconstruct(const LcuDecomposition& d) {
  const int m = static_cast<int>(d.coefficients.size());
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(m, m);
  for (int i = 0; i < m; ++i) k += d.coefficients(i) * shift_matrix(d.shift_index[static_cast<std::size_t>(i)], m);
  return k;
}

double safe_evolution_time(double lambda_max) {
  if (!(lambda_max > 0.0)) throw InvalidArgument("safe_evolution_time(): lambda_max must be positive");
  return 2.0 * std::numbers::pi / (1.1 * lambda_max);
}

EvolutionOracle::EvolutionOracle(Eigen::MatrixXd hamiltonian, double time, int powers)
    : hamiltonian_(std::move(hamiltonian)), time_(time) {
  if (powers < 1) throw InvalidArgument("EvolutionOracle: need at least one power");
  const Eigen::MatrixXcd h = hamiltonian_.cast<cplx>();
  unitaries_.reserve(static_cast<std::size_t>(powers));
  for (int k = 0; k < powers; ++k) unitaries_.push_back(evolution_matrix(h, time_ * std::ldexp(1.0, k)));
}

std::vector<double> EvolutionOracle::time_grid() const {
  std::vector<double> g;
  for (std::size_t k = 0; k < unitaries_.size(); ++k) g.push_back(time_ * std::ldexp(1.0, static_cast<int>(k)));
  return g;
}

Eigen::MatrixXcd EvolutionOracle::power(std::uint64_t x) const {
  if (x >> unitaries_.size()) throw InvalidArgument("EvolutionOracle::power(): exponent exceeds cached powers");
  Eigen::MatrixXcd u = Eigen::MatrixXcd::Identity(dimension(), dimension());
  for (std::size_t k = 0; k < unitaries_.size(); ++k)
    if ((x >> k) & 1U) u = unitaries_[k] * u;
  return u;
}

}  // namespace qgpr
