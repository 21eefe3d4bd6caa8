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

// Hamiltonian evolution e^{-iKt} for dense Hermitian K, the cached
// power-of-two evolutions used by phase estimation, and a checker for the
// cyclic-shift linear-combination-of-unitaries decomposition of K.

#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "qgpr/statevector.hpp"

namespace qgpr {

/// Exact e^{-iKt} by eigendecomposition. Throws InvalidArgument when K deviates
/// from Hermitian by more than 1e-10.
Eigen::MatrixXcd evolution_matrix(const Eigen::MatrixXcd& hamiltonian, double t);
UnitaryOp evolve(const Eigen::MatrixXcd& hamiltonian, double t, const std::string& reg = "system");

/// Permutation |l> -> |(l - j + 1) mod m>, 0 <= j < m.
Eigen::MatrixXd shift_matrix(int j, int m);
/// shift_matrix as a register operator; m must be a power of two.
UnitaryOp shift_operator(int j, int m, const std::string& reg = "system");

struct LcuDecomposition {
  Eigen::VectorXd coefficients;  ///< k_j, one per shift
  std::vector<int> shift_index;  ///< j of V_j for each coefficient
};

/// Residual of the best circulant fit when K is not a combination of shifts.
struct NotRepresentable {
  double residual = 0.0;
  LcuDecomposition best_fit;
};

using LcuResult = std::variant<LcuDecomposition, NotRepresentable>;

inline constexpr double kLcuTolerance = 1e-10;

/// Least-squares fit of K by sum_j k_j V_j (averages along wrapped diagonals);
/// representable when the Frobenius residual is at most kLcuTolerance.
LcuResult lcu_decompose(const Eigen::MatrixXd& k);
Eigen::MatrixXd lcu_reconstruct(const LcuDecomposition& d);

/// Evolution time keeping every eigenphase below 2 pi with a 10% margin:
/// t (lambda_max * 1.1) = 2 pi.
double safe_evolution_time(double lambda_max);

/// Eagerly caches e^{-iK t 2^k} for k = 0 .. powers-1.
class EvolutionOracle {
 public:
  EvolutionOracle(Eigen::MatrixXd hamiltonian, double time, int powers);

  const Eigen::MatrixXd& hamiltonian() const noexcept { return hamiltonian_; }
  double time() const noexcept { return time_; }
  int dimension() const noexcept { return static_cast<int>(hamiltonian_.rows()); }
  const std::vector<Eigen::MatrixXcd>& unitaries() const noexcept { return unitaries_; }
  std::vector<double> time_grid() const;

  /// e^{-iK t x} composed from the cached binary powers of x.
  Eigen::MatrixXcd power(std::uint64_t x) const;

 private:
  Eigen::MatrixXd hamiltonian_;
  double time_;
  std::vector<Eigen::MatrixXcd> unitaries_;
};

}  // namespace qgpr
