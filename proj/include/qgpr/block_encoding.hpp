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

// Block-encoding of the kernel density operator of a dataset augmented with
// its test point, and extraction of the kernel vector as a column of it.
//
// With G |0>|0> = |Psi> a purification of rho' on (index, fock), the unitary
// U' = (G^dagger x I)(I x SWAP_{index,target})(G x I) satisfies
// <0|_{index,fock} U' |0>_{index,fock} = rho' on the fresh target register.

#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "qgpr/classical_gpr.hpp"
#include "qgpr/statevector.hpp"

namespace qgpr {

struct AugmentedSystem {
  Dataset dataset;             ///< M + 1 points; the last is the test point with target 0
  Eigen::MatrixXd gram_prime;  ///< K' = (1 / (M + 1)) [k(x_p, x_q)]_{p,q <= M}
  Eigen::Index original_size = 0;
};

AugmentedSystem augment(const Dataset& d);

/// G with G|0> = |Psi>, completed to a unitary by a Householder reflection
/// (times a phase). Stored implicitly; applies in O(dimension).
class PurificationUnitary {
 public:
  explicit PurificationUnitary(StateVector purification);

  const StateVector& purification() const noexcept { return psi_; }
  /// Registers G acts on: index, fock_0, ...
  const Layout& layout() const noexcept { return psi_.layout(); }
  int width() const noexcept { return psi_.num_qubits(); }

  /// Applies G (or G^dagger) to the leading registers of `s`, which must match
  /// layout(); any further registers are spectators.
  StateVector apply(StateVector s, bool adjoint = false) const;
  /// Dense matrix; refused above 4096 dimensions.
  UnitaryOp to_unitary() const;

 private:
  StateVector psi_;
  Eigen::VectorXcd w_;  // reflection vector; empty when G is a pure phase
  cplx phase_{1.0};
};

/// Purification of the augmented training superposition at truncation T.
PurificationUnitary purify(const AugmentedSystem& a, int truncation);
/// Purification of (1/sqrt(M)) sum_p |p>|phi_{x_p}> for the rows of `points`.
PurificationUnitary purify_points(const Eigen::MatrixXd& points, int truncation);

class BlockEncoding {
 public:
  BlockEncoding(PurificationUnitary g, double error);

  double normalization() const noexcept { return 1.0; }
  int ancilla_count() const noexcept { return g_.width(); }
  double error() const noexcept { return error_; }
  /// Dimension of the encoded (target) register.
  Eigen::Index encoded_dim() const noexcept { return Eigen::Index{1} << target_width_; }
  /// (index, fock..., target).
  Layout layout() const;

  StateVector apply(StateVector s) const;
  /// <0|_anc U' |0>_anc as an encoded_dim square matrix.
  Eigen::MatrixXcd block() const;
  UnitaryOp to_unitary() const;
  const PurificationUnitary& purification() const noexcept { return g_; }

 private:
  PurificationUnitary g_;
  double error_;
  int target_width_;
};

/// encode_density with the error bound inherited from the truncation budget
/// of the points G was built from.
BlockEncoding encode_density(const PurificationUnitary& g, double error_budget);

struct Extraction {
  StateVector state;  ///< normalized rho' |q> on the target register
  double success_probability = 0.0;  ///< |rho' |q>|^2
};

/// Applies U' to |0>_anc |q>_target and post-selects the ancillas on |0>.
/// Throws DegenerateExtraction when the success probability is below 1e-12.
Extraction extract_kernel_vector(const BlockEncoding& be, std::uint64_t index);

/// Average success over the maximally mixed input on the first `valid`
/// indices: tr(rho'^2) / valid.
double mixed_input_success_probability(const BlockEncoding& be, Eigen::Index valid);

struct KernelVectorEstimate {
  Eigen::VectorXd kernel_vector;   ///< k_* with its norm, first M entries
  double restriction_probability;  ///< probability that the index is < M
};

/// Reads k_* off the extracted column q = M: (M + 1) sqrt(p) times the state.
KernelVectorEstimate kernel_vector_from_extraction(const Extraction& e, Eigen::Index m);

}  // namespace qgpr
