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

// Exact Gaussian process regression with the unit squared-exponential kernel
// k(a, b) = exp(-|a - b|^2 / 2). Serves as the reference for every simulated
// quantum prediction.

#pragma once

#include <Eigen/Dense>

namespace qgpr {

/// Training inputs (one row per point), targets and a single test point.
struct Dataset {
  Eigen::MatrixXd inputs;
  Eigen::VectorXd targets;
  Eigen::VectorXd test_point;

  Eigen::Index size() const noexcept { return inputs.rows(); }
  Eigen::Index dimension() const noexcept { return inputs.cols(); }

  /// Throws InvalidArgument when M < 1, N < 1, shapes disagree or any value
  /// is non-finite.
  void validate() const;
};

struct Hyperparams {
  double noise_variance = 0.1;
};

/// Gram matrix and its spectrum, eigenvalues in descending order with the
/// matching eigenvectors stored as columns.
struct KernelSystem {
  Eigen::MatrixXd gram;
  Eigen::VectorXd eigenvalues;
  Eigen::MatrixXd eigenvectors;
  double condition_number = 0.0;
};

struct Prediction {
  double mean = 0.0;
  double variance = 0.0;
};

double se_kernel(const Eigen::Ref<const Eigen::VectorXd>& a, const Eigen::Ref<const Eigen::VectorXd>& b);

/// Symmetric eigendecomposition of an arbitrary real symmetric matrix.
KernelSystem decompose(const Eigen::MatrixXd& gram);

KernelSystem kernel_matrix(const Dataset& d);
Eigen::VectorXd kernel_vector(const Dataset& d);

/// Cholesky route. Throws NumericalFailure when K + sigma^2 I is not positive
/// definite.
Prediction predict_cholesky(const Dataset& d, const Hyperparams& h);

/// Eigenbasis route. Eigenvalues with |lambda + sigma^2| <= 1e-12 are dropped
/// (pseudo-inverse); a negative shifted eigenvalue below that throws
/// InvalidState.
Prediction predict_spectral(const KernelSystem& ks, const Dataset& d, const Hyperparams& h);

/// Same as predict_spectral on explicit kernel vector and targets.
Prediction predict_spectral(const KernelSystem& ks, const Eigen::VectorXd& kernel_vec, const Eigen::VectorXd& targets,
                            double noise_variance);

}  // namespace qgpr
