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

#include "qgpr/classical_gpr.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "qgpr/errors.hpp"

namespace qgpr {

inline constexpr double kPseudoInverseCutoff = 1e-12;

void Dataset::validate() const {
  if (inputs.rows() < 1) throw InvalidArgument("dataset needs at least one training point");
  if (inputs.cols() < 1) throw InvalidArgument("input dimension must be at least 1");
  if (targets.size() != inputs.rows()) throw InvalidArgument("targets length must equal the number of inputs");
  if (test_point.size() != inputs.cols()) throw InvalidArgument("test point dimension does not match inputs");
  if (!inputs.allFinite() || !targets.allFinite() || !test_point.allFinite())
    throw InvalidArgument("dataset contains non-finite values");
}

double se_kernel(const Eigen::Ref<const Eigen::VectorXd>& a, const Eigen::Ref<const Eigen::VectorXd>& b) {
  if (a.size() != b.size()) throw InvalidArgument("se_kernel(): dimension mismatch");
  return std::exp(-0.5 * (a - b).squaredNorm());
}

KernelSystem decompose(const Eigen::MatrixXd& gram) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(gram);
  if (es.info() != Eigen::Success) throw NumericalFailure("symmetric eigendecomposition did not converge");
  const Eigen::Index m = gram.rows();
  KernelSystem ks;
  ks.gram = gram;
  ks.eigenvalues = es.eigenvalues().reverse();
  ks.eigenvectors = es.eigenvectors().rowwise().reverse();
  const double lo = ks.eigenvalues(m - 1);
  ks.condition_number = lo > 0.0 ? ks.eigenvalues(0) / lo : std::numeric_limits<double>::infinity();
  return ks;
}

KernelSystem kernel_matrix(const Dataset& d) {
  d.validate();
  const Eigen::Index m = d.size();
  Eigen::MatrixXd gram(m, m);
  for (Eigen::Index p = 0; p < m; ++p) {
    gram(p, p) = 1.0;
    for (Eigen::Index q = p + 1; q < m; ++q) {
      gram(p, q) = se_kernel(d.inputs.row(p).transpose(), d.inputs.row(q).transpose());
      gram(q, p) = gram(p, q);
    }
  }
  return decompose(gram);
}

Eigen::VectorXd kernel_vector(const Dataset& d) {
  d.validate();
  Eigen::VectorXd k(d.size());
  for (Eigen::Index p = 0; p < d.size(); ++p) k(p) = se_kernel(d.test_point, d.inputs.row(p).transpose());
  return k;
}

Prediction predict_cholesky(const Dataset& d, const Hyperparams& h) {
  if (h.noise_variance < 0.0) throw InvalidArgument("noise variance must be non-negative");
  const KernelSystem ks = kernel_matrix(d);
  const Eigen::VectorXd k = kernel_vector(d);
  const Eigen::MatrixXd a =
      ks.gram + h.noise_variance * Eigen::MatrixXd::Identity(d.size(), d.size());
  Eigen::LLT<Eigen::MatrixXd> llt(a);
  if (llt.info() != Eigen::Success) {
    std::ostringstream os;
    os << "Cholesky factorization failed: K + sigma^2 I is not positive definite (sigma^2 = " << h.noise_variance
       << ", min eigenvalue of K = " << ks.eigenvalues(d.size() - 1) << ")";
    throw NumericalFailure(os.str());
  }
  const auto& l = llt.matrixL();
  const Eigen::VectorXd alpha = llt.matrixU().solve(l.solve(d.targets));
  const Eigen::VectorXd v = l.solve(k);
  return {k.dot(alpha), 1.0 - v.squaredNorm()};
}

Prediction predict_spectral(const KernelSystem& ks, const Eigen::VectorXd& kernel_vec, const Eigen::VectorXd& targets,
                            double noise_variance) {
  const Eigen::Index m = ks.eigenvalues.size();
  if (kernel_vec.size() != m || targets.size() != m) throw InvalidArgument("predict_spectral(): size mismatch");
  const double nk = kernel_vec.norm();
  const double ny = targets.norm();
  // Coefficients of the unit-normalized vectors in the eigenbasis.
  const Eigen::VectorXd alpha = nk > 0.0 ? Eigen::VectorXd(ks.eigenvectors.transpose() * kernel_vec / nk)
                                         : Eigen::VectorXd::Zero(m);
  const Eigen::VectorXd beta =
      ny > 0.0 ? Eigen::VectorXd(ks.eigenvectors.transpose() * targets / ny) : Eigen::VectorXd::Zero(m);
  double mean_sum = 0.0;
  double var_sum = 0.0;
  for (Eigen::Index j = 0; j < m; ++j) {
    const double denom = ks.eigenvalues(j) + noise_variance;
    if (std::abs(denom) <= kPseudoInverseCutoff) continue;
    if (denom < 0.0) throw InvalidState("predict_spectral(): lambda_j + sigma^2 is negative");
    mean_sum += alpha(j) * beta(j) / denom;
    var_sum += alpha(j) * alpha(j) / denom;
  }
  return {mean_sum * nk * ny, 1.0 - var_sum * nk * nk};
}

Prediction predict_spectral(const KernelSystem& ks, const Dataset& d, const Hyperparams& h) {
  if (h.noise_variance < 0.0) throw InvalidArgument("noise variance must be non-negative");
  return predict_spectral(ks, kernel_vector(d), d.targets, h.noise_variance);
}

}  // namespace qgpr
