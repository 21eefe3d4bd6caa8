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

#include <cmath>

#include <doctest.h>

#include "qgpr/block_encoding.hpp"
#include "qgpr/coherent_kernel.hpp"
#include "qgpr/errors.hpp"
#include "test_util.hpp"

using namespace qgpr;
using qgpr::testing::max_abs;
using qgpr::testing::Rng;

namespace {

Eigen::MatrixXd all_points(const Dataset& d) {
  Eigen::MatrixXd p(d.size() + 1, d.dimension());
  p.topRows(d.size()) = d.inputs;
  p.row(d.size()) = d.test_point.transpose();
  return p;
}

struct Built {
  AugmentedSystem aug;
  int truncation;
  BlockEncoding be;
};

Built build(const Dataset& d, double delta) {
  AugmentedSystem aug = augment(d);
  const Eigen::MatrixXd pts = all_points(d);
  const int t = truncation_for_points(pts, delta);
  BlockEncoding be = encode_density(purify(aug, t), kernel_entry_error_bound(pts, t));
  return {std::move(aug), t, std::move(be)};
}

}  // namespace

TEST_CASE("augmented system") {
  Rng rng(1);
  Dataset d = rng.dataset(4, 2);
  d.test_point = d.inputs.row(0).transpose();
  const AugmentedSystem a = augment(d);
  CHECK(a.original_size == 4);
  CHECK(a.dataset.size() == 5);
  CHECK(a.dataset.targets(4) == 0.0);
  CHECK((a.gram_prime.row(0) - a.gram_prime.row(4)).cwiseAbs().maxCoeff() < 1e-15);
  CHECK(std::abs(5.0 * a.gram_prime(4, 4) - 1.0) < 1e-15);

  d = rng.dataset(4, 2);
  const AugmentedSystem b = augment(d);
  const Eigen::VectorXd kv = kernel_vector(d);
  for (int p = 0; p < 4; ++p) CHECK(std::abs(5.0 * b.gram_prime(p, 4) - kv(p)) < 1e-15);
}

TEST_CASE("purification unitary") {
  Rng rng(2);
  const Dataset d = rng.dataset(2, 1);
  const AugmentedSystem a = augment(d);
  const PurificationUnitary g = purify(a, 8);
  const UnitaryOp u = g.to_unitary();
  CHECK(is_unitary(u.matrix(), 1e-10));
  CHECK(max_abs(u.matrix().col(0) - g.purification().amplitudes()) < 1e-12);

  // apply and apply-adjoint agree with the dense matrix.
  const StateVector psi(g.layout(), rng.state(static_cast<Eigen::Index>(g.purification().dimension())));
  CHECK(max_abs(g.apply(psi).amplitudes() - u.matrix() * psi.amplitudes()) < 1e-12);
  CHECK(max_abs(g.apply(psi, true).amplitudes() - u.matrix().adjoint() * psi.amplitudes()) < 1e-12);

  const DensityOperator rho = kernel_density(g.purification());
  const Eigen::MatrixXd kp = rho.matrix().topLeftCorner(3, 3).real();
  const double bound = kernel_entry_error_bound(a.dataset.inputs, 8) / 3.0;
  CHECK((kp - a.gram_prime).cwiseAbs().maxCoeff() <= bound);
}

TEST_CASE("block of the encoding equals the reduced density operator") {
  Rng rng(3);
  for (int i = 0; i < 3; ++i) {
    const Dataset d = rng.dataset(2 + i, 1, 1.0);
    const Built b = build(d, 1e-8);
    const Eigen::MatrixXcd block = b.be.block();
    const DensityOperator rho = kernel_density(b.be.purification().purification());
    CHECK(max_abs(block - rho.matrix()) <= 1e-10);
    // Block-encoding inequality with gamma = 1 against the exact K'.
    const Eigen::Index m1 = b.aug.dataset.size();
    Eigen::MatrixXcd target = Eigen::MatrixXcd::Zero(block.rows(), block.cols());
    target.topLeftCorner(m1, m1) = b.aug.gram_prime.cast<cplx>();
    CHECK(spectral_norm(block - target) <= b.be.error());
    CHECK(b.be.normalization() == 1.0);
    if (b.be.layout().size() <= 4 && i == 0) CHECK(is_unitary(b.be.to_unitary().matrix(), 1e-10));
  }
}

TEST_CASE("single training point") {
  Dataset d;
  d.inputs = Eigen::MatrixXd::Constant(1, 1, 0.3);
  d.targets = Eigen::VectorXd::Ones(1);
  d.test_point = Eigen::VectorXd::Constant(1, 0.3);
  // The purification of a single point is a product state: rho' is pure.
  const PurificationUnitary g = purify_points(d.inputs, 6);
  const BlockEncoding be = encode_density(g, 0.0);
  const Eigen::MatrixXcd block = be.block();
  CHECK(max_abs(block * block - block) < 1e-12);
  CHECK(std::abs(block.trace() - 1.0) < 1e-12);
  const Extraction e = extract_kernel_vector(be, 0);
  CHECK(e.success_probability == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::abs(std::abs(e.state.amplitudes()(0)) - 1.0) < 1e-12);
}

TEST_CASE("kernel-vector extraction") {
  Rng rng(4);
  for (int i = 0; i < 5; ++i) {
    const Dataset d = rng.dataset(4, 1);
    const Built b = build(d, 1e-8);
    const Extraction e = extract_kernel_vector(b.be, 4);
    const Eigen::VectorXd col = b.aug.gram_prime.col(4);
    CHECK(std::abs(e.success_probability - col.squaredNorm()) <= 1e-10);
    CHECK(e.success_probability > 0.0);
    CHECK(e.success_probability <= 1.0);

    const KernelVectorEstimate kv = kernel_vector_from_extraction(e, 4);
    const Eigen::VectorXd ref = kernel_vector(d);
    CHECK(std::abs(kv.kernel_vector.normalized().dot(ref.normalized())) >= 1.0 - 1e-6);
    CHECK((kv.kernel_vector - ref).cwiseAbs().maxCoeff() < 1e-6);
    CHECK(kv.restriction_probability == doctest::Approx(ref.squaredNorm() / (ref.squaredNorm() + 1.0)).epsilon(1e-6));
  }
}

TEST_CASE("extraction is proportional to every column") {
  Rng rng(5);
  const double delta = 1e-6;
  const Dataset d = rng.dataset(3, 2, 1.0);
  const Built b = build(d, delta);
  const Eigen::Index m1 = b.aug.dataset.size();
  double total = 0.0;
  for (Eigen::Index q = 0; q < m1; ++q) {
    const Extraction e = extract_kernel_vector(b.be, static_cast<std::uint64_t>(q));
    const Eigen::VectorXd col = b.aug.gram_prime.col(q).normalized();
    const double ov = std::abs(e.state.amplitudes().head(m1).dot(col.cast<cplx>()));
    CHECK(ov >= 1.0 - 10.0 * delta);
    total += e.success_probability;
  }
  const Eigen::MatrixXcd block = b.be.block();
  const double purity = (block * block).trace().real();
  CHECK(std::abs(total - purity) < 1e-12);
  CHECK(std::abs(mixed_input_success_probability(b.be, m1) - purity / static_cast<double>(m1)) < 1e-12);
}

TEST_CASE("degenerate extraction is reported") {
  Rng rng(6);
  const Dataset d = rng.dataset(4, 1);
  const Built b = build(d, 1e-6);
  // Index 7 is a phantom slot of the padded index register.
  CHECK_THROWS_AS(extract_kernel_vector(b.be, 7), DegenerateExtraction);
  CHECK_THROWS_AS(extract_kernel_vector(b.be, 64), InvalidArgument);
}
