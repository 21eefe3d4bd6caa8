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

#include "qgpr/amplitude_encoding.hpp"

#include <cmath>
#include <random>

#include "qgpr/errors.hpp"

namespace qgpr {

Eigen::Index padded_dimension(Eigen::Index n) {
  Eigen::Index p = 2;
  while (p < n) p <<= 1;
  return p;
}

int qubits_for(Eigen::Index dimension) {
  int k = 0;
  while ((Eigen::Index{1} << k) < dimension) ++k;
  return k;
}

EncodedVector encode(const Eigen::VectorXd& v, const std::string& register_name) {
  if (v.size() == 0) throw InvalidArgument("encode(): empty vector");
  if (!v.allFinite()) throw InvalidArgument("encode(): non-finite entries");
  const double vmax = v.cwiseAbs().maxCoeff();
  if (vmax == 0.0) throw InvalidArgument("encode(): zero vector cannot be amplitude-encoded");

  const Eigen::Index padded = padded_dimension(v.size());
  const int width = qubits_for(padded);
  StateVector s = StateVector::zero({{register_name, width}, {"flag", 1}});
  s = qft(std::move(s), register_name);

  // The data oracle is a classical read: entry j lands directly in the
  // rotation amplitude of branch j. Padding entries rotate by zero.
  std::vector<Eigen::MatrixXcd> rotations;
  rotations.reserve(static_cast<std::size_t>(padded));
  for (Eigen::Index j = 0; j < padded; ++j)
    rotations.push_back(gates::flag_rotation(j < v.size() ? v(j) / vmax : 0.0));
  s = apply_multiplexed(register_name, rotations, {"flag"}, std::move(s));

  PostSelection ps = postselect(s, {{"flag", 1}});
  const double p = ps.probability;
  return EncodedVector{std::move(ps.state), p, vmax, static_cast<double>(padded) * p * vmax * vmax, v.size(), padded};
}

double estimate_norm_sq(const EncodedVector& e, std::uint64_t shots, std::uint64_t seed) {
  double p = e.success_probability;
  if (shots > 0) {
    std::mt19937_64 rng(seed);
    std::binomial_distribution<std::uint64_t> flag(shots, std::min(1.0, p));
    p = static_cast<double>(flag(rng)) / static_cast<double>(shots);
  }
  return static_cast<double>(e.padded_size) * p * e.max_abs * e.max_abs;
}

Eigen::VectorXd decode(const EncodedVector& e) {
  const Eigen::VectorXcd amps = e.state.amplitudes();
  return amps.head(e.original_size).real();
}

}  // namespace qgpr
