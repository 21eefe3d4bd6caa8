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

// Amplitude encoding of a real data vector by uniform superposition, a
// data-conditioned flag rotation and post-selection of the flag.

#pragma once

#include <cstdint>
#include <string>

#include <Eigen/Dense>

#include "qgpr/statevector.hpp"

namespace qgpr {

struct EncodedVector {
  StateVector state;               ///< unit vector v / |v| on the index register
  double success_probability = 0;  ///< probability of the flag reading |1>
  double max_abs = 0;              ///< max_j |v_j|
  double norm_sq_estimate = 0;     ///< padded_size * success_probability * max_abs^2
  Eigen::Index original_size = 0;
  Eigen::Index padded_size = 0;    ///< index register dimension (power of two, >= 2)
};

/// Smallest power of two >= max(n, 2).
Eigen::Index padded_dimension(Eigen::Index n);
int qubits_for(Eigen::Index dimension);

/// Simulates QFT on |0>, the conditioned rotation with amplitudes v_j/|v|_max on
/// a flag qubit, and post-selection of flag = 1. Zero-pads to a power of two.
/// Throws InvalidArgument for an empty or zero vector.
EncodedVector encode(const Eigen::VectorXd& v, const std::string& register_name = "index");

/// |v|^2 = M p |v|_max^2. With shots == 0 the exact probability is used;
/// otherwise the flag outcome is sampled `shots` times with `seed`.
double estimate_norm_sq(const EncodedVector& e, std::uint64_t shots = 0, std::uint64_t seed = 0);

/// Real amplitudes of the first original_size entries of the encoded state.
Eigen::VectorXd decode(const EncodedVector& e);

}  // namespace qgpr
