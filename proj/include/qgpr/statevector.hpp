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

// Dense statevector engine over named multi-qubit registers.
//
// Index convention: registers are listed most-significant first and, within a
// register, qubit 0 is the most significant bit. The basis index of a state is
// therefore the concatenation of the register values in layout order.

#pragma once

#include <complex>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace qgpr {

inline constexpr int kMaxQubits = 22;

using cplx = std::complex<double>;

struct Register {
  std::string name;
  int width = 1;
};

using Layout = std::vector<Register>;

/// Condition "register `reg` holds `value`" gating an operation.
struct Control {
  std::string reg;
  std::uint64_t value = 0;
};

using Controls = std::vector<Control>;

class StateVector {
 public:
  /// Throws InvalidArgument on duplicate/empty register names, zero widths,
  /// more than kMaxQubits qubits, a length mismatch, or (unless
  /// `subnormalized`) a norm differing from 1 by more than 1e-10.
  StateVector(Layout layout, Eigen::VectorXcd amplitudes, bool subnormalized = false);

  /// All registers in |0>.
  static StateVector zero(Layout layout);
  /// Computational basis state; `values` holds one entry per register.
  static StateVector basis(Layout layout, const std::vector<std::uint64_t>& values);
  /// Single-register state with the given amplitudes, which are normalized.
  static StateVector from_vector(std::string name, const Eigen::VectorXcd& amplitudes);

  const Layout& layout() const noexcept { return layout_; }
  const Eigen::VectorXcd& amplitudes() const noexcept { return amps_; }
  int num_qubits() const noexcept { return num_qubits_; }
  std::uint64_t dimension() const noexcept { return static_cast<std::uint64_t>(amps_.size()); }
  bool subnormalized() const noexcept { return subnormalized_; }
  double norm() const { return amps_.norm(); }

  bool has_register(std::string_view name) const;
  const Register& reg(std::string_view name) const;
  /// Bit position of the least significant qubit of `name`.
  int shift(std::string_view name) const;
  std::uint64_t register_value(std::uint64_t index, std::string_view name) const;
  std::uint64_t register_mask(std::string_view name) const;

  /// Renormalized copy; throws InvalidState for the zero vector.
  StateVector normalized() const;
  /// Appends a fresh register in |0> as the new least significant register.
  StateVector append_register(Register r) const;
  /// Amplitudes of a single-register state (or of the named register when all
  /// other registers are in |0>).
  Eigen::VectorXcd register_amplitudes(std::string_view name) const;

 private:
  Layout layout_;
  Eigen::VectorXcd amps_;
  bool subnormalized_ = false;
  int num_qubits_ = 0;
};

/// Layout concatenation `a` (more significant) then `b`.
StateVector tensor(const StateVector& a, const StateVector& b);

/// Dense unitary acting on an ordered list of target registers. The first
/// target is the most significant part of the matrix index.
class UnitaryOp {
 public:
  /// Throws InvalidArgument unless the matrix is square with power-of-two
  /// dimension and U^dagger U = I within `tolerance` (spectral norm).
  UnitaryOp(Eigen::MatrixXcd matrix, std::vector<std::string> targets, double tolerance = 1e-10);

  const Eigen::MatrixXcd& matrix() const noexcept { return matrix_; }
  const std::vector<std::string>& targets() const noexcept { return targets_; }
  int width() const noexcept { return width_; }

  UnitaryOp adjoint() const;
  UnitaryOp retarget(std::vector<std::string> targets) const;

 private:
  Eigen::MatrixXcd matrix_;
  std::vector<std::string> targets_;
  int width_ = 0;
};

/// Reduced state of one register.
class DensityOperator {
 public:
  /// Throws InvalidArgument unless Hermitian (1e-12), PSD (-1e-10) and of unit
  /// trace (1e-10).
  explicit DensityOperator(Eigen::MatrixXcd matrix);

  const Eigen::MatrixXcd& matrix() const noexcept { return matrix_; }
  Eigen::Index dimension() const noexcept { return matrix_.rows(); }
  double purity() const { return (matrix_ * matrix_).trace().real(); }

 private:
  Eigen::MatrixXcd matrix_;
};

double spectral_norm(const Eigen::MatrixXcd& m);
bool is_unitary(const Eigen::MatrixXcd& m, double tolerance = 1e-10);

namespace gates {
Eigen::MatrixXcd identity(int qubits);
Eigen::MatrixXcd pauli_x();
Eigen::MatrixXcd hadamard();
/// Real rotation |0> -> sqrt(1-a^2)|0> + a|1>, |1> -> -a|0> + sqrt(1-a^2)|1>.
Eigen::MatrixXcd flag_rotation(double amplitude);
/// Unitary DFT matrix |j> -> N^{-1/2} sum_k exp(2 pi i j k / N) |k>.
Eigen::MatrixXcd fourier(int qubits);
}  // namespace gates

StateVector apply(const UnitaryOp& u, StateVector s, const Controls& controls = {});

/// Applies blocks[v] to `targets` on the branch where `selector` holds v.
/// Missing trailing blocks act as identity.
StateVector apply_multiplexed(std::string_view selector, const std::vector<Eigen::MatrixXcd>& blocks,
                              const std::vector<std::string>& targets, StateVector s,
                              const Controls& controls = {});

/// Applies the same single-qubit gate to every qubit of `reg`.
StateVector apply_each_qubit(const Eigen::MatrixXcd& gate, std::string_view reg, StateVector s,
                             const Controls& controls = {});

StateVector qft(StateVector s, std::string_view reg, const Controls& controls = {});
StateVector inverse_qft(StateVector s, std::string_view reg, const Controls& controls = {});

/// Exchanges two registers of equal width.
StateVector swap_registers(std::string_view a, std::string_view b, StateVector s,
                           const Controls& controls = {});

/// Reduced density operator of `keep` (the state is renormalized first).
DensityOperator partial_trace(const StateVector& s, std::string_view keep);

/// <psi| |value><value| |psi> on register `reg`.
double measure_probability(const StateVector& s, std::string_view reg, std::uint64_t value);
/// <psi| P |psi> with P acting on `reg`; P must be an orthogonal projector.
double measure_probability(const StateVector& s, std::string_view reg, const Eigen::MatrixXcd& projector);

/// Born-rule probabilities of every value of `reg`.
std::vector<double> register_distribution(const StateVector& s, std::string_view reg);

/// Multinomial sample of `shots` measurements of `reg`; deterministic per seed.
std::map<std::uint64_t, std::uint64_t> sample_shots(const StateVector& s, std::string_view reg,
                                                    std::uint64_t shots, std::uint64_t seed);

struct PostSelection {
  StateVector state;
  double probability = 0.0;
};

/// Projects the given registers onto the given values, removes them from the
/// layout and renormalizes. Throws InvalidState when the branch is empty.
PostSelection postselect(const StateVector& s, const Controls& outcomes);

}  // namespace qgpr
