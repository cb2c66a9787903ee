// Copyright 2026 The qwnn authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <string_view>
#include <vector>

#include "qwnn/qstate.hpp"

namespace qwnn {

/// Total Boolean function f: {0,1}^m -> {0,1}^n as an explicit table.
struct BooleanFunctionSpec {
  int arity_in = 0;
  int arity_out = 0;
  std::vector<std::uint64_t> table;  // size 2^arity_in, entries < 2^arity_out

  static BooleanFunctionSpec from_function(
      int arity_in, int arity_out,
      const std::function<std::uint64_t(std::uint64_t)>& f);
  static BooleanFunctionSpec xor2();

  void validate() const;
};

Mat2 identity_gate();
Mat2 pauli_x_gate();
Mat2 hadamard_gate();

/// Default filler for the unspecified U slot of the qPLN read operator:
/// H*S*H, a square root of X.
Mat2 sqrt_x_gate();

/// Real Givens rotation [[cos p, -sin p], [sin p, cos p]].
Mat2 rotation_gate(double angle);

/// Parameters of the qPLN/qMPLN read operators. `u_gate` fills the qPLN
/// selector-11 slot; `angles[k]` is the qMPLN rotation for selector value k.
struct QplnAngleParams {
  Mat2 u_gate = sqrt_x_gate();
  std::vector<double> angles;
};

/// |x, c> -> |x, c xor f(x)>.
SparseState apply_uf(const SparseState& state, const BooleanFunctionSpec& f,
                     std::string_view input_reg, std::string_view target_reg);

/// qRAM read: flip the output qubit on entries whose selector qubit is 1.
/// Positions are global display positions.
SparseState apply_a_cnot(const SparseState& state, int selector_position,
                         int output_position);

/// qPLN read: selector pair 00 -> I, 01 -> X, 10 -> H, 11 -> params.u_gate
/// on the output qubit. selector_pair[0] is the high-order selector bit.
SparseState apply_a_qpln(const SparseState& state, std::array<int, 2> selector_pair,
                         int output_position, const QplnAngleParams& params);

/// qMPLN read: rotation by params.angles[k] on the output qubit when the
/// selector qubits (first position = high-order bit) read k.
SparseState apply_a_qmpln(const SparseState& state,
                          const std::vector<int>& selector_positions,
                          int output_position, const QplnAngleParams& params);

/// Add 1 (mod 2^width) to the perf field of entries whose out field equals
/// their desired field. A basis permutation; layout construction guarantees
/// no wrap on SAL flows.
SparseState increment_if_equal(const SparseState& state, std::string_view out_reg,
                               std::string_view desired_reg, std::string_view perf_reg);

using ObjectivePredicate = std::function<bool(const RegisterLayout&, BasisLabel)>;

/// Conditional flip of the 1-bit objective register. Requires the bit to be
/// 0 on every entry so the flip equals direct assignment of the predicate.
SparseState mark_objective(const SparseState& state, const ObjectivePredicate& predicate,
                           std::string_view obj_reg);

struct NonlinearResult {
  SparseState state;
  int flag = 0;
};

/// Abrams-Lloyd style OR: flag = 1 iff any entry carries flag bit 1; the
/// flag bit of every entry is overwritten with the result. Labels that
/// collide merge by amplitude addition and the state is renormalized.
NonlinearResult nonlinear_or(const SparseState& state, std::string_view flag_reg);

}  // namespace qwnn
