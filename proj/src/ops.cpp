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

#include "qwnn/ops.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <stdexcept>

namespace qwnn {

BooleanFunctionSpec BooleanFunctionSpec::from_function(
    int arity_in, int arity_out, const std::function<std::uint64_t(std::uint64_t)>& f) {
  BooleanFunctionSpec spec;
  spec.arity_in = arity_in;
  spec.arity_out = arity_out;
  spec.table.resize(std::size_t{1} << arity_in);
  for (std::uint64_t x = 0; x < spec.table.size(); ++x) {
    spec.table[x] = f(x);
  }
  spec.validate();
  return spec;
}

BooleanFunctionSpec BooleanFunctionSpec::xor2() {
  return from_function(2, 1, [](std::uint64_t x) { return ((x >> 1) ^ x) & 1u; });
}

void BooleanFunctionSpec::validate() const {
  if (arity_in < 1 || arity_in > 32 || arity_out < 1 || arity_out > 32) {
    throw std::invalid_argument("boolean function arities out of range");
  }
  if (table.size() != (std::size_t{1} << arity_in)) {
    throw std::invalid_argument("boolean function table is not total");
  }
  std::uint64_t limit = std::uint64_t{1} << arity_out;
  for (std::uint64_t v : table) {
    if (v >= limit) {
      throw std::invalid_argument("boolean function output exceeds arity_out bits");
    }
  }
}

Mat2 identity_gate() {
  return {{{Amplitude{1, 0}, Amplitude{0, 0}}, {Amplitude{0, 0}, Amplitude{1, 0}}}};
}

Mat2 pauli_x_gate() {
  return {{{Amplitude{0, 0}, Amplitude{1, 0}}, {Amplitude{1, 0}, Amplitude{0, 0}}}};
}

Mat2 hadamard_gate() {
  const double c = 1.0 / std::sqrt(2.0);
  return {{{Amplitude{c, 0}, Amplitude{c, 0}}, {Amplitude{c, 0}, Amplitude{-c, 0}}}};
}

Mat2 sqrt_x_gate() {
  // H * diag(1, i) * H
  return {{{Amplitude{0.5, 0.5}, Amplitude{0.5, -0.5}},
           {Amplitude{0.5, -0.5}, Amplitude{0.5, 0.5}}}};
}

Mat2 rotation_gate(double angle) {
  if (!std::isfinite(angle)) {
    throw std::invalid_argument("rotation angle must be finite");
  }
  double c = std::cos(angle);
  double s = std::sin(angle);
  return {{{Amplitude{c, 0}, Amplitude{-s, 0}}, {Amplitude{s, 0}, Amplitude{c, 0}}}};
}

SparseState apply_uf(const SparseState& state, const BooleanFunctionSpec& f,
                     std::string_view input_reg, std::string_view target_reg) {
  f.validate();
  const RegisterLayout& layout = state.layout();
  if (layout.reg(input_reg).width != f.arity_in ||
      layout.reg(target_reg).width != f.arity_out) {
    throw std::invalid_argument("register widths do not match boolean function arities");
  }
  RegisterLayout::FieldRef in_f = layout.field(input_reg);
  RegisterLayout::FieldRef out_f = layout.field(target_reg);
  return apply_permutation(state, [&f, in_f, out_f](BasisLabel label) {
    return out_f.insert(label, out_f.extract(label) ^ f.table[in_f.extract(label)]);
  });
}

SparseState apply_a_cnot(const SparseState& state, int selector_position,
                         int output_position) {
  if (selector_position == output_position) {
    throw std::invalid_argument("selector and output positions collide");
  }
  const RegisterLayout& layout = state.layout();
  return apply_permutation(state, [&layout, selector_position, output_position](BasisLabel label) {
    if (layout.bit(label, selector_position)) {
      return layout.with_bit(label, output_position,
                             layout.bit(label, output_position) ^ 1);
    }
    return label;
  });
}

SparseState apply_a_qpln(const SparseState& state, std::array<int, 2> selector_pair,
                         int output_position, const QplnAngleParams& params) {
  if (selector_pair[0] == selector_pair[1] || selector_pair[0] == output_position ||
      selector_pair[1] == output_position) {
    throw std::invalid_argument("qPLN positions must be distinct");
  }
  if (!is_unitary(params.u_gate)) {
    throw std::invalid_argument("qPLN u_gate is not unitary");
  }
  const RegisterLayout& layout = state.layout();
  auto selector_is = [&layout, selector_pair](int value) {
    return [&layout, selector_pair, value](BasisLabel label) {
      int v = (layout.bit(label, selector_pair[0]) << 1) |
              layout.bit(label, selector_pair[1]);
      return v == value;
    };
  };
  // Branch subspaces are fixed by the selector bits, so applying the three
  // non-identity branches in sequence is exact.
  SparseState result = apply_1q_unitary(state, output_position, pauli_x_gate(), selector_is(1));
  result = apply_1q_unitary(result, output_position, hadamard_gate(), selector_is(2));
  result = apply_1q_unitary(result, output_position, params.u_gate, selector_is(3));
  return result;
}

SparseState apply_a_qmpln(const SparseState& state,
                          const std::vector<int>& selector_positions,
                          int output_position, const QplnAngleParams& params) {
  if (selector_positions.empty()) {
    throw std::invalid_argument("qMPLN needs at least one selector qubit");
  }
  for (std::size_t i = 0; i < selector_positions.size(); ++i) {
    if (selector_positions[i] == output_position) {
      throw std::invalid_argument("qMPLN selector collides with output");
    }
    for (std::size_t j = i + 1; j < selector_positions.size(); ++j) {
      if (selector_positions[i] == selector_positions[j]) {
        throw std::invalid_argument("qMPLN selector positions must be distinct");
      }
    }
  }
  std::size_t branches = std::size_t{1} << selector_positions.size();
  if (params.angles.size() < branches) {
    throw std::invalid_argument("qMPLN needs an angle for every selector value");
  }
  const RegisterLayout& layout = state.layout();
  SparseState result = state;
  for (std::size_t k = 0; k < branches; ++k) {
    auto in_branch = [&layout, &selector_positions, k](BasisLabel label) {
      std::uint64_t v = 0;
      for (int pos : selector_positions) {
        v = (v << 1) | static_cast<std::uint64_t>(layout.bit(label, pos));
      }
      return v == k;
    };
    result = apply_1q_unitary(result, output_position, rotation_gate(params.angles[k]),
                              in_branch);
  }
  return result;
}

SparseState increment_if_equal(const SparseState& state, std::string_view out_reg,
                               std::string_view desired_reg, std::string_view perf_reg) {
  const RegisterLayout& layout = state.layout();
  if (layout.reg(out_reg).width != layout.reg(desired_reg).width) {
    throw std::invalid_argument("out and desired registers differ in width");
  }
  RegisterLayout::FieldRef o_f = layout.field(out_reg);
  RegisterLayout::FieldRef d_f = layout.field(desired_reg);
  RegisterLayout::FieldRef p_f = layout.field(perf_reg);
  return apply_permutation(state, [o_f, d_f, p_f](BasisLabel label) {
    if (o_f.extract(label) != d_f.extract(label)) return label;
    return p_f.insert(label, (p_f.extract(label) + 1) & p_f.mask);
  });
}

SparseState mark_objective(const SparseState& state, const ObjectivePredicate& predicate,
                           std::string_view obj_reg) {
  const RegisterLayout& layout = state.layout();
  if (layout.reg(obj_reg).width != 1) {
    throw std::invalid_argument("objective register must have width 1");
  }
  RegisterLayout::FieldRef obj_f = layout.field(obj_reg);
  for (const Entry& e : state.entries()) {
    if (obj_f.extract(e.label) != 0) {
      throw std::domain_error("objective bit not 0 before mark_objective");
    }
  }
  return apply_permutation(state, [&layout, &predicate, obj_f](BasisLabel label) {
    return predicate(layout, label) ? obj_f.insert(label, 1) : label;
  });
}

NonlinearResult nonlinear_or(const SparseState& state, std::string_view flag_reg) {
  const RegisterLayout& layout = state.layout();
  if (layout.reg(flag_reg).width != 1) {
    throw std::invalid_argument("flag register must have width 1");
  }
  RegisterLayout::FieldRef flag_f = layout.field(flag_reg);
  int flag = 0;
  for (const Entry& e : state.entries()) {
    if (flag_f.extract(e.label) != 0) {
      flag = 1;
      break;
    }
  }
  if (flag == 0) {
    return NonlinearResult{state, 0};
  }
  std::vector<Entry> moved;
  moved.reserve(state.size());
  for (const Entry& e : state.entries()) {
    moved.push_back(Entry{flag_f.insert(e.label, 1), e.amp});
  }
  std::sort(moved.begin(), moved.end(),
            [](const Entry& a, const Entry& b) { return a.label < b.label; });
  std::size_t out = 0;
  double n2 = 0.0;
  for (std::size_t i = 0; i < moved.size();) {
    BasisLabel label = moved[i].label;
    Amplitude amp = moved[i].amp;
    for (++i; i < moved.size() && moved[i].label == label; ++i) amp += moved[i].amp;
    if (std::abs(amp) >= kPruneThreshold) {
      moved[out++] = Entry{label, amp};
      n2 += std::norm(amp);
    }
  }
  moved.resize(out);
  if (n2 <= 0.0) {
    // All amplitude cancelled in the merge; cannot happen in SAL flows where
    // the flag bit is a function of the remaining fields.
    throw std::logic_error("nonlinear_or merged state has zero norm");
  }
  double scale = 1.0 / std::sqrt(n2);
  for (Entry& e : moved) e.amp *= scale;
  return NonlinearResult{SparseState(layout, std::move(moved)), 1};
}

}  // namespace qwnn
