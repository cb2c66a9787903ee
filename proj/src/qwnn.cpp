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

#include "qwnn/qwnn.hpp"

#include <bit>
#include <stdexcept>

namespace qwnn {

QLayoutPlan build_plan(std::span<const Architecture> archs, int n_patterns, int qubit_cap) {
  if (archs.empty()) {
    throw std::invalid_argument("build_plan needs at least one architecture");
  }
  if (n_patterns < 0) {
    throw std::invalid_argument("negative pattern count");
  }
  int n_inputs = archs[0].n_network_inputs();
  int s_width = 0;
  int hidden_width = 0;
  for (const Architecture& arch : archs) {
    if (arch.n_network_inputs() != n_inputs) {
      throw std::invalid_argument("architectures disagree on network input width");
    }
    s_width = std::max(s_width, arch.selector_count());
    hidden_width = std::max(hidden_width, static_cast<int>(arch.neurons().size()) - 1);
  }
  int perf_width = std::max(1, static_cast<int>(std::bit_width(static_cast<unsigned>(n_patterns))));
  int arch_width =
      archs.size() > 1
          ? static_cast<int>(std::bit_width(static_cast<unsigned>(archs.size() - 1)))
          : 0;

  std::vector<Register> registers = {{"i", n_inputs}, {"s", s_width}, {"o", 1},
                                     {"d", 1},        {"perf", perf_width}, {"obj", 1}};
  if (arch_width > 0) registers.push_back({"arch", arch_width});
  if (hidden_width > 0) registers.push_back({"hidden", hidden_width});

  QLayoutPlan plan;
  plan.layout = RegisterLayout(std::move(registers), qubit_cap);
  plan.n_archs = static_cast<int>(archs.size());
  plan.arch_width = arch_width;
  plan.hidden_width = hidden_width;
  return plan;
}

QNetworkOperator::QNetworkOperator(std::vector<Architecture> archs, int n_patterns,
                                   int qubit_cap)
    : archs_(std::move(archs)), plan_(build_plan(archs_, n_patterns, qubit_cap)) {}

namespace {

constexpr std::size_t kMaxNeurons = 64;

// Register fields and per-neuron wiring resolved to shifts and xor masks,
// so the per-entry loop touches no register names.
struct CompiledSource {
  bool from_input = false;
  int value = 0;  // input bit shift when from_input, else neuron index
};

struct CompiledNeuron {
  std::vector<CompiledSource> sources;
  int selector_shift_base = 0;   // shift for address 0; address a uses base - a
  std::uint64_t out_xor = 0;     // o bit or hidden-slot bit of this neuron
};

struct CompiledNet {
  RegisterLayout::FieldRef i_f, s_f, arch_f;
  bool has_arch = false;
  std::uint64_t clean_mask = 0;  // o and hidden bits, all of which must be 0
  std::vector<std::vector<CompiledNeuron>> archs;
};

CompiledNet compile_network(const RegisterLayout& layout, std::span<const Architecture> archs,
                            int arch_width) {
  CompiledNet net;
  net.i_f = layout.field("i");
  net.s_f = layout.field("s");
  net.has_arch = arch_width > 0;
  if (net.has_arch) net.arch_f = layout.field("arch");

  int total = layout.total_width();
  auto bit_mask = [total](int position) {
    return std::uint64_t{1} << (total - 1 - position);
  };
  std::uint64_t o_mask = bit_mask(layout.bit_position("o", 0));
  net.clean_mask = o_mask;
  RegisterLayout::FieldRef hidden_f{};
  if (layout.has("hidden")) {
    hidden_f = layout.field("hidden");
    net.clean_mask |= hidden_f.mask << hidden_f.shift;
  }

  for (const Architecture& arch : archs) {
    std::vector<CompiledNeuron> neurons;
    int hidden_slot = 0;
    for (std::size_t j = 0; j < arch.neurons().size(); ++j) {
      CompiledNeuron cn;
      for (const Source& src : arch.neurons()[j].inputs) {
        if (src.kind == Source::Kind::NetworkInput) {
          cn.sources.push_back({true, arch.n_network_inputs() - 1 - src.index});
        } else {
          cn.sources.push_back({false, src.index});
        }
      }
      cn.selector_shift_base =
          net.s_f.width - 1 - arch.selector_offset(static_cast<int>(j));
      if (static_cast<int>(j) == arch.output_neuron()) {
        cn.out_xor = o_mask;
      } else {
        cn.out_xor = bit_mask(layout.bit_position("hidden", hidden_slot));
        ++hidden_slot;
      }
      neurons.push_back(std::move(cn));
    }
    net.archs.push_back(std::move(neurons));
  }
  return net;
}

// Neuron outputs depend only on the i, s and arch fields, which the xor
// writes never touch, so this label map is an involution.
BasisLabel network_xor_label(const CompiledNet& net, BasisLabel label) {
  std::size_t arch_idx = net.has_arch ? net.arch_f.extract(label) : 0;
  if (arch_idx >= net.archs.size()) {
    return label;  // unused architecture code: constant-0 network
  }
  std::uint64_t input_field = net.i_f.extract(label);
  std::uint64_t selector_field = net.s_f.extract(label);

  std::uint8_t neuron_out[kMaxNeurons];
  const auto& neurons = net.archs[arch_idx];
  for (std::size_t j = 0; j < neurons.size(); ++j) {
    const CompiledNeuron& cn = neurons[j];
    int address = 0;
    for (const CompiledSource& src : cn.sources) {
      int bit = src.from_input ? static_cast<int>((input_field >> src.value) & 1u)
                               : neuron_out[src.value];
      address = (address << 1) | bit;
    }
    neuron_out[j] = static_cast<std::uint8_t>(
        (selector_field >> (cn.selector_shift_base - address)) & 1u);
    if (neuron_out[j]) label ^= cn.out_xor;
  }
  return label;
}

void require_clean_outputs(const SparseState& state, std::uint64_t clean_mask,
                           const char* when) {
  for (const Entry& e : state.entries()) {
    if (e.label & clean_mask) {
      throw std::domain_error(std::string("dirty output/ancilla qubits ") + when);
    }
  }
}

}  // namespace

SparseState apply_network_forward(const SparseState& state, const QNetworkOperator& op) {
  CompiledNet net = compile_network(state.layout(), op.archs(), op.plan().arch_width);
  require_clean_outputs(state, net.clean_mask, "before apply_network_forward");
  return apply_permutation(
      state, [&net](BasisLabel label) { return network_xor_label(net, label); });
}

SparseState unapply_network_forward(const SparseState& state, const QNetworkOperator& op) {
  CompiledNet net = compile_network(state.layout(), op.archs(), op.plan().arch_width);
  SparseState result = apply_permutation(
      state, [&net](BasisLabel label) { return network_xor_label(net, label); });
  require_clean_outputs(result, net.clean_mask, "after unapply_network_forward");
  return result;
}

namespace {

SparseState xor_pattern(const SparseState& state, const Bits& x, int d,
                        std::uint64_t want_i, std::uint64_t want_d, const char* what) {
  const RegisterLayout& layout = state.layout();
  RegisterLayout::FieldRef i_f = layout.field("i");
  RegisterLayout::FieldRef d_f = layout.field("d");
  if (static_cast<int>(x.size()) != i_f.width) {
    throw std::invalid_argument("pattern width does not match input register");
  }
  if (d != 0 && d != 1) {
    throw std::invalid_argument("target bit must be 0 or 1");
  }
  for (const Entry& e : state.entries()) {
    if (i_f.extract(e.label) != want_i || d_f.extract(e.label) != want_d) {
      throw std::domain_error(std::string("i/d registers not in the state required by ") +
                              what);
    }
  }
  std::uint64_t xor_mask = (bits_to_value(x) << i_f.shift) |
                           (static_cast<std::uint64_t>(d) << d_f.shift);
  return apply_permutation(state,
                           [xor_mask](BasisLabel label) { return label ^ xor_mask; });
}

}  // namespace

SparseState load_pattern(const SparseState& state, const Bits& x, int d) {
  return xor_pattern(state, x, d, 0, 0, "load_pattern");
}

SparseState remove_pattern(const SparseState& state, const Bits& x, int d) {
  return xor_pattern(state, x, d, bits_to_value(x), static_cast<std::uint64_t>(d),
                     "remove_pattern");
}

}  // namespace qwnn
