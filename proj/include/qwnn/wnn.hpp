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

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "qwnn/data.hpp"

namespace qwnn {

/// Where a neuron input comes from: a network input line or the output of
/// an earlier neuron.
struct Source {
  enum class Kind { NetworkInput, NeuronOutput };
  Kind kind = Kind::NetworkInput;
  int index = 0;
};

/// Look-up-table neuron: n inputs address a 2^n-bit memory.
struct RamNeuron {
  std::vector<Source> inputs;

  int n_inputs() const { return static_cast<int>(inputs.size()); }
  int memory_size() const { return 1 << inputs.size(); }
};

/// Feed-forward wiring of RAM neurons with a single network output.
///
/// Validated invariants: neuron sources reference strictly earlier neurons,
/// every network input is used at most once across the whole net, and the
/// output neuron index is in range.
class Architecture {
 public:
  Architecture(std::string name, int n_network_inputs, std::vector<RamNeuron> neurons,
               int output_neuron);

  const std::string& name() const { return name_; }
  int n_network_inputs() const { return n_network_inputs_; }
  const std::vector<RamNeuron>& neurons() const { return neurons_; }
  int output_neuron() const { return output_neuron_; }

  int selector_count() const { return selector_count_; }
  /// Offset of a neuron's memory partition inside the selector string.
  int selector_offset(int neuron) const { return selector_offsets_[neuron]; }

  /// Text format: "inputs N", one "neuron <src>..." line per neuron with
  /// sources "in:<k>" or "n:<j>" (0-based), then "output <j>". '#' comments.
  static Architecture parse(const std::string& text, std::string name);
  static Architecture load_file(const std::string& path);
  std::string serialize() const;

 private:
  std::string name_;
  int n_network_inputs_ = 0;
  std::vector<RamNeuron> neurons_;
  int output_neuron_ = 0;
  int selector_count_ = 0;
  std::vector<int> selector_offsets_;
};

/// Trainable memory contents of a whole network: one bit per memory
/// position, partitioned per neuron in neuron order. Within a partition the
/// address formed by the neuron's inputs (first input = high-order bit)
/// indexes the bit, so a 2-input partition reads c00 c01 c10 c11.
struct SelectorString {
  Bits bits;

  static SelectorString from_string(std::string_view s);
  static SelectorString from_value(std::uint64_t value, int selector_count);
  std::uint64_t value() const { return bits_to_value(bits); }
  std::string str() const { return bits_to_string(bits); }
  /// Partitions separated by spaces, e.g. "0110 0110 0110".
  std::string grouped_str(const Architecture& arch) const;
};

/// Topological evaluation; returns the output neuron's bit.
int eval_network(const Architecture& arch, const SelectorString& selectors, const Bits& x);

/// Number of dataset patterns the configured network classifies correctly.
int performance(const Architecture& arch, const SelectorString& selectors,
                const Dataset& data);

struct OracleHit {
  int arch_index = 0;
  SelectorString selectors;
  int performance = 0;
};

inline constexpr int kDefaultOracleCap = 24;

/// Exhaustive ground truth: every (architecture, selector) pair with
/// performance >= theta, sorted by (arch index, selector value). Refuses
/// architectures with more than `cap` selector bits.
std::vector<OracleHit> oracle_search(std::span<const Architecture> archs,
                                     const Dataset& data, int theta,
                                     int cap = kDefaultOracleCap);

}  // namespace qwnn
