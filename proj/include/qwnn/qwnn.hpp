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

#include <cstddef>
#include <functional>
#include <map>
#include <span>
#include <vector>

#include "qwnn/qstate.hpp"
#include "qwnn/wnn.hpp"

namespace qwnn {

/// Register layout of a SAL run: i (network inputs), s (selectors of the
/// widest architecture), o, d (1 bit each), perf (wide enough to count every
/// pattern), obj (1 bit), then arch when several architectures compete and
/// hidden ancillas when any architecture has non-output neurons.
struct QLayoutPlan {
  RegisterLayout layout;
  int n_archs = 1;
  int arch_width = 0;    // 0 when a single architecture runs
  int hidden_width = 0;  // 0 when every architecture is one output neuron
};

QLayoutPlan build_plan(std::span<const Architecture> archs, int n_patterns,
                       int qubit_cap = kDefaultQubitCap);

/// The network as a permutation on basis labels. Entries select their
/// architecture through the arch field; architectures with fewer selectors
/// read a prefix of the s register and ignore the rest.
class QNetworkOperator {
 public:
  QNetworkOperator(std::vector<Architecture> archs, int n_patterns,
                   int qubit_cap = kDefaultQubitCap);

  const QLayoutPlan& plan() const { return plan_; }
  std::span<const Architecture> archs() const { return archs_; }

 private:
  std::vector<Architecture> archs_;
  QLayoutPlan plan_;
};

/// Reversible network evaluation: writes each non-output neuron's bit into
/// its hidden ancilla and the output neuron's bit into o. Requires o and
/// hidden to be 0 on every entry.
SparseState apply_network_forward(const SparseState& state, const QNetworkOperator& op);

/// Exact inverse of apply_network_forward (the write is an xor of values
/// recomputed from i, s and arch, so the permutation is an involution);
/// checks that o and hidden come back clean.
SparseState unapply_network_forward(const SparseState& state, const QNetworkOperator& op);

/// Xor a training pattern into the i and d registers. Both must be 0 on
/// every entry beforehand.
SparseState load_pattern(const SparseState& state, const Bits& x, int d);

/// Inverse of load_pattern; i and d must hold exactly x and d beforehand.
SparseState remove_pattern(const SparseState& state, const Bits& x, int d);

/// Fired after each pattern presentation during an epoch.
struct PresentationEvent {
  int pattern_index = 0;
  std::size_t entry_count = 0;
  std::map<std::uint64_t, std::size_t> perf_histogram;  // perf value -> entries
};

using PresentationListener = std::function<void(const PresentationEvent&)>;

}  // namespace qwnn
