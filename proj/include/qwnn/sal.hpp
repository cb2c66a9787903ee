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
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "qwnn/qwnn.hpp"

namespace qwnn {

enum class LOrder { ZeroFirst, OneFirst };

struct SalConfig {
  int theta = 0;                        // required correct count, inclusive
  std::uint64_t seed = 0;               // drives the collapse measurements
  LOrder l_order = LOrder::ZeroFirst;   // tie-break between candidate bits
  int trace_level = 0;
  int qubit_cap = kDefaultQubitCap;
  PresentationListener listener;        // optional per-presentation hook
};

struct SalIterationRecord {
  int k = 0;                                   // 1-based searched bit index
  std::vector<std::pair<int, int>> tried;      // (l, nonlinear flag)
  int chosen_l = -1;                           // -1 when both branches failed
  std::size_t entries_before_measure = 0;
  std::string measured;                        // logged collapse outcome, unused
};

struct SalTrace {
  std::vector<SalIterationRecord> iterations;
  std::size_t presentations = 0;
  std::size_t nonlinear_calls = 0;
  std::size_t peak_entries = 0;
};

enum class SalStatus { Found, NoSolution };

struct SalOutcome {
  SalStatus status = SalStatus::NoSolution;
  std::optional<int> arch_index;
  std::optional<SelectorString> selectors;
  int verified_performance = 0;  // recomputed classically, never trusted
  SalTrace trace;
};

/// One pass over the dataset: load pattern, run the network, count the hit,
/// uncompute, unload. Afterwards every entry's perf field equals the
/// classical performance of its (arch, selector) configuration.
SparseState run_epoch(SparseState state, const QNetworkOperator& op, const Dataset& data,
                      const PresentationListener& listener = {}, SalTrace* trace = nullptr);

/// Nonlinear bit-by-bit search for a selector string with performance >=
/// theta on a fixed architecture.
SalOutcome sal_train(const Architecture& arch, const Dataset& data, const SalConfig& cfg);

/// Joint architecture + selector search: the searched bit-string is the
/// arch register followed by the selector register.
SalOutcome sal_select_architecture(std::span<const Architecture> archs, const Dataset& data,
                                   const SalConfig& cfg);

struct StepCounts {
  std::size_t presentations = 0;
  std::size_t nonlinear_calls = 0;
};

StepCounts step_count_report(const SalOutcome& outcome);

/// One text record per searched bit plus a summary line; stable across runs
/// with equal configs.
std::string format_trace(const SalTrace& trace);

}  // namespace qwnn
