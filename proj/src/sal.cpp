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

#include "qwnn/sal.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

#include "qwnn/ops.hpp"

namespace qwnn {

SparseState run_epoch(SparseState state, const QNetworkOperator& op, const Dataset& data,
                      const PresentationListener& listener, SalTrace* trace) {
  RegisterLayout::FieldRef perf_f = state.layout().field("perf");
  for (const Entry& e : state.entries()) {
    if (perf_f.extract(e.label) != 0) {
      throw std::domain_error("perf register not 0 at epoch start");
    }
  }
  for (std::size_t idx = 0; idx < data.patterns.size(); ++idx) {
    const Pattern& p = data.patterns[idx];
    state = load_pattern(state, p.input, p.target);
    state = apply_network_forward(state, op);
    state = increment_if_equal(state, "o", "d", "perf");
    state = unapply_network_forward(state, op);
    state = remove_pattern(state, p.input, p.target);
    if (trace) ++trace->presentations;
    if (listener) {
      PresentationEvent event;
      event.pattern_index = static_cast<int>(idx);
      event.entry_count = state.size();
      for (const Entry& e : state.entries()) {
        ++event.perf_histogram[perf_f.extract(e.label)];
      }
      listener(event);
    }
  }
  return state;
}

namespace {

std::string zeros(int n) { return std::string(static_cast<std::size_t>(n), '0'); }

// State for iteration k (1-based): searched bits below k hold the decided
// prefix, bits k..n_searched are fresh H|0>, everything else is |0>.
SparseState iteration_state(const QNetworkOperator& op, const std::vector<int>& prefix) {
  const QLayoutPlan& plan = op.plan();
  const RegisterLayout& layout = plan.layout;
  int arch_width = plan.arch_width;
  int s_width = layout.reg("s").width;
  int fixed = static_cast<int>(prefix.size());

  std::map<std::string, std::string> assignment;
  for (const Register& r : layout.registers()) assignment[r.name] = zeros(r.width);
  for (int i = 0; i < fixed; ++i) {
    if (i < arch_width) {
      assignment["arch"][i] = prefix[i] ? '1' : '0';
    } else {
      assignment["s"][i - arch_width] = prefix[i] ? '1' : '0';
    }
  }
  SparseState state = init_basis(layout, assignment);

  if (fixed < arch_width) {
    state = apply_hadamard_all(state, "arch", fixed, arch_width - fixed);
  }
  int s_fresh_from = std::max(0, fixed - arch_width);
  if (s_fresh_from < s_width) {
    state = apply_hadamard_all(state, "s", s_fresh_from, s_width - s_fresh_from);
  }
  return state;
}

SalOutcome run_sal(std::span<const Architecture> archs, const Dataset& data,
                   const SalConfig& cfg) {
  int n_patterns = static_cast<int>(data.size());
  if (cfg.theta < 0 || cfg.theta > n_patterns) {
    throw std::invalid_argument("theta must lie in [0, pattern count]");
  }
  QNetworkOperator op(std::vector<Architecture>(archs.begin(), archs.end()), n_patterns,
                      cfg.qubit_cap);
  const QLayoutPlan& plan = op.plan();
  const RegisterLayout& layout = plan.layout;
  int arch_width = plan.arch_width;
  int n_archs = plan.n_archs;
  int n_searched = arch_width + layout.reg("s").width;

  std::vector<std::string> all_registers;
  for (const Register& r : layout.registers()) all_registers.push_back(r.name);

  std::array<int, 2> order =
      cfg.l_order == LOrder::ZeroFirst ? std::array<int, 2>{0, 1} : std::array<int, 2>{1, 0};

  std::mt19937_64 rng(cfg.seed);
  SalOutcome outcome;
  std::vector<int> prefix;

  for (int k = 1; k <= n_searched; ++k) {
    SparseState state = iteration_state(op, prefix);
    outcome.trace.peak_entries = std::max(outcome.trace.peak_entries, state.size());
    state = run_epoch(std::move(state), op, data, cfg.listener, &outcome.trace);

    int searched_pos = (k - 1 < arch_width) ? layout.bit_position("arch", k - 1)
                                            : layout.bit_position("s", k - 1 - arch_width);
    int searched_shift = layout.total_width() - 1 - searched_pos;
    RegisterLayout::FieldRef perf_f = layout.field("perf");
    RegisterLayout::FieldRef arch_f = arch_width > 0 ? layout.field("arch")
                                                     : RegisterLayout::FieldRef{};
    SalIterationRecord record;
    record.k = k;
    for (int l : order) {
      std::uint64_t want_bit = static_cast<std::uint64_t>(l);
      auto predicate = [&, want_bit](const RegisterLayout&, BasisLabel label) {
        if (arch_width > 0 &&
            arch_f.extract(label) >= static_cast<std::uint64_t>(n_archs)) {
          return false;
        }
        return perf_f.extract(label) >= static_cast<std::uint64_t>(cfg.theta) &&
               ((label >> searched_shift) & 1u) == want_bit;
      };
      SparseState marked = mark_objective(state, predicate, "obj");
      NonlinearResult result = nonlinear_or(marked, "obj");
      ++outcome.trace.nonlinear_calls;
      record.tried.emplace_back(l, result.flag);
      if (result.flag) {
        record.chosen_l = l;
        record.entries_before_measure = result.state.size();
        // Collapse every register. The outcome is logged for the trace and
        // otherwise discarded; the next iteration rebuilds the suffix
        // superposition from the decided prefix.
        MeasureResult collapse = measure(result.state, all_registers, rng);
        std::string text;
        for (const Register& r : layout.registers()) {
          if (!text.empty()) text += ' ';
          text += r.name + "=" + collapse.outcome.at(r.name);
        }
        record.measured = text;
        break;
      }
      state = std::move(result.state);  // flag 0 left the state untouched
    }
    outcome.trace.iterations.push_back(record);
    if (record.chosen_l < 0) {
      outcome.status = SalStatus::NoSolution;
      return outcome;
    }
    prefix.push_back(record.chosen_l);
  }

  int arch_index = 0;
  for (int i = 0; i < arch_width; ++i) arch_index = (arch_index << 1) | prefix[i];
  const Architecture& chosen = archs[arch_index];
  SelectorString selectors;
  selectors.bits.assign(prefix.begin() + arch_width,
                        prefix.begin() + arch_width + chosen.selector_count());

  outcome.status = SalStatus::Found;
  outcome.arch_index = arch_index;
  outcome.selectors = selectors;
  outcome.verified_performance = performance(chosen, selectors, data);
  if (outcome.verified_performance < cfg.theta) {
    throw std::logic_error("found configuration fails classical verification");
  }
  return outcome;
}

}  // namespace

SalOutcome sal_train(const Architecture& arch, const Dataset& data, const SalConfig& cfg) {
  return run_sal(std::span<const Architecture>(&arch, 1), data, cfg);
}

SalOutcome sal_select_architecture(std::span<const Architecture> archs, const Dataset& data,
                                   const SalConfig& cfg) {
  if (archs.size() < 2) {
    throw std::invalid_argument("architecture selection needs at least two candidates");
  }
  return run_sal(archs, data, cfg);
}

StepCounts step_count_report(const SalOutcome& outcome) {
  return StepCounts{outcome.trace.presentations, outcome.trace.nonlinear_calls};
}

std::string format_trace(const SalTrace& trace) {
  std::ostringstream out;
  for (const SalIterationRecord& rec : trace.iterations) {
    out << "k=" << rec.k << " tried=";
    for (std::size_t i = 0; i < rec.tried.size(); ++i) {
      if (i) out << ',';
      out << 'l' << rec.tried[i].first << ":flag" << rec.tried[i].second;
    }
    out << " chosen=" << rec.chosen_l;
    if (rec.chosen_l >= 0) {
      out << " entries_before_measure=" << rec.entries_before_measure << " measured{"
          << rec.measured << '}';
    }
    out << '\n';
  }
  out << "presentations=" << trace.presentations
      << " nonlinear_calls=" << trace.nonlinear_calls
      << " peak_entries=" << trace.peak_entries << '\n';
  return out.str();
}

}  // namespace qwnn
