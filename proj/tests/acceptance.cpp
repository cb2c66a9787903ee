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

// End-to-end acceptance suite. Each criterion prints one pass/fail line;
// the process exits with the number of failed criteria.
//
// `--regen-golden` rewrites tests/golden/xor_first_pattern.state after
// re-deriving the expected state analytically; use it only when the dump
// format itself changes.

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstring>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <thread>
#include <vector>

#include "qwnn/ops.hpp"
#include "qwnn/sal.hpp"

using namespace qwnn;

namespace {

int failures = 0;

void report(int criterion, const std::string& title, bool ok, const std::string& detail) {
  std::cout << (ok ? "[PASS]" : "[FAIL]") << " criterion " << criterion << ": " << title
            << " — " << detail << '\n';
  if (!ok) ++failures;
}

std::string data_path(const std::string& name) {
  return std::string(QWNN_DATA_DIR) + "/" + name;
}

std::string golden_path() {
  return std::string(QWNN_GOLDEN_DIR) + "/xor_first_pattern.state";
}

Architecture load_arch(const std::string& name) {
  return Architecture::load_file(data_path(name));
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

const char* kKnownSolutions[4] = {"01010111011101", "01010111101110", "10101000010111",
                                  "10101000101011"};

// ---------------------------------------------------------------------------
// 1. XOR reproduction: SAL finds 0110, and it is the unique 4/4 configuration.
void criterion1() {
  Architecture arch = load_arch("single2.arch");
  Dataset xor_data = builtin_xor();

  auto start = std::chrono::steady_clock::now();
  SalConfig cfg;
  cfg.theta = 4;
  SalOutcome outcome = sal_train(arch, xor_data, cfg);
  double wall = seconds_since(start);

  std::vector<OracleHit> hits = oracle_search({&arch, 1}, xor_data, 4);
  bool unique = hits.size() == 1 && hits[0].selectors.str() == "0110" &&
                hits[0].performance == 4;
  bool found = outcome.status == SalStatus::Found && outcome.selectors->str() == "0110";
  bool ok = found && unique && wall < 1.0;

  std::ostringstream detail;
  detail << "sal returned "
         << (outcome.status == SalStatus::Found ? outcome.selectors->str() : "NoSolution")
         << " in " << wall << " s; oracle lists " << hits.size()
         << " perfect configuration(s)";
  report(1, "XOR reproduction", ok, detail.str());
}

// ---------------------------------------------------------------------------
// 2. Parity-4: the known pyramid configuration scores 16/16 and SAL finds a
// verified perfect configuration.
void criterion2() {
  Architecture p = load_arch("pyramid4.arch");
  Dataset parity = builtin_parity4();

  int known = performance(p, SelectorString::from_string("011001100110"), parity);

  SalConfig cfg;
  cfg.theta = 16;
  SalOutcome outcome = sal_train(p, parity, cfg);
  bool found = outcome.status == SalStatus::Found;
  int verified = 0;
  bool in_oracle = false;
  if (found) {
    verified = performance(p, *outcome.selectors, parity);
    for (const OracleHit& hit : oracle_search({&p, 1}, parity, 16)) {
      if (hit.selectors.str() == outcome.selectors->str()) in_oracle = true;
    }
  }
  bool ok = known == 16 && found && verified == 16 && in_oracle;

  std::ostringstream detail;
  detail << "known configuration scores " << known << "/16; sal found "
         << (found ? outcome.selectors->str() : "nothing") << " verified " << verified
         << "/16";
  report(2, "parity-4", ok, detail.str());
}

// ---------------------------------------------------------------------------
// 3. Table 1 architecture selection: N1 wins, its qualifying set is exactly
// the four known strings, N0 has none, and the run stays under 30 s.
void criterion3() {
  std::vector<Architecture> archs = {load_arch("n0.arch"), load_arch("n1.arch")};
  Dataset table1 = builtin_table1();

  auto start = std::chrono::steady_clock::now();
  SalConfig cfg;
  cfg.theta = 16;
  SalOutcome outcome = sal_select_architecture(archs, table1, cfg);
  double wall = seconds_since(start);

  std::vector<OracleHit> hits = oracle_search(archs, table1, 16);
  bool n0_empty = true;
  std::vector<std::string> n1_set;
  for (const OracleHit& hit : hits) {
    if (hit.arch_index == 0) n0_empty = false;
    if (hit.arch_index == 1) n1_set.push_back(hit.selectors.str());
  }
  bool set_matches = n1_set.size() == 4;
  for (int i = 0; i < 4 && set_matches; ++i) set_matches = n1_set[i] == kKnownSolutions[i];

  bool found_n1 = outcome.status == SalStatus::Found && *outcome.arch_index == 1;
  bool in_set = false;
  if (found_n1) {
    for (const char* s : kKnownSolutions) {
      if (outcome.selectors->str() == s) in_set = true;
    }
  }
  bool ok = found_n1 && in_set && set_matches && n0_empty && wall < 30.0 &&
            outcome.verified_performance == 16;

  std::ostringstream detail;
  detail << "chose arch " << (outcome.arch_index ? std::to_string(*outcome.arch_index) : "-")
         << " selectors " << (found_n1 ? outcome.selectors->str() : "-") << " in " << wall
         << " s; N1 set size " << n1_set.size() << (set_matches ? " (exact match)" : " (MISMATCH)")
         << "; N0 " << (n0_empty ? "empty" : "NON-EMPTY");
  report(3, "table 1 architecture selection", ok, detail.str());
}

// ---------------------------------------------------------------------------
// 4. Quantum-classical equivalence, exhaustive for every bundled architecture
// with at most 12 selector bits.
void criterion4() {
  std::size_t checked = 0, mismatches = 0;
  for (const char* name : {"single2.arch", "pyramid4.arch", "n0.arch"}) {
    Architecture arch = load_arch(name);
    QNetworkOperator op({arch}, 16);
    const RegisterLayout& layout = op.plan().layout;
    RegisterLayout::FieldRef s_f = layout.field("s");
    RegisterLayout::FieldRef o_f = layout.field("o");
    int n_in = arch.n_network_inputs();
    int n_sel = arch.selector_count();

    for (std::uint64_t x = 0; x < (std::uint64_t{1} << n_in); ++x) {
      std::map<std::string, std::string> a;
      for (const Register& r : layout.registers()) {
        a[r.name] = std::string(static_cast<std::size_t>(r.width), '0');
      }
      a["i"] = bits_to_string(bits_from_value(x, n_in));
      // superpose every selector value and sweep the whole column at once
      SparseState s = apply_hadamard_all(init_basis(layout, a), "s", 0, n_sel);
      SparseState t = apply_network_forward(s, op);
      for (const Entry& e : t.entries()) {
        std::uint64_t sel = s_f.extract(e.label);
        int classical =
            eval_network(arch, SelectorString::from_value(sel, n_sel), bits_from_value(x, n_in));
        if (o_f.extract(e.label) != static_cast<std::uint64_t>(classical)) ++mismatches;
        ++checked;
      }
    }
  }
  std::ostringstream detail;
  detail << checked << " (selector, input) pairs compared, " << mismatches << " mismatches";
  report(4, "quantum-classical equivalence", mismatches == 0 && checked == 64 + 2 * 65536,
         detail.str());
}

// ---------------------------------------------------------------------------
// 5. Completeness sweep: Found iff the oracle's qualifying set is non-empty,
// across 200 random datasets and the bundled 4-input architectures.
void criterion5() {
  std::vector<Architecture> archs = {load_arch("pyramid4.arch"), load_arch("n0.arch"),
                                     load_arch("n1.arch")};
  const int n_datasets = 200;
  std::atomic<int> violations{0};
  std::atomic<long> runs{0};

  unsigned n_workers = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> workers;
  std::atomic<int> next{0};
  for (unsigned w = 0; w < n_workers; ++w) {
    workers.emplace_back([&]() {
      for (int i = next.fetch_add(1); i < n_datasets; i = next.fetch_add(1)) {
        std::mt19937_64 rng(1000 + static_cast<std::uint64_t>(i));
        Dataset data;
        data.n_inputs = 4;
        for (int x = 0; x < 16; ++x) {
          data.patterns.push_back({bits_from_value(static_cast<std::uint64_t>(x), 4),
                                   static_cast<int>(rng() & 1)});
        }
        int theta = static_cast<int>(rng() % 17);
        for (const Architecture& arch : archs) {
          SalConfig cfg;
          cfg.theta = theta;
          cfg.seed = static_cast<std::uint64_t>(i);
          SalOutcome outcome = sal_train(arch, data, cfg);
          bool oracle_nonempty = !oracle_search({&arch, 1}, data, theta).empty();
          bool found = outcome.status == SalStatus::Found;
          if (found != oracle_nonempty) ++violations;
          if (found && performance(arch, *outcome.selectors, data) < theta) ++violations;
          ++runs;
        }
      }
    });
  }
  for (auto& t : workers) t.join();

  std::ostringstream detail;
  detail << runs.load() << " (dataset, architecture) runs, " << violations.load()
         << " violations";
  report(5, "SAL completeness against the oracle", violations == 0 && runs == 600,
         detail.str());
}

// ---------------------------------------------------------------------------
// 6. Complexity instrumentation: presentations = searched bits x patterns on
// success paths; doubling the patterns doubles the count. The additive
// architecture-selection cost claim is not reproduced; counters are reported.
void criterion6() {
  Architecture arch = load_arch("single2.arch");
  Dataset xor_data = builtin_xor();
  SalConfig cfg;
  cfg.theta = 4;
  SalOutcome base = sal_train(arch, xor_data, cfg);
  StepCounts base_counts = step_count_report(base);

  Dataset doubled;
  doubled.n_inputs = 2;
  for (const Pattern& p : xor_data.patterns) {
    doubled.patterns.push_back(p);
    doubled.patterns.push_back(p);
  }
  SalConfig cfg2;
  cfg2.theta = 8;
  SalOutcome twice = sal_train(arch, doubled, cfg2);
  StepCounts twice_counts = step_count_report(twice);

  std::vector<Architecture> pair = {load_arch("n0.arch"), load_arch("n1.arch")};
  SalConfig cfg3;
  cfg3.theta = 16;
  SalOutcome table = sal_select_architecture(pair, builtin_table1(), cfg3);
  StepCounts table_counts = step_count_report(table);

  bool ok = base.status == SalStatus::Found && base_counts.presentations == 4 * 4 &&
            twice.status == SalStatus::Found && twice_counts.presentations == 4 * 8 &&
            table.status == SalStatus::Found && table_counts.presentations == 15 * 16 &&
            base_counts.nonlinear_calls <= 2 * 4 && table_counts.nonlinear_calls <= 2 * 15;

  std::ostringstream detail;
  detail << "presentations: xor " << base_counts.presentations << ", doubled xor "
         << twice_counts.presentations << ", table1 selection " << table_counts.presentations
         << " (searched bits x patterns exactly); nonlinear calls " << base_counts.nonlinear_calls
         << "/" << twice_counts.nonlinear_calls << "/" << table_counts.nonlinear_calls
         << "; additive O(n_a+n_s+n_t) not observed, counters above are the measurement";
  report(6, "complexity instrumentation", ok, detail.str());
}

// ---------------------------------------------------------------------------
// 7. Operator property suite.
void criterion7() {
  std::ostringstream detail;
  bool ok = true;

  // 1e4 random gate applications keep the norm within 1e-9
  {
    RegisterLayout layout({{"x", 3}, {"c", 1}, {"s", 2}, {"o", 1}, {"p", 2}});
    std::mt19937_64 rng(2024);
    std::map<std::string, std::string> a = {
        {"x", "000"}, {"c", "0"}, {"s", "00"}, {"o", "0"}, {"p", "00"}};
    SparseState state = init_basis(layout, a);
    double worst = 0.0;
    const Register* regs[] = {&layout.registers()[0], &layout.registers()[1],
                              &layout.registers()[2], &layout.registers()[3],
                              &layout.registers()[4]};
    for (int step = 0; step < 10000; ++step) {
      switch (rng() % 6) {
        case 0: {
          const Register* r = regs[rng() % 5];
          state = apply_hadamard_all(state, r->name, static_cast<int>(rng() % r->width), 1);
          break;
        }
        case 1: {
          BooleanFunctionSpec f = BooleanFunctionSpec::from_function(
              3, 1, [&rng](std::uint64_t) { return rng() & 1; });
          state = apply_uf(state, f, "x", "c");
          break;
        }
        case 2: {
          int sel = static_cast<int>(rng() % 9);
          int out = static_cast<int>(rng() % 9);
          if (sel != out) state = apply_a_cnot(state, sel, out);
          break;
        }
        case 3: {
          QplnAngleParams params;
          state = apply_a_qpln(
              state, {layout.bit_position("s", 0), layout.bit_position("s", 1)},
              layout.bit_position("o", 0), params);
          break;
        }
        case 4: {
          QplnAngleParams params;
          std::uniform_real_distribution<double> angle(-3.14, 3.14);
          params.angles = {angle(rng), angle(rng), angle(rng), angle(rng)};
          state = apply_a_qmpln(
              state, {layout.bit_position("s", 0), layout.bit_position("s", 1)},
              layout.bit_position("o", 0), params);
          break;
        }
        default:
          state = increment_if_equal(state, "c", "o", "p");
          break;
      }
      worst = std::max(worst, std::abs(state.squared_norm() - 1.0));
    }
    if (worst > 1e-9) ok = false;
    detail << "norm drift over 1e4 gates " << worst;
  }

  // involutions: U_f twice and load/remove round-trips
  {
    std::mt19937_64 rng(7);
    Architecture arch = load_arch("single2.arch");
    QNetworkOperator op({arch}, 4);
    const RegisterLayout& layout = op.plan().layout;
    bool involutions = true;
    for (int trial = 0; trial < 100; ++trial) {
      RegisterLayout flay({{"x", 2}, {"c", 2}});
      BooleanFunctionSpec f = BooleanFunctionSpec::from_function(
          2, 2, [&rng](std::uint64_t) { return rng() & 0b11; });
      std::map<std::string, std::string> fa = {{"x", "00"}, {"c", "00"}};
      SparseState s = apply_hadamard_all(init_basis(flay, fa), "x", 0, 2);
      if (!state_equal(apply_uf(apply_uf(s, f, "x", "c"), f, "x", "c"), s, 1e-12)) {
        involutions = false;
      }

      std::map<std::string, std::string> qa;
      for (const Register& r : layout.registers()) {
        qa[r.name] = std::string(static_cast<std::size_t>(r.width), '0');
      }
      SparseState q = apply_hadamard_all(init_basis(layout, qa), "s", 0, 4);
      Bits x = bits_from_value(rng() & 0b11, 2);
      int d = static_cast<int>(rng() & 1);
      if (!state_equal(remove_pattern(load_pattern(q, x, d), x, d), q, 1e-12)) {
        involutions = false;
      }
    }
    if (!involutions) ok = false;
    detail << "; involutions " << (involutions ? "hold" : "BROKEN");
  }

  // nonlinear_or: flag equals the classical OR and the op is idempotent
  {
    RegisterLayout layout({{"psi", 4}, {"c", 1}});
    std::mt19937_64 rng(99);
    std::normal_distribution<double> gauss(0.0, 1.0);
    bool or_ok = true;
    for (int trial = 0; trial < 1000; ++trial) {
      int n = 1 + static_cast<int>(rng() % 12);
      std::set<BasisLabel> labels;
      while (static_cast<int>(labels.size()) < n) labels.insert(rng() & 0x1F);
      std::vector<Entry> entries;
      double n2 = 0.0;
      for (BasisLabel l : labels) {
        double amp = gauss(rng);
        if (std::abs(amp) < 1e-3) amp = 0.7;
        entries.push_back(Entry{l, {amp, 0.0}});
        n2 += amp * amp;
      }
      for (Entry& e : entries) e.amp /= std::sqrt(n2);
      SparseState s(layout, entries);
      int expect = 0;
      for (const Entry& e : s.entries()) {
        if (e.label & 1u) expect = 1;
      }
      NonlinearResult once = nonlinear_or(s, "c");
      NonlinearResult again = nonlinear_or(once.state, "c");
      if (once.flag != expect || again.flag != once.flag ||
          !state_equal(again.state, once.state, 1e-12) ||
          std::abs(once.state.squared_norm() - 1.0) > 1e-9) {
        or_ok = false;
      }
    }
    if (!or_ok) ok = false;
    detail << "; nonlinear OR on 1e3 states " << (or_ok ? "matches" : "BROKEN");
  }

  // chi-square goodness of fit at significance 0.01 (1 dof: 6.635)
  {
    RegisterLayout layout({{"q", 1}});
    SparseState plus = apply_hadamard_all(init_basis(layout, {{"q", "0"}}), "q", 0, 1);
    const int samples = 100000;
    long zeros = 0;
    for (int i = 0; i < samples; ++i) {
      std::mt19937_64 rng(static_cast<std::uint64_t>(i));
      if (measure(plus, {"q"}, rng).outcome.at("q") == "0") ++zeros;
    }
    double expect = samples / 2.0;
    double chi2 = (zeros - expect) * (zeros - expect) / expect +
                  ((samples - zeros) - expect) * ((samples - zeros) - expect) / expect;
    if (chi2 > 6.635) ok = false;
    detail << "; chi-square " << chi2 << " (limit 6.635)";
  }

  report(7, "operator property suite", ok, detail.str());
}

// ---------------------------------------------------------------------------
// 8. Golden-state regression for the first XOR pattern presentation.
SparseState first_pattern_state() {
  Architecture arch = load_arch("single2.arch");
  QNetworkOperator op({arch}, 4);
  const RegisterLayout& layout = op.plan().layout;
  std::map<std::string, std::string> a = {{"i", "00"},  {"s", "0000"}, {"o", "0"},
                                          {"d", "0"},   {"perf", "000"}, {"obj", "0"}};
  SparseState state = apply_hadamard_all(init_basis(layout, a), "s", 0, 4);
  // the walkthrough presents (01 -> 1) first
  state = load_pattern(state, bits_from_string("01"), 1);
  state = apply_network_forward(state, op);
  return increment_if_equal(state, "o", "d", "perf");
}

// Expected state assembled from first principles: amplitude 1/4 on each of
// the 16 selector values, output = the selector bit addressed by input 01,
// perf = 1 exactly when that bit matches the target 1.
SparseState derived_first_pattern_state() {
  Architecture arch = load_arch("single2.arch");
  QNetworkOperator op({arch}, 4);
  const RegisterLayout& layout = op.plan().layout;
  std::vector<Entry> entries;
  for (std::uint64_t j = 0; j < 16; ++j) {
    std::uint64_t out = (j >> 2) & 1u;  // display bit 1 of the selector string
    BasisLabel label = 0;
    label = layout.insert(label, "i", 0b01);
    label = layout.insert(label, "s", j);
    label = layout.insert(label, "o", out);
    label = layout.insert(label, "d", 1);
    label = layout.insert(label, "perf", out);
    entries.push_back(Entry{label, {0.25, 0.0}});
  }
  return SparseState(layout, entries);
}

void criterion8(bool regen) {
  SparseState state = first_pattern_state();
  bool derived_ok = state_equal(state, derived_first_pattern_state(), 1e-12) &&
                    state.size() == 16;
  std::string text = dump(state);

  if (regen) {
    if (!derived_ok) {
      report(8, "golden-state regression", false,
             "refusing to regenerate: state disagrees with the derivation");
      return;
    }
    std::ofstream out(golden_path());
    out << text;
    report(8, "golden-state regression", true, "golden file regenerated");
    return;
  }

  std::ifstream in(golden_path());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  bool file_ok = in.good() || !buffer.str().empty();
  bool bytes_match = buffer.str() == text;
  bool ok = derived_ok && file_ok && bytes_match;

  std::ostringstream detail;
  detail << "derivation " << (derived_ok ? "matches" : "DIVERGES") << "; golden bytes "
         << (bytes_match ? "identical" : "DIFFER");
  report(8, "golden-state regression", ok, detail.str());
}

}  // namespace

int main(int argc, char** argv) {
  bool regen = argc > 1 && std::strcmp(argv[1], "--regen-golden") == 0;

  criterion1();
  criterion2();
  criterion3();
  criterion4();
  criterion5();
  criterion6();
  criterion7();
  criterion8(regen);

  if (failures == 0) {
    std::cout << "all acceptance criteria passed\n";
  } else {
    std::cout << failures << " acceptance criteria FAILED\n";
  }
  return failures;
}
