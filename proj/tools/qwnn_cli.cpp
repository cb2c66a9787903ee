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

// Command-line driver: SAL training, architecture selection, brute-force
// oracle enumeration, and network evaluation, with machine-readable reports.
//
// Exit codes: 0 found/success, 1 usage or config error, 2 resource cap
// exceeded, 3 no solution / empty result.

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qwnn/data.hpp"
#include "qwnn/ops.hpp"
#include "qwnn/sal.hpp"
#include "qwnn/wnn.hpp"

namespace {

constexpr int kExitFound = 0;
constexpr int kExitUsage = 1;
constexpr int kExitResource = 2;
constexpr int kExitNoSolution = 3;

using nlohmann::ordered_json;

int qubit_cap_from_env() {
  const char* env = std::getenv("QWNN_QUBIT_CAP");
  if (!env) return qwnn::kDefaultQubitCap;
  try {
    int cap = std::stoi(env);
    if (cap < 1) throw std::invalid_argument("");
    return cap;
  } catch (const std::exception&) {
    throw std::invalid_argument("QWNN_QUBIT_CAP must be a positive integer");
  }
}

qwnn::Dataset resolve_dataset(const std::string& spec) {
  if (auto builtin = qwnn::builtin_dataset(spec)) {
    if (std::filesystem::exists(spec)) {
      std::cerr << "warning: '" << spec << "' names both a builtin dataset and a file; "
                << "using the builtin (pass ./" << spec << " for the file)\n";
    }
    return *builtin;
  }
  return qwnn::load_dataset_file(spec);
}

qwnn::LOrder parse_l_order(const std::string& s) {
  if (s == "01") return qwnn::LOrder::ZeroFirst;
  if (s == "10") return qwnn::LOrder::OneFirst;
  throw std::invalid_argument("--l-order must be 01 or 10");
}

std::string echo_command(int argc, char** argv) {
  std::string echo;
  for (int i = 0; i < argc; ++i) {
    if (i) echo += ' ';
    echo += argv[i];
  }
  return echo;
}

qwnn::PresentationListener trace_listener() {
  return [](const qwnn::PresentationEvent& event) {
    std::cout << "  pattern " << event.pattern_index << ": entries=" << event.entry_count
              << " perf_hist={";
    bool first = true;
    for (const auto& [perf, count] : event.perf_histogram) {
      if (!first) std::cout << ',';
      std::cout << perf << ':' << count;
      first = false;
    }
    std::cout << "}\n";
  };
}

struct RunContext {
  std::string command;
  int theta = 0;
  std::uint64_t seed = 0;
  std::string l_order = "01";
  std::string json_path;
};

void write_json(const std::string& path, const ordered_json& doc) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write JSON report to '" + path + "'");
  out << doc.dump(2) << '\n';
}

// Report for sal / arch-select runs. Wall time is shown on stdout only, so
// identical command lines produce byte-identical JSON files.
int report_sal_outcome(const qwnn::SalOutcome& outcome,
                       const std::vector<qwnn::Architecture>& archs, const RunContext& ctx,
                       double wall_seconds, bool trace) {
  bool found = outcome.status == qwnn::SalStatus::Found;
  qwnn::StepCounts counts = step_count_report(outcome);

  std::cout << "status: " << (found ? "found" : "no_solution") << '\n';
  if (found) {
    const qwnn::Architecture& arch = archs[*outcome.arch_index];
    std::cout << "architecture: " << arch.name() << " (index " << *outcome.arch_index
              << ")\n"
              << "selectors: " << outcome.selectors->str() << '\n'
              << "grouped: " << outcome.selectors->grouped_str(arch) << '\n'
              << "verified performance: " << outcome.verified_performance << '\n';
  }
  std::cout << "presentations: " << counts.presentations << '\n'
            << "nonlinear calls: " << counts.nonlinear_calls << '\n'
            << "peak entries: " << outcome.trace.peak_entries << '\n'
            << "wall: " << wall_seconds << " s\n";
  if (trace) {
    std::cout << "trace:\n" << qwnn::format_trace(outcome.trace);
  }

  if (!ctx.json_path.empty()) {
    ordered_json doc;
    doc["command"] = ctx.command;
    doc["config"] = {{"theta", ctx.theta}, {"seed", ctx.seed}, {"l_order", ctx.l_order}};
    ordered_json out;
    out["status"] = found ? "found" : "no_solution";
    if (found) {
      out["arch_index"] = *outcome.arch_index;
      out["arch_name"] = archs[*outcome.arch_index].name();
      out["selectors"] = outcome.selectors->str();
    } else {
      out["arch_index"] = nullptr;
      out["arch_name"] = nullptr;
      out["selectors"] = nullptr;
    }
    out["verified_performance"] = outcome.verified_performance;
    doc["outcome"] = out;
    doc["counters"] = {{"presentations", counts.presentations},
                       {"nonlinear_calls", counts.nonlinear_calls},
                       {"peak_entries", outcome.trace.peak_entries}};
    write_json(ctx.json_path, doc);
  }
  return found ? kExitFound : kExitNoSolution;
}

int run_sal_command(const std::vector<std::string>& arch_files, const std::string& dataset,
                    const RunContext& ctx, bool trace) {
  std::vector<qwnn::Architecture> archs;
  for (const std::string& file : arch_files) {
    archs.push_back(qwnn::Architecture::load_file(file));
  }
  qwnn::Dataset data = resolve_dataset(dataset);

  qwnn::SalConfig cfg;
  cfg.theta = ctx.theta;
  cfg.seed = ctx.seed;
  cfg.l_order = parse_l_order(ctx.l_order);
  cfg.qubit_cap = qubit_cap_from_env();
  if (trace) cfg.listener = trace_listener();

  auto start = std::chrono::steady_clock::now();
  qwnn::SalOutcome outcome = archs.size() == 1
                                 ? qwnn::sal_train(archs[0], data, cfg)
                                 : qwnn::sal_select_architecture(archs, data, cfg);
  double wall = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report_sal_outcome(outcome, archs, ctx, wall, trace);
}

int run_oracle(const std::vector<std::string>& arch_files, const std::string& dataset,
               const RunContext& ctx) {
  std::vector<qwnn::Architecture> archs;
  for (const std::string& file : arch_files) {
    archs.push_back(qwnn::Architecture::load_file(file));
  }
  qwnn::Dataset data = resolve_dataset(dataset);
  std::vector<qwnn::OracleHit> hits = qwnn::oracle_search(archs, data, ctx.theta);

  for (const qwnn::OracleHit& hit : hits) {
    std::cout << "arch=" << archs[hit.arch_index].name() << " selectors=" << hit.selectors.str()
              << " perf=" << hit.performance << '\n';
  }
  std::cout << "total: " << hits.size() << " configuration(s) with perf >= " << ctx.theta
            << '\n';

  if (!ctx.json_path.empty()) {
    ordered_json doc;
    doc["command"] = ctx.command;
    doc["config"] = {{"theta", ctx.theta}};
    ordered_json rows = ordered_json::array();
    for (const qwnn::OracleHit& hit : hits) {
      rows.push_back({{"arch_index", hit.arch_index},
                      {"arch_name", archs[hit.arch_index].name()},
                      {"selectors", hit.selectors.str()},
                      {"performance", hit.performance}});
    }
    doc["hits"] = rows;
    write_json(ctx.json_path, doc);
  }
  return hits.empty() ? kExitNoSolution : kExitFound;
}

int run_eval(const std::string& arch_file, const std::vector<std::string>& selector_parts,
             const std::string& dataset) {
  qwnn::Architecture arch = qwnn::Architecture::load_file(arch_file);
  std::string joined;
  for (const std::string& part : selector_parts) joined += part;
  qwnn::SelectorString selectors = qwnn::SelectorString::from_string(joined);
  if (static_cast<int>(selectors.bits.size()) != arch.selector_count()) {
    throw std::invalid_argument("selector string has " +
                                std::to_string(selectors.bits.size()) + " bits, '" +
                                arch.name() + "' needs " +
                                std::to_string(arch.selector_count()));
  }
  qwnn::Dataset data = resolve_dataset(dataset);

  int correct = 0;
  for (const qwnn::Pattern& p : data.patterns) {
    int y = qwnn::eval_network(arch, selectors, p.input);
    bool ok = y == p.target;
    if (ok) ++correct;
    std::cout << qwnn::bits_to_string(p.input) << " -> " << y << " (want " << p.target
              << ") " << (ok ? "ok" : "miss") << '\n';
  }
  std::cout << "performance: " << correct << "/" << data.size() << '\n';
  return kExitFound;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum weightless neural network simulator"};
  app.require_subcommand(1);

  RunContext ctx;
  ctx.command = echo_command(argc, argv);

  std::string arch_file;
  std::vector<std::string> arch_files;
  std::string dataset;
  std::vector<std::string> selector_parts;
  bool trace = false;

  CLI::App* sal = app.add_subcommand("sal", "Train selectors for one architecture");
  sal->add_option("--arch", arch_file, "architecture file")->required();
  sal->add_option("--dataset", dataset, "builtin name (xor, parity4, table1) or file")
      ->required();
  sal->add_option("--theta", ctx.theta, "required correct-pattern count")->required();
  sal->add_option("--seed", ctx.seed, "measurement RNG seed");
  sal->add_option("--l-order", ctx.l_order, "bit tie-break order, 01 or 10");
  sal->add_flag("--trace", trace, "print per-pattern and per-bit search records");
  sal->add_option("--json", ctx.json_path, "write a machine-readable report");

  CLI::App* select = app.add_subcommand(
      "arch-select", "Train architecture and selectors simultaneously");
  select->add_option("--archs", arch_files, "architecture files")->required()->expected(-1);
  select->add_option("--dataset", dataset, "builtin name or file")->required();
  select->add_option("--theta", ctx.theta, "required correct-pattern count")->required();
  select->add_option("--seed", ctx.seed, "measurement RNG seed");
  select->add_option("--l-order", ctx.l_order, "bit tie-break order, 01 or 10");
  select->add_flag("--trace", trace, "print per-pattern and per-bit search records");
  select->add_option("--json", ctx.json_path, "write a machine-readable report");

  CLI::App* oracle = app.add_subcommand(
      "oracle", "Exhaustively list configurations reaching theta");
  oracle->add_option("--archs", arch_files, "architecture files")->required()->expected(-1);
  oracle->add_option("--dataset", dataset, "builtin name or file")->required();
  oracle->add_option("--theta", ctx.theta, "required correct-pattern count")->required();
  oracle->add_option("--json", ctx.json_path, "write a machine-readable report");

  CLI::App* eval = app.add_subcommand("eval", "Evaluate a fixed configuration");
  eval->add_option("--arch", arch_file, "architecture file")->required();
  eval->add_option("--selectors", selector_parts, "selector bits, spaces allowed")
      ->required()
      ->expected(-1);
  eval->add_option("--dataset", dataset, "builtin name or file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (sal->parsed()) return run_sal_command({arch_file}, dataset, ctx, trace);
    if (select->parsed()) return run_sal_command(arch_files, dataset, ctx, trace);
    if (oracle->parsed()) return run_oracle(arch_files, dataset, ctx);
    if (eval->parsed()) return run_eval(arch_file, selector_parts, dataset);
  } catch (const qwnn::ResourceError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}
