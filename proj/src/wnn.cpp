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

#include "qwnn/wnn.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "qwnn/qstate.hpp"  // ResourceError

namespace qwnn {

Architecture::Architecture(std::string name, int n_network_inputs,
                           std::vector<RamNeuron> neurons, int output_neuron)
    : name_(std::move(name)),
      n_network_inputs_(n_network_inputs),
      neurons_(std::move(neurons)),
      output_neuron_(output_neuron) {
  if (n_network_inputs_ < 1) {
    throw std::invalid_argument("architecture needs at least one network input");
  }
  if (neurons_.empty()) {
    throw std::invalid_argument("architecture needs at least one neuron");
  }
  if (output_neuron_ < 0 || output_neuron_ >= static_cast<int>(neurons_.size())) {
    throw std::invalid_argument("output neuron index out of range");
  }
  std::vector<bool> input_used(static_cast<std::size_t>(n_network_inputs_), false);
  for (std::size_t j = 0; j < neurons_.size(); ++j) {
    const RamNeuron& neuron = neurons_[j];
    if (neuron.inputs.empty()) {
      throw std::invalid_argument("neuron " + std::to_string(j) + " has no inputs");
    }
    for (const Source& src : neuron.inputs) {
      if (src.kind == Source::Kind::NetworkInput) {
        if (src.index < 0 || src.index >= n_network_inputs_) {
          throw std::invalid_argument("neuron " + std::to_string(j) +
                                      " references unknown network input");
        }
        if (input_used[src.index]) {
          throw std::invalid_argument("network input " + std::to_string(src.index) +
                                      " wired more than once");
        }
        input_used[src.index] = true;
      } else {
        if (src.index < 0 || src.index >= static_cast<int>(j)) {
          throw std::invalid_argument("neuron " + std::to_string(j) +
                                      " must reference a strictly earlier neuron");
        }
      }
    }
    selector_offsets_.push_back(selector_count_);
    selector_count_ += neuron.memory_size();
  }
}

Architecture Architecture::parse(const std::string& text, std::string name) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  int n_inputs = -1;
  int output = -1;
  bool have_output = false;
  std::vector<RamNeuron> neurons;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string keyword;
    if (!(fields >> keyword)) continue;
    auto fail = [lineno](const std::string& msg) {
      throw std::invalid_argument("architecture line " + std::to_string(lineno) + ": " + msg);
    };
    if (keyword == "inputs") {
      if (n_inputs >= 0) fail("duplicate 'inputs' line");
      if (!(fields >> n_inputs) || n_inputs < 1) fail("expected 'inputs <count>'");
    } else if (keyword == "neuron") {
      if (n_inputs < 0) fail("'inputs' must come before 'neuron'");
      if (have_output) fail("'neuron' after 'output'");
      RamNeuron neuron;
      std::string token;
      while (fields >> token) {
        Source src;
        std::string_view t(token);
        if (t.rfind("in:", 0) == 0) {
          src.kind = Source::Kind::NetworkInput;
          t.remove_prefix(3);
        } else if (t.rfind("n:", 0) == 0) {
          src.kind = Source::Kind::NeuronOutput;
          t.remove_prefix(2);
        } else {
          fail("bad source '" + token + "', want in:<k> or n:<j>");
        }
        try {
          src.index = std::stoi(std::string(t));
        } catch (const std::exception&) {
          fail("bad source index in '" + token + "'");
        }
        neuron.inputs.push_back(src);
      }
      if (neuron.inputs.empty()) fail("neuron needs at least one source");
      neurons.push_back(std::move(neuron));
    } else if (keyword == "output") {
      if (have_output) fail("duplicate 'output' line");
      if (!(fields >> output)) fail("expected 'output <neuron index>'");
      have_output = true;
    } else {
      fail("unknown keyword '" + keyword + "'");
    }
  }
  if (n_inputs < 0 || neurons.empty() || !have_output) {
    throw std::invalid_argument("architecture '" + name +
                                "' needs 'inputs', 'neuron', and 'output' lines");
  }
  return Architecture(std::move(name), n_inputs, std::move(neurons), output);
}

Architecture Architecture::load_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open architecture file '" + path + "'");
  }
  std::ostringstream text;
  text << in.rdbuf();
  // File stem names the architecture: "fixtures/n1.arch" -> "n1".
  std::string name = path;
  if (auto slash = name.find_last_of("/\\"); slash != std::string::npos) {
    name.erase(0, slash + 1);
  }
  if (auto dot = name.find_last_of('.'); dot != std::string::npos) {
    name.erase(dot);
  }
  return parse(text.str(), std::move(name));
}

std::string Architecture::serialize() const {
  std::ostringstream out;
  out << "inputs " << n_network_inputs_ << '\n';
  for (const RamNeuron& neuron : neurons_) {
    out << "neuron";
    for (const Source& src : neuron.inputs) {
      out << (src.kind == Source::Kind::NetworkInput ? " in:" : " n:") << src.index;
    }
    out << '\n';
  }
  out << "output " << output_neuron_ << '\n';
  return out.str();
}

SelectorString SelectorString::from_string(std::string_view s) {
  return SelectorString{bits_from_string(s)};
}

SelectorString SelectorString::from_value(std::uint64_t value, int selector_count) {
  return SelectorString{bits_from_value(value, selector_count)};
}

std::string SelectorString::grouped_str(const Architecture& arch) const {
  std::string out;
  int cursor = 0;
  for (const RamNeuron& neuron : arch.neurons()) {
    if (cursor) out += ' ';
    for (int i = 0; i < neuron.memory_size(); ++i) {
      out += bits[cursor + i] ? '1' : '0';
    }
    cursor += neuron.memory_size();
  }
  return out;
}

namespace {

// Outputs of every neuron in index order. `selector_bit(i)` reads bit i of
// the selector string, `input_bit(i)` reads network input i.
template <typename SelectorBit, typename InputBit>
int eval_output(const Architecture& arch, SelectorBit&& selector_bit,
                InputBit&& input_bit, std::uint8_t* neuron_out) {
  const auto& neurons = arch.neurons();
  for (std::size_t j = 0; j < neurons.size(); ++j) {
    int address = 0;
    for (const Source& src : neurons[j].inputs) {
      int bit = (src.kind == Source::Kind::NetworkInput) ? input_bit(src.index)
                                                         : neuron_out[src.index];
      address = (address << 1) | bit;
    }
    neuron_out[j] = static_cast<std::uint8_t>(
        selector_bit(arch.selector_offset(static_cast<int>(j)) + address));
  }
  return neuron_out[arch.output_neuron()];
}

constexpr std::size_t kMaxNeurons = 64;

}  // namespace

int eval_network(const Architecture& arch, const SelectorString& selectors, const Bits& x) {
  if (static_cast<int>(x.size()) != arch.n_network_inputs()) {
    throw std::invalid_argument("input width does not match architecture");
  }
  if (static_cast<int>(selectors.bits.size()) != arch.selector_count()) {
    throw std::invalid_argument("selector string length does not match architecture");
  }
  if (arch.neurons().size() > kMaxNeurons) {
    throw std::invalid_argument("architecture too large");
  }
  std::uint8_t neuron_out[kMaxNeurons];
  return eval_output(
      arch, [&](int i) { return static_cast<int>(selectors.bits[i]); },
      [&](int i) { return static_cast<int>(x[i]); }, neuron_out);
}

int performance(const Architecture& arch, const SelectorString& selectors,
                const Dataset& data) {
  if (!data.patterns.empty() && data.n_inputs != arch.n_network_inputs()) {
    throw std::invalid_argument("dataset width does not match architecture");
  }
  int correct = 0;
  for (const Pattern& p : data.patterns) {
    if (eval_network(arch, selectors, p.input) == p.target) ++correct;
  }
  return correct;
}

namespace {

// Performance of one packed selector value, avoiding the SelectorString
// round-trip in the enumeration loop.
int performance_of_value(const Architecture& arch, std::uint64_t value,
                         const Dataset& data) {
  int count = arch.selector_count();
  std::uint8_t neuron_out[kMaxNeurons];
  auto selector_bit = [&](int i) {
    return static_cast<int>((value >> (count - 1 - i)) & 1u);
  };
  int correct = 0;
  for (const Pattern& p : data.patterns) {
    auto input_bit = [&](int i) { return static_cast<int>(p.input[i]); };
    if (eval_output(arch, selector_bit, input_bit, neuron_out) == p.target) ++correct;
  }
  return correct;
}

}  // namespace

std::vector<OracleHit> oracle_search(std::span<const Architecture> archs,
                                     const Dataset& data, int theta, int cap) {
  for (const Architecture& arch : archs) {
    if (arch.selector_count() > cap) {
      throw ResourceError("architecture '" + arch.name() + "' has " +
                          std::to_string(arch.selector_count()) +
                          " selector bits, enumeration cap is " + std::to_string(cap));
    }
    if (!data.patterns.empty() && data.n_inputs != arch.n_network_inputs()) {
      throw std::invalid_argument("dataset width does not match architecture '" +
                                  arch.name() + "'");
    }
  }
  std::vector<OracleHit> hits;
  for (std::size_t a = 0; a < archs.size(); ++a) {
    const Architecture& arch = archs[a];
    std::uint64_t total = std::uint64_t{1} << arch.selector_count();
    unsigned n_threads = std::max(1u, std::thread::hardware_concurrency());
    if (total < 4096) n_threads = 1;
    std::vector<std::vector<OracleHit>> partial(n_threads);
    std::vector<std::thread> workers;
    std::uint64_t chunk = (total + n_threads - 1) / n_threads;
    for (unsigned t = 0; t < n_threads; ++t) {
      std::uint64_t begin = t * chunk;
      std::uint64_t end = std::min(total, begin + chunk);
      workers.emplace_back([&, t, begin, end]() {
        for (std::uint64_t value = begin; value < end; ++value) {
          int perf = performance_of_value(arch, value, data);
          if (perf >= theta) {
            partial[t].push_back(OracleHit{
                static_cast<int>(a),
                SelectorString::from_value(value, arch.selector_count()), perf});
          }
        }
      });
    }
    for (auto& w : workers) w.join();
    // Chunks cover ascending value ranges, so concatenation keeps the
    // (arch index, selector value) order deterministic.
    for (auto& part : partial) {
      hits.insert(hits.end(), std::make_move_iterator(part.begin()),
                  std::make_move_iterator(part.end()));
    }
  }
  return hits;
}

}  // namespace qwnn
