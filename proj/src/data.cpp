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

#include "qwnn/data.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qwnn {

Bits bits_from_string(std::string_view s) {
  Bits out;
  out.reserve(s.size());
  for (char c : s) {
    if (c != '0' && c != '1') {
      throw std::invalid_argument("non-binary character in '" + std::string(s) + "'");
    }
    out.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return out;
}

std::string bits_to_string(const Bits& bits) {
  std::string out;
  out.reserve(bits.size());
  for (auto b : bits) out += b ? '1' : '0';
  return out;
}

std::uint64_t bits_to_value(const Bits& bits) {
  std::uint64_t v = 0;
  for (auto b : bits) v = (v << 1) | b;
  return v;
}

Bits bits_from_value(std::uint64_t value, int width) {
  Bits out(static_cast<std::size_t>(width));
  for (int i = 0; i < width; ++i) {
    out[width - 1 - i] = static_cast<std::uint8_t>((value >> i) & 1u);
  }
  return out;
}

Dataset builtin_xor() {
  Dataset d;
  d.n_inputs = 2;
  d.patterns = {{bits_from_string("00"), 0},
                {bits_from_string("01"), 1},
                {bits_from_string("10"), 1},
                {bits_from_string("11"), 0}};
  return d;
}

Dataset builtin_table1() {
  static const int classes[16] = {1, 1, 0, 1, 1, 1, 0, 1, 1, 1, 0, 1, 0, 1, 0, 1};
  Dataset d;
  d.n_inputs = 4;
  for (int i = 0; i < 16; ++i) {
    d.patterns.push_back({bits_from_value(static_cast<std::uint64_t>(i), 4), classes[i]});
  }
  return d;
}

Dataset builtin_parity4() {
  Dataset d;
  d.n_inputs = 4;
  for (int i = 0; i < 16; ++i) {
    int parity = ((i >> 3) ^ (i >> 2) ^ (i >> 1) ^ i) & 1;
    d.patterns.push_back({bits_from_value(static_cast<std::uint64_t>(i), 4), parity});
  }
  return d;
}

std::optional<Dataset> builtin_dataset(std::string_view name) {
  if (name == "xor") return builtin_xor();
  if (name == "table1") return builtin_table1();
  if (name == "parity4") return builtin_parity4();
  return std::nullopt;
}

Dataset parse_dataset(const std::string& text) {
  Dataset d;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream fields(line);
    std::string input_str, target_str, extra;
    if (!(fields >> input_str)) continue;  // blank or comment-only line
    if (!(fields >> target_str) || (fields >> extra)) {
      throw std::invalid_argument("line " + std::to_string(lineno) +
                                  ": expected '<bits> <class-bit>'");
    }
    if (target_str.size() != 1) {
      throw std::invalid_argument("line " + std::to_string(lineno) +
                                  ": target must be a single bit");
    }
    Bits input = bits_from_string(input_str);
    Bits target = bits_from_string(target_str);
    if (d.patterns.empty()) {
      d.n_inputs = static_cast<int>(input.size());
    } else if (static_cast<int>(input.size()) != d.n_inputs) {
      throw std::invalid_argument("line " + std::to_string(lineno) +
                                  ": ragged input width");
    }
    d.patterns.push_back({std::move(input), target[0]});
  }
  if (d.patterns.empty()) {
    throw std::invalid_argument("dataset is empty");
  }
  return d;
}

Dataset load_dataset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open dataset file '" + path + "'");
  }
  std::ostringstream text;
  text << in.rdbuf();
  return parse_dataset(text.str());
}

std::string serialize(const Dataset& data) {
  std::string out;
  for (const Pattern& p : data.patterns) {
    out += bits_to_string(p.input);
    out += ' ';
    out += p.target ? '1' : '0';
    out += '\n';
  }
  return out;
}

}  // namespace qwnn
