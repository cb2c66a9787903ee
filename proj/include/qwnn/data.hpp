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
#include <string>
#include <string_view>
#include <vector>

namespace qwnn {

using Bits = std::vector<std::uint8_t>;

struct Pattern {
  Bits input;
  int target = 0;  // single bit
};

/// Ordered list of (input bit-vector, target bit) pairs. Duplicates are
/// permitted and order is preserved.
struct Dataset {
  int n_inputs = 0;
  std::vector<Pattern> patterns;

  std::size_t size() const { return patterns.size(); }
};

/// The 2-bit XOR toy problem, patterns in order 00, 01, 10, 11.
Dataset builtin_xor();

/// The 16-pattern artificial dataset used for architecture selection.
Dataset builtin_table1();

/// All 16 four-bit patterns, target = parity of the bits.
Dataset builtin_parity4();

std::optional<Dataset> builtin_dataset(std::string_view name);

/// Text format: one "<bits> <class-bit>" pair per line, uniform bit width,
/// '#' starts a comment. Multi-bit targets are rejected.
Dataset parse_dataset(const std::string& text);
Dataset load_dataset_file(const std::string& path);
std::string serialize(const Dataset& data);

Bits bits_from_string(std::string_view s);
std::string bits_to_string(const Bits& bits);
std::uint64_t bits_to_value(const Bits& bits);       // first bit is the MSB
Bits bits_from_value(std::uint64_t value, int width);

}  // namespace qwnn
