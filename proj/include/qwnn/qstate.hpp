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

#include <array>
#include <complex>
#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qwnn {

/// Default limit on the total qubit count so every basis label packs into a
/// single 64-bit word.
inline constexpr int kDefaultQubitCap = 48;

/// Stored entries with |amplitude| below this are dropped.
inline constexpr double kPruneThreshold = 1e-12;

/// Allowed drift of the squared norm from 1 after a public operation.
inline constexpr double kNormTolerance = 1e-9;

/// Thrown when a configured resource cap (qubit count, enumeration size)
/// would be exceeded. Mapped to its own process exit code by the CLI.
class ResourceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

using Amplitude = std::complex<double>;

/// Basis labels are unsigned words; bit significance is defined by the
/// RegisterLayout that owns them.
using BasisLabel = std::uint64_t;

struct Register {
  std::string name;
  int width = 0;
};

/// Ordered named bit-fields over one basis-label word.
///
/// The first register occupies the most significant bits of the label, and
/// within a register the leftmost displayed character is the highest-order
/// bit. Consequently ascending numeric label order equals lexicographic
/// order of the displayed bitstring.
class RegisterLayout {
 public:
  RegisterLayout() = default;
  RegisterLayout(std::vector<Register> registers, int qubit_cap = kDefaultQubitCap);

  int total_width() const { return total_width_; }
  const std::vector<Register>& registers() const { return registers_; }

  bool has(std::string_view name) const;
  const Register& reg(std::string_view name) const;

  /// Display offset of the register's leftmost bit.
  int offset(std::string_view name) const;

  /// Global display position (0 = leftmost bit of the whole label) of bit
  /// `index` within the register, where index 0 is the register's own
  /// leftmost bit.
  int bit_position(std::string_view name, int index) const;

  /// Pre-resolved register field for hot loops, avoiding the name lookup.
  struct FieldRef {
    int shift = 0;
    std::uint64_t mask = 0;
    int width = 0;

    std::uint64_t extract(BasisLabel label) const { return (label >> shift) & mask; }
    BasisLabel insert(BasisLabel label, std::uint64_t value) const {
      return (label & ~(mask << shift)) | (value << shift);
    }
  };
  FieldRef field(std::string_view name) const;

  std::uint64_t extract(BasisLabel label, std::string_view name) const;
  BasisLabel insert(BasisLabel label, std::string_view name, std::uint64_t value) const;

  int bit(BasisLabel label, int display_position) const;
  BasisLabel with_bit(BasisLabel label, int display_position, int value) const;

  /// "01 0110 0 1 000 0" style rendering, registers in layout order.
  std::string format_label(BasisLabel label) const;

  bool operator==(const RegisterLayout& other) const;
  bool operator!=(const RegisterLayout& other) const { return !(*this == other); }

 private:
  std::size_t index_of(std::string_view name) const;

  std::vector<Register> registers_;
  std::vector<int> offsets_;
  int total_width_ = 0;
};

struct Entry {
  BasisLabel label = 0;
  Amplitude amp;
};

/// Sparse complex state vector over a register layout.
///
/// Entries are kept sorted by label, merged, and pruned; the squared norm is
/// required to be 1 within kNormTolerance on construction, so every state a
/// caller can observe is normalized.
class SparseState {
 public:
  SparseState(RegisterLayout layout, std::vector<Entry> entries);

  const RegisterLayout& layout() const { return layout_; }
  std::span<const Entry> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }

  double squared_norm() const;
  Amplitude amplitude(BasisLabel label) const;

 private:
  RegisterLayout layout_;
  std::vector<Entry> entries_;
};

/// Single-entry basis state. `assignment` must give a bit-string of exactly
/// the register's width for every register in the layout.
SparseState init_basis(const RegisterLayout& layout,
                       const std::map<std::string, std::string>& assignment);

/// Tensor-apply H to `count` qubits of `reg` starting at register-local
/// index `first`.
SparseState apply_hadamard_all(const SparseState& state, std::string_view reg,
                               int first, int count);

/// Rewrite every entry's label through `map`, which must restrict to an
/// injection on the state's support; two source labels mapping to one target
/// raise std::domain_error. Amplitudes are untouched.
SparseState apply_permutation(const SparseState& state,
                              const std::function<BasisLabel(BasisLabel)>& map);

using Mat2 = std::array<std::array<Amplitude, 2>, 2>;

bool is_unitary(const Mat2& m, double tol = kNormTolerance);

/// Apply a 2x2 unitary to the qubit at `display_position` on the entries
/// selected by `when` (all entries when `when` is empty). The predicate must
/// not depend on the target qubit, otherwise the operation is not unitary;
/// the norm check catches violations.
SparseState apply_1q_unitary(const SparseState& state, int display_position,
                             const Mat2& gate,
                             const std::function<bool(BasisLabel)>& when = {});

struct MeasureResult {
  std::map<std::string, std::string> outcome;  // register name -> bit-string
  SparseState state;                           // collapsed and renormalized
};

/// Projective measurement of the named registers with Born-rule sampling.
MeasureResult measure(const SparseState& state,
                      const std::vector<std::string>& registers,
                      std::mt19937_64& rng);

/// Max label-wise amplitude difference <= tol. Layouts must match.
bool state_equal(const SparseState& a, const SparseState& b, double tol);

/// One line per entry, "<bits grouped by register> <re> <im>", labels
/// ascending. Golden-file tests compare this text byte for byte.
std::string dump(const SparseState& state);

}  // namespace qwnn
