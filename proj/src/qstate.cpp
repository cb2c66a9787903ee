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

#include "qwnn/qstate.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

namespace qwnn {

namespace {

const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void check_norm(double squared_norm) {
  if (std::abs(squared_norm - 1.0) > kNormTolerance) {
    throw std::logic_error("state norm drifted: sum |amp|^2 = " +
                           format_double(squared_norm));
  }
}

// Sort by label, merge duplicates, prune tiny amplitudes.
void canonicalize(std::vector<Entry>& entries) {
  if (!std::is_sorted(entries.begin(), entries.end(),
                      [](const Entry& a, const Entry& b) { return a.label < b.label; })) {
    std::sort(entries.begin(), entries.end(),
              [](const Entry& a, const Entry& b) { return a.label < b.label; });
  }
  std::size_t out = 0;
  for (std::size_t i = 0; i < entries.size();) {
    BasisLabel label = entries[i].label;
    Amplitude amp = entries[i].amp;
    for (++i; i < entries.size() && entries[i].label == label; ++i) {
      amp += entries[i].amp;
    }
    if (std::abs(amp) >= kPruneThreshold) {
      entries[out++] = Entry{label, amp};
    }
  }
  entries.resize(out);
}

}  // namespace

RegisterLayout::RegisterLayout(std::vector<Register> registers, int qubit_cap)
    : registers_(std::move(registers)) {
  if (registers_.empty()) {
    throw std::invalid_argument("register layout must contain at least one register");
  }
  std::set<std::string> seen;
  for (const Register& r : registers_) {
    if (r.width < 1) {
      throw std::invalid_argument("register '" + r.name + "' must have width >= 1");
    }
    if (!seen.insert(r.name).second) {
      throw std::invalid_argument("duplicate register name '" + r.name + "'");
    }
    offsets_.push_back(total_width_);
    total_width_ += r.width;
  }
  if (total_width_ > qubit_cap) {
    throw ResourceError("layout needs " + std::to_string(total_width_) +
                        " qubits, cap is " + std::to_string(qubit_cap));
  }
}

std::size_t RegisterLayout::index_of(std::string_view name) const {
  for (std::size_t i = 0; i < registers_.size(); ++i) {
    if (registers_[i].name == name) return i;
  }
  throw std::invalid_argument("unknown register '" + std::string(name) + "'");
}

bool RegisterLayout::has(std::string_view name) const {
  for (const Register& r : registers_) {
    if (r.name == name) return true;
  }
  return false;
}

const Register& RegisterLayout::reg(std::string_view name) const {
  return registers_[index_of(name)];
}

int RegisterLayout::offset(std::string_view name) const {
  return offsets_[index_of(name)];
}

int RegisterLayout::bit_position(std::string_view name, int index) const {
  std::size_t i = index_of(name);
  if (index < 0 || index >= registers_[i].width) {
    throw std::out_of_range("bit index " + std::to_string(index) +
                            " out of range for register '" + std::string(name) + "'");
  }
  return offsets_[i] + index;
}

RegisterLayout::FieldRef RegisterLayout::field(std::string_view name) const {
  std::size_t i = index_of(name);
  FieldRef f;
  f.width = registers_[i].width;
  f.shift = total_width_ - offsets_[i] - f.width;
  f.mask = (f.width == 64) ? ~std::uint64_t{0} : ((std::uint64_t{1} << f.width) - 1);
  return f;
}

std::uint64_t RegisterLayout::extract(BasisLabel label, std::string_view name) const {
  return field(name).extract(label);
}

BasisLabel RegisterLayout::insert(BasisLabel label, std::string_view name,
                                  std::uint64_t value) const {
  FieldRef f = field(name);
  if (value > f.mask) {
    throw std::invalid_argument("value does not fit register '" + std::string(name) + "'");
  }
  return f.insert(label, value);
}

int RegisterLayout::bit(BasisLabel label, int display_position) const {
  return static_cast<int>((label >> (total_width_ - 1 - display_position)) & 1u);
}

BasisLabel RegisterLayout::with_bit(BasisLabel label, int display_position, int value) const {
  BasisLabel mask = BasisLabel{1} << (total_width_ - 1 - display_position);
  return value ? (label | mask) : (label & ~mask);
}

std::string RegisterLayout::format_label(BasisLabel label) const {
  std::string out;
  for (std::size_t i = 0; i < registers_.size(); ++i) {
    if (i) out += ' ';
    std::uint64_t v = extract(label, registers_[i].name);
    for (int b = registers_[i].width - 1; b >= 0; --b) {
      out += ((v >> b) & 1u) ? '1' : '0';
    }
  }
  return out;
}

bool RegisterLayout::operator==(const RegisterLayout& other) const {
  if (registers_.size() != other.registers_.size()) return false;
  for (std::size_t i = 0; i < registers_.size(); ++i) {
    if (registers_[i].name != other.registers_[i].name ||
        registers_[i].width != other.registers_[i].width) {
      return false;
    }
  }
  return true;
}

SparseState::SparseState(RegisterLayout layout, std::vector<Entry> entries)
    : layout_(std::move(layout)), entries_(std::move(entries)) {
  canonicalize(entries_);
  double n2 = 0.0;
  for (const Entry& e : entries_) {
    if (!std::isfinite(e.amp.real()) || !std::isfinite(e.amp.imag())) {
      throw std::invalid_argument("non-finite amplitude");
    }
    if (layout_.total_width() < 64 && (e.label >> layout_.total_width()) != 0) {
      throw std::invalid_argument("basis label exceeds layout width");
    }
    n2 += std::norm(e.amp);
  }
  check_norm(n2);
}

double SparseState::squared_norm() const {
  double n2 = 0.0;
  for (const Entry& e : entries_) n2 += std::norm(e.amp);
  return n2;
}

Amplitude SparseState::amplitude(BasisLabel label) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), label,
                             [](const Entry& e, BasisLabel l) { return e.label < l; });
  if (it != entries_.end() && it->label == label) return it->amp;
  return {0.0, 0.0};
}

SparseState init_basis(const RegisterLayout& layout,
                       const std::map<std::string, std::string>& assignment) {
  for (const Register& r : layout.registers()) {
    if (!assignment.count(r.name)) {
      throw std::invalid_argument("assignment missing register '" + r.name + "'");
    }
  }
  BasisLabel label = 0;
  for (const auto& [name, bits] : assignment) {
    const Register& r = layout.reg(name);  // throws on unknown name
    if (static_cast<int>(bits.size()) != r.width) {
      throw std::invalid_argument("register '" + name + "' expects " +
                                  std::to_string(r.width) + " bits, got '" + bits + "'");
    }
    std::uint64_t value = 0;
    for (char c : bits) {
      if (c != '0' && c != '1') {
        throw std::invalid_argument("non-binary character in assignment '" + bits + "'");
      }
      value = (value << 1) | static_cast<std::uint64_t>(c - '0');
    }
    label = layout.insert(label, name, value);
  }
  return SparseState(layout, {Entry{label, {1.0, 0.0}}});
}

SparseState apply_hadamard_all(const SparseState& state, std::string_view reg,
                               int first, int count) {
  const RegisterLayout& layout = state.layout();
  const Register& r = layout.reg(reg);
  if (count < 1 || first < 0 || first + count > r.width) {
    throw std::out_of_range("hadamard qubit range [" + std::to_string(first) + ", " +
                            std::to_string(first + count) + ") outside register '" +
                            std::string(reg) + "'");
  }
  std::vector<Entry> entries(state.entries().begin(), state.entries().end());
  for (int q = first; q < first + count; ++q) {
    int pos = layout.bit_position(reg, q);
    std::vector<Entry> next;
    next.reserve(entries.size() * 2);
    for (const Entry& e : entries) {
      Amplitude a = e.amp * kInvSqrt2;
      BasisLabel zero = layout.with_bit(e.label, pos, 0);
      BasisLabel one = layout.with_bit(e.label, pos, 1);
      next.push_back(Entry{zero, a});
      next.push_back(Entry{one, layout.bit(e.label, pos) ? -a : a});
    }
    canonicalize(next);
    entries.swap(next);
  }
  return SparseState(layout, std::move(entries));
}

namespace {

// Shared by apply_permutation and the permutation-style operators: rewrite
// labels, keep amplitudes, reject collisions on the support.
std::vector<Entry> permute_entries(const SparseState& state,
                                   const std::function<BasisLabel(BasisLabel)>& map) {
  std::vector<Entry> out;
  out.reserve(state.size());
  for (const Entry& e : state.entries()) {
    out.push_back(Entry{map(e.label), e.amp});
  }
  if (!std::is_sorted(out.begin(), out.end(),
                      [](const Entry& a, const Entry& b) { return a.label < b.label; })) {
    std::sort(out.begin(), out.end(),
              [](const Entry& a, const Entry& b) { return a.label < b.label; });
  }
  for (std::size_t i = 1; i < out.size(); ++i) {
    if (out[i].label == out[i - 1].label) {
      throw std::domain_error("permutation maps two labels to " +
                              state.layout().format_label(out[i].label));
    }
  }
  return out;
}

}  // namespace

SparseState apply_permutation(const SparseState& state,
                              const std::function<BasisLabel(BasisLabel)>& map) {
  return SparseState(state.layout(), permute_entries(state, map));
}

bool is_unitary(const Mat2& m, double tol) {
  // m * m^dagger == I
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      Amplitude s = m[i][0] * std::conj(m[j][0]) + m[i][1] * std::conj(m[j][1]);
      Amplitude want = (i == j) ? Amplitude{1.0, 0.0} : Amplitude{0.0, 0.0};
      if (std::abs(s - want) > tol) return false;
    }
  }
  return true;
}

SparseState apply_1q_unitary(const SparseState& state, int display_position,
                             const Mat2& gate,
                             const std::function<bool(BasisLabel)>& when) {
  const RegisterLayout& layout = state.layout();
  if (display_position < 0 || display_position >= layout.total_width()) {
    throw std::out_of_range("qubit position out of range");
  }
  if (!is_unitary(gate)) {
    throw std::invalid_argument("2x2 gate is not unitary");
  }
  std::vector<Entry> out;
  out.reserve(state.size() * 2);
  for (const Entry& e : state.entries()) {
    if (when && !when(e.label)) {
      out.push_back(e);
      continue;
    }
    int b = layout.bit(e.label, display_position);
    BasisLabel zero = layout.with_bit(e.label, display_position, 0);
    BasisLabel one = layout.with_bit(e.label, display_position, 1);
    out.push_back(Entry{zero, gate[0][b] * e.amp});
    out.push_back(Entry{one, gate[1][b] * e.amp});
  }
  canonicalize(out);
  return SparseState(layout, std::move(out));
}

MeasureResult measure(const SparseState& state,
                      const std::vector<std::string>& registers,
                      std::mt19937_64& rng) {
  if (registers.empty()) {
    throw std::invalid_argument("measure requires at least one register");
  }
  const RegisterLayout& layout = state.layout();
  for (const std::string& name : registers) {
    layout.reg(name);  // throws on unknown name
  }

  // Marginal distribution over the measured fields. The key keeps only the
  // measured registers' bits so equal outcomes pool their probability.
  std::vector<RegisterLayout::FieldRef> fields;
  for (const std::string& name : registers) fields.push_back(layout.field(name));
  auto project = [&fields](BasisLabel label) {
    BasisLabel key = 0;
    for (const RegisterLayout::FieldRef& f : fields) {
      key |= label & (f.mask << f.shift);
    }
    return key;
  };
  std::map<BasisLabel, double> marginal;
  for (const Entry& e : state.entries()) {
    marginal[project(e.label)] += std::norm(e.amp);
  }

  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double u = unit(rng);
  double cumulative = 0.0;
  BasisLabel picked = marginal.rbegin()->first;  // guard against rounding at u ~ 1
  double picked_prob = marginal.rbegin()->second;
  for (const auto& [key, prob] : marginal) {
    cumulative += prob;
    if (u < cumulative) {
      picked = key;
      picked_prob = prob;
      break;
    }
  }

  std::vector<Entry> kept;
  double scale = 1.0 / std::sqrt(picked_prob);
  for (const Entry& e : state.entries()) {
    if (project(e.label) == picked) {
      kept.push_back(Entry{e.label, e.amp * scale});
    }
  }

  MeasureResult result{{}, SparseState(layout, std::move(kept))};
  for (const std::string& name : registers) {
    const Register& r = layout.reg(name);
    std::uint64_t v = layout.extract(picked, name);
    std::string bits;
    for (int b = r.width - 1; b >= 0; --b) bits += ((v >> b) & 1u) ? '1' : '0';
    result.outcome[name] = bits;
  }
  return result;
}

bool state_equal(const SparseState& a, const SparseState& b, double tol) {
  if (a.layout() != b.layout()) {
    throw std::invalid_argument("state_equal requires matching layouts");
  }
  auto ea = a.entries();
  auto eb = b.entries();
  std::size_t i = 0, j = 0;
  while (i < ea.size() || j < eb.size()) {
    if (j == eb.size() || (i < ea.size() && ea[i].label < eb[j].label)) {
      if (std::abs(ea[i].amp) > tol) return false;
      ++i;
    } else if (i == ea.size() || eb[j].label < ea[i].label) {
      if (std::abs(eb[j].amp) > tol) return false;
      ++j;
    } else {
      if (std::abs(ea[i].amp - eb[j].amp) > tol) return false;
      ++i;
      ++j;
    }
  }
  return true;
}

std::string dump(const SparseState& state) {
  std::ostringstream out;
  for (const Entry& e : state.entries()) {
    out << state.layout().format_label(e.label) << ' ' << format_double(e.amp.real())
        << ' ' << format_double(e.amp.imag()) << '\n';
  }
  return out.str();
}

}  // namespace qwnn
