#pragma once
// Shared primitives: node serials, the axiom-rule classifier, named-theorem
// sets and the chronological segments they induce.

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace lemmaforge {

// 1-based position of a node in the trace; 0 is reserved as "none".
// Rebuild with LEMMAFORGE_WIDE_SERIALS for traces beyond 2^32-1 nodes; the
// parser rejects anything wider than the compiled type.
#ifdef LEMMAFORGE_WIDE_SERIALS
using Serial = std::uint64_t;
#else
using Serial = std::uint32_t;
#endif

inline constexpr Serial kNoSerial = 0;

// Bad user input: malformed files, unknown serials, invalid parameters.
// The CLI maps this to exit code 1; any other exception reaching main is an
// internal invariant failure and exits 2.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Which rule codes count as axioms. 'F' (constant definition) by default;
// every other code, known or not, is a derived inference.
class AxiomRules {
 public:
  AxiomRules() { mask_[static_cast<unsigned char>('F')] = true; }

  static AxiomRules none() {
    AxiomRules r;
    r.mask_.fill(false);
    return r;
  }
  static AxiomRules of(std::string_view rules) {
    AxiomRules r = none();
    for (char c : rules) r.add(c);
    return r;
  }

  void add(char rule) { mask_[static_cast<unsigned char>(rule)] = true; }
  bool contains(char rule) const {
    return mask_[static_cast<unsigned char>(rule)];
  }

 private:
  std::array<bool, 256> mask_{};
};

// serial -> name map for the named (top-level) theorems.
class NamedSet {
 public:
  NamedSet() = default;

  // Last write wins, matching sidecar file semantics.
  void add(Serial s, std::string name) {
    names_[s] = std::move(name);
    sorted_fresh_ = false;
  }

  bool contains(Serial s) const { return names_.find(s) != names_.end(); }

  // nullptr when s is unnamed.
  const std::string* name_of(Serial s) const {
    auto it = names_.find(s);
    return it == names_.end() ? nullptr : &it->second;
  }

  std::size_t size() const { return names_.size(); }
  bool empty() const { return names_.empty(); }

  // Ascending named serials.
  const std::vector<Serial>& serials() const {
    if (!sorted_fresh_) {
      sorted_.clear();
      sorted_.reserve(names_.size());
      for (const auto& [s, _] : names_) sorted_.push_back(s);
      std::sort(sorted_.begin(), sorted_.end());
      sorted_fresh_ = true;
    }
    return sorted_;
  }

  // Membership bitmap over serials 1..n for linear passes (slot 0 unused).
  std::vector<std::uint8_t> mask(std::size_t n) const {
    std::vector<std::uint8_t> m(n + 1, 0);
    for (const auto& [s, _] : names_)
      if (s <= n) m[s] = 1;
    return m;
  }

  const std::unordered_map<Serial, std::string>& entries() const {
    return names_;
  }

 private:
  std::unordered_map<Serial, std::string> names_;
  mutable std::vector<Serial> sorted_;
  mutable bool sorted_fresh_ = true;
};

// Segments induced by a named set: the segment of named theorem t is the
// serial interval (previous named serial, t]. Nodes after the last named
// serial belong to no segment.
class Segmentation {
 public:
  Segmentation() = default;
  explicit Segmentation(const NamedSet& named) : bounds_(named.serials()) {}

  // The named serial whose segment contains s, or kNoSerial past the end.
  Serial segment_of(Serial s) const {
    auto it = std::lower_bound(bounds_.begin(), bounds_.end(), s);
    return it == bounds_.end() ? kNoSerial : *it;
  }

  // Largest named serial strictly below s, or kNoSerial.
  Serial prev_bound(Serial s) const {
    auto it = std::lower_bound(bounds_.begin(), bounds_.end(), s);
    return it == bounds_.begin() ? kNoSerial : *(it - 1);
  }

  const std::vector<Serial>& bounds() const { return bounds_; }

 private:
  std::vector<Serial> bounds_;
};

}  // namespace lemmaforge
