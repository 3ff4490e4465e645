#pragma once

#include <map>
#include <string>
#include <vector>

#include "checked_math.hpp"
#include "errors.hpp"
#include "partition.hpp"
#include "root_system.hpp"

namespace stabletensor {

/// Orders weight vectors descending-lexicographically; iteration over a
/// Decomposition therefore matches the canonical output order everywhere
/// (files, JSON, tables).
struct DescLex {
  bool operator()(const WeightVector& a, const WeightVector& b) const { return b < a; }
};

inline WeightVector strip_trailing_zeros(WeightVector v) {
  while (!v.empty() && v.back() == 0) v.pop_back();
  return v;
}

/// Index count up to the last nonzero coordinate; for dominant weights this
/// is the number of nonzero rows (a negative last coordinate counts).
inline std::size_t weight_length(const WeightVector& v) {
  std::size_t n = v.size();
  while (n > 0 && v[n - 1] == 0) --n;
  return n;
}

/// Multiplicity table of a tensor product: dominant weights of a fixed
/// family/rank mapped to positive multiplicities.
struct Decomposition {
  GroupFamily family{Kind::GL, 1};
  std::map<WeightVector, long long, DescLex> terms;

  explicit Decomposition(GroupFamily f) : family(f) {}

  /// Accumulate (may go negative transiently during subtraction phases;
  /// zero entries are dropped).
  void add(const WeightVector& w, long long mult) {
    if (w.size() != static_cast<std::size_t>(family.rank))
      throw InternalError("decomposition term has wrong length");
    auto it = terms.find(w);
    if (it == terms.end()) {
      if (mult != 0) terms.emplace(w, mult);
      return;
    }
    it->second = checked_add(it->second, mult);
    if (it->second == 0) terms.erase(it);
  }

  long long multiplicity_of(const WeightVector& w) const {
    auto it = terms.find(w);
    return it == terms.end() ? 0 : it->second;
  }

  /// Throws if any accumulated multiplicity is negative (a cancellation
  /// that signals an implementation bug, never valid data).
  void assert_nonnegative(const char* where) const {
    for (const auto& [w, m] : terms)
      if (m < 0) throw InternalError(std::string(where) + ": negative multiplicity survived");
  }

  long long total_multiplicity() const {
    long long t = 0;
    for (const auto& [w, m] : terms) t = checked_add(t, m);
    return t;
  }

  std::size_t term_count() const { return terms.size(); }

  /// Rank-free fingerprint: weights with trailing zeros stripped. Two tables
  /// at different ranks describe the same stable decomposition iff their
  /// signatures agree. A negative last coordinate survives stripping, so
  /// even-family chiral pairs stay distinct.
  std::map<WeightVector, long long> signature() const {
    std::map<WeightVector, long long> sig;
    for (const auto& [w, m] : terms) sig[strip_trailing_zeros(w)] = m;
    return sig;
  }

  friend bool operator==(const Decomposition& a, const Decomposition& b) {
    return a.family == b.family && a.terms == b.terms;
  }
};

}  // namespace stabletensor
