#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "errors.hpp"

namespace stabletensor {

/// Integer partition in canonical form: weakly decreasing positive parts,
/// no trailing zeros stored. Indexing beyond the length reads as 0, so a
/// partition and any zero-padded copy of it behave identically.
class Partition {
public:
  static constexpr long long kMaxPart = 1'000'000;
  static constexpr std::size_t kMaxLength = 64;

  Partition() = default;

  explicit Partition(std::vector<long long> parts) : parts_(std::move(parts)) {
    while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
    validate();
  }

  Partition(std::initializer_list<long long> parts) : Partition(std::vector<long long>(parts)) {}

  std::size_t length() const noexcept { return parts_.size(); }
  bool empty() const noexcept { return parts_.empty(); }

  /// Number of boxes |p|.
  long long size() const noexcept {
    return std::accumulate(parts_.begin(), parts_.end(), 0LL);
  }

  /// Part at 0-based row i; rows past the end are 0.
  long long operator[](std::size_t i) const noexcept { return i < parts_.size() ? parts_[i] : 0; }

  const std::vector<long long>& parts() const noexcept { return parts_; }

  long long last() const noexcept { return parts_.empty() ? 0 : parts_.back(); }

  /// The partition with the final row removed; empty input stays empty.
  Partition dropped_last() const {
    if (parts_.empty()) return {};
    return Partition(std::vector<long long>(parts_.begin(), parts_.end() - 1));
  }

  /// Zero-padded coordinate vector of the given rank.
  std::vector<long long> padded(int rank) const {
    if (rank < 0 || parts_.size() > static_cast<std::size_t>(rank))
      throw InputError("partition " + to_text() + " does not fit in rank " + std::to_string(rank));
    std::vector<long long> v(parts_);
    v.resize(static_cast<std::size_t>(rank), 0);
    return v;
  }

  /// Comma-separated text form; the empty partition prints as "0".
  std::string to_text() const {
    if (parts_.empty()) return "0";
    std::string s;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) s += ',';
      s += std::to_string(parts_[i]);
    }
    return s;
  }

  friend bool operator==(const Partition&, const Partition&) = default;
  friend auto operator<=>(const Partition& a, const Partition& b) { return a.parts_ <=> b.parts_; }

private:
  void validate() const {
    if (parts_.size() > kMaxLength)
      throw InputError("partition length exceeds supported bound " + std::to_string(kMaxLength));
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (parts_[i] <= 0 && i + 1 < parts_.size())
        throw InputError("partition parts must be nonnegative and weakly decreasing");
      if (parts_[i] < 0) throw InputError("partition parts must be nonnegative");
      if (parts_[i] > kMaxPart)
        throw InputError("partition part exceeds supported bound " + std::to_string(kMaxPart));
      if (i && parts_[i] > parts_[i - 1])
        throw InputError("partition parts must be weakly decreasing");
    }
  }

  std::vector<long long> parts_;
};

/// Build a Partition from a coordinate vector by stripping trailing zeros.
/// Rejects vectors that are not weakly decreasing nonnegative sequences.
inline Partition partition_from_weight(const std::vector<long long>& w) {
  return Partition(std::vector<long long>(w));
}

/// True iff inner ⊆ outer and the skew shape outer/inner is a horizontal
/// strip: at most one box per column, i.e. outer[i] >= inner[i] >= outer[i+1].
inline bool is_horizontal_strip(const Partition& outer, const Partition& inner) {
  std::size_t rows = std::max(outer.length(), inner.length());
  for (std::size_t i = 0; i < rows; ++i) {
    if (outer[i] < inner[i]) return false;
    if (inner[i] < outer[i + 1]) return false;
  }
  return true;
}

/// Box count of outer/inner. Requires containment.
inline long long skew_size(const Partition& outer, const Partition& inner) {
  std::size_t rows = std::max(outer.length(), inner.length());
  long long total = 0;
  for (std::size_t i = 0; i < rows; ++i) {
    if (outer[i] < inner[i])
      throw InputError("skew_size: inner shape not contained in outer shape");
    total += outer[i] - inner[i];
  }
  return total;
}

/// Strict partial order driving the recursion's descent: a < b iff a is
/// shorter than b, or they have equal length r >= 1 and a's last part is
/// smaller. Partitions of equal length and equal last part are incomparable.
inline bool order_less(const Partition& a, const Partition& b) {
  if (a.length() != b.length()) return a.length() < b.length();
  if (a.empty()) return false;
  return a.last() < b.last();
}

}  // namespace stabletensor
