#pragma once

#include <map>
#include <string>
#include <vector>

#include "decomposition.hpp"
#include "errors.hpp"
#include "partition.hpp"
#include "root_system.hpp"

namespace stabletensor {

namespace detail {

/// All partitions mu ⊇ base with mu/base a horizontal strip of exactly
/// `boxes` boxes. A strip touches at most one row below the last row of
/// base, so mu has at most length(base)+1 rows.
inline std::vector<Partition> horizontal_strip_extensions(const Partition& base, long long boxes) {
  std::vector<Partition> out;
  if (boxes < 0) return out;
  std::size_t rows = base.length() + 1;
  std::vector<long long> cur(rows, 0);
  auto rec = [&](auto&& self, std::size_t i, long long left) -> void {
    if (i == rows) {
      if (left == 0) out.push_back(Partition(std::vector<long long>(cur)));
      return;
    }
    // Strip condition: base[i] <= mu_i <= base[i-1] (row 0 unbounded above).
    long long lo = base[i];
    long long hi = i == 0 ? base[0] + left : std::min(base[i - 1], base[i] + left);
    for (long long v = lo; v <= hi; ++v) {
      cur[i] = v;
      self(self, i + 1, left - (v - base[i]));
    }
    cur[i] = base[i];
  };
  rec(rec, 0, boxes);
  return out;
}

/// All partitions xi ⊆ top with top/xi a horizontal strip.
inline std::vector<Partition> horizontal_strip_restrictions(const Partition& top) {
  std::vector<Partition> out;
  std::size_t rows = top.length();
  std::vector<long long> cur(rows, 0);
  auto rec = [&](auto&& self, std::size_t i) -> void {
    if (i == rows) {
      out.push_back(Partition(std::vector<long long>(cur)));
      return;
    }
    for (long long v = top[i + 1]; v <= top[i]; ++v) {
      cur[i] = v;
      self(self, i + 1);
    }
  };
  rec(rec, 0);
  return out;
}

}  // namespace detail

/// Multiply by a one-row shape in the general linear setting: all ways to add
/// a horizontal strip of k boxes within r rows. Multiplicity-free.
inline std::vector<Partition> gl_pieri(const Partition& shape, long long k, int rows) {
  if (rows < 1) throw InputError("gl_pieri: row count must be positive");
  if (k < 0) throw InputError("gl_pieri: strip size must be nonnegative");
  if (shape.length() > static_cast<std::size_t>(rows))
    throw InputError("gl_pieri: shape has more than " + std::to_string(rows) + " rows");
  std::vector<Partition> out;
  for (auto& mu : detail::horizontal_strip_extensions(shape, k))
    if (mu.length() <= static_cast<std::size_t>(rows)) out.push_back(std::move(mu));
  std::sort(out.begin(), out.end());
  return out;
}

/// Multiply by the one-row irreducible of size k in a symplectic/orthogonal
/// family at stable rank. The multiplicity of mu counts the shapes xi for
/// which both shape/xi and mu/xi are horizontal strips with sizes summing to
/// k. Valid only when the rank exceeds the shape's length (by 2 for the even
/// orthogonal family); below that the rule is not the truth and the call is
/// refused with the minimal admissible rank.
inline std::map<Partition, long long> classical_pieri(const Partition& shape, long long k,
                                                      GroupFamily f) {
  if (f.kind == Kind::GL) throw InputError("classical_pieri: use gl_pieri for the GL family");
  if (k < 0) throw InputError("classical_pieri: strip size must be nonnegative");
  int slack = f.kind == Kind::SOeven ? 2 : 1;
  int min_rank = static_cast<int>(shape.length()) + slack;
  if (f.rank < min_rank)
    throw StableRangeError("classical_pieri: shape of length " + std::to_string(shape.length()) +
                               " needs rank >= " + std::to_string(min_rank) + " (got " +
                               std::to_string(f.rank) + ")",
                           min_rank);

  std::map<Partition, long long> counts;
  for (const auto& xi : detail::horizontal_strip_restrictions(shape)) {
    long long removed = shape.size() - xi.size();
    long long added = k - removed;
    if (added < 0) continue;
    for (auto& mu : detail::horizontal_strip_extensions(xi, added)) ++counts[mu];
  }
  for (const auto& [mu, c] : counts)
    if (mu.length() > shape.length() + 1)
      throw InternalError("classical_pieri: product term exceeds the one-row length bound");
  return counts;
}

/// Irreducible content of the k-th symmetric power of the defining
/// representation of an orthogonal family: one-row shapes k, k-2, ..., 1|0.
inline std::vector<Partition> sym_decomposition(long long k) {
  if (k < 0) throw InputError("sym_decomposition: power must be nonnegative");
  std::vector<Partition> out;
  for (long long j = k; j >= 0; j -= 2) out.push_back(j == 0 ? Partition{} : Partition{j});
  return out;
}

/// The one-row product that isolates a last row: for mu = (prefix, last),
/// expand prefix ⊗ (last). The target mu appears with coefficient exactly 1
/// and every other term is strictly below mu in the descent order (shorter,
/// or equal length r with a smaller r-th part). Both facts are asserted.
inline Decomposition pieri_last_row(const Partition& prefix, long long last, GroupFamily f) {
  if (last < 1) throw InputError("pieri_last_row: last part must be positive");
  if (!prefix.empty() && prefix.last() < last)
    throw InputError("pieri_last_row: extension by " + std::to_string(last) +
                     " does not yield a partition");
  std::vector<long long> mu_parts(prefix.parts());
  mu_parts.push_back(last);
  Partition mu(std::move(mu_parts));
  std::size_t r = mu.length();

  Decomposition out(f);
  for (const auto& [nu, c] : classical_pieri(prefix, last, f)) out.add(nu.padded(f.rank), c);

  WeightVector mu_w = mu.padded(f.rank);
  for (const auto& [w, c] : out.terms) {
    Partition nu = partition_from_weight(strip_trailing_zeros(w));
    if (w == mu_w) {
      if (c != 1) throw InternalError("pieri_last_row: target coefficient is not 1");
      continue;
    }
    if (nu.length() > r || nu[r - 1] >= last)
      throw InternalError("pieri_last_row: term does not descend below the target");
  }
  if (out.multiplicity_of(mu_w) != 1)
    throw InternalError("pieri_last_row: target term missing");
  return out;
}

}  // namespace stabletensor
