#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <shared_mutex>
#include <string>
#include <tuple>
#include <vector>

#include "oracle.hpp"
#include "pieri.hpp"

namespace stabletensor {

inline constexpr const char* kEngineRecursive = "pieri-recursive";
inline constexpr const char* kEngineOracle = "klimyk-oracle";

struct EngineOptions {
  bool use_memo = true;
};

namespace detail {
using EngineMemoKey = std::tuple<int, int, std::vector<long long>, std::vector<long long>>;

inline std::shared_mutex& engine_memo_mutex() {
  static std::shared_mutex m;
  return m;
}

inline std::map<EngineMemoKey, Decomposition>& engine_memo() {
  static std::map<EngineMemoKey, Decomposition> memo;
  return memo;
}
}  // namespace detail

inline void clear_engine_memo() {
  std::unique_lock lk(detail::engine_memo_mutex());
  detail::engine_memo().clear();
}

/// Smallest rank at which the recursive rule computes the product exactly:
/// length(lhs) + length(rhs), one more for the even orthogonal family.
inline int stable_rank_threshold(Kind kind, const Partition& lhs, const Partition& rhs) {
  int n0 = static_cast<int>(lhs.length() + rhs.length());
  return kind == Kind::SOeven ? n0 + 1 : n0;
}

/// Tensor product of two irreducibles of a symplectic/orthogonal family in
/// the stable range, by recursion on the second factor: peel its last row,
/// expand with the one-row rule, and subtract the lower-order one-row terms.
/// Every subtraction cancels exactly; a surviving negative multiplicity is a
/// fatal internal error. Results are memoized per (family, lhs, rhs).
inline Decomposition tensor_stable_range(GroupFamily f, const Partition& lhs, const Partition& rhs,
                                         const EngineOptions& opts = {}) {
  if (f.kind == Kind::GL)
    throw InputError("tensor_stable_range: the GL family is handled by gl_tensor");
  int need = stable_rank_threshold(f.kind, lhs, rhs);
  if (f.rank < need)
    throw StableRangeError("tensor_stable_range: rank " + std::to_string(f.rank) +
                               " is below the stable bound " + std::to_string(need) + " for " +
                               lhs.to_text() + " (x) " + rhs.to_text(),
                           need);

  detail::EngineMemoKey key{static_cast<int>(f.kind), f.rank, lhs.parts(), rhs.parts()};
  if (opts.use_memo) {
    std::shared_lock lk(detail::engine_memo_mutex());
    auto it = detail::engine_memo().find(key);
    if (it != detail::engine_memo().end()) return it->second;
  }

  Decomposition out(f);
  if (rhs.empty()) {
    out.add(lhs.padded(f.rank), 1);
  } else if (rhs.length() == 1) {
    for (const auto& [nu, c] : classical_pieri(lhs, rhs[0], f)) out.add(nu.padded(f.rank), c);
  } else {
    Partition prefix = rhs.dropped_last();
    long long last = rhs.last();

    // Expand (lhs ⊗ prefix) ⊗ (last) ...
    Decomposition partial = tensor_stable_range(f, lhs, prefix, opts);
    for (const auto& [w, c] : partial.terms) {
      Partition nu = partition_from_weight(strip_trailing_zeros(w));
      for (const auto& [eta, cnt] : classical_pieri(nu, last, f))
        out.add(eta.padded(f.rank), checked_mul(c, cnt));
    }

    // ... and remove the lower-order terms of prefix ⊗ (last), each strictly
    // below rhs in the descent order, so the recursion terminates.
    Decomposition one_row = pieri_last_row(prefix, last, f);
    WeightVector rhs_w = rhs.padded(f.rank);
    for (const auto& [w, n] : one_row.terms) {
      if (w == rhs_w) continue;
      Partition corr = partition_from_weight(strip_trailing_zeros(w));
      if (!order_less(corr, rhs))
        throw InternalError("tensor_stable_range: correction term fails to descend");
      Decomposition sub = tensor_stable_range(f, lhs, corr, opts);
      for (const auto& [sw, sc] : sub.terms) out.add(sw, -checked_mul(n, sc));
    }
    out.assert_nonnegative("tensor_stable_range");
  }

  if (dimension_audit_enabled())
    verify_dimension_conservation(out, lhs.padded(f.rank), rhs.padded(f.rank));

  if (opts.use_memo) {
    std::unique_lock lk(detail::engine_memo_mutex());
    detail::engine_memo().emplace(key, out);
  }
  return out;
}

/// GL tensor product of polynomial irreducibles. Delegated to the
/// character-theoretic rule, which is exact at every rank.
inline Decomposition gl_tensor(int rank, const Partition& lhs, const Partition& rhs) {
  GroupFamily f = make_family(Kind::GL, rank);
  return tensor_oracle(f, lhs.padded(rank), rhs.padded(rank));
}

/// Rank-independent stable decomposition. Computed symplectically at the
/// stability threshold; by the cross-family coincidence the same table is
/// the stable answer for every classical family.
struct StableDecomposition {
  GroupFamily via{Kind::Sp, 1};
  int n0 = 0;
  std::map<WeightVector, long long, DescLex> terms;  // canonical, trailing zeros stripped
};

inline StableDecomposition stable_tensor(const Partition& lhs, const Partition& rhs) {
  int n0 = static_cast<int>(lhs.length() + rhs.length());
  GroupFamily f = make_family(Kind::Sp, std::max(n0, 1));
  Decomposition d = tensor_stable_range(f, lhs, rhs);
  StableDecomposition out;
  out.via = f;
  out.n0 = n0;
  for (const auto& [w, m] : d.terms) out.terms.emplace(strip_trailing_zeros(w), m);
  return out;
}

/// Restriction of a GL(n+1) decomposition table to GL(n): terms whose weight
/// occupies all n+1 rows vanish; the rest lose their trailing zero.
inline Decomposition restrict_decomposition(const Decomposition& dec, int from_rank) {
  if (dec.family.kind != Kind::GL)
    throw InputError("restrict_decomposition: only GL tables restrict this way");
  if (dec.family.rank != from_rank)
    throw InputError("restrict_decomposition: table rank does not match from_rank");
  if (from_rank < 2) throw InputError("restrict_decomposition: from_rank must be at least 2");

  Decomposition out(make_family(Kind::GL, from_rank - 1));
  for (const auto& [w, m] : dec.terms) {
    std::size_t len = weight_length(w);
    if (len == static_cast<std::size_t>(from_rank)) continue;
    if (len > static_cast<std::size_t>(from_rank))
      throw InternalError("restrict_decomposition: term longer than the source rank");
    WeightVector shorter(w.begin(), w.end() - 1);
    out.add(shorter, m);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Stability survey

struct StabilityRow {
  GroupFamily family{Kind::Sp, 1};
  std::string engine_tag;  // which engine produced the stored table
  Decomposition table{GroupFamily{Kind::Sp, 1}};
};

struct StabilityReport {
  Partition lhs, rhs;
  int n0 = 0;
  int n_max = 0;
  std::vector<Kind> families;
  std::vector<StabilityRow> rows;  // family-major, rank-increasing
  std::map<Kind, int> stable_from;
  bool vanishing_ok = true;
  bool cross_group_ok = true;
  std::vector<std::string> violations;

  bool stabilization_ok() const {
    for (auto k : families) {
      int bound = k == Kind::SOeven ? n0 + 1 : n0;
      auto it = stable_from.find(k);
      if (it == stable_from.end() || it->second > bound) return false;
    }
    return true;
  }

  bool conclusions_ok() const { return vanishing_ok && cross_group_ok && stabilization_ok(); }
};

/// Compute the product across a sweep of ranks for each requested family,
/// verify the three stability phenomena, and keep every table for output.
/// At and above a family's threshold both engines run and must agree; below
/// it only the character-theoretic rule applies.
inline StabilityReport stability_report(const Partition& lhs, const Partition& rhs,
                                        const std::vector<Kind>& kinds, int n_max) {
  StabilityReport rep;
  rep.lhs = lhs;
  rep.rhs = rhs;
  rep.n0 = static_cast<int>(lhs.length() + rhs.length());
  rep.n_max = n_max;
  if (n_max < rep.n0 + 2)
    throw InputError("stability_report: nmax must be at least n0+2 = " +
                     std::to_string(rep.n0 + 2));

  for (Kind k : {Kind::GL, Kind::Sp, Kind::SOodd, Kind::SOeven}) {
    bool wanted = false;
    for (auto q : kinds) wanted = wanted || q == k;
    if (!wanted) continue;
    rep.families.push_back(k);

    int min_rank = std::max({static_cast<int>(lhs.length()), static_cast<int>(rhs.length()), 1,
                             k == Kind::SOeven ? 2 : 1});
    int threshold = k == Kind::SOeven ? rep.n0 + 1 : rep.n0;

    std::vector<std::map<WeightVector, long long>> sigs;
    std::vector<int> sig_ranks;
    for (int n = min_rank; n <= n_max; ++n) {
      GroupFamily f = make_family(k, n);
      StabilityRow row{f, kEngineOracle, Decomposition(f)};
      if (k == Kind::GL) {
        row.table = gl_tensor(n, lhs, rhs);
      } else if (n >= threshold) {
        row.table = tensor_stable_range(f, lhs, rhs);
        Decomposition check = tensor_oracle(f, lhs.padded(n), rhs.padded(n));
        if (!(row.table == check))
          throw InternalError("stability_report: recursive engine disagrees with oracle for " +
                              display_name(f));
        row.engine_tag = kEngineRecursive;
      } else {
        row.table = tensor_oracle(f, lhs.padded(n), rhs.padded(n));
      }

      for (const auto& [w, m] : row.table.terms) {
        if (weight_length(w) > static_cast<std::size_t>(rep.n0)) {
          rep.vanishing_ok = false;
          rep.violations.push_back("term of length > n0 in " + display_name(f));
        }
      }
      sigs.push_back(row.table.signature());
      sig_ranks.push_back(n);
      rep.rows.push_back(std::move(row));
    }

    // Least examined rank from which the rank-free table never changes again.
    int from = sig_ranks.back();
    for (std::size_t i = sigs.size(); i-- > 0;) {
      if (sigs[i] == sigs.back())
        from = sig_ranks[i];
      else
        break;
    }
    rep.stable_from[k] = from;
  }

  // Classical families must share one table at every rank from n0+1 up.
  std::vector<Kind> classical;
  for (auto k : rep.families)
    if (k != Kind::GL) classical.push_back(k);
  for (int n = rep.n0 + 1; n <= n_max; ++n) {
    std::map<WeightVector, long long> ref;
    bool have = false;
    for (auto k : classical) {
      for (const auto& row : rep.rows) {
        if (row.family.kind != k || row.family.rank != n) continue;
        auto sig = row.table.signature();
        if (!have) {
          ref = std::move(sig);
          have = true;
        } else if (sig != ref) {
          rep.cross_group_ok = false;
          rep.violations.push_back("cross-family mismatch at rank " + std::to_string(n));
        }
      }
    }
  }
  return rep;
}

/// Coefficient of `shape` in the chain Sym^{p_1} ⊗ ... ⊗ Sym^{p_l} of one-row
/// GL(rows) factors built from its own parts. Triangularity makes this 1.
inline long long multiplicity_in_sym_chain(const Partition& shape, int rows) {
  if (shape.length() > static_cast<std::size_t>(rows))
    throw InputError("multiplicity_in_sym_chain: shape needs at least " +
                     std::to_string(shape.length()) + " rows");
  std::map<Partition, long long> acc;
  acc[Partition{}] = 1;
  for (long long part : shape.parts()) {
    std::map<Partition, long long> next;
    for (const auto& [sigma, c] : acc)
      for (const auto& tau : gl_pieri(sigma, part, rows)) {
        auto [it, fresh] = next.try_emplace(tau, 0);
        it->second = checked_add(it->second, c);
      }
    acc = std::move(next);
  }
  auto it = acc.find(shape);
  return it == acc.end() ? 0 : it->second;
}

}  // namespace stabletensor
