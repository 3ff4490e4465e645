#pragma once

#include <algorithm>
#include <atomic>
#include <map>
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "decomposition.hpp"
#include "root_system.hpp"

namespace stabletensor {

/// All weights of an irreducible with their multiplicities. Closed under the
/// Weyl group; the total mass equals the dimension.
struct WeightSystem {
  GroupFamily family{Kind::GL, 1};
  WeightVector highest;
  std::unordered_map<WeightVector, long long, WeightVectorHash> multiplicity;
};

// ---------------------------------------------------------------------------
// Tunables and instrumentation (process-global, thread-safe).

namespace detail {
inline std::atomic<long long> weight_entry_cap{5'000'000};
inline std::atomic<bool> weight_cache_enabled{true};
inline std::atomic<bool> dimension_audit_enabled{false};
inline std::atomic<unsigned long long> dimension_audit_count{0};

inline std::shared_mutex& weight_cache_mutex() {
  static std::shared_mutex m;
  return m;
}

using WeightCacheKey = std::tuple<int, int, WeightVector>;

inline std::map<WeightCacheKey, std::shared_ptr<const WeightSystem>>& weight_cache() {
  static std::map<WeightCacheKey, std::shared_ptr<const WeightSystem>> c;
  return c;
}
}  // namespace detail

/// Bound on the number of distinct weight vectors a single weight-system
/// expansion may produce; estimated before expansion, exceeded -> resource
/// error.
inline void set_weight_entry_cap(long long cap) { detail::weight_entry_cap = cap; }
inline long long weight_entry_cap() { return detail::weight_entry_cap; }

inline void set_weight_cache_enabled(bool on) { detail::weight_cache_enabled = on; }

inline void clear_weight_cache() {
  std::unique_lock lk(detail::weight_cache_mutex());
  detail::weight_cache().clear();
}

/// When enabled, every decomposition produced by the oracle (and by the
/// recursive engine, which calls through here) is audited for exact
/// dimension conservation. Test binaries switch this on globally.
inline void set_dimension_audit(bool on) { detail::dimension_audit_enabled = on; }
inline bool dimension_audit_enabled() { return detail::dimension_audit_enabled; }
inline unsigned long long dimension_audit_count() { return detail::dimension_audit_count; }

// ---------------------------------------------------------------------------

/// Exact dimension via the Weyl product formula, evaluated entirely in
/// doubled coordinates: prod <2w+2rho, a> / prod <2rho, a> over positive
/// roots a.
inline BigInt dim(GroupFamily f, const WeightVector& hw) {
  if (!is_dominant(f, hw)) throw InputError("dim: weight is not dominant");
  WeightVector rho2 = rho_doubled(f);
  BigInt num = 1, den = 1;
  for (const auto& root : positive_roots(f)) {
    long long dn = 0, dd = 0;
    for (std::size_t i = 0; i < root.size(); ++i) {
      dn += (2 * hw[i] + rho2[i]) * root[i];
      dd += rho2[i] * root[i];
    }
    num *= dn;
    den *= dd;
  }
  BigInt q = num / den;
  if (q * den != num) throw InternalError("dim: Weyl product did not divide exactly");
  return q;
}

namespace detail {

/// All dominant weights mu with hw - mu a nonnegative combination of simple
/// roots. Generated as weakly decreasing vectors bounded by hw[0], pruned by
/// the prefix-sum dominance conditions, then filtered exactly.
inline std::vector<WeightVector> dominant_weight_candidates(GroupFamily f, const WeightVector& hw) {
  int n = f.rank;
  std::vector<long long> hw_prefix(static_cast<std::size_t>(n));
  long long acc = 0;
  for (int i = 0; i < n; ++i) {
    acc += hw[static_cast<std::size_t>(i)];
    hw_prefix[static_cast<std::size_t>(i)] = acc;
  }
  std::vector<WeightVector> out;
  WeightVector cur(static_cast<std::size_t>(n));
  long long mu_prefix = 0;

  auto emit = [&]() {
    WeightVector delta(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) delta[static_cast<std::size_t>(i)] = hw[static_cast<std::size_t>(i)] - cur[static_cast<std::size_t>(i)];
    if (simple_root_coefficients(f, delta)) out.push_back(cur);
  };

  // Position i+1 is bounded above by cur[i] (weak decrease); the SOeven last
  // coordinate additionally ranges down to -cur[n-2].
  auto rec = [&](auto&& self, int i, long long upper) -> void {
    if (i == n) {
      emit();
      return;
    }
    bool last = i == n - 1;
    long long lo = (last && f.kind == Kind::SOeven) ? -upper : 0;
    for (long long v = lo; v <= upper; ++v) {
      // Prefix dominance prune, valid for every family up to position n-2.
      if (i + 1 <= n - 2 && mu_prefix + v > hw_prefix[static_cast<std::size_t>(i)]) break;
      cur[static_cast<std::size_t>(i)] = v;
      mu_prefix += v;
      self(self, i + 1, std::llabs(v));
      mu_prefix -= v;
    }
  };
  rec(rec, 0, hw.empty() ? 0 : std::max<long long>(hw[0], 0));
  return out;
}

inline long long height_below(GroupFamily f, const WeightVector& hw, const WeightVector& mu) {
  WeightVector delta(hw.size());
  for (std::size_t i = 0; i < hw.size(); ++i) delta[i] = hw[i] - mu[i];
  auto c = simple_root_coefficients(f, delta);
  if (!c) throw InternalError("height_below: weight not below highest weight");
  long long h = 0;
  for (auto x : *c) h += x;
  return h;
}

}  // namespace detail

/// Full weight system of the irreducible with the given highest weight,
/// computed by the standard multiplicity recursion over dominant weights in
/// increasing depth, then expanded along Weyl orbits. Results are cached
/// per (family, weight); the cache can be disabled for transparency tests.
inline std::shared_ptr<const WeightSystem> weight_multiplicities(GroupFamily f, const WeightVector& hw) {
  if (!is_dominant(f, hw)) throw InputError("weight_multiplicities: weight is not dominant");

  detail::WeightCacheKey key{static_cast<int>(f.kind), f.rank, hw};
  if (detail::weight_cache_enabled) {
    std::shared_lock lk(detail::weight_cache_mutex());
    auto it = detail::weight_cache().find(key);
    if (it != detail::weight_cache().end()) return it->second;
  }

  auto candidates = detail::dominant_weight_candidates(f, hw);

  // Resource estimate before any expansion: every candidate is a genuine
  // weight, so the entry count is exactly the sum of orbit sizes.
  BigInt entries = 0;
  for (const auto& mu : candidates) entries += orbit_size(f, mu);
  if (entries > detail::weight_entry_cap.load())
    throw ResourceError("weight system would hold " + entries.str() + " entries (cap " +
                        std::to_string(detail::weight_entry_cap.load()) + ")");

  std::stable_sort(candidates.begin(), candidates.end(),
                   [&](const WeightVector& a, const WeightVector& b) {
                     return detail::height_below(f, hw, a) < detail::height_below(f, hw, b);
                   });
  if (candidates.empty() || candidates.front() != hw)
    throw InternalError("weight_multiplicities: highest weight missing from candidate set");

  WeightVector rho2 = rho_doubled(f);
  auto roots = positive_roots(f);
  auto norm_q = [&](const WeightVector& v) {
    long long q = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      long long c = 2 * v[i] + rho2[i];
      q += c * c;
    }
    return q;
  };
  long long q_top = norm_q(hw);

  std::map<WeightVector, long long> dominant_mult;
  dominant_mult[hw] = 1;
  for (const auto& mu : candidates) {
    if (mu == hw) continue;
    long long denom4 = q_top - norm_q(mu);  // 4 * (|hw+rho|^2 - |mu+rho|^2)
    if (denom4 <= 0) throw InternalError("weight_multiplicities: nonpositive denominator");
    long long sum = 0;
    WeightVector nu(mu.size());
    for (const auto& a : roots) {
      for (long long k = 1;; ++k) {
        for (std::size_t i = 0; i < mu.size(); ++i) nu[i] = mu[i] + k * a[i];
        auto it = dominant_mult.find(dominant_conjugate(f, nu));
        if (it == dominant_mult.end()) break;  // string ends: all higher terms vanish
        long long dot = 0;
        for (std::size_t i = 0; i < nu.size(); ++i) dot += nu[i] * a[i];
        sum = checked_add(sum, checked_mul(it->second, dot));
      }
    }
    long long num = checked_mul(8, sum);
    if (num % denom4 != 0 || num / denom4 <= 0)
      throw InternalError("weight_multiplicities: recursion produced a non-weight value");
    dominant_mult[mu] = num / denom4;
  }

  auto ws = std::make_shared<WeightSystem>();
  ws->family = f;
  ws->highest = hw;
  ws->multiplicity.reserve(static_cast<std::size_t>(entries));
  for (const auto& [mu, m] : dominant_mult)
    for (auto& w : weyl_orbit(f, mu)) ws->multiplicity.emplace(std::move(w), m);

  // Mass check against the independent product formula.
  BigInt mass = 0;
  for (const auto& [mu, m] : dominant_mult) mass += orbit_size(f, mu) * m;
  if (mass != dim(f, hw))
    throw InternalError("weight_multiplicities: total mass disagrees with Weyl dimension");

  if (detail::weight_cache_enabled) {
    std::unique_lock lk(detail::weight_cache_mutex());
    auto [it, inserted] = detail::weight_cache().emplace(key, ws);
    return it->second;
  }
  return ws;
}

/// Exact audit: dim(lhs) * dim(rhs) must equal the dimension-weighted sum of
/// the decomposition. Throws on violation.
inline void verify_dimension_conservation(const Decomposition& d, const WeightVector& lhs,
                                          const WeightVector& rhs) {
  BigInt expect = dim(d.family, lhs) * dim(d.family, rhs);
  BigInt got = 0;
  for (const auto& [w, m] : d.terms) {
    if (m <= 0) throw InternalError("dimension audit: nonpositive multiplicity");
    got += dim(d.family, w) * m;
  }
  if (expect != got)
    throw InternalError("dimension audit failed: " + expect.str() + " != " + got.str());
  ++detail::dimension_audit_count;
}

/// Character-theoretic tensor decomposition: run the rho-shifted reflection
/// rule over every weight of the smaller factor. Independent of the
/// recursive engine; negative accumulated multiplicities are impossible for
/// valid inputs and therefore fatal.
inline Decomposition tensor_oracle(GroupFamily f, const WeightVector& lhs, const WeightVector& rhs) {
  if (!is_dominant(f, lhs)) throw InputError("tensor_oracle: lhs is not dominant");
  if (!is_dominant(f, rhs)) throw InputError("tensor_oracle: rhs is not dominant");

  const WeightVector* big = &lhs;
  const WeightVector* small = &rhs;
  if (dim(f, *small) > dim(f, *big)) std::swap(big, small);

  auto ws = weight_multiplicities(f, *small);
  WeightVector rho2 = rho_doubled(f);

  Decomposition out(f);
  WeightVector t(lhs.size());
  for (const auto& [nu, m] : ws->multiplicity) {
    for (std::size_t i = 0; i < t.size(); ++i) t[i] = 2 * ((*big)[i] + nu[i]) + rho2[i];
    ChamberResult cr = reflect_to_dominant(f, t);
    if (cr.on_wall) continue;
    WeightVector w(t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
      long long num = cr.weight[i] - rho2[i];
      if (num % 2 != 0) throw InternalError("tensor_oracle: non-integral dominant weight");
      w[i] = num / 2;
    }
    out.add(w, cr.sign > 0 ? m : -m);
  }
  out.assert_nonnegative("tensor_oracle");
  if (dimension_audit_enabled()) verify_dimension_conservation(out, lhs, rhs);
  return out;
}

}  // namespace stabletensor
