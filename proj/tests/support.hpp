#pragma once

// Shared helpers for the test binaries: small-shape generators and a
// brute-force Weyl-group model used to cross-validate the closed-form
// chamber arithmetic.

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <vector>

#include <stabletensor/stabletensor.hpp>

namespace testsupport {

using namespace stabletensor;

/// Every partition with size <= max_size and length <= max_len, empty
/// partition included, in a deterministic order.
inline std::vector<Partition> partitions_up_to(long long max_size, std::size_t max_len) {
  std::vector<Partition> out;
  std::vector<long long> cur;
  auto rec = [&](auto&& self, long long left, long long cap) -> void {
    out.push_back(Partition(std::vector<long long>(cur)));
    if (cur.size() == max_len) return;
    for (long long v = std::min(left, cap); v >= 1; --v) {
      cur.push_back(v);
      self(self, left - v, v);
      cur.pop_back();
    }
  };
  rec(rec, max_size, max_size);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

inline BigInt binomial(long long n, long long k) {
  if (k < 0 || k > n) return 0;
  BigInt r = 1;
  for (long long i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

/// Literal model of the Weyl group: every (permutation, sign pattern) pair
/// admitted by the family, applied one element at a time.
struct BruteChamber {
  bool on_wall = true;
  WeightVector weight;
  int sign = 0;
};

inline bool strictly_dominant(GroupFamily f, const WeightVector& v) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i - 1] <= v[i]) return false;
  switch (f.kind) {
    case Kind::GL: return true;
    case Kind::Sp:
    case Kind::SOodd: return v.back() > 0;
    case Kind::SOeven:
      if (v.size() >= 2 && v[v.size() - 2] <= std::llabs(v.back())) return false;
      return true;
  }
  return false;
}

inline BruteChamber brute_reflect(GroupFamily f, const WeightVector& v) {
  std::size_t n = v.size();
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);

  std::set<WeightVector> images;
  std::size_t elements = 0;
  BruteChamber found;

  do {
    int perm_parity = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (perm[i] > perm[j]) ++perm_parity;

    std::uint64_t mask_count = f.kind == Kind::GL ? 1 : (std::uint64_t{1} << n);
    for (std::uint64_t mask = 0; mask < mask_count; ++mask) {
      int flips = __builtin_popcountll(mask);
      if (f.kind == Kind::SOeven && (flips & 1)) continue;
      ++elements;
      WeightVector u(n);
      for (std::size_t i = 0; i < n; ++i) {
        u[i] = v[static_cast<std::size_t>(perm[i])];
        if (mask >> i & 1) u[i] = -u[i];
      }
      int det = ((perm_parity + flips) & 1) ? -1 : 1;
      images.insert(u);
      if (strictly_dominant(f, u)) {
        found.on_wall = false;
        found.weight = u;
        found.sign = det;
      }
    }
  } while (std::next_permutation(perm.begin(), perm.end()));

  // A repeated image means a nontrivial stabilizer: the vector lies on a wall.
  if (images.size() < elements) {
    BruteChamber wall;
    return wall;
  }
  return found;
}

}  // namespace testsupport
