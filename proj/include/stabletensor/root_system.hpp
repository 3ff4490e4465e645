#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "checked_math.hpp"
#include "errors.hpp"
#include "partition.hpp"

namespace stabletensor {

/// The four classical families handled by this library.
enum class Kind { GL, Sp, SOodd, SOeven };

/// Integer weight in the standard coordinates e_1..e_n. Half-integer data
/// (rho for the odd orthogonal family, norms) is always carried doubled, so
/// every quantity in the library is an exact 64-bit integer.
using Coord = long long;
using WeightVector = std::vector<Coord>;

struct GroupFamily {
  Kind kind;
  int rank;

  friend bool operator==(const GroupFamily&, const GroupFamily&) = default;
};

inline GroupFamily make_family(Kind kind, int rank) {
  if (rank < 1 || rank > static_cast<int>(Partition::kMaxLength))
    throw InputError("rank must lie in [1, " + std::to_string(Partition::kMaxLength) + "]");
  if (kind == Kind::SOeven && rank < 2)
    throw InputError("the even orthogonal family needs rank >= 2");
  return GroupFamily{kind, rank};
}

/// CLI spelling of a family kind: gl, sp, so-odd, so-even.
inline std::string kind_flag(Kind kind) {
  switch (kind) {
    case Kind::GL: return "gl";
    case Kind::Sp: return "sp";
    case Kind::SOodd: return "so-odd";
    case Kind::SOeven: return "so-even";
  }
  return "?";
}

inline Kind kind_from_flag(const std::string& s) {
  if (s == "gl") return Kind::GL;
  if (s == "sp") return Kind::Sp;
  if (s == "so-odd") return Kind::SOodd;
  if (s == "so-even") return Kind::SOeven;
  throw InputError("unknown group '" + s + "' (expected gl, sp, so-odd, so-even)");
}

/// Size of the defining matrix group: GL(n), Sp(2n), SO(2n+1), SO(2n).
inline int matrix_size(GroupFamily f) {
  switch (f.kind) {
    case Kind::GL: return f.rank;
    case Kind::Sp: return 2 * f.rank;
    case Kind::SOodd: return 2 * f.rank + 1;
    case Kind::SOeven: return 2 * f.rank;
  }
  return 0;
}

inline std::string display_name(GroupFamily f) {
  switch (f.kind) {
    case Kind::GL: return "GL(" + std::to_string(matrix_size(f)) + ")";
    case Kind::Sp: return "Sp(" + std::to_string(matrix_size(f)) + ")";
    default: return "SO(" + std::to_string(matrix_size(f)) + ")";
  }
}

/// Dominance test in standard coordinates. For GL this library restricts to
/// polynomial weights (weakly decreasing, nonnegative). For the even
/// orthogonal family the last coordinate may be negative as long as
/// v_1 >= ... >= v_{n-1} >= |v_n|.
inline bool is_dominant(GroupFamily f, const WeightVector& v) {
  if (v.size() != static_cast<std::size_t>(f.rank))
    throw InputError("weight has length " + std::to_string(v.size()) + ", expected rank " +
                     std::to_string(f.rank));
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i - 1] < v[i]) return false;
  switch (f.kind) {
    case Kind::GL:
    case Kind::Sp:
    case Kind::SOodd:
      return v.back() >= 0;
    case Kind::SOeven:
      if (v.size() >= 2 && v[v.size() - 2] < std::llabs(v.back())) return false;
      return true;
  }
  return false;
}

/// Twice the half-sum of positive roots, 2*rho, as an integer vector.
/// (rho itself is half-integral for the odd orthogonal family.)
inline WeightVector rho_doubled(GroupFamily f) {
  WeightVector r(static_cast<std::size_t>(f.rank));
  int n = f.rank;
  for (int i = 0; i < n; ++i) {
    switch (f.kind) {
      case Kind::GL: r[i] = 2 * (n - 1 - i); break;       // rho = (n-1, ..., 1, 0)
      case Kind::Sp: r[i] = 2 * (n - i); break;           // rho = (n, ..., 2, 1)
      case Kind::SOodd: r[i] = 2 * (n - i) - 1; break;    // rho = (n-1/2, ..., 1/2)
      case Kind::SOeven: r[i] = 2 * (n - 1 - i); break;   // rho = (n-1, ..., 1, 0)
    }
  }
  return r;
}

/// Positive roots in standard coordinates.
///   GL:      e_i - e_j (i<j)                    n(n-1)/2
///   Sp:      e_i ± e_j (i<j), 2e_i              n^2
///   SOodd:   e_i ± e_j (i<j), e_i               n^2
///   SOeven:  e_i ± e_j (i<j)                    n(n-1)
inline std::vector<WeightVector> positive_roots(GroupFamily f) {
  int n = f.rank;
  std::vector<WeightVector> roots;
  auto root = [n](int i, Coord ci, int j, Coord cj) {
    WeightVector r(static_cast<std::size_t>(n), 0);
    r[static_cast<std::size_t>(i)] = ci;
    if (j >= 0) r[static_cast<std::size_t>(j)] = cj;
    return r;
  };
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      roots.push_back(root(i, 1, j, -1));
      if (f.kind != Kind::GL) roots.push_back(root(i, 1, j, 1));
    }
  if (f.kind == Kind::Sp)
    for (int i = 0; i < n; ++i) roots.push_back(root(i, 2, -1, 0));
  if (f.kind == Kind::SOodd)
    for (int i = 0; i < n; ++i) roots.push_back(root(i, 1, -1, 0));
  return roots;
}

/// Result of moving a vector to the dominant chamber by the Weyl group:
/// either the vector lies on a reflecting wall (some nontrivial element
/// fixes it), or there is a unique dominant representative together with
/// the determinant of the element reaching it.
struct ChamberResult {
  bool on_wall = true;
  WeightVector weight;  // empty when on_wall
  int sign = 0;         // ±1 when regular

  static ChamberResult wall() { return {}; }
  static ChamberResult regular(WeightVector w, int s) { return {false, std::move(w), s}; }
};

namespace detail {

/// Parity (0/1) of the permutation given as the array of original indices in
/// their new order. Quadratic inversion count; rank is capped at 64.
inline int permutation_parity(const std::vector<int>& idx) {
  int inv = 0;
  for (std::size_t i = 0; i < idx.size(); ++i)
    for (std::size_t j = i + 1; j < idx.size(); ++j)
      if (idx[i] > idx[j]) ++inv;
  return inv & 1;
}

}  // namespace detail

/// Reflect v into the closed dominant chamber, tracking the sign of the
/// unique Weyl element used. Wall detection per family:
///   GL:      two equal coordinates
///   Sp/SOodd: a zero coordinate, or two coordinates with equal absolute value
///   SOeven:  two coordinates with equal absolute value (covers a pair of
///            zeros; a single zero is NOT a wall). Only evenly many sign
///            flips are available, so the dominant representative may keep a
///            negative last coordinate.
inline ChamberResult reflect_to_dominant(GroupFamily f, const WeightVector& v) {
  if (v.size() != static_cast<std::size_t>(f.rank))
    throw InputError("reflect_to_dominant: weight length does not match rank");
  std::size_t n = v.size();
  bool signed_family = f.kind != Kind::GL;

  std::vector<Coord> key(n);
  int neg = 0, zero = 0;
  for (std::size_t i = 0; i < n; ++i) {
    key[i] = signed_family ? std::llabs(v[i]) : v[i];
    if (v[i] < 0) ++neg;
    if (v[i] == 0) ++zero;
  }
  if ((f.kind == Kind::Sp || f.kind == Kind::SOodd) && zero > 0) return ChamberResult::wall();

  std::vector<int> order(n);
  for (std::size_t i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = static_cast<int>(i);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    return key[static_cast<std::size_t>(a)] > key[static_cast<std::size_t>(b)];
  });
  for (std::size_t i = 1; i < n; ++i)
    if (key[static_cast<std::size_t>(order[i - 1])] == key[static_cast<std::size_t>(order[i])])
      return ChamberResult::wall();

  WeightVector w(n);
  for (std::size_t i = 0; i < n; ++i) w[i] = key[static_cast<std::size_t>(order[i])];

  int parity = detail::permutation_parity(order);
  int sign;
  switch (f.kind) {
    case Kind::GL:
      sign = parity ? -1 : 1;
      break;
    case Kind::Sp:
    case Kind::SOodd:
      // Each negative coordinate costs one sign flip.
      sign = ((parity + neg) & 1) ? -1 : 1;
      break;
    case Kind::SOeven:
      // Flips come in pairs; with an odd number of negatives either a zero
      // coordinate absorbs the extra flip or the last coordinate stays
      // negative. Either way the determinant is the permutation parity.
      if ((neg & 1) && zero == 0) w.back() = -w.back();
      sign = parity ? -1 : 1;
      break;
  }
  return ChamberResult::regular(std::move(w), sign);
}

/// Dominant representative of the Weyl orbit of v (no regularity demanded).
inline WeightVector dominant_conjugate(GroupFamily f, const WeightVector& v) {
  if (v.size() != static_cast<std::size_t>(f.rank))
    throw InputError("dominant_conjugate: weight length does not match rank");
  WeightVector w(v);
  if (f.kind == Kind::GL) {
    std::sort(w.begin(), w.end(), std::greater<>());
    return w;
  }
  int neg = 0, zero = 0;
  for (auto& x : w) {
    if (x < 0) ++neg;
    if (x == 0) ++zero;
    x = std::llabs(x);
  }
  std::sort(w.begin(), w.end(), std::greater<>());
  if (f.kind == Kind::SOeven && (neg & 1) && zero == 0) w.back() = -w.back();
  return w;
}

/// Exact orbit size of a dominant weight, computed from the stabilizer:
/// (multiset permutations of the coordinate values) x (admissible sign
/// patterns on nonzero coordinates).
inline BigInt orbit_size(GroupFamily f, const WeightVector& dom) {
  std::size_t n = dom.size();
  std::vector<Coord> vals(dom);
  if (f.kind != Kind::GL)
    for (auto& x : vals) x = std::llabs(x);
  std::sort(vals.begin(), vals.end());
  // n! / prod(multiplicity!) computed incrementally: multiply by i/(run length).
  BigInt arrangements = 1;
  std::size_t run = 0;
  for (std::size_t i = 0; i < n; ++i) {
    run = (i > 0 && vals[i] == vals[i - 1]) ? run + 1 : 1;
    arrangements = arrangements * static_cast<int>(i + 1) / static_cast<int>(run);
  }
  std::size_t nonzero = 0;
  for (auto x : vals)
    if (x != 0) ++nonzero;
  BigInt signs = 1;
  if (f.kind == Kind::Sp || f.kind == Kind::SOodd) {
    signs = BigInt(1) << nonzero;
  } else if (f.kind == Kind::SOeven) {
    if (nonzero == 0)
      signs = 1;
    else if (nonzero < n)
      signs = BigInt(1) << nonzero;  // a zero coordinate absorbs parity
    else
      signs = BigInt(1) << (nonzero - 1);  // even sign patterns only
  }
  return arrangements * signs;
}

/// Full Weyl orbit of a dominant weight, as distinct coordinate vectors.
inline std::vector<WeightVector> weyl_orbit(GroupFamily f, const WeightVector& dom) {
  if (!is_dominant(f, dom)) throw InputError("weyl_orbit: weight is not dominant");
  std::size_t n = dom.size();
  std::vector<WeightVector> orbit;

  if (f.kind == Kind::GL) {
    WeightVector v(dom);
    std::sort(v.begin(), v.end());
    do {
      orbit.push_back(v);
    } while (std::next_permutation(v.begin(), v.end()));
    return orbit;
  }

  int neg = 0, zero = 0;
  WeightVector base(dom);
  for (auto& x : base) {
    if (x < 0) ++neg;
    if (x == 0) ++zero;
    x = std::llabs(x);
  }
  // For the even family without zero coordinates the orbit is a single
  // parity class of sign patterns; with a zero present both classes merge.
  bool parity_constrained = f.kind == Kind::SOeven && zero == 0;
  int parity_target = neg & 1;

  std::sort(base.begin(), base.end());
  do {
    std::vector<std::size_t> nz;
    for (std::size_t i = 0; i < n; ++i)
      if (base[i] != 0) nz.push_back(i);
    std::uint64_t patterns = std::uint64_t{1} << nz.size();
    for (std::uint64_t mask = 0; mask < patterns; ++mask) {
      if (parity_constrained && (__builtin_popcountll(mask) & 1) != parity_target) continue;
      WeightVector w(base);
      for (std::size_t b = 0; b < nz.size(); ++b)
        if (mask >> b & 1) w[nz[b]] = -w[nz[b]];
      orbit.push_back(std::move(w));
    }
  } while (std::next_permutation(base.begin(), base.end()));
  return orbit;
}

/// Coefficients of delta in the simple-root basis, or nullopt when delta is
/// not a nonnegative integer combination of positive roots. The vector tests
/// "lambda - mu lies in Q+" with delta = lambda - mu.
inline std::optional<std::vector<long long>> simple_root_coefficients(GroupFamily f,
                                                                      const WeightVector& delta) {
  if (delta.size() != static_cast<std::size_t>(f.rank))
    throw InputError("simple_root_coefficients: length does not match rank");
  std::size_t n = delta.size();
  std::vector<long long> s(n);  // prefix sums
  long long acc = 0;
  for (std::size_t i = 0; i < n; ++i) {
    acc += delta[i];
    s[i] = acc;
  }
  std::vector<long long> c;
  switch (f.kind) {
    case Kind::GL:
      if (s[n - 1] != 0) return std::nullopt;
      for (std::size_t k = 0; k + 1 < n; ++k) {
        if (s[k] < 0) return std::nullopt;
        c.push_back(s[k]);
      }
      return c;
    case Kind::SOodd:
      for (std::size_t k = 0; k < n; ++k) {
        if (s[k] < 0) return std::nullopt;
        c.push_back(s[k]);
      }
      return c;
    case Kind::Sp:
      for (std::size_t k = 0; k + 1 < n; ++k) {
        if (s[k] < 0) return std::nullopt;
        c.push_back(s[k]);
      }
      if (s[n - 1] < 0 || s[n - 1] % 2 != 0) return std::nullopt;
      c.push_back(s[n - 1] / 2);
      return c;
    case Kind::SOeven: {
      if (s[n - 1] % 2 != 0) return std::nullopt;
      long long half = s[n - 1] / 2;
      for (std::size_t k = 0; k + 2 < n; ++k) {
        if (s[k] < 0) return std::nullopt;
        c.push_back(s[k]);
      }
      long long c_fork_minus = s[n - 2] - half;  // coefficient of e_{n-1} - e_n
      if (c_fork_minus < 0 || half < 0) return std::nullopt;
      c.push_back(c_fork_minus);
      c.push_back(half);
      return c;
    }
  }
  return std::nullopt;
}

struct WeightVectorHash {
  std::size_t operator()(const WeightVector& v) const noexcept {
    std::size_t h = 1469598103934665603ull;
    for (auto x : v) {
      h ^= static_cast<std::size_t>(x) + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
    }
    return h;
  }
};

}  // namespace stabletensor
