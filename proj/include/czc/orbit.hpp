#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "czc/exact_real.hpp"

// Index iteration for a non-degenerate closed Reeb orbit in transverse normal
// form: e rotation blocks with lifted rotation numbers theta_m, a combined
// even linear part, and one odd linear coefficient per negative-hyperbolic
// block.  The k-th iterate has
//
//   mu(gamma^k) = sum_m (2*floor(k*theta_m) + 1) + k*(linear_even + sum odd)
//
// and mean index mu-hat(gamma^k) = k*(2*sum theta_m + linear_even + sum odd).

namespace czc {

struct OrbitModel {
  std::string name;
  std::vector<ExactReal> rotations;   // lifted rotation numbers, each > 0
  long long linear_even = 0;          // even integer
  std::vector<long long> odd_linear;  // odd integers, one per block
  long long torsion_order = 1;        // iterate k is contractible iff torsion_order | k
};

inline void validate_orbit(const OrbitModel& o) {
  if (o.linear_even % 2 != 0)
    throw InputError("orbit '" + o.name + "': linear_even must be even");
  for (long long v : o.odd_linear)
    if (v % 2 == 0) throw InputError("orbit '" + o.name + "': odd_linear entry " + std::to_string(v) + " is even");
  if (o.torsion_order < 1)
    throw InputError("orbit '" + o.name + "': torsion_order must be >= 1");
  for (const auto& th : o.rotations)
    if (th.sign() <= 0) throw InputError("orbit '" + o.name + "': rotation numbers must be positive");
}

inline long long elliptic_count(const OrbitModel& o) { return static_cast<long long>(o.rotations.size()); }

inline long long linear_total(const OrbitModel& o) {
  long long s = o.linear_even;
  for (long long v : o.odd_linear) s += v;
  return s;
}

inline bool has_rational_rotation(const OrbitModel& o) {
  for (const auto& th : o.rotations)
    if (th.is_rational()) return true;
  return false;
}

// Conley-Zehnder index of the k-th iterate, k >= 1.
inline Int cz_index(const OrbitModel& o, const Int& k) {
  if (k < 1) throw InputError("iterate count must be >= 1");
  Int idx = 0;
  for (const auto& th : o.rotations) {
    ExactReal y = th * k;
    if (y.is_integer())
      throw DegenerateIterate("orbit '" + o.name + "' is degenerate at iterate " + k.str());
    idx += 2 * y.floor() + 1;
  }
  idx += k * Int(linear_total(o));
  return idx;
}

// Mean index of the k-th iterate; linear in k.
inline ExactReal mean_index(const OrbitModel& o, const Int& k) {
  ExactReal s;
  for (const auto& th : o.rotations) s = s + th;
  return (s * 2 + ExactReal(Int(linear_total(o)))) * k;
}

inline ExactReal mean_index(const OrbitModel& o) { return mean_index(o, 1); }

inline void require_positive_mean(const OrbitModel& o) {
  if (mean_index(o).sign() <= 0)
    throw NonPositiveMeanIndex("orbit '" + o.name + "' has non-positive mean index");
}

namespace detail {
// mu(gamma^k) mod 2 without evaluating floors: the elliptic blocks contribute
// e, the linear part k * |odd_linear|.
inline int mu_parity(const OrbitModel& o, const Int& k) {
  Int p = Int(elliptic_count(o)) + k * Int(o.odd_linear.size());
  return static_cast<int>(p % 2);
}

inline void require_nondegenerate(const OrbitModel& o, const Int& k) {
  for (const auto& th : o.rotations)
    if (is_integer_multiple(th, k))
      throw DegenerateIterate("orbit '" + o.name + "' is degenerate at iterate " + k.str());
}
}  // namespace detail

// gamma^k is good iff mu(gamma^k) = mu(gamma) mod 2, i.e. iff k is odd or the
// number of odd (negative-hyperbolic) blocks is even.
inline bool is_good(const OrbitModel& o, const Int& k) {
  if (k < 1) throw InputError("iterate count must be >= 1");
  detail::require_nondegenerate(o, k);
  return detail::mu_parity(o, k) == detail::mu_parity(o, Int(1));
}

// (-1)^mu(gamma^k) for good iterates, 0 for bad ones.
inline int local_chi(const OrbitModel& o, const Int& k) {
  if (!is_good(o, k)) return 0;
  return detail::mu_parity(o, k) == 0 ? 1 : -1;
}

// Mean Euler contribution of the orbit: (-1)^mu(gamma) when gamma^2 is good,
// half of that otherwise.
inline Rational mean_chi(const OrbitModel& o) {
  detail::require_nondegenerate(o, Int(1));
  detail::require_nondegenerate(o, Int(2));
  int sgn = detail::mu_parity(o, Int(1)) == 0 ? 1 : -1;
  bool second_good = o.odd_linear.size() % 2 == 0;
  return second_good ? Rational(sgn) : Rational(sgn, 2);
}

struct IterateRow {
  Int k;
  Int mu;
  bool contractible;
  bool good;
};

// All contractible iterates with index at most max_index.  Exhaustive: the
// scan stops once k * mu-hat exceeds max_index + n_ambient, and
// |mu - mu-hat| < e <= n_ambient guarantees nothing beyond can qualify.
inline std::vector<IterateRow> contractible_iterates(const OrbitModel& o, const Int& max_index,
                                                     long long n_ambient) {
  if (elliptic_count(o) > n_ambient)
    throw InputError("orbit '" + o.name + "' has more rotation blocks than the ambient dimension allows");
  ExactReal mu_hat = mean_index(o);
  if (mu_hat.sign() <= 0)
    throw NonPositiveMeanIndex("orbit '" + o.name + "' has non-positive mean index");
  std::vector<IterateRow> rows;
  ExactReal cutoff = ExactReal(max_index) + ExactReal(n_ambient);
  for (Int k = o.torsion_order;; k += o.torsion_order) {
    if ((mu_hat * k - cutoff).sign() > 0) break;
    Int mu = cz_index(o, k);
    if (mu <= max_index) rows.push_back({k, mu, true, is_good(o, k)});
  }
  return rows;
}

// Least l0 such that mu(gamma^(k+l)) >= mu(gamma^k) + n + 3 for every orbit,
// every k >= 1 and every l >= l0.  Superadditivity gives
// mu(gamma^(k+l)) - mu(gamma^k) >= mu(gamma^l) - e, so it suffices that the
// scanned quantity sum_m 2*floor(l*theta_m) + l*L - e (= mu(gamma^l) - 2e, a
// margin-e strengthening of what superadditivity needs) clears n + 3 from l0
// on.  Past l*mu-hat >= 3n+3 even the weaker mu(gamma^l) - e >= n+3 holds
// unconditionally when e <= n, which caps the scan.
inline long long ell_zero(const std::vector<OrbitModel>& orbits, long long n_ambient) {
  if (orbits.empty()) return 1;
  ExactReal min_mu;
  bool first = true;
  for (const auto& o : orbits) {
    if (elliptic_count(o) > n_ambient)
      throw InputError("orbit '" + o.name + "' has more rotation blocks than the ambient dimension allows");
    ExactReal m = mean_index(o);
    if (m.sign() <= 0)
      throw NonPositiveMeanIndex("orbit '" + o.name + "' has non-positive mean index");
    if (first || (m - min_mu).sign() < 0) min_mu = m;
    first = false;
  }
  Int cap = (ExactReal(3 * n_ambient + 3) / min_mu).ceil();
  if (cap < 1) cap = 1;
  long long cap_ll = cap.convert_to<long long>();
  long long worst = 1;
  for (const auto& o : orbits) {
    long long e = elliptic_count(o);
    long long last_fail = 0;
    for (long long l = 1; l <= cap_ll; ++l) {
      if (cz_index(o, Int(l)) - 2 * e < n_ambient + 3) last_fail = l;
    }
    worst = std::max(worst, last_fail + 1);
  }
  return worst;
}

// Re-base a torsion orbit at its minimal contractible iterate.  The stored
// normal-form data of a torsion-p orbit describes that contractible collapse
// (the lift of gamma^p is a simple orbit upstairs with the same index data),
// so collapsing keeps the fields and resets the torsion marker.
inline OrbitModel collapse_to_contractible(const OrbitModel& o) {
  OrbitModel c = o;
  c.torsion_order = 1;
  return c;
}

}  // namespace czc
