#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "czc/exact_real.hpp"

// Positive equivariant symplectic homology dimensions of a prequantization
// circle bundle M over a closed symplectic base B, computed from the Betti
// profile of B.  With c_B the minimal Chern number and n half the dimension
// of B, the positive-monotone formula is
//
//   b_M(k) = sum_{m >= 1} betti[k - 2m*c_B + n]
//
// (summands outside [0, 2n] vanish), and the negative-monotone one mirrors it
// with k + 2m*c_B - n.

namespace czc {

enum class Monotone { positive, negative };

struct PrequantSpec {
  long long n = 0;     // dim B = 2n
  long long c_B = 1;   // minimal Chern number, positive
  Monotone sign = Monotone::positive;
  std::vector<long long> betti;  // dim H_k(B;Q) for k = 0..2n
  bool lacunary_base = true;
};

inline void validate_spec(const PrequantSpec& s) {
  if (s.n < 0) throw InputError("spec: n must be nonnegative");
  if (s.c_B < 1) throw InputError("spec: c_B must be positive");
  if (static_cast<long long>(s.betti.size()) != 2 * s.n + 1)
    throw InputError("spec: betti profile must have 2n+1 = " + std::to_string(2 * s.n + 1) + " entries");
  for (long long b : s.betti)
    if (b < 0) throw InputError("spec: negative Betti number");
  if (s.betti[0] < 1) throw InputError("spec: betti[0] must be at least 1");
  for (long long k = 0; k <= 2 * s.n; ++k)
    if (s.betti[k] != s.betti[2 * s.n - k])
      throw InputError("spec: betti profile violates Poincare duality at degree " + std::to_string(k));
  if (s.lacunary_base)
    for (long long k = 1; k <= 2 * s.n; k += 2)
      if (s.betti[k] != 0)
        throw InputError("spec: lacunary base has nonzero odd Betti number at degree " + std::to_string(k));
}

inline long long total_rank(const PrequantSpec& s) {
  long long r = 0;
  for (long long b : s.betti) r += b;
  return r;
}

namespace detail {
inline long long betti_at(const PrequantSpec& s, const Int& deg) {
  if (deg < 0 || deg > 2 * s.n) return 0;
  return s.betti[deg.convert_to<long long>()];
}

inline Int ceil_div(const Int& a, const Int& b) { return floor_div(a + b - 1, b); }
}  // namespace detail

// dim of the degree-k homology of M.
inline long long betti_M(const PrequantSpec& s, const Int& k) {
  Int period(2 * s.c_B);
  long long total = 0;
  if (s.sign == Monotone::positive) {
    // summand degrees k + n - m*period, kept in [0, 2n]
    Int m_lo = detail::ceil_div(k - s.n, period);
    if (m_lo < 1) m_lo = 1;
    Int m_hi = floor_div(k + s.n, period);
    for (Int m = m_lo; m <= m_hi; ++m) total += detail::betti_at(s, k + s.n - m * period);
  } else {
    // summand degrees k - n + m*period, kept in [0, 2n]
    Int m_lo = detail::ceil_div(Int(s.n) - k, period);
    if (m_lo < 1) m_lo = 1;
    Int m_hi = floor_div(3 * Int(s.n) - k, period);
    for (Int m = m_lo; m <= m_hi; ++m) total += detail::betti_at(s, k - s.n + m * period);
  }
  return total;
}

// Lowest degree with nonzero homology of M; equals 2c_B - n for positive
// monotone bases with betti[0] >= 1, which the implementation re-verifies.
inline long long k_min(const PrequantSpec& s) {
  if (s.sign != Monotone::positive)
    throw SignMismatch("k_min is defined for positive monotone bases only");
  long long v = 2 * s.c_B - s.n;
  if (betti_M(s, Int(v)) < 1)
    throw InternalInconsistency("betti_M vanishes at the predicted minimal degree");
  for (long long j = v - 4 * s.c_B; j < v; ++j)
    if (betti_M(s, Int(j)) != 0)
      throw InternalInconsistency("betti_M nonzero below the predicted minimal degree");
  return v;
}

// Mean Euler characteristic (-1)^n * r_B / (2 c_B), cross-checked against the
// period average of (-1)^k * b_M(k) in the periodic regime k > n.
inline Rational mean_euler(const PrequantSpec& s) {
  if (s.sign != Monotone::positive)
    throw SignMismatch("mean Euler characteristic requires a positive monotone base");
  if (!s.lacunary_base)
    throw InputError("mean Euler characteristic requires a lacunary base");
  Rational value(Int(s.n % 2 == 0 ? total_rank(s) : -total_rank(s)), Int(2 * s.c_B));
  Int alternating = 0;
  for (long long k = s.n + 1; k <= s.n + 2 * s.c_B; ++k) {
    long long b = betti_M(s, Int(k));
    alternating += (k % 2 == 0) ? b : -b;
  }
  if (Rational(alternating, Int(2 * s.c_B)) != value)
    throw InternalInconsistency("mean Euler characteristic disagrees with the period average");
  return value;
}

inline Int truncated_betti_sum(const PrequantSpec& s, const Int& lo, const Int& hi) {
  Int total = 0;
  // Positive monotone: betti_M(k + 2c_B) = betti_M(k) + betti[k + n], so the
  // values repeat with period 2c_B once k > n; whole periods collapse to a
  // single window sum instead of one betti_M call per degree.
  if (s.sign == Monotone::positive && hi > s.n) {
    Int k = lo;
    for (; k <= s.n && k <= hi; ++k) total += betti_M(s, k);
    long long period = 2 * s.c_B;
    std::vector<Int> window(period);
    Int window_sum = 0;
    for (long long i = 0; i < period; ++i) {
      window[i] = betti_M(s, Int(s.n + 1 + i));
      window_sum += window[i];
    }
    Int span = hi - k + 1;
    Int phase = (k - s.n - 1) % period;
    total += (span / period) * window_sum;
    long long rem = (span % period).convert_to<long long>();
    long long at = phase.convert_to<long long>();
    for (long long i = 0; i < rem; ++i) total += window[(at + i) % period];
    return total;
  }
  for (Int k = lo; k <= hi; ++k) total += betti_M(s, k);
  return total;
}

struct LemmaSumResult {
  Int lhs;
  Int rhs;
  bool holds;
};

// Truncated-sum identity: twice the homology count up to degree 2s*c_B equals
// (2s-1) r_B + betti[n] + 2 * sum_{m=s+1}^{2s-1} betti[n + 2(s-m) c_B],
// provided 2s*c_B > 2n.
inline LemmaSumResult lemma_sum_identity(const PrequantSpec& s, long long steps) {
  if (s.sign != Monotone::positive) throw SignMismatch("identity requires a positive monotone base");
  if (!s.lacunary_base) throw InputError("identity requires a lacunary base");
  if (steps < 1) throw InputError("step count must be positive");
  if (2 * steps * s.c_B <= 2 * s.n)
    throw InputError("step count too small: need 2s*c_B > 2n");
  Int lhs = 2 * truncated_betti_sum(s, Int(k_min(s)), Int(2 * steps * s.c_B));
  Int rhs = Int(2 * steps - 1) * total_rank(s) + detail::betti_at(s, Int(s.n));
  for (long long m = steps + 1; m <= 2 * steps - 1; ++m)
    rhs += 2 * detail::betti_at(s, Int(s.n + 2 * (steps - m) * s.c_B));
  return {lhs, rhs, lhs == rhs};
}

struct ClassicSums {
  Int d;                 // pivot degree 2s*c_B
  Int b0;                // betti_M(0), the below-zero-window correction
  Int sum_to_d;          // homology count on [k_min, d]
  Int sum_to_d_plus_1;   // homology count on [k_min, d+1]
  Rational predicted;    // s*r_B + b0 - r_B/2 (n odd) or s*r_B + b0 - (r_B - betti[n])/2 (n even)
  bool holds;            // predicted matches sum_to_d (n odd) / sum_to_d_plus_1 (n even)
};

inline ClassicSums classic_sums(const PrequantSpec& s, long long steps) {
  if (s.sign != Monotone::positive) throw SignMismatch("identity requires a positive monotone base");
  if (!s.lacunary_base) throw InputError("identity requires a lacunary base");
  if (steps < 1 || 2 * steps * s.c_B <= 2 * s.n)
    throw InputError("step count too small: need 2s*c_B > 2n");
  ClassicSums out;
  out.d = Int(2 * steps * s.c_B);
  out.b0 = betti_M(s, Int(0));
  Int lo(k_min(s));
  out.sum_to_d = truncated_betti_sum(s, lo, out.d);
  out.sum_to_d_plus_1 = out.sum_to_d + betti_M(s, out.d + 1);
  Rational r(total_rank(s));
  Rational base = Rational(steps) * r + Rational(out.b0);
  if (s.n % 2 == 1) {
    out.predicted = base - r / Rational(2);
    out.holds = Rational(out.sum_to_d) == out.predicted;
  } else {
    out.predicted = base - (r - Rational(detail::betti_at(s, Int(s.n)))) / Rational(2);
    out.holds = Rational(out.sum_to_d_plus_1) == out.predicted;
  }
  return out;
}

// Eventual maximum, over a full period of starting degrees in the periodic
// regime k > n, of the homology count in a length-(2n+1) degree window.  Any
// complete orbit dataset has at most this many simple orbits.
inline long long finiteness_bound(const PrequantSpec& s) {
  if (s.sign != Monotone::positive)
    throw SignMismatch("finiteness bound requires a positive monotone base");
  long long best = 0;
  for (long long start = s.n + 1; start <= s.n + 2 * s.c_B; ++start) {
    long long window = 0;
    for (long long i = 0; i <= 2 * s.n; ++i) window += betti_M(s, Int(start + i));
    best = std::max(best, window);
  }
  return best;
}

}  // namespace czc
