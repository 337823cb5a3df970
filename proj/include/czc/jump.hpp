#pragma once

#include <atomic>
#include <cstdlib>
#include <exception>
#include <numeric>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "czc/homology.hpp"
#include "czc/orbit.hpp"

// Common index jump: find pivot degrees d and iterate vectors (k_i), all
// divisible by N, such that
//   (i)   |k_i * mu-hat_i - d| < eta, with exact equality mu = mu-hat = d for
//         purely hyperbolic orbits,
//   (ii)  mu(gamma_i^(k_i + l)) = d + mu(gamma_i^l) for 1 <= |l| <= l0, where
//         mu(gamma^-l) = -mu(gamma^l),
//   (iii) the minus-side defects mu(gamma_i^(k_i)) - d are the entrywise
//         negation of the plus-side ones.
// The solver scans d = N*t for t = 1, 2, ... and the verifier re-checks every
// clause by direct index evaluation, independent of how candidates were found.

namespace czc {

enum class Side { plus, minus };
enum class Sides { plus, minus, both };

struct JumpRequest {
  std::vector<OrbitModel> orbits;
  ExactReal eta;
  long long ell0 = 1;
  long long N = 1;
  Sides sides = Sides::both;
  long long search_bound = 100000;
};

struct JumpCertificate {
  Side side = Side::plus;
  Int d;
  std::vector<Int> k;
};

struct ClauseViolation {
  std::string clause;  // "form", "i", "ii", "iii"
  size_t orbit = 0;
  long long ell = 0;  // the offending offset for clause (ii), 0 otherwise
  std::string detail;
};

struct VerificationReport {
  bool ok = true;
  std::vector<ClauseViolation> violations;

  void add(std::string clause, size_t orbit, long long ell, std::string detail) {
    ok = false;
    violations.push_back({std::move(clause), orbit, ell, std::move(detail)});
  }
};

namespace detail {

// mu(gamma^l) extended to negative l by antisymmetry.
inline Int signed_index(const OrbitModel& o, long long l) {
  if (l > 0) return cz_index(o, Int(l));
  return -cz_index(o, Int(-l));
}

inline bool purely_hyperbolic(const OrbitModel& o) { return o.rotations.empty(); }

}  // namespace detail

// Check clauses (i) and (ii) for one certificate.  Violations are appended to
// the report with the orbit index and, for (ii), the offset l.
inline void verify_side(const std::vector<OrbitModel>& orbits, const JumpCertificate& cert,
                        const ExactReal& eta, long long ell0, VerificationReport& report) {
  if (cert.k.size() != orbits.size()) {
    report.add("form", 0, 0, "certificate has " + std::to_string(cert.k.size()) + " iterates for " +
                                 std::to_string(orbits.size()) + " orbits");
    return;
  }
  if (cert.d < 1) report.add("form", 0, 0, "pivot degree must be positive");
  for (size_t i = 0; i < orbits.size(); ++i) {
    const OrbitModel& o = orbits[i];
    const Int& k = cert.k[i];
    if (k <= ell0) {
      report.add("form", i, 0, "iterate " + k.str() + " does not exceed ell0 = " + std::to_string(ell0));
      continue;
    }
    ExactReal mu_hat_k = mean_index(o, k);
    if (detail::purely_hyperbolic(o)) {
      // hyperbolic clause (i) is exact: mu = mu-hat = d
      if (cz_index(o, k) != cert.d || mu_hat_k != ExactReal(cert.d))
        report.add("i", i, 0, "hyperbolic orbit requires mu = mu-hat = d exactly");
    } else {
      ExactReal gap = mu_hat_k - ExactReal(cert.d);
      if (gap.sign() < 0) gap = -gap;
      if ((gap - eta).sign() >= 0)
        report.add("i", i, 0, "|k*mu-hat - d| = " + gap.str() + " not below eta = " + eta.str());
    }
    for (long long l = -ell0; l <= ell0; ++l) {
      if (l == 0) continue;
      Int lhs = cz_index(o, k + l);
      Int rhs = cert.d + detail::signed_index(o, l);
      if (lhs != rhs)
        report.add("ii", i, l,
                   "mu(gamma^(k" + std::string(l < 0 ? "" : "+") + std::to_string(l) + ")) = " + lhs.str() +
                       " but d + mu(gamma^l) = " + rhs.str());
    }
  }
}

// Full verification of a plus/minus certificate pair, clauses (i)-(iii).
inline VerificationReport verify_jump(const std::vector<OrbitModel>& orbits,
                                      const JumpCertificate& cert_plus, const JumpCertificate& cert_minus,
                                      const ExactReal& eta, long long ell0) {
  VerificationReport report;
  verify_side(orbits, cert_plus, eta, ell0, report);
  verify_side(orbits, cert_minus, eta, ell0, report);
  if (!report.ok) return report;
  for (size_t i = 0; i < orbits.size(); ++i) {
    Int defect_plus = cz_index(orbits[i], cert_plus.k[i]) - cert_plus.d;
    Int defect_minus = cz_index(orbits[i], cert_minus.k[i]) - cert_minus.d;
    if (defect_minus != -defect_plus)
      report.add("iii", i, 0,
                 "defects " + defect_plus.str() + " / " + defect_minus.str() + " are not negatives");
  }
  return report;
}

namespace detail {

struct TCandidate {
  long long t;
  Int d;
  std::vector<Int> k;
  std::vector<Int> defect;
};

struct SearchContext {
  const JumpRequest& req;
  std::vector<ExactReal> inv_mu;  // 1 / mu-hat per orbit (elliptic only)
  long long hyp_lcm = 1;          // lcm of linear totals of purely hyperbolic orbits
};

// All k_i choices for one orbit at pivot d: multiples of N bracketing
// d / mu-hat whose mean index lands eta-close to d.  Hyperbolic orbits get
// the single exact k = d / L.
inline bool orbit_candidates(const SearchContext& ctx, size_t i, const Int& d, std::vector<Int>& out) {
  const OrbitModel& o = ctx.req.orbits[i];
  out.clear();
  if (purely_hyperbolic(o)) {
    Int L(linear_total(o));
    if (d % L != 0) return false;
    Int k = d / L;
    if (k % ctx.req.N != 0 || k < 1) return false;
    out.push_back(k);
    return true;
  }
  Int base = floor_mul(ExactReal(d) * ctx.inv_mu[i] / ctx.req.N, 1) * ctx.req.N;
  for (Int k = base; k <= base + ctx.req.N; k += ctx.req.N) {
    if (k < 1) continue;
    ExactReal gap = mean_index(o, k) - ExactReal(d);
    if (gap.sign() < 0) gap = -gap;
    if ((gap - ctx.req.eta).sign() < 0) out.push_back(k);
  }
  return !out.empty();
}

// First k-combination at pivot d passing clause (ii); lexicographic over the
// per-orbit candidate lists, so the scan order is deterministic.
inline std::optional<TCandidate> candidate_at(const SearchContext& ctx, long long t) {
  const auto& orbits = ctx.req.orbits;
  Int d = Int(ctx.req.N) * t;
  std::vector<std::vector<Int>> options(orbits.size());
  for (size_t i = 0; i < orbits.size(); ++i)
    if (!orbit_candidates(ctx, i, d, options[i])) return std::nullopt;

  std::vector<size_t> pick(orbits.size(), 0);
  for (;;) {
    TCandidate cand{t, d, {}, {}};
    bool viable = true;
    for (size_t i = 0; i < orbits.size() && viable; ++i) {
      const Int& k = options[i][pick[i]];
      if (k <= ctx.req.ell0) {
        viable = false;
        break;
      }
      cand.k.push_back(k);
    }
    if (viable) {
      for (size_t i = 0; i < orbits.size() && viable; ++i) {
        const OrbitModel& o = orbits[i];
        for (long long l = -ctx.req.ell0; l <= ctx.req.ell0 && viable; ++l) {
          if (l == 0) continue;
          if (cz_index(o, cand.k[i] + l) != cand.d + signed_index(o, l)) viable = false;
        }
      }
      if (viable) {
        for (size_t i = 0; i < orbits.size(); ++i)
          cand.defect.push_back(cz_index(orbits[i], cand.k[i]) - cand.d);
        return cand;
      }
    }
    // next combination
    size_t i = 0;
    while (i < pick.size() && ++pick[i] == options[i].size()) pick[i++] = 0;
    if (i == pick.size()) return std::nullopt;
  }
}

// Scan [t_lo, t_hi]; collects passing candidates in ascending t order.  On an
// exception the candidates found before it are kept, so consuming the block
// in order reproduces exactly what a sequential scan would have seen.
struct BlockResult {
  std::vector<TCandidate> found;
  std::exception_ptr error;
};

inline BlockResult scan_block(const SearchContext& ctx, long long t_lo, long long t_hi) {
  BlockResult res;
  try {
    for (long long t = t_lo; t <= t_hi; ++t) {
      if (ctx.hyp_lcm > 1 && t % ctx.hyp_lcm != 0) continue;
      if (auto cand = candidate_at(ctx, t)) res.found.push_back(std::move(*cand));
    }
  } catch (...) {
    res.error = std::current_exception();
  }
  return res;
}

inline long long env_thread_cap() {
  const char* v = std::getenv("CZC_THREADS");
  if (!v) return 1;
  long long n = std::atoll(v);
  if (n < 1) return 1;
  return std::min<long long>(n, 64);
}

}  // namespace detail

struct JumpResult {
  std::optional<JumpCertificate> plus;
  std::optional<JumpCertificate> minus;
};

// Scan pivots d = N*t upward; the first passing candidate becomes the
// requested side (plus when both are wanted), and the minus side then also
// requires the entrywise-negated defect vector (clause (iii)).  The minimal
// accepted t wins per side regardless of thread count.
inline JumpResult find_jump(const JumpRequest& req) {
  if (req.orbits.empty()) throw InputError("jump search needs at least one orbit");
  if (req.eta.sign() <= 0) throw InputError("eta must be positive");
  if (req.N < 1) throw InputError("N must be positive");
  if (req.ell0 < 1) throw InputError("ell0 must be positive");
  detail::SearchContext ctx{req, {}, 1};
  for (const auto& o : req.orbits) {
    ExactReal mu = mean_index(o);
    if (mu.sign() <= 0) throw NonPositiveMeanIndex("orbit '" + o.name + "' has non-positive mean index");
    ctx.inv_mu.push_back(detail::purely_hyperbolic(o) ? ExactReal() : mu.inverse());
    if (detail::purely_hyperbolic(o))
      ctx.hyp_lcm = std::lcm(ctx.hyp_lcm, linear_total(o));
  }

  bool want_plus = req.sides != Sides::minus;
  bool want_minus = req.sides != Sides::plus;
  JumpResult result;
  std::vector<Int> plus_defect;

  auto consume = [&](const detail::TCandidate& cand) {
    if (want_plus && !result.plus) {
      result.plus = JumpCertificate{Side::plus, cand.d, cand.k};
      plus_defect = cand.defect;
      if (!want_minus) return true;
      // a zero defect vector pairs with itself
    }
    if (want_minus && !result.minus) {
      bool paired = true;
      if (want_plus)
        for (size_t i = 0; i < cand.defect.size() && paired; ++i)
          if (cand.defect[i] != -plus_defect[i]) paired = false;
      if (paired) result.minus = JumpCertificate{Side::minus, cand.d, cand.k};
    }
    return (!want_plus || result.plus.has_value()) && (!want_minus || result.minus.has_value());
  };

  long long threads = detail::env_thread_cap();
  bool done = false;
  if (threads <= 1) {
    for (long long t = 1; t <= req.search_bound && !done; ++t) {
      if (ctx.hyp_lcm > 1 && t % ctx.hyp_lcm != 0) continue;
      if (auto cand = detail::candidate_at(ctx, t)) done = consume(*cand);
    }
  } else {
    const long long block = 512;
    for (long long lo = 1; lo <= req.search_bound && !done;) {
      std::vector<std::pair<long long, long long>> ranges;
      for (long long w = 0; w < threads && lo <= req.search_bound; ++w) {
        long long hi = std::min(req.search_bound, lo + block - 1);
        ranges.emplace_back(lo, hi);
        lo = hi + 1;
      }
      std::vector<detail::BlockResult> results(ranges.size());
      std::vector<std::thread> pool;
      for (size_t b = 0; b < ranges.size(); ++b)
        pool.emplace_back(
            [&, b] { results[b] = detail::scan_block(ctx, ranges[b].first, ranges[b].second); });
      for (auto& th : pool) th.join();
      for (size_t b = 0; b < ranges.size() && !done; ++b) {
        for (const auto& cand : results[b].found) {
          done = consume(cand);
          if (done) break;
        }
        if (!done && results[b].error) std::rethrow_exception(results[b].error);
      }
    }
  }
  if (!done) throw Exhausted(req.search_bound);
  return result;
}

struct Lemma52Result {
  Int s;
  Int sum_k;
  bool holds;
};

// Pivot-degree bookkeeping against the base homology: d = 2s*c_B and the
// iterate vector must total s*r_B.
inline Lemma52Result lemma52_check(const JumpCertificate& cert, const PrequantSpec& spec) {
  Int period(2 * spec.c_B);
  if (cert.d % period != 0)
    throw NotDivisible("pivot degree " + cert.d.str() + " is not a multiple of 2*c_B = " + period.str());
  Lemma52Result out;
  out.s = cert.d / period;
  out.sum_k = 0;
  for (const Int& k : cert.k) out.sum_k += k;
  out.holds = out.sum_k == out.s * total_rank(spec);
  return out;
}

}  // namespace czc
