#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "czc/exact_real.hpp"
#include "czc/homology.hpp"
#include "czc/jump.hpp"
#include "czc/orbit.hpp"

// Counting pipeline: validates an orbit dataset against the prequantization
// homology and certifies (or refutes) that the dataset carries exactly r_B
// simple contractible orbits.  All identities are evaluated in exact integer
// or surd arithmetic; a Certified verdict means every check passed.

namespace czc {

struct OrbitDataset {
  long long n = 0;  // ambient contact dimension 2n+1
  std::vector<OrbitModel> orbits;
};

inline void validate_dataset(const OrbitDataset& ds) {
  if (ds.n < 0) throw InputError("dataset: n must be nonnegative");
  std::vector<std::string> names;
  for (const auto& o : ds.orbits) {
    validate_orbit(o);
    if (elliptic_count(o) > ds.n)
      throw InputError("orbit '" + o.name + "' has more rotation blocks than the ambient dimension allows");
    names.push_back(o.name);
  }
  std::sort(names.begin(), names.end());
  auto dup = std::adjacent_find(names.begin(), names.end());
  if (dup != names.end()) throw InputError("duplicate orbit name '" + *dup + "'");
}

struct MeanGateRow {
  std::string orbit;
  bool positive;
};

// Every contractible orbit of an index-positive form has positive mean index;
// an orbit failing this cannot belong to a valid dataset.
inline std::vector<MeanGateRow> check_positive_mean(const OrbitDataset& ds) {
  std::vector<MeanGateRow> rows;
  for (const auto& o : ds.orbits) rows.push_back({o.name, mean_index(o).sign() > 0});
  return rows;
}

struct LacunaryWitness {
  std::string orbit_a;
  Int k_a;
  std::string orbit_b;
  Int k_b;
  int parity_a = 0;
  int parity_b = 0;
};

struct LacunaryResult {
  bool pass = true;
  int parity = 0;  // common index parity of all contractible iterates
  std::optional<LacunaryWitness> witness;
};

// Index parity of the contractible iterates k = c, 2c, ... (c the torsion
// order) is (e + k*|odd_linear|) mod 2; it is constant in k iff c*|odd_linear|
// is even, and all orbits must share the same constant.
inline LacunaryResult check_lacunary(const OrbitDataset& ds) {
  LacunaryResult out;
  bool have_parity = false;
  std::string first_name;
  Int first_k;
  for (const auto& o : ds.orbits) {
    Int c(o.torsion_order);
    detail::require_nondegenerate(o, c);
    detail::require_nondegenerate(o, 2 * c);
    int p1 = detail::mu_parity(o, c);
    int p2 = detail::mu_parity(o, 2 * c);
    if (p1 != p2) {
      out.pass = false;
      out.witness = {o.name, c, o.name, 2 * c, p1, p2};
      return out;
    }
    if (!have_parity) {
      out.parity = p1;
      have_parity = true;
      first_name = o.name;
      first_k = c;
    } else if (p1 != out.parity) {
      out.pass = false;
      out.witness = {first_name, first_k, o.name, c, out.parity, p1};
      return out;
    }
  }
  return out;
}

namespace detail {

// Number of good contractible iterates per index, over collapsed orbits, for
// all indices <= horizon.  Bad iterates generate nothing in the complex and
// are excluded (under a lacunary pass every iterate is good anyway).
inline std::map<long long, long long> index_histogram(const std::vector<OrbitModel>& collapsed,
                                                      long long n_ambient, long long horizon) {
  std::map<long long, long long> hist;
  for (const auto& o : collapsed)
    for (const auto& row : contractible_iterates(o, Int(horizon), n_ambient))
      if (row.good) ++hist[row.mu.convert_to<long long>()];
  return hist;
}

inline long long histogram_sum_to(const std::map<long long, long long>& hist, long long hi) {
  long long total = 0;
  for (const auto& [deg, count] : hist) {
    if (deg > hi) break;
    total += count;
  }
  return total;
}

// Zero-index contractible iterates of one collapsed orbit; finite since the
// mean index is positive and |mu - mu-hat| < e.
inline long long zero_index_count(const OrbitModel& o, long long n_ambient) {
  long long count = 0;
  for (const auto& row : contractible_iterates(o, Int(0), n_ambient))
    if (row.mu == 0) ++count;
  return count;
}

}  // namespace detail

struct ChainRow {
  Int k;
  Int c_k;  // good contractible iterates of index k
  Int b_k;  // homology rank in degree k
  bool equal;
};

struct ChainMatchResult {
  std::vector<ChainRow> rows;
  bool pass = true;
  std::optional<Int> first_mismatch;
};

// Degree-by-degree comparison of the orbit count against the homology: with a
// vanishing differential every good contractible orbit is a cycle, so the two
// must agree in every degree up to the horizon and the count must vanish
// below the minimal homology degree.
inline ChainMatchResult chain_match(const OrbitDataset& ds, const PrequantSpec& spec,
                                    const Int& max_degree) {
  validate_dataset(ds);
  validate_spec(spec);
  if (ds.n != spec.n)
    throw InputError("dataset n = " + std::to_string(ds.n) + " does not match spec n = " + std::to_string(spec.n));
  std::vector<OrbitModel> collapsed;
  for (const auto& o : ds.orbits) collapsed.push_back(collapse_to_contractible(o));
  long long horizon = max_degree.convert_to<long long>();
  auto hist = detail::index_histogram(collapsed, ds.n, horizon);
  long long lo = std::min(k_min(spec), 1 - ds.n);
  if (!hist.empty()) lo = std::min(lo, hist.begin()->first);
  // betti_M repeats with period 2c_B above degree n; cache one period.
  long long period = 2 * spec.c_B;
  std::vector<long long> window(period);
  for (long long i = 0; i < period; ++i) window[i] = betti_M(spec, Int(spec.n + 1 + i));
  auto betti_fast = [&](long long k) {
    if (k <= spec.n) return betti_M(spec, Int(k));
    return window[(k - spec.n - 1) % period];
  };
  ChainMatchResult out;
  out.rows.reserve(static_cast<size_t>(std::max(0LL, horizon - lo + 1)));
  for (long long k = lo; k <= horizon; ++k) {
    auto it = hist.find(k);
    Int c_k(it == hist.end() ? 0 : it->second);
    Int b_k(betti_fast(k));
    bool equal = c_k == b_k;
    out.rows.push_back({Int(k), c_k, b_k, equal});
    if (!equal && !out.first_mismatch) {
      out.pass = false;
      out.first_mismatch = Int(k);
    }
  }
  return out;
}

struct ResonanceResult {
  ExactReal lhs;  // sum of mean Euler contributions over mean indices
  ExactReal rhs;  // mean Euler characteristic of the homology
  bool equal = false;
};

// Resonance relation: sum_i chi-hat(gamma_i)/mu-hat(gamma_i) over the simple
// contractible orbits equals the mean Euler characteristic (-1)^n r_B/(2 c_B).
inline ResonanceResult resonance_check(const OrbitDataset& ds, const PrequantSpec& spec) {
  validate_dataset(ds);
  validate_spec(spec);
  if (ds.n != spec.n)
    throw InputError("dataset n = " + std::to_string(ds.n) + " does not match spec n = " + std::to_string(spec.n));
  ResonanceResult out;
  for (const auto& o : ds.orbits) {
    OrbitModel c = collapse_to_contractible(o);
    require_positive_mean(c);
    out.lhs = out.lhs + ExactReal(mean_chi(c)) / mean_index(c);
  }
  out.rhs = ExactReal(mean_euler(spec));
  out.equal = out.lhs == out.rhs;
  return out;
}

enum class CensusMode { exact, lower_bound };

struct CensusConfig {
  std::optional<long long> N;    // pivot spacing override; must be a multiple of 2*c_B
  std::optional<Rational> eta;   // mean-index tolerance override
  long long search_bound = 100000;
  std::optional<Int> max_degree;
  CensusMode mode = CensusMode::exact;
};

struct CensusCheck {
  std::string name;
  std::string lhs;
  std::string rhs;
  bool pass = true;
};

enum class Verdict { certified, refuted, inconclusive };

struct CensusReport {
  long long r = 0;    // simple contractible orbits after torsion collapse
  long long r_B = 0;  // total homology rank of the base
  long long r_plus = 0;
  long long r_minus = 0;
  long long b0_correction = 0;
  std::vector<CensusCheck> checks;
  Verdict verdict = Verdict::inconclusive;
  std::string detail;  // first violation, exhaustion reason, or conclusion
  CensusMode mode = CensusMode::exact;
  long long ell0 = 0;
  long long N_used = 0;
  Rational eta_used;
  std::optional<JumpCertificate> plus;
  std::optional<JumpCertificate> minus;
  Int max_degree_used = 0;
  long long finiteness = 0;
};

namespace detail {

inline bool record(CensusReport& rep, std::string name, std::string lhs, std::string rhs, bool pass) {
  rep.checks.push_back({name, std::move(lhs), std::move(rhs), pass});
  if (!pass) {
    rep.verdict = Verdict::refuted;
    rep.detail = std::move(name);
  }
  return pass;
}

inline bool record_int(CensusReport& rep, std::string name, const Int& lhs, const Int& rhs) {
  return record(rep, std::move(name), lhs.str(), rhs.str(), lhs == rhs);
}

// Default pivot spacing: a common multiple of 2*c_B (so d = 2s*c_B) and of
// every hyperbolic mean index (so exact hits exist), at least ell0 + 2 (so
// k_i > ell0) and at least 2n + 2 (so d > 2n, as the sum identities require).
inline long long default_spacing(const std::vector<OrbitModel>& collapsed, const PrequantSpec& spec,
                                 long long ell0) {
  long long base = 2 * spec.c_B;
  for (const auto& o : collapsed)
    if (o.rotations.empty()) base = std::lcm(base, linear_total(o));
  long long want = std::max(ell0 + 2, 2 * spec.n + 2);
  return base * ((want + base - 1) / base);
}

// Default tolerance: with eta * sum_i 1/mu-hat(gamma_i) < 1 the resonance
// rounding argument pins sum k_i to s*r_B exactly.
inline Rational default_eta(const std::vector<OrbitModel>& collapsed) {
  ExactReal inv_sum;
  for (const auto& o : collapsed) inv_sum = inv_sum + mean_index(o).inverse();
  Int f = inv_sum.floor();
  return Rational(Int(1), 2 * (f + 1));
}

}  // namespace detail

// Full counting argument.  Exact mode: hypothesis gates, resonance, jump
// certificates, Lemma 5.2 bookkeeping, chain match, and the per-parity
// counting identities, stopping at the first failed check.  Lower-bound mode:
// hypothesis gates only, reporting the homology-forced orbit counts.
inline CensusReport run_census(const OrbitDataset& ds, const PrequantSpec& spec,
                               const CensusConfig& config = {}) {
  validate_dataset(ds);
  validate_spec(spec);
  if (spec.sign != Monotone::positive)
    throw SignMismatch("census requires a positive monotone base");
  if (!spec.lacunary_base) throw InputError("census requires a lacunary base");
  if (ds.n != spec.n)
    throw InputError("dataset n = " + std::to_string(ds.n) + " does not match spec n = " + std::to_string(spec.n));

  CensusReport rep;
  rep.mode = config.mode;
  rep.r = static_cast<long long>(ds.orbits.size());
  rep.r_B = total_rank(spec);
  long long betti_n = spec.betti[spec.n];
  rep.b0_correction = betti_M(spec, Int(0));

  // Hypothesis gates: positive mean index and constant index parity matching
  // the homology parity.
  long long mean_failures = 0;
  std::string first_mean_failure;
  for (const auto& row : check_positive_mean(ds))
    if (!row.positive && mean_failures++ == 0) first_mean_failure = row.orbit;
  if (!detail::record(rep, "positive_mean",
                      mean_failures == 0 ? "all positive" : "'" + first_mean_failure + "' non-positive",
                      "all positive", mean_failures == 0))
    return rep;

  LacunaryResult lac = check_lacunary(ds);
  {
    std::string lhs = "constant parity";
    if (!lac.pass && lac.witness) {
      const auto& w = *lac.witness;
      lhs = "mu('" + w.orbit_a + "'^" + w.k_a.str() + ") = " + std::to_string(w.parity_a) +
            ", mu('" + w.orbit_b + "'^" + w.k_b.str() + ") = " + std::to_string(w.parity_b) + " (mod 2)";
    }
    if (!detail::record(rep, "lacunary", lhs, "constant parity", lac.pass)) return rep;
  }
  if (!ds.orbits.empty() &&
      !detail::record_int(rep, "index_parity", Int(lac.parity), Int(spec.n % 2)))
    return rep;

  std::vector<OrbitModel> collapsed;
  for (const auto& o : ds.orbits) collapsed.push_back(collapse_to_contractible(o));

  if (config.mode == CensusMode::lower_bound) {
    // Section 7 skeleton: no contractible iterate of index 0 (n odd) or of
    // index in {-1, 0, 1} (n even); then steps 1-2 force the homology counts.
    long long offenders = 0;
    long long gate_hi = spec.n % 2 == 1 ? 0 : 1;
    for (const auto& o : collapsed)
      for (const auto& row : contractible_iterates(o, Int(gate_hi), ds.n))
        if (row.mu >= -gate_hi && row.mu <= gate_hi) ++offenders;
    if (!detail::record_int(rep, "index_gate", Int(offenders), Int(0))) return rep;
    rep.r_plus = (rep.r_B - betti_n) / 2;
    rep.r_minus = rep.r_plus;
    rep.verdict = Verdict::certified;
    rep.detail = "at least " + std::to_string(rep.r_B) + " simple contractible orbits forced";
    return rep;
  }

  // Resonance relation and the finiteness window bound.
  ResonanceResult res = resonance_check(ds, spec);
  if (!detail::record(rep, "resonance", res.lhs.str(), res.rhs.str(), res.equal)) return rep;
  rep.finiteness = finiteness_bound(spec);
  if (!detail::record(rep, "finiteness", std::to_string(rep.r), "<= " + std::to_string(rep.finiteness),
                      rep.r <= rep.finiteness))
    return rep;

  rep.ell0 = ell_zero(collapsed, ds.n);
  rep.N_used = config.N.value_or(detail::default_spacing(collapsed, spec, rep.ell0));
  if (rep.N_used < 1 || rep.N_used % (2 * spec.c_B) != 0)
    throw NotDivisible("pivot spacing N = " + std::to_string(rep.N_used) +
                       " is not a positive multiple of 2*c_B = " + std::to_string(2 * spec.c_B));
  rep.eta_used = config.eta.value_or(detail::default_eta(collapsed));
  if (rep.eta_used.sign() <= 0) throw InputError("eta must be positive");
  {
    ExactReal inv_sum;
    for (const auto& o : collapsed) inv_sum = inv_sum + mean_index(o).inverse();
    if ((ExactReal(rep.eta_used) * inv_sum - ExactReal(Int(1))).sign() >= 0)
      throw InputError("eta too large: need eta * sum 1/mu-hat < 1");
  }

  JumpRequest req;
  req.orbits = collapsed;
  req.eta = ExactReal(rep.eta_used);
  req.ell0 = rep.ell0;
  req.N = rep.N_used;
  req.sides = Sides::both;
  req.search_bound = config.search_bound;
  JumpResult jump;
  try {
    jump = find_jump(req);
  } catch (const Exhausted& e) {
    rep.verdict = Verdict::inconclusive;
    rep.detail = std::string("jump search exhausted: ") + e.what();
    return rep;
  }
  rep.plus = jump.plus;
  rep.minus = jump.minus;

  VerificationReport verified = verify_jump(collapsed, *jump.plus, *jump.minus, req.eta, rep.ell0);
  if (!detail::record(rep, "jump_verified",
                      verified.ok ? "clauses (i)-(iii) hold"
                                  : "clause (" + verified.violations.front().clause + ") fails",
                      "clauses (i)-(iii) hold", verified.ok))
    return rep;

  Lemma52Result l52p = lemma52_check(*jump.plus, spec);
  if (!detail::record_int(rep, "pivot_sum_plus", l52p.sum_k, l52p.s * rep.r_B)) return rep;
  Lemma52Result l52m = lemma52_check(*jump.minus, spec);
  if (!detail::record_int(rep, "pivot_sum_minus", l52m.sum_k, l52m.s * rep.r_B)) return rep;

  long long s_plus = l52p.s.convert_to<long long>();
  long long s_minus = l52m.s.convert_to<long long>();
  long long d_plus = jump.plus->d.convert_to<long long>();
  long long d_minus = jump.minus->d.convert_to<long long>();

  rep.max_degree_used = config.max_degree.value_or(Int(2 * std::max(s_plus, s_minus) * spec.c_B + 2 * spec.n + 2));
  Int horizon = std::max(rep.max_degree_used, Int(d_minus));
  ChainMatchResult chain = chain_match(ds, spec, horizon);
  {
    std::string lhs = "c_k = b_k up to " + horizon.str();
    if (!chain.pass) {
      Int bad = *chain.first_mismatch;
      for (const auto& row : chain.rows)
        if (row.k == bad) {
          lhs = "degree " + bad.str() + ": c = " + row.c_k.str() + ", b = " + row.b_k.str();
          break;
        }
    }
    if (!detail::record(rep, "chain_match", lhs, "c_k = b_k up to " + horizon.str(), chain.pass))
      return rep;
  }

  // Pivot defects of the plus certificate classify the orbits.
  long long pivot_equal = 0;
  for (size_t i = 0; i < collapsed.size(); ++i) {
    Int delta = cz_index(collapsed[i], jump.plus->k[i]) - jump.plus->d;
    if (delta > 0) ++rep.r_plus;
    else if (delta < 0) ++rep.r_minus;
    else ++pivot_equal;
  }
  long long r_minus_direct = 0;  // pivot overshoots of the minus certificate
  for (size_t i = 0; i < collapsed.size(); ++i)
    if (cz_index(collapsed[i], jump.minus->k[i]) > jump.minus->d) ++r_minus_direct;

  // Counting identities.  The chain table already covers both pivots.
  std::map<long long, long long> hist;
  for (const auto& row : chain.rows)
    if (row.c_k != 0) hist[row.k.convert_to<long long>()] = row.c_k.convert_to<long long>();
  Int b0(rep.b0_correction);
  if (!detail::record_int(rep, "orbit_sum_plus", Int(detail::histogram_sum_to(hist, d_plus)),
                          Int(s_plus) * rep.r_B - rep.r_plus + b0))
    return rep;
  if (!detail::record_int(rep, "orbit_sum_minus", Int(detail::histogram_sum_to(hist, d_minus)),
                          Int(s_minus) * rep.r_B - r_minus_direct + b0))
    return rep;
  ClassicSums csp = classic_sums(spec, s_plus);
  if (!detail::record(rep, "homology_sum_plus",
                      (spec.n % 2 == 1 ? csp.sum_to_d : csp.sum_to_d_plus_1).str(), csp.predicted.str(),
                      csp.holds))
    return rep;
  ClassicSums csm = classic_sums(spec, s_minus);
  if (!detail::record(rep, "homology_sum_minus",
                      (spec.n % 2 == 1 ? csm.sum_to_d : csm.sum_to_d_plus_1).str(), csm.predicted.str(),
                      csm.holds))
    return rep;

  // Steps 1-3: the forced counts.  With b_0 both sides of the orbit/homology
  // sums, r_plus and r_minus land on (r_B - betti[n])/2 and the pivots with
  // index exactly d account for betti[n].
  if (!detail::record_int(rep, "r_plus", Int(rep.r_plus), Int((rep.r_B - betti_n) / 2))) return rep;
  if (!detail::record_int(rep, "r_minus", Int(rep.r_minus), Int((rep.r_B - betti_n) / 2))) return rep;
  if (!detail::record_int(rep, "pivot_index_d", Int(pivot_equal), Int(betti_n))) return rep;

  long long zero_sum = 0;
  for (const auto& o : collapsed) zero_sum += detail::zero_index_count(o, ds.n);
  if (!detail::record_int(rep, "zero_index_sum", Int(zero_sum), b0)) return rep;

  auto at_d = hist.find(d_plus);
  if (!detail::record_int(rep, "orbits_at_pivot", Int(at_d == hist.end() ? 0 : at_d->second),
                          2 * b0 + Int(rep.r - rep.r_plus - rep.r_minus)))
    return rep;
  if (!detail::record_int(rep, "homology_at_pivot", Int(betti_M(spec, Int(d_plus))), 2 * b0 + Int(betti_n)))
    return rep;

  if (!detail::record_int(rep, "census_total", Int(rep.r), Int(rep.r_B))) return rep;

  rep.verdict = Verdict::certified;
  rep.detail = "exactly " + std::to_string(rep.r_B) + " simple contractible orbits";
  return rep;
}

}  // namespace czc
