#pragma once

#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "czc/census.hpp"

// Worked examples: ellipsoid and lens-space orbit datasets paired with the
// matching prequantization spec, plus the fixed reference table of sphere
// and cosphere-bundle prequantizations (base rank r_B, minimal Chern number
// c_B).  Generators are pure; everything they return is re-validated before
// it leaves this header.

namespace czc {

// Spec of the standard contact sphere S^{2n+1} as a prequantization of CP^n:
// c_B = n+1 and Betti numbers 1,0,1,...,0,1.
inline PrequantSpec sphere_spec(long long n) {
  if (n < 1) throw InputError("sphere spec: need n >= 1");
  PrequantSpec s;
  s.n = n;
  s.c_B = n + 1;
  s.betti.assign(2 * n + 1, 0);
  for (long long k = 0; k <= 2 * n; k += 2) s.betti[k] = 1;
  validate_spec(s);
  return s;
}

struct CatalogPair {
  PrequantSpec spec;
  OrbitDataset dataset;
};

// Irrational ellipsoid E(a_0, ..., a_n) in C^{n+1}.  Orbit j is the j-th
// coordinate circle; its transverse rotation numbers are a_j/a_i for i != j
// and the fiber direction contributes linear_even = 2.  Every pairwise axis
// ratio must be irrational, else some orbit iterate is degenerate.
inline CatalogPair ellipsoid(const std::vector<ExactReal>& axes) {
  if (axes.size() < 2) throw InputError("ellipsoid: need at least two axes");
  long long n = static_cast<long long>(axes.size()) - 1;
  for (std::size_t j = 0; j < axes.size(); ++j)
    if (axes[j].sign() <= 0)
      throw InputError("ellipsoid: axis " + std::to_string(j) + " is not positive");
  for (std::size_t i = 0; i < axes.size(); ++i)
    for (std::size_t j = i + 1; j < axes.size(); ++j)
      if ((axes[i] / axes[j]).is_rational())
        throw RationalRatio("ellipsoid: axes " + std::to_string(i) + " and " +
                            std::to_string(j) + " have a rational ratio");
  CatalogPair out;
  out.spec = sphere_spec(n);
  out.dataset.n = n;
  out.dataset.orbits.reserve(axes.size());
  for (std::size_t j = 0; j < axes.size(); ++j) {
    OrbitModel o;
    o.name = "axis" + std::to_string(j);
    for (std::size_t i = 0; i < axes.size(); ++i)
      if (i != j) o.rotations.push_back(axes[j] / axes[i]);
    o.linear_even = 2;
    out.dataset.orbits.push_back(std::move(o));
  }
  validate_dataset(out.dataset);
  return out;
}

// Lens-space quotient of an ellipsoid by Z_p acting with the given weights.
// Each weight must be coprime to p, so every downstairs orbit class
// generates Z_p and iterate k is contractible exactly when p divides k;
// the dataset is therefore the ellipsoid one with torsion_order = p.  The
// base spec is unchanged: the census counts contractible orbits only.
inline CatalogPair lens(long long p, const std::vector<long long>& weights,
                        const std::vector<ExactReal>& axes) {
  if (p < 1) throw InputError("lens: order p must be positive");
  if (weights.size() != axes.size())
    throw InputError("lens: need one weight per axis");
  for (long long w : weights)
    if (std::gcd(w, p) != 1)
      throw WeightNotCoprime("lens: weight " + std::to_string(w) +
                             " shares a factor with p = " + std::to_string(p));
  CatalogPair out = ellipsoid(axes);
  for (OrbitModel& o : out.dataset.orbits) o.torsion_order = p;
  return out;
}

// One row of the reference table.  Parametric rows carry their closed
// formula in the parameter (n or m) verbatim; concrete rows carry numerals.
struct CrossRow {
  std::string name;
  std::string r_B;
  std::string c_B;
};

inline const std::vector<CrossRow>& cross_table() {
  static const std::vector<CrossRow> rows = {
      {"S^(2n+1)", "n+1", "n+1"},
      {"S*S^2, S*RP^2", "2", "2"},
      {"S*S^m, S*RP^m (m > 2 even)", "m", "m-1"},
      {"S*S^m, S*RP^m (m odd)", "m+1", "m-1"},
      {"S*CP^m", "m(m+1)", "m"},
      {"S*HP^m", "2m(m+1)", "2m+1"},
      {"S*CaP^2", "24", "11"},
  };
  return rows;
}

namespace detail {

// Base of the unit cosphere bundle of an odd-dimensional sphere S^m: the
// Grassmannian of oriented 2-planes in R^{m+1}, with one generator in each
// even degree 0..2(m-1) and one extra class in the middle degree m-1.  The
// reference table pins only the totals (r_B = m+1, c_B = m-1); the placement
// is standard literature data, re-validated here against duality, the
// lacunarity requirement, and the r_B total.
inline PrequantSpec odd_cosphere_spec(long long m) {
  PrequantSpec s;
  s.n = m - 1;
  s.c_B = m - 1;
  s.betti.assign(2 * s.n + 1, 0);
  for (long long k = 0; k <= 2 * s.n; k += 2) s.betti[k] = 1;
  s.betti[s.n] += 1;
  validate_spec(s);
  if (total_rank(s) != m + 1)
    throw InternalInconsistency("cosphere profile total disagrees with the reference table");
  return s;
}

inline std::string numbers_only_note(const std::string& name, long long r_B, long long c_B) {
  return name + ": the table carries the counts only (r_B = " + std::to_string(r_B) +
         ", c_B = " + std::to_string(c_B) +
         "); supply a Betti profile to run homology operations on this base";
}

}  // namespace detail

// Lookup result for a concrete prequantization name such as "S^5" or
// "S*S^5".  A full spec is present only for names whose Betti profile ships
// (spheres; cosphere bundles of odd spheres); otherwise note explains that
// the table carries the counts alone.  r_B and c_B are always filled in.
struct CrossLookup {
  std::optional<PrequantSpec> spec;
  long long r_B = 0;
  long long c_B = 0;
  std::string note;
};

inline CrossLookup cross_spec(const std::string& name) {
  auto fail = [&name]() {
    throw UnknownName("unknown catalog name: " + name);
  };
  std::size_t caret = name.find('^');
  if (caret == std::string::npos || caret + 1 == name.size()) fail();
  const std::string family = name.substr(0, caret);
  long long m = 0;
  for (std::size_t i = caret + 1; i < name.size(); ++i) {
    char ch = name[i];
    if (ch < '0' || ch > '9') fail();
    if (m > 1000000) fail();
    m = 10 * m + (ch - '0');
  }
  CrossLookup out;
  if (family == "S") {
    if (m < 3 || m % 2 == 0) fail();
    long long n = (m - 1) / 2;
    out.spec = sphere_spec(n);
    out.r_B = n + 1;
    out.c_B = n + 1;
    return out;
  }
  if (family == "S*S" || family == "S*RP") {
    if (m < 2) fail();
    if (m == 2) {
      out.r_B = 2;
      out.c_B = 2;
    } else if (m % 2 == 0) {
      out.r_B = m;
      out.c_B = m - 1;
    } else {
      out.r_B = m + 1;
      out.c_B = m - 1;
    }
    if (family == "S*S" && m % 2 == 1) {
      out.spec = detail::odd_cosphere_spec(m);
      return out;
    }
    out.note = detail::numbers_only_note(name, out.r_B, out.c_B);
    return out;
  }
  if (family == "S*CP") {
    if (m < 2) fail();
    out.r_B = m * (m + 1);
    out.c_B = m;
    out.note = detail::numbers_only_note(name, out.r_B, out.c_B);
    return out;
  }
  if (family == "S*HP") {
    if (m < 2) fail();
    out.r_B = 2 * m * (m + 1);
    out.c_B = 2 * m + 1;
    out.note = detail::numbers_only_note(name, out.r_B, out.c_B);
    return out;
  }
  if (family == "S*CaP") {
    if (m != 2) fail();
    out.r_B = 24;
    out.c_B = 11;
    out.note = detail::numbers_only_note(name, out.r_B, out.c_B);
    return out;
  }
  fail();
  return out;
}

}  // namespace czc
