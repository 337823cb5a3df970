#include <CLI11.hpp>

#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "czc/json_io.hpp"

// Command-line front end.  Every subcommand reads UTF-8 JSON files, decides
// everything in exact arithmetic, and prints either canonical JSON (default)
// or a human table.  Decimal renderings are display hints only and never
// feed a decision.  Exit codes: 0 success/Certified, 1 Refuted (census, or a
// failed resonance identity), 2 malformed input, 3 search exhausted.

namespace {

using czc::ExactReal;
using czc::Int;
using czc::OrbitDataset;
using czc::OrbitModel;
using czc::PrequantSpec;
using czc::Rational;
using json = nlohmann::json;
namespace czio = czc::io;

// ---------------------------------------------------------------------------
// literal parsing

long long parse_ll(const std::string& s, const std::string& what) {
  try {
    std::size_t used = 0;
    long long v = std::stoll(s, &used);
    if (used != s.size()) throw std::invalid_argument("trailing characters");
    return v;
  } catch (...) {
    throw czc::InputError(what + ": '" + s + "' is not an integer");
  }
}

std::pair<long long, long long> parse_range(const std::string& s) {
  std::size_t colon = s.find(':', 1);  // the low end may start with '-'
  if (colon == std::string::npos)
    throw czc::InputError("range must be LO:HI, got '" + s + "'");
  long long lo = parse_ll(s.substr(0, colon), "range low end");
  long long hi = parse_ll(s.substr(colon + 1), "range high end");
  if (lo > hi) throw czc::InputError("range low end exceeds high end");
  return {lo, hi};
}

Rational parse_rational(const std::string& s, const std::string& what) {
  std::size_t slash = s.find('/');
  if (slash == std::string::npos) return Rational(Int(parse_ll(s, what)));
  return Rational(Int(parse_ll(s.substr(0, slash), what)),
                  Int(parse_ll(s.substr(slash + 1), what)));
}

// Axis literal: INT, INT/INT, sqrtN, INT*sqrtN, sqrtN/INT or INT*sqrtN/INT.
ExactReal parse_axis(const std::string& token) {
  const std::string what = "axis literal '" + token + "'";
  std::string body = token;
  Int den = 1;
  if (std::size_t slash = token.find('/'); slash != std::string::npos) {
    body = token.substr(0, slash);
    den = Int(parse_ll(token.substr(slash + 1), what));
  }
  Int mult = 1;
  std::string core = body;
  if (std::size_t star = body.find('*'); star != std::string::npos) {
    mult = Int(parse_ll(body.substr(0, star), what));
    core = body.substr(star + 1);
  }
  ExactReal value;
  if (core.rfind("sqrt", 0) == 0)
    value = ExactReal::sqrt_of(parse_ll(core.substr(4), what));
  else
    value = ExactReal(Int(parse_ll(core, what)));
  return value * mult / ExactReal(den);
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(s);
  while (std::getline(in, item, ',')) {
    std::size_t a = item.find_first_not_of(" \t");
    std::size_t b = item.find_last_not_of(" \t");
    if (a == std::string::npos) throw czc::InputError("empty entry in list '" + s + "'");
    out.push_back(item.substr(a, b - a + 1));
  }
  if (out.empty()) throw czc::InputError("empty list '" + s + "'");
  return out;
}

std::vector<ExactReal> parse_axes(const std::string& s) {
  std::vector<ExactReal> axes;
  for (const std::string& tok : split_list(s)) axes.push_back(parse_axis(tok));
  return axes;
}

// ---------------------------------------------------------------------------
// rendering

std::string decimal_hint(double v, int digits) {
  std::ostringstream os;
  os << std::setprecision(digits) << v;
  return os.str();
}

// Exact rendering, with a decimal annotation for irrational values.
std::string exact_cell(const ExactReal& x, int digits) {
  if (x.is_rational()) return x.str();
  return x.str() + " ~ " + decimal_hint(x.approx(), digits);
}

void emit(const json& j) { std::cout << czio::dump_pretty(j); }

// ---------------------------------------------------------------------------
// file plumbing

PrequantSpec load_spec(const std::string& path) {
  return czio::spec_from_json(czio::load_json_file(path));
}

// Orbit files are normally dataset objects {"n": ..., "orbits": [...]}; a
// bare orbit array is accepted when the caller supplies the ambient n.
OrbitDataset load_orbits(const std::string& path, std::optional<long long> ambient) {
  json j = czio::load_json_file(path);
  OrbitDataset ds;
  if (j.is_array()) {
    if (!ambient)
      throw czc::InputError(path + ": bare orbit array needs --n for the ambient dimension");
    ds.n = *ambient;
    for (const json& o : j) ds.orbits.push_back(czio::orbit_from_json(o));
  } else {
    ds = czio::dataset_from_json(j);
    if (ambient) ds.n = *ambient;
  }
  czc::validate_dataset(ds);
  return ds;
}

// ---------------------------------------------------------------------------
// subcommand bodies

int run_betti(const std::string& spec_path, const std::string& range, const std::string& format) {
  PrequantSpec spec = load_spec(spec_path);
  auto [lo, hi] = parse_range(range);
  std::vector<std::pair<long long, long long>> values;
  for (long long k = lo; k <= hi; ++k) values.push_back({k, czc::betti_M(spec, Int(k))});
  if (format == "table") {
    std::cout << std::setw(8) << "k" << std::setw(10) << "b_M(k)" << "\n";
    for (auto [k, b] : values) std::cout << std::setw(8) << k << std::setw(10) << b << "\n";
    return 0;
  }
  json rows = json::array();
  for (auto [k, b] : values) rows.push_back(json{{"k", k}, {"b", b}});
  emit(json{{"lo", lo}, {"hi", hi}, {"values", rows}});
  return 0;
}

int run_chi(const std::string& spec_path, const std::string& orbits_path,
            const std::string& format, int digits) {
  PrequantSpec spec = load_spec(spec_path);
  Rational euler = czc::mean_euler(spec);
  json out{{"r_B", czc::total_rank(spec)},
           {"c_B", spec.c_B},
           {"mean_euler", czio::rational_to_json(euler)}};
  std::vector<std::tuple<std::string, ExactReal, Rational>> rows;
  if (!orbits_path.empty()) {
    OrbitDataset ds = load_orbits(orbits_path, std::nullopt);
    ExactReal sum;
    json orbit_rows = json::array();
    for (const OrbitModel& o : ds.orbits) {
      OrbitModel rep = czc::collapse_to_contractible(o);
      ExactReal mu_hat = czc::mean_index(rep);
      Rational chi = czc::mean_chi(rep);
      sum = sum + ExactReal(chi) / mu_hat;
      rows.push_back({o.name, mu_hat, chi});
      orbit_rows.push_back(json{{"name", o.name},
                                {"mean_index", czio::exact_to_json(mu_hat)},
                                {"mean_chi", czio::rational_to_json(chi)}});
    }
    out["orbits"] = orbit_rows;
    out["resonance_sum"] = czio::exact_to_json(sum);
  }
  if (format == "table") {
    std::cout << "mean_euler = " << euler.str() << "\n";
    for (const auto& [name, mu_hat, chi] : rows)
      std::cout << "  " << name << ": mean_index = " << exact_cell(mu_hat, digits)
                << ", mean_chi = " << chi.str() << "\n";
    return 0;
  }
  emit(out);
  return 0;
}

int run_indices(const std::string& orbits_path, long long max_index,
                const std::vector<std::string>& only, const std::string& format) {
  OrbitDataset ds = load_orbits(orbits_path, std::nullopt);
  std::vector<const OrbitModel*> chosen;
  if (only.empty()) {
    for (const OrbitModel& o : ds.orbits) chosen.push_back(&o);
  } else {
    for (const std::string& name : only) {
      const OrbitModel* found = nullptr;
      for (const OrbitModel& o : ds.orbits)
        if (o.name == name) found = &o;
      if (!found) throw czc::InputError("no orbit named '" + name + "' in " + orbits_path);
      chosen.push_back(found);
    }
  }
  json orbits = json::array();
  for (const OrbitModel* o : chosen) {
    auto rows = czc::contractible_iterates(*o, Int(max_index), ds.n);
    if (format == "table") {
      std::cout << o->name << ":\n";
      std::cout << std::setw(10) << "k" << std::setw(12) << "mu" << std::setw(8) << "good" << "\n";
      for (const auto& r : rows)
        std::cout << std::setw(10) << r.k.str() << std::setw(12) << r.mu.str() << std::setw(8)
                  << (r.good ? "yes" : "no") << "\n";
      continue;
    }
    json iterates = json::array();
    for (const auto& r : rows)
      iterates.push_back(json{{"k", czio::int_to_json(r.k)},
                              {"mu", czio::int_to_json(r.mu)},
                              {"good", r.good}});
    orbits.push_back(json{{"name", o->name}, {"iterates", iterates}});
  }
  if (format != "table") emit(json{{"max_index", max_index}, {"n", ds.n}, {"orbits", orbits}});
  return 0;
}

int run_jump(const std::string& orbits_path, std::optional<long long> ambient,
             const std::string& eta, long long ell0, long long N, long long bound,
             const std::string& sides, const std::string& format) {
  OrbitDataset ds = load_orbits(orbits_path, ambient);
  czc::JumpRequest req;
  for (const OrbitModel& o : ds.orbits) req.orbits.push_back(czc::collapse_to_contractible(o));
  req.eta = ExactReal(parse_rational(eta, "--eta"));
  req.ell0 = ell0;
  req.N = N;
  req.search_bound = bound;
  req.sides = sides == "plus"    ? czc::Sides::plus
              : sides == "minus" ? czc::Sides::minus
                                 : czc::Sides::both;
  czc::JumpResult result = czc::find_jump(req);
  json out{{"plus", result.plus ? czio::certificate_to_json(*result.plus) : json(nullptr)},
           {"minus", result.minus ? czio::certificate_to_json(*result.minus) : json(nullptr)}};
  if (result.plus && result.minus) {
    auto verdict = czc::verify_jump(req.orbits, *result.plus, *result.minus, req.eta, req.ell0);
    if (!verdict.ok)
      throw czc::InternalInconsistency("search output failed verification: " +
                                       verdict.violations.front().detail);
    out["verified"] = true;
  }
  if (format == "table") {
    for (const auto& cert : {result.plus, result.minus}) {
      if (!cert) continue;
      std::cout << (cert->side == czc::Side::plus ? "plus" : "minus") << ": d = " << cert->d.str()
                << ", k =";
      for (const Int& k : cert->k) std::cout << " " << k.str();
      std::cout << "\n";
    }
    return 0;
  }
  emit(out);
  return 0;
}

int run_census(const std::string& spec_path, const std::string& orbits_path,
               const std::string& mode, const std::string& max_degree, long long bound,
               std::optional<long long> N, const std::string& eta, const std::string& format) {
  PrequantSpec spec = load_spec(spec_path);
  OrbitDataset ds = load_orbits(orbits_path, std::nullopt);
  czc::CensusConfig config;
  config.mode = mode == "lower-bound" ? czc::CensusMode::lower_bound : czc::CensusMode::exact;
  config.search_bound = bound;
  if (N) config.N = *N;
  if (!eta.empty()) config.eta = parse_rational(eta, "--eta");
  if (!max_degree.empty()) config.max_degree = czio::int_from_json(json(max_degree), "--max-degree");
  czc::CensusReport rep = czc::run_census(ds, spec, config);
  if (format == "table") {
    const char* verdict = rep.verdict == czc::Verdict::certified   ? "Certified"
                          : rep.verdict == czc::Verdict::refuted   ? "Refuted"
                                                                   : "Inconclusive";
    std::cout << "verdict: " << verdict << " (" << rep.detail << ")\n";
    std::cout << "r = " << rep.r << ", r_B = " << rep.r_B << ", r_plus = " << rep.r_plus
              << ", r_minus = " << rep.r_minus << ", b0 = " << rep.b0_correction << "\n";
    if (rep.N_used > 0)
      std::cout << "N = " << rep.N_used << ", eta = " << rep.eta_used.str()
                << ", ell0 = " << rep.ell0 << ", finiteness = " << rep.finiteness << "\n";
    for (const auto& cert : {rep.plus, rep.minus}) {
      if (!cert) continue;
      std::cout << (cert->side == czc::Side::plus ? "plus" : "minus") << ": d = " << cert->d.str()
                << ", k =";
      for (const Int& k : cert->k) std::cout << " " << k.str();
      std::cout << "\n";
    }
    for (const auto& check : rep.checks)
      std::cout << (check.pass ? "  [ok]   " : "  [FAIL] ") << check.name << ": " << check.lhs
                << " vs " << check.rhs << "\n";
  } else {
    emit(czio::census_to_json(rep));
  }
  switch (rep.verdict) {
    case czc::Verdict::certified:
      return 0;
    case czc::Verdict::refuted:
      return 1;
    default:
      return 3;
  }
}

void print_catalog_pair(const czc::CatalogPair& pair, const std::string& format, int digits) {
  if (format == "table") {
    std::cout << "spec: n = " << pair.spec.n << ", c_B = " << pair.spec.c_B << ", betti =";
    for (long long b : pair.spec.betti) std::cout << " " << b;
    std::cout << "\n";
    for (const OrbitModel& o : pair.dataset.orbits) {
      std::cout << o.name << ": rotations";
      for (const ExactReal& r : o.rotations) std::cout << " " << exact_cell(r, digits);
      std::cout << ", linear_even = " << o.linear_even << ", torsion = " << o.torsion_order
                << "\n";
    }
    return;
  }
  emit(json{{"spec", czio::spec_to_json(pair.spec)},
            {"dataset", czio::dataset_to_json(pair.dataset)}});
}

int run_catalog_table(const std::string& format) {
  const auto& rows = czc::cross_table();
  if (format == "table") {
    std::cout << std::left << std::setw(28) << "prequantization" << std::setw(10) << "r_B"
              << "c_B" << "\n";
    for (const czc::CrossRow& row : rows)
      std::cout << std::left << std::setw(28) << row.name << std::setw(10) << row.r_B << row.c_B
                << "\n";
    return 0;
  }
  json out = json::array();
  for (const czc::CrossRow& row : rows)
    out.push_back(json{{"name", row.name}, {"r_B", row.r_B}, {"c_B", row.c_B}});
  emit(out);
  return 0;
}

int run_catalog_spec(const std::string& name, const std::string& format) {
  czc::CrossLookup lk = czc::cross_spec(name);
  if (format == "table") {
    std::cout << name << ": r_B = " << lk.r_B << ", c_B = " << lk.c_B << "\n";
    if (lk.spec) {
      std::cout << "betti =";
      for (long long b : lk.spec->betti) std::cout << " " << b;
      std::cout << "\n";
    } else {
      std::cout << lk.note << "\n";
    }
    return 0;
  }
  json out{{"name", name}, {"r_B", lk.r_B}, {"c_B", lk.c_B},
           {"spec", lk.spec ? czio::spec_to_json(*lk.spec) : json(nullptr)}};
  if (!lk.note.empty()) out["note"] = lk.note;
  emit(out);
  return 0;
}

int run_resonance(const std::string& spec_path, const std::string& orbits_path,
                  const std::string& format, int digits) {
  PrequantSpec spec = load_spec(spec_path);
  OrbitDataset ds = load_orbits(orbits_path, std::nullopt);
  czc::ResonanceResult res = czc::resonance_check(ds, spec);
  if (format == "table") {
    std::cout << "sum chi/mu-hat = " << exact_cell(res.lhs, digits) << "\n";
    std::cout << "mean euler     = " << exact_cell(res.rhs, digits) << "\n";
    std::cout << (res.equal ? "equal" : "NOT EQUAL") << "\n";
  } else {
    emit(json{{"lhs", czio::exact_to_json(res.lhs)},
              {"rhs", czio::exact_to_json(res.rhs)},
              {"equal", res.equal}});
  }
  return res.equal ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "czc: exact Conley-Zehnder iteration data, equivariant symplectic homology\n"
      "dimensions, common-index-jump certificates, and the certified orbit census\n"
      "for prequantization bundles."};
  app.require_subcommand(1);

  std::string spec_path, orbits_path, range, format = "json", eta, max_degree, sides = "both";
  std::string axes, weights, name, census_mode = "exact";
  std::vector<std::string> only_orbits;
  long long max_index = 0, ell0 = 1, N = 0, bound = 100000, p = 1;
  std::optional<long long> ambient, census_N;
  int digits = 6;

  auto add_format = [&](CLI::App* cmd) {
    cmd->add_option("--format", format, "output format")
        ->check(CLI::IsMember({"json", "table"}))
        ->capture_default_str();
  };
  auto add_digits = [&](CLI::App* cmd) {
    cmd->add_option("--digits", digits, "decimal places for display hints (display only)")
        ->check(CLI::Range(1, 17))
        ->capture_default_str();
  };

  CLI::App* cmd_betti = app.add_subcommand(
      "betti", "homology dimensions b_M(k) over a degree range; JSON {lo,hi,values:[{k,b}]}");
  cmd_betti->add_option("--spec", spec_path, "prequantization spec JSON file")->required();
  cmd_betti->add_option("--range", range, "degree range LO:HI")->required();
  add_format(cmd_betti);

  CLI::App* cmd_chi = app.add_subcommand(
      "chi",
      "mean Euler characteristic of the spec, plus per-orbit mean index/chi rows with --orbits; "
      "JSON {r_B,c_B,mean_euler[,orbits,resonance_sum]}");
  cmd_chi->add_option("--spec", spec_path, "prequantization spec JSON file")->required();
  cmd_chi->add_option("--orbits", orbits_path, "orbit dataset JSON file");
  add_format(cmd_chi);
  add_digits(cmd_chi);

  CLI::App* cmd_indices = app.add_subcommand(
      "indices",
      "contractible iterates with index at most --max-index; JSON {max_index,n,orbits:[{name,"
      "iterates:[{k,mu,good}]}]}");
  cmd_indices->add_option("--orbits", orbits_path, "orbit dataset JSON file")->required();
  cmd_indices->add_option("--max-index", max_index, "index cutoff")->required();
  cmd_indices->add_option("--orbit", only_orbits, "restrict to this orbit name (repeatable)");
  add_format(cmd_indices);

  CLI::App* cmd_jump = app.add_subcommand(
      "jump",
      "common index jump certificates per Theorem-4.1 bookkeeping; JSON {plus,minus[,verified]} "
      "with certificates {side,d,k}");
  cmd_jump->add_option("--orbits", orbits_path, "orbit dataset JSON file (or bare orbit array)")
      ->required();
  cmd_jump->add_option("--n", ambient, "ambient dimension parameter (needed for bare arrays)");
  cmd_jump->add_option("--eta", eta, "mean-index tolerance, rational like 1/2")->required();
  cmd_jump->add_option("--ell0", ell0, "offset horizon for clause (ii)")->required();
  cmd_jump->add_option("--N", N, "pivot spacing")->required();
  cmd_jump->add_option("--bound", bound, "search bound")->capture_default_str();
  cmd_jump->add_option("--sides", sides, "which certificates to search")
      ->check(CLI::IsMember({"plus", "minus", "both"}))
      ->capture_default_str();
  add_format(cmd_jump);

  CLI::App* cmd_census = app.add_subcommand(
      "census",
      "full counting argument; exit 0 Certified, 1 Refuted, 2 input error, 3 inconclusive; JSON "
      "mirrors the census report");
  cmd_census->add_option("--spec", spec_path, "prequantization spec JSON file")->required();
  cmd_census->add_option("--orbits", orbits_path, "orbit dataset JSON file")->required();
  cmd_census->add_option("--mode", census_mode, "exact certification or lower-bound gates")
      ->check(CLI::IsMember({"exact", "lower-bound"}))
      ->capture_default_str();
  cmd_census->add_option("--max-degree", max_degree, "chain match horizon override");
  cmd_census->add_option("--bound", bound, "jump search bound")->capture_default_str();
  cmd_census->add_option("--N", census_N, "pivot spacing override (multiple of 2*c_B)");
  cmd_census->add_option("--eta", eta, "mean-index tolerance override, rational like 1/2");
  add_format(cmd_census);

  CLI::App* cmd_catalog = app.add_subcommand("catalog", "worked examples and reference data");
  cmd_catalog->require_subcommand(1);
  CLI::App* cat_ellipsoid = cmd_catalog->add_subcommand(
      "ellipsoid", "irrational ellipsoid dataset; JSON {spec,dataset}");
  cat_ellipsoid->add_option("--axes", axes, "comma list of axis literals, e.g. 1,sqrt2,sqrt3")
      ->required();
  add_format(cat_ellipsoid);
  add_digits(cat_ellipsoid);
  CLI::App* cat_lens = cmd_catalog->add_subcommand(
      "lens", "lens-space quotient of an ellipsoid; JSON {spec,dataset}");
  cat_lens->add_option("--p", p, "order of the cyclic quotient")->required();
  cat_lens->add_option("--weights", weights, "comma list of integer weights coprime to p")
      ->required();
  cat_lens->add_option("--axes", axes, "comma list of axis literals")->required();
  add_format(cat_lens);
  add_digits(cat_lens);
  CLI::App* cat_table = cmd_catalog->add_subcommand(
      "table", "reference table of prequantizations; JSON [{name,r_B,c_B}]");
  add_format(cat_table);
  CLI::App* cat_spec = cmd_catalog->add_subcommand(
      "spec", "spec lookup for a concrete name like S^5 or S*S^5; JSON {name,r_B,c_B,spec[,note]}");
  cat_spec->add_option("--name", name, "prequantization name")->required();
  add_format(cat_spec);

  CLI::App* cmd_resonance = app.add_subcommand(
      "resonance",
      "resonance identity sum chi/mu-hat vs mean euler; exit 1 when unequal; JSON {lhs,rhs,equal}");
  cmd_resonance->add_option("--spec", spec_path, "prequantization spec JSON file")->required();
  cmd_resonance->add_option("--orbits", orbits_path, "orbit dataset JSON file")->required();
  add_format(cmd_resonance);
  add_digits(cmd_resonance);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  auto guarded = [](const std::function<int()>& body) {
    try {
      return body();
    } catch (const czc::Exhausted& e) {
      std::cerr << "inconclusive: " << e.what() << "\n";
      return 3;
    } catch (const czc::Error& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
  };

  return guarded([&]() -> int {
    if (*cmd_betti) return run_betti(spec_path, range, format);
    if (*cmd_chi) return run_chi(spec_path, orbits_path, format, digits);
    if (*cmd_indices) return run_indices(orbits_path, max_index, only_orbits, format);
    if (*cmd_jump) return run_jump(orbits_path, ambient, eta, ell0, N, bound, sides, format);
    if (*cmd_census)
      return run_census(spec_path, orbits_path, census_mode, max_degree, bound, census_N, eta,
                        format);
    if (*cat_ellipsoid) {
      print_catalog_pair(czc::ellipsoid(parse_axes(axes)), format, digits);
      return 0;
    }
    if (*cat_lens) {
      std::vector<long long> w;
      for (const std::string& tok : split_list(weights)) w.push_back(parse_ll(tok, "--weights"));
      print_catalog_pair(czc::lens(p, w, parse_axes(axes)), format, digits);
      return 0;
    }
    if (*cat_table) return run_catalog_table(format);
    if (*cat_spec) return run_catalog_spec(name, format);
    if (*cmd_resonance) return run_resonance(spec_path, orbits_path, format, digits);
    return 2;
  });
}
