#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "czc/exact_real.hpp"

using czc::ExactReal;
using czc::Int;
using czc::Rational;

namespace {

using Quad = boost::multiprecision::cpp_bin_float_quad;

Quad quad_value(const ExactReal& x) {
  Quad v = 0;
  for (const auto& t : x.terms()) {
    Quad c = Quad(t.coef.num.str()) / Quad(t.coef.den.str());
    v += c * sqrt(Quad(t.root));
  }
  return v;
}

// sign(t - b*sqrt(r)) using only integer comparisons; r squarefree, so
// equality forces t = b = 0.
int cmp_int_vs_surd(const Int& t, const Int& b, long long r) {
  if (b == 0) return czc::sign_of(t);
  if (t <= 0 && b > 0) return (t == 0 && b == 0) ? 0 : -1;
  if (t >= 0 && b < 0) return 1;
  int s = t > 0 ? 1 : -1;  // both sides share this sign
  Int lhs = t * t, rhs = b * b * r;
  if (lhs == rhs) return 0;
  return (lhs > rhs ? 1 : -1) * s;
}

// floor((a + b*sqrt(r)) / c) for c > 0 by estimate-then-correct, a different
// algorithm from the library's interval bisection.
Int surd_floor_oracle(const Int& a, const Int& b, long long r, const Int& c) {
  long double est = (a.convert_to<long double>() +
                     b.convert_to<long double>() * sqrtl(static_cast<long double>(r))) /
                    c.convert_to<long double>();
  Int m = Int(static_cast<long long>(floorl(est)));
  auto le_value = [&](const Int& q) { return cmp_int_vs_surd(q * c - a, b, r) <= 0; };
  while (!le_value(m)) --m;
  while (le_value(m + 1)) ++m;
  return m;
}

const long long kRoots[] = {2, 3, 5, 6, 7, 10, 11, 13, 15, 21};

ExactReal random_value(std::mt19937_64& rng, int max_terms) {
  std::uniform_int_distribution<int> nterms(1, max_terms);
  std::uniform_int_distribution<long long> coef(-50, 50);
  std::uniform_int_distribution<long long> den(1, 20);
  std::uniform_int_distribution<size_t> pick(0, std::size(kRoots) - 1);
  ExactReal x(Rational(coef(rng), den(rng)));
  int n = nterms(rng);
  for (int i = 0; i < n; ++i) {
    long long c = coef(rng);
    if (c == 0) c = 1;
    x = x + ExactReal(Rational(c, den(rng))) * ExactReal::sqrt_of(kRoots[pick(rng)]);
  }
  return x;
}

}  // namespace

TEST_CASE("rational normalization and floor") {
  Rational r(6, -4);
  REQUIRE(r.num == -3);
  REQUIRE(r.den == 2);
  REQUIRE(r.floor() == -2);
  REQUIRE(Rational(-7, 2).floor() == -4);
  REQUIRE(Rational(7, 2).floor() == 3);
  REQUIRE(Rational(-3, 2).str() == "-3/2");
  REQUIRE(Rational(4, 2).str() == "2");
  REQUIRE_THROWS_AS(Rational(1, 0), czc::InputError);
}

TEST_CASE("surd construction and canonical form") {
  // sqrt(8) = 2*sqrt(2), sqrt(50) = 5*sqrt(2), sqrt(49) = 7
  REQUIRE(ExactReal::sqrt_of(8) == ExactReal::sqrt_of(2) * 2);
  REQUIRE(ExactReal::sqrt_of(50) == ExactReal::sqrt_of(2) * 5);
  REQUIRE(ExactReal::sqrt_of(49) == ExactReal(7));
  REQUIRE(ExactReal::sqrt_of(12) == ExactReal::sqrt_of(3) * 2);
  REQUIRE(ExactReal::sqrt_of(1) == ExactReal(1));

  // explicit surds must come squarefree
  REQUIRE_THROWS_AS(ExactReal::surd(0, 1, 8, 1), czc::InputError);
  REQUIRE_THROWS_AS(ExactReal::surd(1, 2, 12, 5), czc::InputError);
  REQUIRE_THROWS_AS(ExactReal::surd(1, 1, 2, 0), czc::InputError);

  // cancellation back to a rational
  ExactReal x = ExactReal::sqrt_of(2) + ExactReal(1);
  ExactReal y = ExactReal(2) - ExactReal::sqrt_of(2);
  REQUIRE((x + y) == ExactReal(3));
  REQUIRE((x + y).is_rational());
  REQUIRE((x - x).is_zero());
}

TEST_CASE("products across roots") {
  ExactReal s2 = ExactReal::sqrt_of(2), s3 = ExactReal::sqrt_of(3);
  REQUIRE(s2 * s2 == ExactReal(2));
  REQUIRE(ExactReal::sqrt_of(6) * ExactReal::sqrt_of(10) == ExactReal::sqrt_of(15) * 2);
  REQUIRE((ExactReal(1) + s2) * (ExactReal(1) - s2) == ExactReal(-1));
  REQUIRE((s2 + s3) * (s2 + s3) == ExactReal(5) + ExactReal::sqrt_of(6) * 2);

  // (a+b+c)(-a+b+c)(a-b+c)(a+b-c) = 2a^2b^2 + 2b^2c^2 + 2c^2a^2 - a^4 - b^4 - c^4
  // with a^2=2, b^2=3, c^2=5 this is 12 + 30 + 20 - 38 = 24.
  ExactReal s5 = ExactReal::sqrt_of(5);
  ExactReal p = (s2 + s3 + s5) * (s3 + s5 - s2) * (s2 + s5 - s3) * (s2 + s3 - s5);
  REQUIRE(p == ExactReal(24));
}

TEST_CASE("inverse: frozen cases and roundtrip") {
  ExactReal s2 = ExactReal::sqrt_of(2), s3 = ExactReal::sqrt_of(3);
  REQUIRE((ExactReal(1) + s2).inverse() == s2 - ExactReal(1));
  REQUIRE((s2 + s3).inverse() == s3 - s2);
  REQUIRE(ExactReal(Rational(7, 3)).inverse() == ExactReal(Rational(3, 7)));
  REQUIRE_THROWS_AS(ExactReal().inverse(), czc::InputError);

  std::mt19937_64 rng(0xC0FFEE);
  int done = 0;
  while (done < 2000) {
    ExactReal x = random_value(rng, 3);
    if (x.is_zero()) continue;
    REQUIRE(x * x.inverse() == ExactReal(1));
    ++done;
  }
}

TEST_CASE("sign on near-tie values") {
  ExactReal s2 = ExactReal::sqrt_of(2);
  // (1+sqrt(2))^6 = 99 + 70*sqrt(2); 70^2*2 = 9800 = 99^2 - 1, so it lies just
  // below 198.
  ExactReal pell = ExactReal(99) + s2 * 70;
  REQUIRE((pell - ExactReal(198)).sign() < 0);
  REQUIRE((pell - ExactReal(197)).sign() > 0);
  REQUIRE(pell.floor() == 197);

  // (1+sqrt(2))^12 = 19601 + 13860*sqrt(2), just below 39202.
  ExactReal pell2 = ExactReal(19601) + s2 * 13860;
  REQUIRE(pell2.floor() == 39201);

  // (sqrt(2)-1)^20 ~ 2.6e-8 must still register as strictly positive.
  ExactReal tiny = ExactReal(1);
  for (int i = 0; i < 20; ++i) tiny = tiny * (s2 - ExactReal(1));
  REQUIRE(tiny.sign() > 0);
  REQUIRE(tiny.floor() == 0);
  REQUIRE((tiny + ExactReal(5)).floor() == 5);
  REQUIRE((-tiny).sign() < 0);
}

TEST_CASE("comparisons") {
  ExactReal s2 = ExactReal::sqrt_of(2);
  REQUIRE(ExactReal(Rational(7, 5)) < s2);
  REQUIRE(ExactReal(Rational(10, 7)) > s2);
  REQUIRE(ExactReal(Rational(1, 2)) * s2 < ExactReal(Rational(3, 4)));
  REQUIRE(s2 + ExactReal::sqrt_of(3) > ExactReal(3));
  REQUIRE(s2 + ExactReal::sqrt_of(3) < ExactReal(Rational(63, 20)));
}

TEST_CASE("floor and fractional part: frozen cases") {
  ExactReal inv_s2 = ExactReal::surd(0, 1, 2, 2);  // 1/sqrt(2)
  REQUIRE(czc::floor_mul(inv_s2, 10) == 7);        // 10/sqrt(2) = sqrt(50) in (7,8)
  REQUIRE(czc::floor_mul(ExactReal(Rational(7, 5)), 3) == 4);
  REQUIRE(ExactReal::sqrt_of(2).floor() == 1);
  REQUIRE((ExactReal::sqrt_of(2) * 10).floor() == 14);
  REQUIRE((-ExactReal::sqrt_of(2)).floor() == -2);
  REQUIRE((ExactReal::sqrt_of(2) + ExactReal::sqrt_of(3)).floor() == 3);
  REQUIRE(ExactReal(Int(5)).floor() == 5);
  REQUIRE(ExactReal(Rational(-1, 2)).floor() == -1);
  REQUIRE(ExactReal::sqrt_of(2).ceil() == 2);
  REQUIRE(ExactReal(3).ceil() == 3);

  // 7/sqrt(2) = sqrt(24.5) in (4,5)
  auto [f, g] = czc::frac_gap(inv_s2, 7);
  REQUIRE(f == inv_s2 * 7 - ExactReal(4));
  REQUIRE(g == ExactReal(5) - inv_s2 * 7);
  REQUIRE(f + g == ExactReal(1));
}

TEST_CASE("integer multiples and degenerate gaps") {
  REQUIRE(czc::is_integer_multiple(ExactReal(Rational(7, 5)), 5));
  REQUIRE(!czc::is_integer_multiple(ExactReal(Rational(7, 5)), 3));
  for (long long k = 1; k <= 50; ++k) REQUIRE(!czc::is_integer_multiple(ExactReal::sqrt_of(2), k));
  REQUIRE_THROWS_AS(czc::frac_gap(ExactReal(Rational(7, 5)), 5), czc::DegenerateIterate);
}

TEST_CASE("string rendering") {
  REQUIRE(ExactReal().str() == "0");
  REQUIRE(ExactReal(Rational(-3, 2)).str() == "-3/2");
  REQUIRE(ExactReal::surd(1, 1, 5, 2).str() == "(1+1*sqrt(5))/2");
  REQUIRE(ExactReal::surd(1, -1, 2, 1).str() == "(1-1*sqrt(2))");
  REQUIRE((ExactReal::sqrt_of(2) + ExactReal::sqrt_of(3)).str() == "1*sqrt(2) + 1*sqrt(3)");
  REQUIRE((ExactReal(1) + ExactReal::sqrt_of(2) + ExactReal::sqrt_of(3)).str() ==
          "1 + 1*sqrt(2) + 1*sqrt(3)");
}

TEST_CASE("bounds bracket the value") {
  std::mt19937_64 rng(0xBEEF);
  for (int i = 0; i < 500; ++i) {
    ExactReal x = random_value(rng, 4);
    for (unsigned prec : {8u, 64u}) {
      auto [lo, hi] = x.bounds(prec);
      REQUIRE((x - ExactReal(lo)).sign() >= 0);
      REQUIRE((ExactReal(hi) - x).sign() >= 0);
    }
  }
}

TEST_CASE("floor_mul agrees with an integer-sqrt oracle on single surds") {
  std::mt19937_64 rng(0x5EED);
  std::uniform_int_distribution<long long> ad(-100, 100), bd(-100, 100), cd(1, 50), kd(1, 1000);
  std::uniform_int_distribution<size_t> pick(0, std::size(kRoots) - 1);
  for (int i = 0; i < 10000; ++i) {
    long long a = ad(rng), b = bd(rng), c = cd(rng), k = kd(rng), r = kRoots[pick(rng)];
    if (b == 0) b = 1;
    ExactReal x = ExactReal::surd(a, b, r, c);
    REQUIRE(czc::floor_mul(x, k) == surd_floor_oracle(Int(a) * k, Int(b) * k, r, Int(c)));
  }
}

TEST_CASE("sign and floor agree with a quad-float oracle on multi-root values") {
  std::mt19937_64 rng(0xACE1);
  int checked = 0;
  while (checked < 10000) {
    ExactReal x = random_value(rng, 4);
    Quad v = quad_value(x);
    Quad dist = abs(v - round(v));
    if (abs(v) > Quad("1e-20")) {
      int expect = v > 0 ? 1 : -1;
      REQUIRE(x.sign() == expect);
    }
    if (dist > Quad("1e-20")) {
      REQUIRE(x.floor() == Int(static_cast<long long>(floor(v).convert_to<double>())));
    }
    ++checked;
  }
}

TEST_CASE("floor bracketing holds exactly for random products") {
  std::mt19937_64 rng(0xF00D);
  std::uniform_int_distribution<long long> kd(1, 5000);
  for (int i = 0; i < 2000; ++i) {
    ExactReal x = random_value(rng, 3);
    Int k(kd(rng));
    ExactReal y = x * k;
    Int f = y.floor();
    REQUIRE((y - ExactReal(f)).sign() >= 0);
    REQUIRE((ExactReal(f + 1) - y).sign() > 0);
  }
}
