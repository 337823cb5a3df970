#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "czc/homology.hpp"

using czc::Int;
using czc::Monotone;
using czc::PrequantSpec;
using czc::Rational;

namespace {

// CP^n base of the sphere S^{2n+1}: ones in every even degree, c_B = n+1.
PrequantSpec sphere_spec(long long n) {
  PrequantSpec s;
  s.n = n;
  s.c_B = n + 1;
  s.betti.assign(2 * n + 1, 0);
  for (long long k = 0; k <= 2 * n; k += 2) s.betti[k] = 1;
  return s;
}

// Brute-force evaluation of the defining sum with a wide m horizon.
long long betti_M_brute(const PrequantSpec& s, long long k) {
  long long total = 0;
  for (long long m = 1; m <= 1000; ++m) {
    long long deg = s.sign == Monotone::positive ? k + s.n - 2 * m * s.c_B : k - s.n + 2 * m * s.c_B;
    if (deg >= 0 && deg <= 2 * s.n) total += s.betti[deg];
  }
  return total;
}

PrequantSpec random_lacunary_spec(std::mt19937_64& rng) {
  std::uniform_int_distribution<long long> nd(1, 6), cd(1, 5), bd(0, 3);
  PrequantSpec s;
  s.n = nd(rng);
  s.c_B = cd(rng);
  s.betti.assign(2 * s.n + 1, 0);
  for (long long deg = 0; deg <= s.n; deg += 2) {
    long long v = bd(rng);
    if (deg == 0 && v == 0) v = 1;
    s.betti[deg] = v;
    s.betti[2 * s.n - deg] = v;
  }
  czc::validate_spec(s);
  return s;
}

}  // namespace

TEST_CASE("spec validation") {
  PrequantSpec s3 = sphere_spec(1);
  czc::validate_spec(s3);
  REQUIRE(czc::total_rank(s3) == 2);

  PrequantSpec bad = s3;
  bad.betti = {1, 0, 2};  // breaks Poincare duality
  REQUIRE_THROWS_AS(czc::validate_spec(bad), czc::InputError);
  bad.betti = {1, 1, 1};  // breaks lacunarity
  REQUIRE_THROWS_AS(czc::validate_spec(bad), czc::InputError);
  bad.betti = {0, 0, 0};
  REQUIRE_THROWS_AS(czc::validate_spec(bad), czc::InputError);
  bad.betti = {1, 0};
  REQUIRE_THROWS_AS(czc::validate_spec(bad), czc::InputError);
}

TEST_CASE("homology of M: frozen sphere values") {
  PrequantSpec s3 = sphere_spec(1);
  REQUIRE(czc::betti_M(s3, 3) == 1);
  REQUIRE(czc::betti_M(s3, 5) == 1);
  REQUIRE(czc::betti_M(s3, 1) == 0);
  REQUIRE(czc::betti_M(s3, 4) == 0);

  PrequantSpec s5 = sphere_spec(2);
  REQUIRE(czc::betti_M(s5, 8) == 1);
  REQUIRE(czc::betti_M(s5, 10) == 1);

  // everything below 2c_B - n vanishes
  for (long long k = -10; k < 3; ++k) REQUIRE(czc::betti_M(s3, Int(k)) == 0);
  for (long long k = -10; k < 4; ++k) REQUIRE(czc::betti_M(s5, Int(k)) == 0);
}

TEST_CASE("homology of M matches the defining sum on random specs") {
  std::mt19937_64 rng(0xB0B);
  for (int i = 0; i < 300; ++i) {
    PrequantSpec s = random_lacunary_spec(rng);
    if (i % 2 == 0) s.sign = Monotone::negative;
    for (long long k = -15; k <= 70; ++k)
      REQUIRE(czc::betti_M(s, Int(k)) == betti_M_brute(s, k));
  }
}

TEST_CASE("minimal nonzero degree") {
  REQUIRE(czc::k_min(sphere_spec(1)) == 3);
  REQUIRE(czc::k_min(sphere_spec(2)) == 4);

  PrequantSpec s;
  s.n = 3;
  s.c_B = 2;
  s.betti = {1, 0, 1, 0, 1, 0, 1};
  REQUIRE(czc::k_min(s) == 1);

  s.sign = Monotone::negative;
  REQUIRE_THROWS_AS(czc::k_min(s), czc::SignMismatch);
}

TEST_CASE("mean Euler characteristic") {
  REQUIRE(czc::mean_euler(sphere_spec(1)) == Rational(-1, 2));
  REQUIRE(czc::mean_euler(sphere_spec(2)) == Rational(1, 2));

  // n = 15, c_B = 11, r_B = 24 (any valid profile with these totals)
  PrequantSpec cap;
  cap.n = 15;
  cap.c_B = 11;
  cap.betti.assign(31, 0);
  cap.betti[0] = cap.betti[30] = 1;
  cap.betti[14] = cap.betti[16] = 11;
  czc::validate_spec(cap);
  REQUIRE(czc::total_rank(cap) == 24);
  REQUIRE(czc::mean_euler(cap) == Rational(-12, 11));

  PrequantSpec neg = sphere_spec(1);
  neg.sign = Monotone::negative;
  REQUIRE_THROWS_AS(czc::mean_euler(neg), czc::SignMismatch);
}

TEST_CASE("truncated sums") {
  REQUIRE(czc::truncated_betti_sum(sphere_spec(1), 3, 5) == 2);
  REQUIRE(czc::truncated_betti_sum(sphere_spec(2), 4, 12) == 5);
  REQUIRE(czc::truncated_betti_sum(sphere_spec(1), -10, 2) == 0);
}

TEST_CASE("truncated sums collapse whole periods exactly") {
  std::mt19937_64 rng(0x5CA1E);
  std::uniform_int_distribution<long long> lo_pick(-5, 8), len_pick(0, 60);
  for (int trial = 0; trial < 120; ++trial) {
    PrequantSpec s = random_lacunary_spec(rng);
    Int lo(lo_pick(rng));
    Int hi = lo + len_pick(rng);
    Int brute = 0;
    for (Int k = lo; k <= hi; ++k) brute += czc::betti_M(s, k);
    REQUIRE(czc::truncated_betti_sum(s, lo, hi) == brute);
  }
}

TEST_CASE("truncated-sum identity: frozen cases") {
  auto r5 = czc::lemma_sum_identity(sphere_spec(2), 2);
  REQUIRE(r5.lhs == 10);
  REQUIRE(r5.rhs == 10);
  REQUIRE(r5.holds);

  auto r3 = czc::lemma_sum_identity(sphere_spec(1), 2);
  REQUIRE(r3.lhs == 6);
  REQUIRE(r3.rhs == 6);
  REQUIRE(r3.holds);

  PrequantSpec wide;  // n = 3, c_B = 2: s = 1 gives 2s*c_B = 4 <= 6 = 2n
  wide.n = 3;
  wide.c_B = 2;
  wide.betti = {1, 0, 1, 0, 1, 0, 1};
  REQUIRE_THROWS_AS(czc::lemma_sum_identity(wide, 1), czc::InputError);
}

TEST_CASE("truncated-sum identity holds on random profiles") {
  std::mt19937_64 rng(0x1E44A);
  std::uniform_int_distribution<long long> sd(1, 20);
  int done = 0;
  while (done < 300) {
    PrequantSpec s = random_lacunary_spec(rng);
    long long steps = sd(rng);
    if (2 * steps * s.c_B <= 2 * s.n) continue;
    auto res = czc::lemma_sum_identity(s, steps);
    REQUIRE(res.holds);
    ++done;
  }
}

TEST_CASE("classic truncated sums with b0 correction") {
  auto c3 = czc::classic_sums(sphere_spec(1), 2);
  REQUIRE(c3.b0 == 0);
  REQUIRE(c3.sum_to_d == 3);
  REQUIRE(c3.predicted == Rational(3));
  REQUIRE(c3.holds);

  auto c5 = czc::classic_sums(sphere_spec(2), 2);
  REQUIRE(c5.sum_to_d_plus_1 == 5);
  REQUIRE(c5.predicted == Rational(5));
  REQUIRE(c5.holds);

  // c_B <= n/2 exercises a nonzero b0
  PrequantSpec low;
  low.n = 2;
  low.c_B = 1;
  low.betti = {1, 0, 1, 0, 1};
  czc::validate_spec(low);
  auto cl = czc::classic_sums(low, 3);
  REQUIRE(cl.b0 > 0);
  REQUIRE(cl.holds);

  std::mt19937_64 rng(0xB00);
  std::uniform_int_distribution<long long> sd(1, 20);
  int done = 0;
  while (done < 300) {
    PrequantSpec s = random_lacunary_spec(rng);
    long long steps = sd(rng);
    if (2 * steps * s.c_B <= 2 * s.n) continue;
    REQUIRE(czc::classic_sums(s, steps).holds);
    ++done;
  }
}

TEST_CASE("homology recurrence and window saturation") {
  std::mt19937_64 rng(0x4EC);
  for (int i = 0; i < 300; ++i) {
    PrequantSpec s = random_lacunary_spec(rng);
    long long r = czc::total_rank(s);
    for (long long k = -10; k <= 60; ++k) {
      long long add = (k + s.n >= 0 && k + s.n <= 2 * s.n) ? s.betti[k + s.n] : 0;
      REQUIRE(czc::betti_M(s, Int(k + 2 * s.c_B)) == czc::betti_M(s, Int(k)) + add);
    }
    for (long long k = s.n + 1; k <= s.n + 2 * s.c_B; ++k) {
      Int window = czc::truncated_betti_sum(s, Int(k), Int(k + 2 * s.c_B - 1));
      REQUIRE(window == r);
    }
  }
}

TEST_CASE("finiteness bound reference values") {
  for (long long n = 1; n <= 5; ++n) REQUIRE(czc::finiteness_bound(sphere_spec(n)) == n + 1);

  // S*S^5: base G2+(R^6), n = 4, c_B = 4, profile with a double class mid-degree
  PrequantSpec odd;
  odd.n = 4;
  odd.c_B = 4;
  odd.betti = {1, 0, 1, 0, 2, 0, 1, 0, 1};
  czc::validate_spec(odd);
  REQUIRE(czc::finiteness_bound(odd) == 8);  // m + 3 for m = 5

  // S*S^4: base with CP^3 rational cohomology, n = 3, c_B = 3
  PrequantSpec even;
  even.n = 3;
  even.c_B = 3;
  even.betti = {1, 0, 1, 0, 1, 0, 1};
  czc::validate_spec(even);
  REQUIRE(czc::finiteness_bound(even) == 6);  // m + 2 for m = 4
}