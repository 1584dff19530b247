#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "critline/arith.hpp"
#include "critline/errors.hpp"

using namespace critline;
using namespace critline::arith;

TEST(DivisorCount, SmallValues) {
  EXPECT_EQ(divisor_count(1), 1u);
  EXPECT_EQ(divisor_count(12), 6u);
  EXPECT_EQ(divisor_count(97), 2u);
  EXPECT_EQ(divisor_count(720720), 240u);
  EXPECT_THROW(divisor_count(0), PreconditionError);
}

TEST(DivisorCount, SieveMatchesTrialDivision) {
  const auto d = divisor_count_table(2000);
  EXPECT_EQ(d[0], 0u);
  for (std::uint64_t n = 1; n <= 2000; ++n) ASSERT_EQ(d[n], divisor_count(n)) << n;
}

// mpmath-side pentagonal product, tests/oracles/oracles.txt
TEST(Tau, FrozenOracle) {
  const auto t = ramanujan_tau(10000);
  const std::pair<std::size_t, const char*> want[] = {
      {1, "1"},
      {2, "-24"},
      {3, "252"},
      {10, "-115920"},
      {100, "37534859200"},
      {1000, "-30328412970240000"},
      {4096, "-71957818786545926144"},
      {9973, "-808737643658836893778"},
      {10000, "-482606811957501440000"}};
  for (auto [n, s] : want) EXPECT_EQ(t[n - 1], mpz_class(s)) << "tau(" << n << ")";
}

TEST(Tau, MultiplicativeAndHecke) {
  const auto t = ramanujan_tau(3000);
  auto tau = [&](std::size_t n) { return t[n - 1]; };
  for (std::size_t m = 2; m <= 50; ++m)
    for (std::size_t n = 2; m * n <= 3000; ++n)
      if (std::gcd(m, n) == 1) ASSERT_EQ(tau(m * n), tau(m) * tau(n)) << m << " " << n;
  for (std::size_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u}) {
    mpz_class p11;
    mpz_ui_pow_ui(p11.get_mpz_t(), p, 11);
    EXPECT_EQ(tau(p * p), tau(p) * tau(p) - p11) << p;
  }
}

TEST(Tau, JacobiCubeMatchesEulerProduct) {
  const auto e = euler_product_series(300);
  const auto j = jacobi_cube_series(300);
  ASSERT_EQ(e.size(), j.size());
  // e³ by schoolbook multiplication
  std::vector<mpz_class> sq(e.size()), cube(e.size());
  for (std::size_t a = 0; a < e.size(); ++a)
    for (std::size_t b = 0; a + b < e.size(); ++b) sq[a + b] += e[a] * e[b];
  for (std::size_t a = 0; a < e.size(); ++a)
    for (std::size_t b = 0; a + b < e.size(); ++b) cube[a + b] += sq[a] * e[b];
  for (std::size_t k = 0; k < e.size(); ++k) ASSERT_EQ(cube[k], j[k]) << k;
}

TEST(Tau, CachedTableAndLimit) {
  const auto a = tau_table(500);
  ASSERT_GE(a->size(), 500u);
  EXPECT_EQ((*a)[1], mpz_class(-24));
  const std::size_t old = tau_limit();
  set_tau_limit(1000);
  EXPECT_THROW(ramanujan_tau(1001), ResourceLimitError);
  set_tau_limit(old);
  EXPECT_THROW(ramanujan_tau(0), PreconditionError);
}

TEST(ModInverse, Examples) {
  EXPECT_EQ(mod_inverse(3, 7), 5);
  EXPECT_EQ(mod_inverse(-3, 7), 2);
  for (std::int64_t c = 2; c < 200; ++c)
    for (std::int64_t a = 1; a < c; ++a) {
      if (std::gcd(a, c) != 1) continue;
      const auto x = mod_inverse(a, c);
      ASSERT_GE(x, 1);
      ASSERT_LE(x, c - 1);
      ASSERT_EQ(a * x % c, 1);
    }
  EXPECT_THROW(mod_inverse(4, 6), PreconditionError);
  EXPECT_THROW(mod_inverse(1, 0), PreconditionError);
}

TEST(Kloosterman, FrozenOracle) {
  EXPECT_NEAR(kloosterman_sum({1, 1, 2}), 1.0, 1e-14);
  EXPECT_NEAR(kloosterman_sum({1, 1, 7}), 2.0489173395223053, 1e-13);
  EXPECT_NEAR(kloosterman_sum({3, 5, 7}), 2.0489173395223053, 1e-13);
  EXPECT_NEAR(kloosterman_sum({2, 3, 12}), 0.0, 1e-12);
  EXPECT_NEAR(kloosterman_sum({5, 7, 97}), -14.221826944173193, 1e-12);
  EXPECT_NEAR(kloosterman_sum({1, 1, 1000}), 0.0, 1e-11);
  EXPECT_NEAR(kloosterman_sum({0, 4, 30}), 1.0, 1e-12);
  EXPECT_NEAR(kloosterman_sum({5, 9, 1}), 1.0, 1e-15);
  EXPECT_THROW(kloosterman_sum({1, 1, 0}), PreconditionError);
}

TEST(Kloosterman, SymmetriesAndModulusTable) {
  for (std::int64_t c : {9, 12, 30, 64, 101}) {
    const KloostermanModulus km(c);
    for (std::int64_t a = -3; a < 12; ++a)
      for (std::int64_t b = 0; b < 12; ++b) {
        const double s = kloosterman_sum({a, b, c});
        ASSERT_NEAR(km.sum(a, b), s, 1e-11);
        ASSERT_NEAR(kloosterman_sum({b, a, c}), s, 1e-11);
        ASSERT_NEAR(kloosterman_sum({a + c, b, c}), s, 1e-11);
        if (std::gcd(a, c) == 1) {
          const std::int64_t ab = ((a * b) % c + c) % c;
          ASSERT_NEAR(kloosterman_sum({1, ab, c}), s, 1e-11);
        }
      }
  }
}

TEST(Kloosterman, WeilBoundSmallPrimes) {
  for (auto p : primes_up_to(200)) {
    const KloostermanModulus km(p);
    for (std::int64_t a = 1; a < p; ++a)
      for (std::int64_t b = 1; b < p; ++b) ASSERT_LE(std::abs(km.sum(a, b)), 2 * std::sqrt(double(p)) + 1e-9);
  }
}

TEST(Primes, Basics) {
  EXPECT_EQ(primes_up_to(100).size(), 25u);
  EXPECT_EQ(primes_up_to(10000).size(), 1229u);
  EXPECT_TRUE(is_prime(9973));
  EXPECT_FALSE(is_prime(9977));
  EXPECT_FALSE(is_prime(1));
  EXPECT_EQ(euler_phi(36), 12u);
  EXPECT_EQ(euler_phi(97), 96u);
  EXPECT_EQ(gcd(-12, 18), 6);
  EXPECT_EQ(gcd(0, 5), 5);
}
