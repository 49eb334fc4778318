#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "heckelab/arith.hpp"
#include "oracles.hpp"

using namespace heckelab;
using arith::FactoredInt;

TEST_CASE("factorize examples and invariants") {
  CHECK(arith::factorize(1).factors.empty());
  CHECK(arith::factorize(486).factors ==
        std::vector<std::pair<std::uint64_t, unsigned>>{{2, 1}, {3, 5}});
  CHECK(arith::factorize(12).factors ==
        std::vector<std::pair<std::uint64_t, unsigned>>{{2, 2}, {3, 1}});
  CHECK_THROWS_AS(arith::factorize(0), error);

  for (std::uint64_t n = 1; n <= 5000; ++n) {
    FactoredInt f = arith::factorize(n);
    CHECK(f.factors == oracles::naive_factor(n));
    std::uint64_t prod = 1;
    std::uint64_t prev_prime = 0;
    for (auto [p, e] : f.factors) {
      CHECK(p > prev_prime);
      CHECK(e >= 1);
      prev_prime = p;
      for (unsigned i = 0; i < e; ++i) prod *= p;
    }
    CHECK(prod == n);
  }
}

TEST_CASE("factorize respects the sieve bound") {
  CHECK_THROWS_AS(arith::factorize(101, 10), resource_error);  // 101 > 10^2
  CHECK(arith::factorize(97, 10).factors ==
        std::vector<std::pair<std::uint64_t, unsigned>>{{97, 1}});
}

TEST_CASE("sigma_k examples") {
  CHECK(arith::sigma(arith::factorize(5)) == 6);
  CHECK(arith::sigma(arith::factorize(1)) == 1);
  CHECK(arith::sigma(arith::factorize(12)) == oracles::divisor_power_sum(12, 1));
  CHECK(arith::sigma(arith::factorize(12)) == 28);
  for (std::uint64_t n = 1; n <= 300; ++n)
    for (unsigned k = 0; k <= 4; ++k)
      CHECK(arith::sigma_k(arith::factorize(n), k) == oracles::divisor_power_sum(n, k));
}

TEST_CASE("euler_phi and dedekind_psi examples") {
  CHECK(arith::euler_phi(arith::factorize(1)) == 1);
  CHECK(arith::euler_phi(arith::factorize(7)) == oracles::count_units(7));
  CHECK(arith::euler_phi(arith::factorize(7)) == 6);
  CHECK(arith::euler_phi(arith::factorize(12)) == oracles::count_units(12));
  CHECK(arith::euler_phi(arith::factorize(12)) == 4);

  CHECK(arith::dedekind_psi(arith::factorize(1)) == 1);
  CHECK(arith::dedekind_psi(arith::factorize(2)) == 3);
  CHECK(arith::dedekind_psi(arith::factorize(12)) == 24);  // psi(4)*psi(3) = 6*4
}

TEST_CASE("multiplicativity of sigma, phi, psi on coprime pairs") {
  for (std::uint64_t a = 1; a <= 1000; ++a) {
    for (std::uint64_t b = a; b <= 1000; ++b) {
      if (std::gcd(a, b) != 1) continue;
      FactoredInt fa = arith::factorize(a), fb = arith::factorize(b), fab = arith::factorize(a * b);
      CHECK(arith::sigma(fab) == arith::sigma(fa) * arith::sigma(fb));
      CHECK(arith::euler_phi(fab) == arith::euler_phi(fa) * arith::euler_phi(fb));
      CHECK(arith::dedekind_psi(fab) == arith::dedekind_psi(fa) * arith::dedekind_psi(fb));
    }
  }
}

TEST_CASE("phi <= psi and phi*psi <= n^2") {
  for (std::uint64_t n = 1; n <= 1000; ++n) {
    FactoredInt f = arith::factorize(n);
    std::uint64_t phi = arith::euler_phi(f), psi = arith::dedekind_psi(f);
    CHECK(phi <= psi);
    CHECK(phi * psi <= n * n);
  }
}

TEST_CASE("sigma mod 3 predicate") {
  CHECK(arith::sigma_nonzero_mod3(arith::factorize(1)));
  CHECK(arith::sigma_nonzero_mod3(arith::factorize(4)));   // sigma(4) = 7
  CHECK(!arith::sigma_nonzero_mod3(arith::factorize(2)));  // sigma(2) = 3
  CHECK_THROWS_AS(arith::sigma_nonzero_mod3(arith::factorize(6)), error);

  for (std::uint64_t n = 1; n <= 10000; ++n) {
    if (n % 3 == 0) continue;
    bool direct = oracles::divisor_sum_u64(n) % 3 != 0;
    CHECK(arith::sigma_nonzero_mod3(arith::factorize(n)) == direct);
  }
}

TEST_CASE("sigma mod 2/4/8 class") {
  auto c9 = arith::sigma_mod2_class(arith::factorize(9));  // sigma = 13
  CHECK(c9.nonzero_mod2);
  CHECK(c9.nonzero_mod4);
  CHECK(c9.nonzero_mod8);

  auto c5 = arith::sigma_mod2_class(arith::factorize(5));  // sigma = 6
  CHECK(!c5.nonzero_mod2);
  CHECK(c5.nonzero_mod4);
  CHECK(c5.nonzero_mod8);

  // sigma(3) = 4: zero mod 2 and mod 4, nonzero mod 8
  auto c3 = arith::sigma_mod2_class(arith::factorize(3));
  CHECK(!c3.nonzero_mod2);
  CHECK(!c3.nonzero_mod4);
  CHECK(c3.nonzero_mod8);

  CHECK_THROWS_AS(arith::sigma_mod2_class(arith::factorize(4)), error);

  for (std::uint64_t n = 1; n <= 10000; n += 2) {
    std::uint64_t s = oracles::divisor_sum_u64(n);
    auto c = arith::sigma_mod2_class(arith::factorize(n));
    CHECK(c.nonzero_mod2 == (s % 2 != 0));
    CHECK(c.nonzero_mod4 == (s % 4 != 0));
    CHECK(c.nonzero_mod8 == (s % 8 != 0));
  }
}

TEST_CASE("implication chain mod2 => mod4 => mod8") {
  for (std::uint64_t n = 1; n <= 2001; n += 2) {
    auto c = arith::sigma_mod2_class(arith::factorize(n));
    if (c.nonzero_mod2) CHECK(c.nonzero_mod4);
    if (c.nonzero_mod4) CHECK(c.nonzero_mod8);
  }
}
