#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eisen/error.hpp"
#include "eisen/numtheory.hpp"
#include "oracles.hpp"

#include <random>

using namespace eisen;

TEST_CASE("square-free factorization") {
  const auto one = factor_squarefree(1);
  CHECK(one.value() == 1);
  CHECK(one.primes().empty());
  const auto n = factor_squarefree(779);
  CHECK(n.primes() == std::vector<std::int64_t>{19, 41});
  CHECK(n.divisors() == std::vector<std::int64_t>{1, 19, 41, 779});
  CHECK_THROWS_AS(factor_squarefree(12), NotSquarefree);
  CHECK_THROWS_AS(factor_squarefree(0), BadInput);
  for (std::int64_t k = 1; k < 2000; ++k) {
    if (!is_squarefree(k)) continue;
    CHECK(factor_squarefree(k).primes() == oracle::prime_factors(k));
  }
}

TEST_CASE("phi and psi") {
  CHECK(phi_sf(factor_squarefree(1)) == 1);
  CHECK(phi_sf(factor_squarefree(11)) == 10);
  CHECK(phi_sf(factor_squarefree(779)) == 720);
  CHECK(psi_sf(factor_squarefree(1)) == 1);
  CHECK(psi_sf(factor_squarefree(11)) == 12);
  CHECK(psi_sf(factor_squarefree(779)) == 840);
  // Exhaustive up to 10^6 would be slow in a debug build; a stride covers
  // every prime-count pattern that occurs.
  for (std::int64_t k = 1; k <= 1000000; k += 997) {
    if (!is_squarefree(k)) continue;
    const auto lv = factor_squarefree(k);
    BigInt prod = 1;
    for (auto p : oracle::prime_factors(k)) prod *= BigInt(static_cast<long>(p * p - 1));
    CHECK(phi_sf(lv) * psi_sf(lv) == prod);
  }
}

TEST_CASE("numerators") {
  CHECK(numerator_of(Rational(BigInt(10), BigInt(12))) == 5);
  CHECK(numerator_of(Rational(BigInt(0), BigInt(7))) == 0);
  CHECK(numerator_of(Rational(BigInt(40), BigInt(3))) == 40);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    const long a = static_cast<long>(rng() % 100000) - 50000;
    const long b = static_cast<long>(rng() % 9999) + 1;
    const Rational r{BigInt(a), BigInt(b)};
    CHECK(numerator_of(r) * b == BigInt(a) * r.denominator());
    CHECK(gcd(r.numerator(), r.denominator()) == 1);
    CHECK(r.denominator() > 0);
  }
}

TEST_CASE("varpi") {
  CHECK(varpi_ell({41, 19}, 5) == 2);
  CHECK(varpi_ell({}, 5) == 0);
  CHECK(varpi_ell({43, 13}, 7) == 2);
  const std::vector<std::int64_t> ps = primes_up_to(200);
  for (std::int64_t ell : {5, 7, 11}) {
    std::set<std::int64_t> s;
    int last = 0;
    for (auto p : ps) {
      s.insert(p);
      const int v = varpi_ell(s, ell);
      CHECK(v >= last);
      last = v;
    }
  }
}

TEST_CASE("sturm bound") {
  CHECK(sturm_bound(factor_squarefree(11)) == 2);
  CHECK(sturm_bound(factor_squarefree(779)) == 140);
  CHECK(sturm_bound(factor_squarefree(1)) == 1);
  for (std::int64_t n = 1; n <= 300; ++n) {
    if (!is_squarefree(n)) continue;
    const auto b = sturm_bound(factor_squarefree(n));
    CHECK(b >= 1);
    for (std::int64_t k = 2; n * k <= 3000; ++k) {
      if (is_squarefree(n * k)) CHECK(b <= sturm_bound(factor_squarefree(n * k)));
    }
  }
}

TEST_CASE("strip primes and valuations") {
  CHECK(strip_primes(40, {2}) == 5);
  CHECK(strip_primes(72, {2, 3}) == 1);
  CHECK(strip_primes(7, {2, 3}) == 7);
  CHECK(valuation(BigInt(250), 5) == 3);
  CHECK(valuation(BigInt(-12), 2) == 2);
  CHECK(sigma1(6) == 12);
  CHECK(pow_mod(3, 100, 101) == 1);
  CHECK(inverse_mod(3, 11) * 3 % 11 == 1);
}
