#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eisen/eisenstein.hpp"
#include "eisen/error.hpp"

#include <algorithm>
#include <map>

using namespace eisen;

namespace {

const OperatorLabel T(std::int64_t p) { return {OperatorLabel::Kind::T, p}; }
const OperatorLabel U(std::int64_t p) { return {OperatorLabel::Kind::U, p}; }

// E_{M,N} written as sum_d c_d e(dz). The constant term at 0 of e(dz) is
// a_0(e)/d^2, which gives the value there without the closed form.
Rational constant_at_zero_by_expansion(std::int64_t m, const SquarefreeLevel& n) {
  std::map<std::int64_t, Rational> comb{{1, Rational(1)}};
  for (auto p : n.primes()) {
    const Rational f = m % p == 0 ? Rational(static_cast<long>(p)) : Rational(1);
    std::map<std::int64_t, Rational> next;
    for (const auto& [d, c] : comb) {
      next[d] += c;
      next[d * p] -= c * f;
    }
    comb = next;
  }
  Rational total;
  for (const auto& [d, c] : comb) total += c / Rational(static_cast<long>(d * d));
  return total * Rational(BigInt(-1), BigInt(24));
}

}  // namespace

TEST_CASE("e series coefficients") {
  const auto e = e_series(10);
  CHECK(e[0] == Rational(BigInt(-1), BigInt(24)));
  CHECK(e[1] == 1);
  CHECK(e[4] == 7);
  CHECK(e[6] == 12);
  CHECK(e.prec() == 10);
  CHECK_THROWS_AS(e_series(0), BadInput);
}

TEST_CASE("raising operators") {
  const auto e = e_series(50);
  const auto plus = raise_plus(e, 5);
  const auto minus = raise_minus(e, 5);
  CHECK(plus[0] == e[0] * Rational(-4));
  CHECK(minus[0] == 0);
  for (std::size_t n = 1; n < 50; ++n) {
    if (n % 5 != 0) CHECK(minus[n] == e[n]);
  }
  CHECK(raise_plus(raise_minus(e, 3), 7).agrees_with(raise_minus(raise_plus(e, 7), 3)));
  CHECK(raise_plus(raise_minus(e, 2), 3).agrees_with(raise_minus(raise_plus(e, 3), 2)));
}

TEST_CASE("E_{M,N} examples") {
  const auto n11 = factor_squarefree(11);
  CHECK(E_series(11, n11, 5)[0] == Rational(BigInt(5), BigInt(12)));
  CHECK(E_series(5, factor_squarefree(35), 5)[0] == 0);
  CHECK(const_at_zero(11, n11) == Rational(BigInt(-10), BigInt(24 * 11)));
  CHECK(const_at_zero(5, factor_squarefree(35)) == Rational(BigInt(-4 * 6 * 8), BigInt(24 * 35 * 7)));
  CHECK(const_at_zero(1, factor_squarefree(1)) == Rational(BigInt(-1), BigInt(24)));
  CHECK(E_series(1, n11, 5).warning.size() > 0);
  CHECK(E_series(11, n11, 5).warning.empty());
  CHECK_THROWS_AS(E_series(3, n11, 5), BadDivisor);
}

TEST_CASE("E_{M,N} are Hecke eigenforms with the right constant terms") {
  for (std::int64_t nv = 2; nv <= 210; ++nv) {
    if (!is_squarefree(nv)) continue;
    const auto n = factor_squarefree(nv);
    const std::size_t prec = static_cast<std::size_t>(sturm_bound(n) + 2);
    for (auto m : n.divisors()) {
      if (m == 1) continue;
      CAPTURE(nv);
      CAPTURE(m);
      // Enough input precision that every operator output still reaches
      // the working precision.
      const auto stretch = static_cast<std::size_t>(std::max<std::int64_t>(13, n.primes().back()));
      const auto g = E_series(m, n, stretch * prec);
      CHECK(g[1] == 1);
      for (std::int64_t r : {2, 3, 5, 7, 11, 13}) {
        if (nv % r == 0) continue;
        const auto tg = hecke_on_qexp(g, T(r), n);
        REQUIRE(tg.prec() >= prec);
        CHECK(tg.truncated(prec).agrees_with(g.scaled(Rational(r + 1)).truncated(prec)));
      }
      for (auto p : n.primes()) {
        const auto ug = hecke_on_qexp(g, U(p), n);
        REQUIRE(ug.prec() >= prec);
        const long lambda = m % p == 0 ? 1 : p;
        CHECK(ug.truncated(prec).agrees_with(g.scaled(Rational(lambda)).truncated(prec)));
      }
      const Rational expected_inf = m == nv
          ? Rational(n.num_primes() % 2 == 1 ? phi_sf(n) : BigInt(-phi_sf(n)), BigInt(24))
          : Rational(0);
      CHECK(g[0] == expected_inf);
      CHECK(const_at_infinity(m, n) == g[0]);
      CHECK(const_at_zero(m, n) == constant_at_zero_by_expansion(m, n));
      if (m == nv) {
        const auto g24 = g.scaled(Rational(24));
        for (const auto& c : g24.coeffs()) CHECK(c.is_integer());
      }
    }
  }
}

TEST_CASE("hecke_on_qexp precision and labels") {
  const auto n = factor_squarefree(11);
  const auto g = E_series(11, n, 21);
  CHECK(hecke_on_qexp(g, T(2), n).prec() == 11);
  CHECK(hecke_on_qexp(g, T(3), n).prec() == 7);
  CHECK(hecke_on_qexp(g, U(11), n).prec() == 2);
  CHECK_THROWS_AS(hecke_on_qexp(g, T(11), n), BadLabel);
  CHECK_THROWS_AS(hecke_on_qexp(g, U(3), n), BadLabel);
  CHECK_THROWS_AS(hecke_on_qexp(g, T(4), n), BadLabel);
}
