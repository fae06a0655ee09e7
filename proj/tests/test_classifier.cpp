#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eisen/classifier.hpp"
#include "eisen/error.hpp"
#include "eisen/heckealg.hpp"

#include <set>

using namespace eisen;

TEST_CASE("canonicalize") {
  CHECK(canonicalize(779, 19, 5).m == 779);
  CHECK(canonicalize(779, 41, 5).m == 41);
  CHECK(canonicalize(779, 41, 5).canonical);
  CHECK_THROWS_AS(canonicalize(779, 41, 3), BadInput);
  CHECK_THROWS_AS(canonicalize(779, 41, 3), BadEll);
  CHECK_THROWS_AS(canonicalize(779, 41, 19), BadEll);
  CHECK_THROWS_AS(canonicalize(779, 7, 5), BadInput);
  CHECK_THROWS_AS(canonicalize(779, 1, 5), BadInput);
  CHECK_THROWS_AS(canonicalize(12, 3, 5), NotSquarefree);
  for (std::int64_t n = 2; n <= 300; ++n) {
    if (!is_squarefree(n)) continue;
    const auto lv = factor_squarefree(n);
    for (std::int64_t ell : {5, 7, 11, 13}) {
      if (n % ell == 0) continue;
      for (auto m : lv.divisors()) {
        if (m == 1) continue;
        const auto d = canonicalize(n, m, ell);
        CHECK(canonicalize(n, d.m, ell).m == d.m);
        for (auto p : lv.primes()) {
          if (d.m % p != 0) CHECK(p % ell != 1);
        }
      }
    }
  }
}

TEST_CASE("maximality") {
  CHECK(is_maximal(canonicalize(779, 779, 5)));
  CHECK(is_maximal(canonicalize(779, 41, 5)));
  CHECK_FALSE(is_maximal(canonicalize(15, 15, 7)));
  CHECK_THROWS_AS(invariants(canonicalize(15, 15, 7)), NotMaximal);
}

TEST_CASE("invariants") {
  const auto a = invariants(canonicalize(779, 779, 5));
  CHECK(a.s == 1);
  CHECK(a.s0 == 2);
  CHECK(a.varpi0 == 0);
  CHECK(a.varpi_ell_SN == 2);
  CHECK(a.predicted == Interval{2, 3});
  const auto b = invariants(canonicalize(11, 11, 5));
  CHECK(b.s == 1);
  CHECK(b.s0 == 1);
  CHECK(b.varpi0 == 1);
  CHECK(b.predicted == Interval{2, 3});
  const auto db = canonicalize(11, 11, 5);
  CHECK(refine_prediction(db, b).interval == Interval{2, 2});
  // 11 and 31 are both 1 mod 5
  const auto dc = canonicalize(341, 341, 5);
  const auto c = invariants(dc);
  CHECK(c.varpi0 == 2);
  CHECK(c.predicted.lo == 3);
  CHECK(refine_prediction(dc, c).interval == Interval{4, 5});
  for (std::int64_t n = 2; n <= 300; ++n) {
    if (!is_squarefree(n)) continue;
    const auto lv = factor_squarefree(n);
    for (std::int64_t ell : {5, 7, 11, 13}) {
      if (n % ell == 0) continue;
      for (auto m : lv.divisors()) {
        if (m == 1) continue;
        const auto d = canonicalize(n, m, ell);
        if (!is_maximal(d)) continue;
        const auto r = invariants(d);
        CHECK(0 <= r.s);
        CHECK(r.s <= r.s0);
        CHECK(r.s0 <= lv.num_primes());
        CHECK((r.varpi0 == 0 || r.varpi0 == r.s));
        const auto pred = refine_prediction(d, r);
        CHECK(pred.interval.lo >= r.predicted.lo);
        CHECK(pred.interval.hi <= r.predicted.hi);
      }
    }
  }
}

TEST_CASE("pq decision tree") {
  // M = p with p not 1 and q = -1: 7 = 2, 19 = -1 mod 5
  const auto d1 = canonicalize(133, 7, 5);
  CHECK(refine_prediction(d1, invariants(d1)).interval == Interval{2, 2});
  const auto d2 = canonicalize(779, 41, 5);
  const auto p2 = refine_prediction(d2, invariants(d2));
  CHECK(p2.interval == Interval{2, 3});
  CHECK(p2.ramification_prime == 19);
  // 41 = 1, 29 = -1 mod 5 and 29 is not a fifth power mod 41
  CHECK_FALSE(is_ell_th_power_mod(29, 41, 5));
  const auto d3 = canonicalize(41 * 29, 41 * 29, 5);
  CHECK(refine_prediction(d3, invariants(d3)).interval == Interval{2, 2});
  // 11 = 1, 19 = -1 mod 5; 19 = 8 mod 11 and 8^2 = 9 != 1
  CHECK_FALSE(is_ell_th_power_mod(19, 11, 5));
  // 61 = 1, 79 = -1 mod 5
  const bool fifth = is_ell_th_power_mod(79, 61, 5);
  const auto d4 = canonicalize(61 * 79, 61 * 79, 5);
  CHECK(refine_prediction(d4, invariants(d4)).interval == (fifth ? Interval{2, 3} : Interval{2, 2}));
}

TEST_CASE("power residues against enumeration") {
  for (auto p : primes_up_to(200)) {
    for (std::int64_t ell : {5, 7, 11, 13}) {
      if ((p - 1) % ell != 0) continue;
      std::set<std::int64_t> powers;
      for (std::int64_t x = 1; x < p; ++x) powers.insert(pow_mod(x, ell, p));
      for (std::int64_t a = 1; a < p; ++a) {
        CAPTURE(p);
        CAPTURE(a);
        CHECK(is_ell_th_power_mod(a, p, ell) == (powers.count(a) > 0));
      }
    }
  }
  CHECK_THROWS_AS(is_ell_th_power_mod(2, 13, 5), BadInput);
}

TEST_CASE("maximality agrees with the index") {
  for (std::int64_t n = 2; n <= 150; ++n) {
    if (!is_squarefree(n)) continue;
    const auto lv = factor_squarefree(n);
    const auto lat = build_hecke_lattice(build_space(lv), sturm_bound(lv));
    for (auto m : lv.divisors()) {
      if (m == 1) continue;
      const auto idx = ideal_index(*lat, IdealSpec::eisenstein(lv, m));
      for (std::int64_t ell : {5, 7, 11, 13}) {
        if (n % ell == 0) continue;
        const auto d = canonicalize(n, m, ell);
        if (d.m != m) continue;
        CAPTURE(n);
        CAPTURE(m);
        CAPTURE(ell);
        CHECK(is_maximal(d) == (valuation(idx.n, ell) > 0));
      }
    }
  }
}

TEST_CASE("reference tables") {
  const auto lv = factor_squarefree(779);
  const auto t = reference_tables(41, lv, 5);
  CHECK(t.at(0).order == 40);
  CHECK(t.at(0).up_to_2_3);
  CHECK(t.at(2).order == 40 * 20);
  CHECK(t.at(4).order == 5);
  CHECK(reference_tables(19, lv, 11).at(4).order == 0);
  CHECK_THROWS_AS(reference_tables(7, lv, 5), BadPrime);
}
