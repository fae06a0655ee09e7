#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eisen/error.hpp"
#include "eisen/heckealg.hpp"
#include "oracles.hpp"

using namespace eisen;

namespace {

std::shared_ptr<const HeckeLattice> lattice_of(std::int64_t n, std::int64_t extra = 0) {
  const auto lv = factor_squarefree(n);
  return build_hecke_lattice(build_space(lv), sturm_bound(lv) + extra);
}

}  // namespace

TEST_CASE("lattice rank is the genus") {
  CHECK(lattice_of(11)->rank() == 1);
  for (std::int64_t n : {11, 23, 37, 42, 65, 97, 143, 210}) {
    CAPTURE(n);
    const auto lat = lattice_of(n);
    CHECK(static_cast<std::int64_t>(lat->rank()) == oracle::genus_x0(n));
    if (lat->rank() > 0) {
      CHECK(lat->contains(lat->flatten(ZMatrix::identity(lat->space().cuspidal_dimension()))));
    }
  }
}

TEST_CASE("lattice rank at 779") {
  const auto lat = lattice_of(779);
  CHECK(static_cast<std::int64_t>(lat->rank()) == oracle::genus_x0(779));
}

TEST_CASE("prime level indices") {
  const auto i11 = ideal_index(*lattice_of(11), IdealSpec::eisenstein(factor_squarefree(11), 11));
  CHECK(i11.n == 5);
  CHECK(i11.elementary_divisors == std::vector<BigInt>{5});
  CHECK(ideal_index(*lattice_of(23), IdealSpec::eisenstein(factor_squarefree(23), 23)).n == 11);
  const auto i143 = ideal_index(*lattice_of(143), IdealSpec::eisenstein(factor_squarefree(143), 143));
  CHECK(valuation(i143.n, 5) == 1);
}

TEST_CASE("index theorem reports") {
  const auto r11 = compare_index_with_theorem(*lattice_of(11), 11);
  CHECK(r11.m == 10);
  CHECK(r11.index.n == 5);
  CHECK(r11.pass());
  const auto r15 = compare_index_with_theorem(*lattice_of(15), 15);
  CHECK(r15.m == 8);
  CHECK(r15.pass());
  for (const auto& c : r15.primes) {
    if (c.y == 3 || c.y == 5 || c.y == 2) CHECK_FALSE(c.in_scope);
  }
  const auto r143 = compare_index_with_theorem(*lattice_of(143), 13);
  CHECK(r143.m == 480);
  for (const auto& c : r143.primes) {
    if (c.y == 5) CHECK(c.computed == 1);
  }
  CHECK(r143.pass());
}

TEST_CASE("index theorem for N <= 150") {
  for (std::int64_t n = 2; n <= 150; ++n) {
    if (!is_squarefree(n)) continue;
    const auto lat = lattice_of(n);
    for (auto m : factor_squarefree(n).divisors()) {
      if (m == 1) continue;
      CAPTURE(n);
      CAPTURE(m);
      CHECK(compare_index_with_theorem(*lat, m).pass());
    }
  }
}

TEST_CASE("new Eisenstein ideal expectations") {
  CHECK(new_ideal_index_expected(5, 7, 5).m == 8);
  CHECK(new_ideal_index_expected(5, 7, 5).valuation == 0);
  CHECK(new_ideal_index_expected(5, 11, 3).m == 4);
  CHECK(new_ideal_index_expected(5, 11, 3).valuation == 0);
  CHECK(new_ideal_index_expected(7, 11, 3).m == 12);
  CHECK(new_ideal_index_expected(7, 11, 3).valuation == 1);
  CHECK(new_ideal_index_expected(7, 11, 11).trivial_case);
  CHECK_THROWS_AS(new_ideal_index_expected(5, 7, 2), BadInput);
  CHECK_THROWS_AS(new_ideal_index_expected(5, 5, 3), BadInput);
}

TEST_CASE("new Eisenstein ideal index for pq <= 150") {
  for (auto p : primes_up_to(75)) {
    for (auto q : primes_up_to(75)) {
      if (p == q || p * q > 150) continue;
      const auto lv = factor_squarefree(p * q);
      const auto lat = lattice_of(p * q);
      const auto idx = ideal_index(*lat, IdealSpec::new_eisenstein(lv, q));
      for (auto y : primes_up_to(50)) {
        if (y == 2) continue;
        CAPTURE(p);
        CAPTURE(q);
        CAPTURE(y);
        CHECK(valuation(idx.n, y) == new_ideal_index_expected(p, q, y).valuation);
      }
    }
  }
}

TEST_CASE("new Eisenstein ideal at N = Mq with composite M") {
  for (std::int64_t n : {70, 105, 165, 195, 231}) {
    const auto lv = factor_squarefree(n);
    const auto lat = lattice_of(n);
    for (auto q : lv.primes()) {
      const auto idx = ideal_index(*lat, IdealSpec::new_eisenstein(lv, q));
      for (auto y : primes_up_to(50)) {
        if (y <= 3 || lv.divisible_by(y)) continue;
        CAPTURE(n);
        CAPTURE(q);
        CAPTURE(y);
        CHECK(valuation(idx.n, y) == valuation(BigInt(static_cast<long>(q + 1)), y));
      }
    }
  }
}

TEST_CASE("index is stable in the bound") {
  for (std::int64_t n : {11, 30, 35, 66, 85, 105, 143}) {
    const auto lv = factor_squarefree(n);
    const auto a = lattice_of(n);
    const auto b = lattice_of(n, 10);
    CHECK(a->rank() == b->rank());
    for (auto m : lv.divisors()) {
      if (m == 1) continue;
      CAPTURE(n);
      CAPTURE(m);
      const auto spec = IdealSpec::eisenstein(lv, m);
      CHECK(ideal_index(*a, spec).n == ideal_index(*b, spec).n);
    }
  }
}

TEST_CASE("ideal spec validation") {
  const auto lv = factor_squarefree(15);
  IdealSpec spec{lv, {{3, LocalEigen::One}}, true};
  CHECK_THROWS_AS(spec.validate(), BadInput);
  CHECK_THROWS_AS(IdealSpec::eisenstein(lv, 7), BadDivisor);
  CHECK_THROWS_AS(IdealSpec::eisenstein(lv, 1), BadDivisor);
  CHECK_THROWS_AS(ideal_index(*lattice_of(11), IdealSpec::eisenstein(lv, 15)), LevelMismatch);
  CHECK(IdealSpec::new_eisenstein(lv, 5).str() == "(U_3 - 1, U_5 + 1, T_r - r - 1)");
}
