#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eisen/error.hpp"
#include "eisen/kerneldim.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <array>
#include <set>

using namespace eisen;

namespace {

std::shared_ptr<const ModularSymbolSpace> space_of(std::int64_t n) { return build_space(factor_squarefree(n)); }

modp::Mat times(const modp::Mat& a, const modp::Mat& b, std::uint32_t ell) {
  modp::Mat out(a.size(), modp::Vec(b.empty() ? 0 : b[0].size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < b.size(); ++k) {
      for (std::size_t j = 0; j < out[i].size(); ++j) {
        out[i][j] = static_cast<std::uint32_t>((out[i][j] + std::uint64_t{a[i][k]} * b[k][j]) % ell);
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("mod-ell spaces") {
  CHECK(build_mod_ell(space_of(11), 5)->basis_dim() == 2);
  CHECK(static_cast<std::int64_t>(build_mod_ell(space_of(779), 5)->basis_dim()) == 2 * oracle::genus_x0(779));
  CHECK_THROWS_AS(build_mod_ell(space_of(11), 3), BadEll);
  CHECK_THROWS_AS(build_mod_ell(space_of(55), 5), BadEll);
  CHECK_THROWS_AS(build_mod_ell(space_of(11), 9), BadEll);
}

TEST_CASE("upstairs T_r agrees with the full matrix") {
  for (std::int64_t n : {35, 77, 143}) {
    const auto ms = build_mod_ell(space_of(n), 17);
    const std::size_t dim = ms->basis_dim();
    modp::Mat probe(3, modp::Vec(dim));
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < dim; ++j) probe[i][j] = static_cast<std::uint32_t>((7 * i + 3 * j + i * j) % 17);
    }
    for (std::int64_t r : {2, 3, 17, 19}) {
      if (n % r == 0) continue;
      const auto& full = ms->operator_matrix({OperatorLabel::Kind::T, r});
      CHECK(ms->apply_T(probe, r) == times(probe, full, 17));
    }
  }
}

TEST_CASE("dimensions at 11, 779 and 559") {
  const auto n11 = factor_squarefree(11);
  CHECK(dim_kernel(*build_mod_ell(space_of(11), 5), IdealSpec::eisenstein(n11, 11)) == 2);
  const auto n779 = factor_squarefree(779);
  CHECK(dim_kernel(*build_mod_ell(space_of(779), 5), IdealSpec::eisenstein(n779, 41)) == 3);
  const auto n559 = factor_squarefree(559);
  CHECK(dim_kernel(*build_mod_ell(space_of(559), 7), IdealSpec::eisenstein(n559, 43)) == 3);
}

TEST_CASE("dimension reports") {
  const auto a = dim_report(779, 41, 5);
  CHECK(a.dim == 3);
  CHECK(a.prediction.interval == Interval{2, 3});
  CHECK(a.verdict);
  CHECK(a.ramification_inferred);
  CHECK(a.prediction.ramification_prime == 19);
  CHECK(a.ramified);
  const auto b = dim_report(143, 143, 5);
  CHECK(b.dim == 2);
  CHECK(b.prediction.interval == Interval{2, 2});
  const auto c = dim_report(11, 11, 5);
  CHECK(c.dim == 2);
  CHECK(c.prediction.interval == Interval{2, 2});
  CHECK(c.verdict);
  CHECK_FALSE(c.ramification_inferred);
  CHECK_THROWS_AS(dim_report(779, 41, 11), NotMaximal);
  CHECK_FALSE(c.trace.empty());
  CHECK(c.trace.front().generator == "U_11 - 1");
}

TEST_CASE("dimension theorems over a scan") {
  for (std::int64_t n = 2; n <= 160; ++n) {
    if (!is_squarefree(n)) continue;
    const auto lv = factor_squarefree(n);
    auto space = space_of(n);
    for (std::int64_t ell : {5, 7, 11, 13}) {
      if (n % ell == 0) continue;
      std::set<std::int64_t> seen;
      for (auto m : lv.divisors()) {
        if (m == 1) continue;
        const auto d = canonicalize(n, m, ell);
        if (!is_maximal(d) || !seen.insert(d.m).second) continue;
        const auto inv = invariants(d);
        const auto pred = refine_prediction(d, inv);
        const auto dim = static_cast<int>(dim_kernel(ModEllSpace(space, ell), IdealSpec::eisenstein(lv, d.m)));
        CAPTURE(n);
        CAPTURE(d.m);
        CAPTURE(ell);
        CHECK(dim >= 2);
        CHECK(dim >= std::max(1 + inv.varpi0, 2));
        CHECK(dim <= 1 + inv.varpi0 + inv.varpi_ell_SN);
        if (inv.varpi_ell_SN == 1) CHECK(dim == 2);
        if (lv.num_primes() == inv.s0 + 1 && phi_sf(lv) % ell != 0) CHECK(dim == 2);
        CHECK(pred.interval.contains(dim));
      }
    }
  }
}

TEST_CASE("kernel dimension is stable in the bound") {
  for (auto [n, m, ell] : std::vector<std::array<std::int64_t, 3>>{{779, 41, 5}, {559, 43, 7}, {143, 143, 5}, {209, 11, 5}}) {
    const auto lv = factor_squarefree(n);
    ModEllSpace ms(space_of(n), ell);
    const auto spec = IdealSpec::eisenstein(lv, m);
    CHECK(dim_kernel(ms, spec) == dim_kernel(ms, spec, nullptr, sturm_bound(lv) + 40));
  }
}
