#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eisen/error.hpp"
#include "eisen/modsym.hpp"
#include "oracles.hpp"

using namespace eisen;

TEST_CASE("cuspidal dimension matches the genus formula") {
  for (std::int64_t n = 1; n <= 300; ++n) {
    if (!is_squarefree(n)) continue;
    auto space = build_space(factor_squarefree(n));
    CAPTURE(n);
    CHECK(space->cuspidal_dimension() == static_cast<std::size_t>(2 * oracle::genus_x0(n)));
    CHECK(space->dimension() == space->cuspidal_dimension() + space->num_cusps() - 1);
  }
}

namespace {

ZMatrix scalar(std::size_t n, long c) { return ZMatrix::identity(n).shifted(BigInt(c - 1)); }

std::vector<std::int64_t> primes_dividing(std::int64_t n) { return factor_squarefree(n).primes(); }

}  // namespace

TEST_CASE("manin relations vanish in the quotient") {
  for (std::int64_t n : {1, 2, 6, 11, 30, 77, 210}) {
    auto space = build_space(factor_squarefree(n));
    const auto& p1 = space->p1();
    const std::size_t psi = p1.size();
    for (std::size_t i = 0; i < psi; ++i) {
      const auto x = p1[i];
      std::vector<std::int64_t> two(psi), three(psi);
      two[i] += 1;
      two[static_cast<std::size_t>(p1.index(x.d, -x.c))] += 1;
      three[i] += 1;
      three[static_cast<std::size_t>(p1.index(x.d, -x.c - x.d))] += 1;
      three[static_cast<std::size_t>(p1.index(-x.c - x.d, x.c))] += 1;
      for (const auto& v : {two, three}) {
        for (auto c : space->push_down(v)) REQUIRE(c == 0);
      }
    }
  }
}

TEST_CASE("p1 normalization") {
  const auto n11 = factor_squarefree(11);
  CHECK(p1_normalize(0, 5, n11) == P1Element{0, 1});
  CHECK(p1_normalize(1, 0, n11) == P1Element{1, 0});
  CHECK_THROWS_AS(p1_normalize(2, 4, factor_squarefree(6)), NotProjectivePoint);
  for (std::int64_t n : {6, 30, 35}) {
    const auto level = factor_squarefree(n);
    P1List list(level);
    CHECK(list.size() == static_cast<std::size_t>(psi_sf(level).get_si()));
    for (std::int64_t c = 0; c < n; ++c) {
      for (std::int64_t d = 0; d < n; ++d) {
        if (gcd64(gcd64(c, d), n) != 1) {
          CHECK(list.index(c, d) == -1);
          continue;
        }
        const auto canon = p1_normalize(c, d, level);
        REQUIRE(list[static_cast<std::size_t>(list.index(c, d))] == canon);
        // smallest among unit multiples
        for (std::int64_t u = 1; u < n; ++u) {
          if (gcd64(u, n) != 1) continue;
          const P1Element m{u * c % n, u * d % n};
          CHECK(!(m < canon));
          CHECK(p1_normalize(m.c, m.d, level) == canon);
        }
      }
    }
  }
}

TEST_CASE("X_0(11) against point counts") {
  auto space = build_space(factor_squarefree(11));
  REQUIRE(space->cuspidal_dimension() == 2);
  const long a2 = oracle::x011_trace(2), a3 = oracle::x011_trace(3), a11 = oracle::x011_trace(11);
  CHECK(a2 == -2);
  CHECK(a3 == -1);
  CHECK(a11 == 1);
  for (auto route : {HeckeRoute::Coset, HeckeRoute::Heilbronn}) {
    CHECK(space->cuspidal_matrix(OperatorLabel::T(2), route) == scalar(2, a2));
    CHECK(space->cuspidal_matrix(OperatorLabel::T(3), route) == scalar(2, a3));
    CHECK(space->cuspidal_matrix(OperatorLabel::U(11), route) == scalar(2, a11));
  }
  for (std::int64_t p : {5, 7, 13, 17, 19, 23}) {
    CAPTURE(p);
    CHECK(space->cuspidal_matrix(OperatorLabel::T(p), HeckeRoute::Heilbronn) ==
          scalar(2, oracle::x011_trace(p)));
  }
}

TEST_CASE("coset and Heilbronn routes agree") {
  for (std::int64_t n : {11, 15, 26, 35, 42, 143}) {
    auto space = build_space(factor_squarefree(n));
    CAPTURE(n);
    for (std::int64_t p : {2, 3, 5, 7, 11, 13}) {
      if (n % p == 0) {
        CHECK(space->hecke_U(p, HeckeRoute::Coset).matrix == space->hecke_U(p, HeckeRoute::Heilbronn).matrix);
      } else {
        CHECK(space->hecke_T(p, HeckeRoute::Coset).matrix == space->hecke_T(p, HeckeRoute::Heilbronn).matrix);
      }
    }
  }
}

TEST_CASE("operators commute and Atkin-Lehner is an involution") {
  for (std::int64_t n : {15, 21, 30, 33, 35, 77, 143}) {
    auto space = build_space(factor_squarefree(n));
    CAPTURE(n);
    std::vector<ZMatrix> ops;
    for (std::int64_t p : {2, 3, 5, 7, 11, 13}) {
      if (n % p == 0) {
        ops.push_back(space->cuspidal_matrix(OperatorLabel::U(p), HeckeRoute::Coset));
        const auto w = space->cuspidal_matrix(OperatorLabel::W(p), HeckeRoute::Coset);
        CHECK(w * w == ZMatrix::identity(w.rows()));
        // on the full space as well
        const auto wf = space->atkin_lehner(p).matrix;
        CHECK(wf * wf == ZMatrix::identity(wf.rows()));
      } else {
        ops.push_back(space->cuspidal_matrix(OperatorLabel::T(p), HeckeRoute::Heilbronn));
      }
    }
    for (std::size_t i = 0; i < ops.size(); ++i) {
      for (std::size_t j = i + 1; j < ops.size(); ++j) CHECK(ops[i] * ops[j] == ops[j] * ops[i]);
    }
    // w_q commutes with U_p for p != q
    const auto primes = primes_dividing(n);
    const auto w = space->cuspidal_matrix(OperatorLabel::W(primes[0]), HeckeRoute::Coset);
    const auto u = space->cuspidal_matrix(OperatorLabel::U(primes[1]), HeckeRoute::Coset);
    CHECK(w * u == u * w);
  }
}

namespace {

ZMatrix on_rows(const std::vector<ZVec>& basis, const ZMatrix& m) {
  ZMatrix out(basis.size(), m.cols());
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto r = vec_times(basis[i], m);
    for (std::size_t j = 0; j < m.cols(); ++j) out.at(i, j) = r[j];
  }
  return out;
}

ZMatrix times(ZMatrix m, long c) {
  for (std::size_t i = 0; i < m.rows(); ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) m.at(i, j) *= c;
  }
  return m;
}

}  // namespace

TEST_CASE("degeneracy maps fix the path from 0 to infinity") {
  for (auto [n, p] : std::vector<std::pair<std::int64_t, std::int64_t>>{{11, 2}, {15, 7}, {1, 11}}) {
    auto low = build_space(factor_squarefree(n));
    auto high = build_space(factor_squarefree(n * p));
    const auto path_high = high->manin_trick(QPoint::of(0, 1), QPoint::infinity());
    const auto path_low = low->manin_trick(QPoint::of(0, 1), QPoint::infinity());
    for (auto kind : {DegeneracyKind::Alpha, DegeneracyKind::Beta}) {
      const auto m = degeneracy(*low, *high, p, kind, DegeneracyDirection::Pushforward);
      CHECK(vec_times(path_high, m) == path_low);
    }
    // beta = alpha after w_p, in both directions
    const auto w = high->atkin_lehner(p).matrix;
    CHECK(degeneracy(*low, *high, p, DegeneracyKind::Beta, DegeneracyDirection::Pushforward) ==
          w * degeneracy(*low, *high, p, DegeneracyKind::Alpha, DegeneracyDirection::Pushforward));
    CHECK(degeneracy(*low, *high, p, DegeneracyKind::Beta) == degeneracy(*low, *high, p, DegeneracyKind::Alpha) * w);
  }
  auto s11 = build_space(factor_squarefree(11));
  auto s33 = build_space(factor_squarefree(33));
  CHECK_THROWS_AS(degeneracy(*s11, *s33, 5, DegeneracyKind::Alpha), LevelMismatch);
  CHECK_THROWS_AS(degeneracy(*s33, *s11, 3, DegeneracyKind::Alpha), LevelMismatch);
}

TEST_CASE("transpose relation through degeneracy maps") {
  for (std::int64_t n : {15, 33, 35}) {
    auto space = build_space(factor_squarefree(n));
    for (auto q : primes_dividing(n)) {
      CAPTURE(n);
      CAPTURE(q);
      auto low = build_space(factor_squarefree(n / q));
      const auto u = space->hecke_U(q).matrix;
      const auto w = space->atkin_lehner(q).matrix;
      const auto alpha_pull = degeneracy(*low, *space, q, DegeneracyKind::Alpha);
      const auto beta_push = degeneracy(*low, *space, q, DegeneracyKind::Beta, DegeneracyDirection::Pushforward);
      // the transpose w U w, plus w, equals beta_* followed by alpha^*
      const auto& basis = space->cuspidal_basis();
      CHECK(on_rows(basis, w * u * w + w) == on_rows(basis, beta_push * alpha_pull));
      // the same statement for U itself, with the roles of alpha and beta swapped
      const auto alpha_push = degeneracy(*low, *space, q, DegeneracyKind::Alpha, DegeneracyDirection::Pushforward);
      const auto beta_pull = degeneracy(*low, *space, q, DegeneracyKind::Beta);
      CHECK(on_rows(basis, u + w) == on_rows(basis, alpha_push * beta_pull));
    }
  }
}

TEST_CASE("quadratic relation on the old subspace") {
  for (auto [n, p] : std::vector<std::pair<std::int64_t, std::int64_t>>{{11, 2}, {11, 3}, {13, 5}, {11, 5}}) {
    CAPTURE(n);
    CAPTURE(p);
    auto low = build_space(factor_squarefree(n));
    auto high = build_space(factor_squarefree(n * p));
    const auto t = low->hecke_T(p).matrix;
    const auto u = high->hecke_U(p).matrix;
    const auto w = high->atkin_lehner(p).matrix;
    for (auto kind : {DegeneracyKind::Alpha, DegeneracyKind::Beta}) {
      const auto d = degeneracy(*low, *high, p, kind);
      for (const auto& up : {u, w * u * w}) {
        // U^2 v - U (T v) + p v = 0, with T acting through the level-N factor
        const auto rel = d * up * up - t * d * up + times(d, p);
        CHECK(on_rows(low->cuspidal_basis(), rel).is_zero());
        CHECK(rel.is_zero());
      }
    }
  }
}

TEST_CASE("manin trick is additive and has the right boundary") {
  auto space = build_space(factor_squarefree(11));
  const auto zero = space->manin_trick(QPoint::of(0, 1), QPoint::of(0, 1));
  CHECK(std::all_of(zero.begin(), zero.end(), [](const BigInt& x) { return x == 0; }));
  const auto b = space->boundary(space->manin_trick(QPoint::of(0, 1), QPoint::infinity()));
  // P_11 - P_1
  CHECK(b[space->cusp_index(11)] == 1);
  CHECK(b[space->cusp_index(1)] == -1);
  for (std::int64_t n : {11, 30, 143}) {
    auto s = build_space(factor_squarefree(n));
    const std::vector<QPoint> pts{QPoint::of(0, 1), QPoint::infinity(), QPoint::of(3, 7), QPoint::of(-5, 13),
                                  QPoint::of(22, 9), QPoint::of(1, n), QPoint::of(2, 3 * n)};
    for (const auto& a : pts) {
      for (const auto& bb : pts) {
        for (const auto& c : pts) {
          auto lhs = s->manin_trick(a, bb);
          const auto rhs = s->manin_trick(bb, c);
          for (std::size_t i = 0; i < lhs.size(); ++i) lhs[i] += rhs[i];
          CHECK(lhs == s->manin_trick(a, c));
        }
      }
    }
  }
}

TEST_CASE("integral cuspidal lattice is saturated") {
  for (std::int64_t n : {11, 30, 77, 143}) {
    auto s = build_space(factor_squarefree(n));
    // the integer kernel of the boundary matrix has the same HNF as the cuspidal basis
    const auto kernel = integer_left_kernel(s->boundary_matrix());
    HnfBuilder a(s->dimension()), b(s->dimension());
    for (const auto& v : kernel) a.insert(v);
    for (const auto& v : s->cuspidal_basis()) b.insert(v);
    CHECK(a.basis() == b.basis());
    CHECK(kernel.size() == s->cuspidal_dimension());
  }
}

TEST_CASE("bad operator labels are rejected") {
  auto s = build_space(factor_squarefree(15));
  CHECK_THROWS_AS(s->hecke_T(3), BadPrime);
  CHECK_THROWS_AS(s->hecke_U(7), BadPrime);
  CHECK_THROWS_AS(s->atkin_lehner(2), BadPrime);
  CHECK_THROWS_AS(s->hecke_T(4), BadPrime);
}

TEST_CASE("Hecke matrices are integral on the cuspidal lattice and U + w kills new forms at prime level") {
  for (std::int64_t n : {11, 23, 37}) {
    auto s = build_space(factor_squarefree(n));
    const auto u = s->cuspidal_matrix(OperatorLabel::U(n), HeckeRoute::Coset);
    const auto w = s->cuspidal_matrix(OperatorLabel::W(n), HeckeRoute::Coset);
    CHECK((u + w).is_zero());
  }
}
