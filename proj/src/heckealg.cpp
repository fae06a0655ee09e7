#include "eisen/heckealg.hpp"

#include "eisen/error.hpp"

#include <set>
#include <sstream>

namespace eisen {

std::int64_t eigen_value(LocalEigen e, std::int64_t p) {
  switch (e) {
    case LocalEigen::One: return 1;
    case LocalEigen::Q: return p;
    case LocalEigen::MinusOne: return -1;
  }
  return 0;
}

std::string eigen_str(LocalEigen e) {
  switch (e) {
    case LocalEigen::One: return "1";
    case LocalEigen::Q: return "p";
    case LocalEigen::MinusOne: return "-1";
  }
  return "?";
}

IdealSpec IdealSpec::eisenstein(const SquarefreeLevel& n, std::int64_t m) {
  if (m <= 1 || n.value() % m != 0) {
    throw BadDivisor("M must satisfy 1 < M | N, got M=" + std::to_string(m) + " N=" + std::to_string(n.value()));
  }
  IdealSpec spec{n, {}, true};
  for (auto p : n.primes()) spec.local_eigens[p] = m % p == 0 ? LocalEigen::One : LocalEigen::Q;
  return spec;
}

IdealSpec IdealSpec::new_eisenstein(const SquarefreeLevel& n, std::int64_t q) {
  if (!n.divisible_by(q) || !is_prime(q)) {
    throw BadDivisor(std::to_string(q) + " is not a prime divisor of " + std::to_string(n.value()));
  }
  if (n.num_primes() < 2) throw BadInput("the new Eisenstein ideal needs at least two primes in N");
  IdealSpec spec{n, {}, true};
  for (auto p : n.primes()) spec.local_eigens[p] = p == q ? LocalEigen::MinusOne : LocalEigen::One;
  return spec;
}

void IdealSpec::validate() const {
  if (local_eigens.size() != level.primes().size()) {
    throw BadInput("ideal must assign one U_p eigenvalue to each prime of " + std::to_string(level.value()));
  }
  for (auto p : level.primes()) {
    if (!local_eigens.count(p)) throw BadInput("no U_" + std::to_string(p) + " eigenvalue given");
  }
}

std::string IdealSpec::str() const {
  std::ostringstream os;
  os << "(";
  bool first = true;
  for (const auto& [p, e] : local_eigens) {
    if (!first) os << ", ";
    const auto v = eigen_value(e, p);
    os << "U_" << p << (v < 0 ? " + " : " - ") << (v < 0 ? -v : v);
    first = false;
  }
  if (use_Tr) os << (first ? "" : ", ") << "T_r - r - 1";
  os << ")";
  return os.str();
}

HeckeLattice::HeckeLattice(std::shared_ptr<const ModularSymbolSpace> space, std::int64_t bound)
    : space_(std::move(space)), bound_(bound), dim_(space_->cuspidal_dimension()) {
  if (bound < 1) throw BadInput("degree bound must be positive");
  const auto& lv = space_->level();
  for (auto p : primes_up_to(bound)) {
    const bool bad = lv.divisible_by(p);
    const OperatorLabel op{bad ? OperatorLabel::Kind::U : OperatorLabel::Kind::T, p};
    prime_ops_.emplace(p, space_->cuspidal_matrix(op, bad ? HeckeRoute::Coset : HeckeRoute::Heilbronn));
  }
  for (auto p : lv.primes()) {
    if (!prime_ops_.count(p)) prime_ops_.emplace(p, space_->cuspidal_matrix({OperatorLabel::Kind::U, p}, HeckeRoute::Coset));
  }
  const std::size_t genus = dim_ / 2;
  const auto nb = static_cast<std::size_t>(bound);

  // rows[j][n] = e_{probe j} T_n
  std::vector<std::vector<ZVec>> rows;
  auto add_probe = [&](std::size_t j) {
    std::vector<ZVec> r(nb + 1);
    r[1] = ZVec(dim_);
    r[1][j] = 1;
    for (std::size_t n = 2; n <= nb; ++n) {
      const auto f = factor(static_cast<std::int64_t>(n));
      const auto [p, k] = f.back();
      const auto up = static_cast<std::size_t>(p);
      r[n] = vec_times(r[n / up], prime_ops_.at(p));
      if (!lv.divisible_by(p) && k >= 2) {
        const auto& back = r[n / (up * up)];
        for (std::size_t i = 0; i < dim_; ++i) r[n][i] -= BigInt(static_cast<long>(p)) * back[i];
      }
    }
    probes_.push_back(j);
    rows.push_back(std::move(r));
  };

  for (std::size_t j = 0; j < dim_; ++j) {
    add_probe(j);
    HnfBuilder h(flat_size());
    op_basis_.clear();
    for (std::size_t n = 1; n <= nb; ++n) {
      ZVec flat;
      flat.reserve(flat_size());
      for (const auto& r : rows) flat.insert(flat.end(), r[n].begin(), r[n].end());
      h.insert(flat);
      op_basis_.push_back(std::move(flat));
    }
    hnf_ = std::move(h);
    if (hnf_.rank() >= genus) break;
  }
  hnf_basis_ = hnf_.basis();
}

const ZMatrix& HeckeLattice::prime_operator(std::int64_t p) const {
  auto it = prime_ops_.find(p);
  if (it == prime_ops_.end()) throw BadPrime("no operator for " + std::to_string(p) + " within the lattice bound");
  return it->second;
}

ZVec HeckeLattice::times_shifted(const ZVec& flat, std::int64_t p, std::int64_t lambda) const {
  const auto& a = prime_operator(p);
  ZVec out;
  out.reserve(flat.size());
  const BigInt l(static_cast<long>(lambda));
  for (std::size_t j = 0; j < probes_.size(); ++j) {
    ZVec slice(flat.begin() + static_cast<std::ptrdiff_t>(j * dim_),
               flat.begin() + static_cast<std::ptrdiff_t>((j + 1) * dim_));
    auto img = vec_times(slice, a);
    for (std::size_t i = 0; i < dim_; ++i) img[i] -= l * slice[i];
    out.insert(out.end(), img.begin(), img.end());
  }
  return out;
}

ZVec HeckeLattice::flatten(const ZMatrix& op) const {
  ZVec out;
  out.reserve(flat_size());
  for (auto j : probes_) {
    const auto r = op.row(j);
    out.insert(out.end(), r.begin(), r.end());
  }
  return out;
}

std::shared_ptr<const HeckeLattice> build_hecke_lattice(std::shared_ptr<const ModularSymbolSpace> space,
                                                        std::int64_t bound) {
  return std::make_shared<const HeckeLattice>(std::move(space), bound);
}

IndexResult ideal_index(const HeckeLattice& lattice, const IdealSpec& ideal) {
  ideal.validate();
  if (!(ideal.level == lattice.level())) throw LevelMismatch("ideal and Hecke lattice have different levels");
  IndexResult out;
  out.n = 1;
  const std::size_t g = lattice.rank();
  if (g == 0) return out;

  std::vector<std::pair<std::int64_t, std::int64_t>> gens;
  for (const auto& [p, e] : ideal.local_eigens) gens.emplace_back(p, eigen_value(e, p));
  if (ideal.use_Tr) {
    for (auto r : primes_up_to(lattice.degree_bound())) {
      if (!lattice.level().divisible_by(r)) gens.emplace_back(r, r + 1);
    }
  }
  // I is an ideal, so it is spanned by the generators times a Z-basis of T.
  HnfBuilder sub(g);
  for (const auto& [p, lambda] : gens) {
    for (const auto& b : lattice.hnf_basis()) sub.insert(lattice.coordinates(lattice.times_shifted(b, p, lambda)));
  }
  if (sub.rank() < g) {
    throw RankDeficient("ideal " + ideal.str() + " has rank " + std::to_string(sub.rank()) + " < " +
                        std::to_string(g) + "; the quotient is infinite");
  }
  for (const auto& d : elementary_divisors(sub.basis(), g)) {
    if (d != 1) out.elementary_divisors.push_back(d);
  }
  if (out.elementary_divisors.size() > 1) {
    std::string ds;
    for (const auto& d : out.elementary_divisors) ds += " " + d.get_str();
    throw NotCyclic("quotient by " + ideal.str() + " has elementary divisors" + ds);
  }
  for (const auto& d : out.elementary_divisors) out.n *= d;
  out.factorization = factor_big(out.n);
  return out;
}

bool TheoremReport::pass() const {
  for (const auto& c : primes) {
    if (!c.pass()) return false;
  }
  return true;
}

TheoremReport compare_index_with_theorem(const HeckeLattice& lattice, std::int64_t m, std::int64_t y_max) {
  const auto& n = lattice.level();
  TheoremReport rep;
  rep.index = ideal_index(lattice, IdealSpec::eisenstein(n, m));
  const auto co = factor_squarefree(n.value() / m);
  rep.m = numerator_of(Rational(phi_sf(n) * psi_sf(co), BigInt(3)));

  std::set<std::int64_t> ys;
  for (auto y : primes_up_to(y_max)) ys.insert(y);
  for (const auto& [y, e] : rep.index.factorization) ys.insert(y.get_si());
  for (const auto& [y, e] : factor_big(rep.m)) ys.insert(y.get_si());
  for (auto y : ys) {
    PrimeComparison c;
    c.y = y;
    c.in_scope = y != 2 && !n.divisible_by(y);
    c.computed = valuation(rep.index.n, y);
    c.expected = valuation(rep.m, y);
    rep.primes.push_back(c);
  }
  return rep;
}

NewIndexExpectation new_ideal_index_expected(std::int64_t p, std::int64_t q, std::int64_t y) {
  if (!is_prime(p) || !is_prime(q) || p == q) throw BadInput("p and q must be distinct primes");
  if (!is_prime(y) || y == 2) throw BadInput("y must be an odd prime");
  NewIndexExpectation out;
  const bool reduced = y == 3 && (p - 1) % 3 != 0 && (q + 1) % 3 == 0;
  out.m = reduced ? (q + 1) / 3 : q + 1;
  out.valuation = valuation(out.m, y);
  out.trivial_case = y == q;
  return out;
}

}  // namespace eisen
