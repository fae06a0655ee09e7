#include "eisen/cusps.hpp"

#include "eisen/error.hpp"

#include <sstream>

namespace eisen {

BigInt CuspidalDivisor::coeff(std::int64_t n) const {
  auto it = coeffs_.find(n);
  return it == coeffs_.end() ? BigInt(0) : it->second;
}

void CuspidalDivisor::add(std::int64_t n, const BigInt& c) {
  if (n < 1 || level_.value() % n != 0) {
    throw BadDivisor(std::to_string(n) + " does not divide " + std::to_string(level_.value()));
  }
  BigInt& slot = coeffs_[n];
  slot += c;
  if (slot == 0) coeffs_.erase(n);
}

BigInt CuspidalDivisor::degree() const {
  BigInt d = 0;
  for (const auto& [n, c] : coeffs_) d += c;
  return d;
}

std::string CuspidalDivisor::str() const {
  if (coeffs_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [n, c] : coeffs_) {
    if (!first) os << (c < 0 ? " - " : " + ");
    else if (c < 0) os << "-";
    const BigInt a = abs(c);
    if (a != 1) os << a.get_str() << "*";
    os << "P_" << n;
    first = false;
  }
  return os.str();
}

CuspidalDivisor& CuspidalDivisor::operator+=(const CuspidalDivisor& o) {
  if (!(level_ == o.level_)) throw LevelMismatch("adding divisors of different levels");
  for (const auto& [n, c] : o.coeffs_) add(n, c);
  return *this;
}

CuspidalDivisor CuspidalDivisor::scaled(const BigInt& c) const {
  CuspidalDivisor out(level_);
  if (c == 0) return out;
  for (const auto& [n, a] : coeffs_) out.coeffs_[n] = a * c;
  return out;
}

Cusp cusp_class(std::int64_t a, std::int64_t b, const SquarefreeLevel& n) {
  if (gcd64(a, b) != 1) throw BadInput("cusp representative must be in lowest terms");
  return {gcd64(b, n.value())};
}

CuspidalDivisor c_divisor(std::int64_t m, const SquarefreeLevel& n) {
  if (m <= 1 || n.value() % m != 0) {
    throw BadDivisor("C_{M,N} needs 1 < M | N, got M=" + std::to_string(m) + " N=" + std::to_string(n.value()));
  }
  CuspidalDivisor d(n);
  for (auto k : factor_squarefree(m).divisors()) {
    d.add(k, factor_squarefree(k).num_primes() % 2 == 0 ? 1 : -1);
  }
  return d;
}

CuspidalDivisor formal_hecke_on_cusps(const OperatorLabel& op, const CuspidalDivisor& d) {
  const auto& level = d.level();
  const std::int64_t n = level.value();
  const std::int64_t p = op.p;
  if (!is_prime(p)) throw BadLabel(op.str() + ": not a prime");
  CuspidalDivisor out(level);
  switch (op.kind) {
    case OperatorLabel::Kind::T:
      if (n % p == 0) throw BadLabel(op.str() + " needs a prime not dividing the level");
      return d.scaled(p + 1);
    case OperatorLabel::Kind::W:
      if (n % p != 0) throw BadLabel(op.str() + " needs a prime dividing the level");
      for (const auto& [k, c] : d.coeffs()) out.add(k % p == 0 ? k / p : k * p, c);
      return out;
    case OperatorLabel::Kind::U:
      if (n % p != 0) throw BadLabel(op.str() + " needs a prime dividing the level");
      // U_p = alpha_p^* beta_{p,*} - w_p, with beta_{p,*} sending P_D and
      // P_{pD} to P_D and alpha_p^*(P_D) = p P_D + P_{pD}.
      for (const auto& [k, c] : d.coeffs()) {
        const std::int64_t base = k % p == 0 ? k / p : k;
        out.add(base, c * p);
        out.add(base * p, c);
        out.add(k % p == 0 ? k / p : k * p, -c);
      }
      return out;
  }
  throw BadLabel(op.str());
}

CuspidalDivisor divisor_of_boundary(const ModularSymbolSpace& space, const ZVec& boundary) {
  CuspidalDivisor d(space.level());
  for (std::size_t i = 0; i < boundary.size(); ++i) {
    if (boundary[i] != 0) d.add(space.cusps()[i], boundary[i]);
  }
  return d;
}

ZVec boundary_of_divisor(const ModularSymbolSpace& space, const CuspidalDivisor& d) {
  if (!(d.level() == space.level())) throw LevelMismatch("divisor and space have different levels");
  ZVec v(space.num_cusps());
  for (const auto& [n, c] : d.coeffs()) v[space.cusp_index(n)] = c;
  return v;
}

CuspOrderLattice::CuspOrderLattice(const ModularSymbolSpace& space) : space_(space) {
  // T_r - r - 1 for the least prime r prime to N is injective on cusp
  // forms (|a_r| <= 2 sqrt(r)), so its kernel is the Eisenstein part.
  std::int64_t r = 2;
  while (space.n() % r == 0 || !is_prime(r)) ++r;
  const auto t = space.hecke_T(r).matrix.shifted(BigInt(-(r + 1)));
  eisenstein_ = integer_left_kernel(t);
  if (eisenstein_.size() + 1 != space.num_cusps()) {
    throw InternalError("Eisenstein subspace has unexpected dimension");
  }
  HnfBuilder h(space.num_cusps());
  for (const auto& v : eisenstein_) h.insert(space.boundary(v));
  lattice_ = h.basis();
}

bool CuspOrderLattice::contains(const ZVec& boundary) const {
  HnfBuilder h(space_.num_cusps());
  for (const auto& v : lattice_) h.insert(v);
  return h.contains(boundary);
}

BigInt CuspOrderLattice::order(const CuspidalDivisor& d) const {
  if (d.degree() != 0) throw NonzeroDegree("divisor " + d.str() + " has degree " + d.degree().get_str());
  const auto v = boundary_of_divisor(space_, d);
  std::vector<Rational> x;
  if (!solve_rational_left(lattice_, v, x)) throw InternalError("degree-zero divisor outside the boundary span");
  BigInt k = 1;
  for (const auto& c : x) {
    BigInt l;
    mpz_lcm(l.get_mpz_t(), k.get_mpz_t(), c.denominator().get_mpz_t());
    k = l;
  }
  return k;
}

BigInt class_order(const CuspidalDivisor& d, const ModularSymbolSpace& space) {
  return CuspOrderLattice(space).order(d);
}

}  // namespace eisen
