#include "eisen/eisenstein.hpp"

#include "eisen/error.hpp"

#include <algorithm>

namespace eisen {

QExpansion QExpansion::truncated(std::size_t prec) const {
  if (prec > coeffs_.size()) throw BadInput("cannot extend a truncated series");
  QExpansion out(std::vector<Rational>(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(prec)));
  out.warning = warning;
  return out;
}

QExpansion QExpansion::scaled(const Rational& c) const {
  QExpansion out = *this;
  for (auto& a : out.coeffs_) a *= c;
  return out;
}

QExpansion operator+(const QExpansion& a, const QExpansion& b) {
  const std::size_t prec = std::min(a.prec(), b.prec());
  std::vector<Rational> c(prec);
  for (std::size_t i = 0; i < prec; ++i) c[i] = a[i] + b[i];
  return QExpansion(std::move(c));
}

QExpansion operator-(const QExpansion& a, const QExpansion& b) { return a + b.scaled(Rational(-1)); }

bool QExpansion::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& x) { return x.is_zero(); });
}

bool QExpansion::agrees_with(const QExpansion& o) const { return (*this - o).is_zero(); }

QExpansion e_series(std::size_t prec) {
  if (prec < 1) throw BadInput("precision must be positive");
  std::vector<Rational> c(prec);
  c[0] = Rational(BigInt(-1), BigInt(24));
  // sigma(n) by a divisor sieve
  std::vector<std::int64_t> sigma(prec, 0);
  for (std::size_t d = 1; d < prec; ++d) {
    for (std::size_t k = d; k < prec; k += d) sigma[k] += static_cast<std::int64_t>(d);
  }
  for (std::size_t n = 1; n < prec; ++n) c[n] = Rational(static_cast<long>(sigma[n]));
  return QExpansion(std::move(c));
}

namespace {

QExpansion raise(const QExpansion& g, std::int64_t p, const Rational& factor) {
  if (!is_prime(p)) throw BadPrime(std::to_string(p) + " is not prime");
  std::vector<Rational> c = g.coeffs();
  const auto up = static_cast<std::size_t>(p);
  for (std::size_t n = 0; n < c.size(); n += up) c[n] -= factor * g[n / up];
  QExpansion out(std::move(c));
  out.warning = g.warning;
  return out;
}

}  // namespace

QExpansion raise_plus(const QExpansion& g, std::int64_t p) { return raise(g, p, Rational(static_cast<long>(p))); }

QExpansion raise_minus(const QExpansion& g, std::int64_t p) { return raise(g, p, Rational(1)); }

QExpansion E_series(std::int64_t m, const SquarefreeLevel& n, std::size_t prec) {
  if (m < 1 || n.value() % m != 0) {
    throw BadDivisor(std::to_string(m) + " does not divide " + std::to_string(n.value()));
  }
  QExpansion g = e_series(prec);
  for (auto p : n.primes()) {
    if (m % p == 0) g = raise_plus(g, p);
  }
  for (auto p : n.primes()) {
    if (m % p != 0) g = raise_minus(g, p);
  }
  if (m == 1 && n.value() > 1) g.warning = "E_{1,N} is not a modular form of weight two and level N";
  return g;
}

Rational const_at_zero(std::int64_t m, const SquarefreeLevel& n) {
  if (m < 1 || n.value() % m != 0) {
    throw BadDivisor(std::to_string(m) + " does not divide " + std::to_string(n.value()));
  }
  const auto co = factor_squarefree(n.value() / m);
  const BigInt num = -phi_sf(n) * psi_sf(co);
  const BigInt den = BigInt(24) * BigInt(static_cast<long>(n.value())) * BigInt(static_cast<long>(co.value()));
  return Rational(num, den);
}

Rational const_at_infinity(std::int64_t m, const SquarefreeLevel& n) {
  if (m < 1 || n.value() % m != 0) {
    throw BadDivisor(std::to_string(m) + " does not divide " + std::to_string(n.value()));
  }
  if (m != n.value()) return Rational(0);
  const BigInt sign = n.num_primes() % 2 == 1 ? 1 : -1;  // (-1)^{t+1}
  return Rational(sign * phi_sf(n), BigInt(24));
}

QExpansion hecke_on_qexp(const QExpansion& g, const OperatorLabel& op, const SquarefreeLevel& n) {
  const std::int64_t p = op.p;
  if (!is_prime(p)) throw BadLabel(op.str() + ": not a prime");
  const bool divides = n.value() % p == 0;
  if (op.kind == OperatorLabel::Kind::T && divides) throw BadLabel(op.str() + " needs a prime not dividing the level");
  if (op.kind == OperatorLabel::Kind::U && !divides) throw BadLabel(op.str() + " needs a prime dividing the level");
  if (op.kind == OperatorLabel::Kind::W) throw BadLabel(op.str() + " has no action on q-expansions here");
  if (g.prec() < 1) throw BadInput("empty series");
  const auto up = static_cast<std::size_t>(p);
  const std::size_t prec = (g.prec() - 1) / up + 1;
  std::vector<Rational> c(prec);
  for (std::size_t k = 0; k < prec; ++k) {
    c[k] = g[k * up];
    if (op.kind == OperatorLabel::Kind::T && k % up == 0) c[k] += Rational(static_cast<long>(p)) * g[k / up];
  }
  QExpansion out(std::move(c));
  out.warning = g.warning;
  return out;
}

}  // namespace eisen
