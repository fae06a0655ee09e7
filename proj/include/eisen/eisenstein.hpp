#pragma once

#include "eisen/modsym.hpp"
#include "eisen/numtheory.hpp"

#include <string>
#include <vector>

namespace eisen {

// Truncated power series sum a_n x^n, n < prec. Every operation states the
// precision of its output explicitly; nothing past it is ever filled in.
class QExpansion {
 public:
  QExpansion() = default;
  explicit QExpansion(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {}

  std::size_t prec() const { return coeffs_.size(); }
  const Rational& operator[](std::size_t n) const { return coeffs_.at(n); }
  const std::vector<Rational>& coeffs() const { return coeffs_; }

  QExpansion truncated(std::size_t prec) const;
  QExpansion scaled(const Rational& c) const;
  // Sum and difference are valid up to the smaller precision.
  friend QExpansion operator+(const QExpansion& a, const QExpansion& b);
  friend QExpansion operator-(const QExpansion& a, const QExpansion& b);
  bool is_zero() const;
  // Equality on the common valid prefix.
  bool agrees_with(const QExpansion& o) const;

  // Set for E_{1,N} with N > 1, which is a formal series but not a weight-two
  // modular form of level N.
  std::string warning;

 private:
  std::vector<Rational> coeffs_;
};

QExpansion e_series(std::size_t prec);
QExpansion raise_plus(const QExpansion& g, std::int64_t p);
QExpansion raise_minus(const QExpansion& g, std::int64_t p);
QExpansion E_series(std::int64_t m, const SquarefreeLevel& n, std::size_t prec);

// Constant term of E_{M,N} at the cusp 0.
Rational const_at_zero(std::int64_t m, const SquarefreeLevel& n);
// Constant term of E_{M,N} at infinity from the closed form.
Rational const_at_infinity(std::int64_t m, const SquarefreeLevel& n);

// T_p (p prime to N) or U_q (q | N) on coefficients. The output precision is
// floor((prec - 1) / p) + 1.
QExpansion hecke_on_qexp(const QExpansion& g, const OperatorLabel& op, const SquarefreeLevel& n);

}  // namespace eisen
