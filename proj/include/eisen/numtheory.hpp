#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <vector>

namespace eisen {

using BigInt = mpz_class;

// Exact rational number, always stored in lowest terms with a positive
// denominator, so equality is structural.
class Rational {
 public:
  Rational() = default;
  Rational(long n) : value_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& n) : value_(n) {}  // NOLINT(google-explicit-constructor)
  Rational(const BigInt& num, const BigInt& den);
  explicit Rational(const mpq_class& q) : value_(q) { value_.canonicalize(); }

  BigInt numerator() const { return value_.get_num(); }
  BigInt denominator() const { return value_.get_den(); }
  const mpq_class& raw() const { return value_; }
  bool is_zero() const { return sgn(value_) == 0; }
  bool is_integer() const { return value_.get_den() == 1; }

  Rational operator-() const { return Rational(mpq_class(-value_)); }
  Rational& operator+=(const Rational& o) { value_ += o.value_; return *this; }
  Rational& operator-=(const Rational& o) { value_ -= o.value_; return *this; }
  Rational& operator*=(const Rational& o) { value_ *= o.value_; return *this; }
  Rational& operator/=(const Rational& o);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) { return a.value_ < b.value_; }

  std::string str() const { return value_.get_str(); }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

 private:
  mpq_class value_;
};

// A positive square-free integer together with its sorted prime factors.
class SquarefreeLevel {
 public:
  SquarefreeLevel() : value_(1) {}

  std::int64_t value() const { return value_; }
  const std::vector<std::int64_t>& primes() const { return primes_; }
  int num_primes() const { return static_cast<int>(primes_.size()); }
  bool divisible_by(std::int64_t p) const { return value_ % p == 0; }
  // All positive divisors, ascending.
  std::vector<std::int64_t> divisors() const;

  friend bool operator==(const SquarefreeLevel& a, const SquarefreeLevel& b) {
    return a.value_ == b.value_;
  }

 private:
  friend SquarefreeLevel factor_squarefree(std::int64_t n);
  std::int64_t value_;
  std::vector<std::int64_t> primes_;
};

SquarefreeLevel factor_squarefree(std::int64_t n);
bool is_squarefree(std::int64_t n);
bool is_prime(std::int64_t n);
std::vector<std::int64_t> primes_up_to(std::int64_t bound);
// Prime factorization by trial division, as (prime, exponent) pairs.
std::vector<std::pair<std::int64_t, int>> factor(std::int64_t n);

BigInt phi_sf(const SquarefreeLevel& n);
BigInt psi_sf(const SquarefreeLevel& n);
BigInt numerator_of(const Rational& x);
int varpi_ell(const std::set<std::int64_t>& primes, std::int64_t ell);
std::int64_t sturm_bound(const SquarefreeLevel& n);
BigInt strip_primes(BigInt n, const std::set<std::int64_t>& primes);

// p-adic valuation of a nonzero integer.
int valuation(const BigInt& n, std::int64_t p);
std::map<BigInt, int> factor_big(BigInt n);

std::int64_t gcd64(std::int64_t a, std::int64_t b);
std::int64_t mod64(std::int64_t a, std::int64_t m);
// Inverse of a modulo m; requires gcd(a, m) = 1.
std::int64_t inverse_mod(std::int64_t a, std::int64_t m);
std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t m);
// Returns g and fills x, y with a*x + b*y = g.
std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y);
// Sum of divisors.
std::int64_t sigma1(std::int64_t n);

}  // namespace eisen
