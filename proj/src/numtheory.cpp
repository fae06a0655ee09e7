#include "eisen/numtheory.hpp"

#include "eisen/error.hpp"

#include <algorithm>
#include <cstdlib>

namespace eisen {

Rational::Rational(const BigInt& num, const BigInt& den) {
  if (den == 0) throw BadInput("zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.is_zero()) throw BadInput("division by zero");
  value_ /= o.value_;
  return *this;
}

std::vector<std::int64_t> SquarefreeLevel::divisors() const {
  std::vector<std::int64_t> out{1};
  for (auto p : primes_) {
    const auto size = out.size();
    for (std::size_t i = 0; i < size; ++i) out.push_back(out[i] * p);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::pair<std::int64_t, int>> factor(std::int64_t n) {
  if (n < 1) throw BadInput("factor expects a positive integer");
  std::vector<std::pair<std::int64_t, int>> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n > 1) out.emplace_back(n, 1);
  return out;
}

SquarefreeLevel factor_squarefree(std::int64_t n) {
  if (n < 1) throw BadInput("level must be positive, got " + std::to_string(n));
  SquarefreeLevel level;
  level.value_ = n;
  for (auto [p, e] : factor(n)) {
    if (e > 1) {
      throw NotSquarefree(std::to_string(p) + "^2 divides " + std::to_string(n));
    }
    level.primes_.push_back(p);
  }
  return level;
}

bool is_squarefree(std::int64_t n) {
  if (n < 1) return false;
  for (auto [p, e] : factor(n)) {
    if (e > 1) return false;
  }
  return true;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) return false;
  }
  return true;
}

std::vector<std::int64_t> primes_up_to(std::int64_t bound) {
  std::vector<std::int64_t> out;
  if (bound < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(bound + 1), false);
  for (std::int64_t i = 2; i <= bound; ++i) {
    if (composite[i]) continue;
    out.push_back(i);
    for (std::int64_t j = i * i; j <= bound; j += i) composite[j] = true;
  }
  return out;
}

BigInt phi_sf(const SquarefreeLevel& n) {
  BigInt out = 1;
  for (auto p : n.primes()) out *= BigInt(static_cast<long>(p - 1));
  return out;
}

BigInt psi_sf(const SquarefreeLevel& n) {
  BigInt out = 1;
  for (auto p : n.primes()) out *= BigInt(static_cast<long>(p + 1));
  return out;
}

BigInt numerator_of(const Rational& x) { return x.numerator(); }

int varpi_ell(const std::set<std::int64_t>& primes, std::int64_t ell) {
  int count = 0;
  for (auto p : primes) {
    const auto r = mod64(p, ell);
    if (r == 1 || r == ell - 1) ++count;
  }
  return count;
}

std::int64_t sturm_bound(const SquarefreeLevel& n) {
  const BigInt psi = psi_sf(n);
  BigInt q = (psi + 5) / 6;
  return q.get_si();
}

BigInt strip_primes(BigInt n, const std::set<std::int64_t>& primes) {
  for (auto p : primes) {
    if (n == 0) break;
    const BigInt bp(static_cast<long>(p));
    while (n % bp == 0) n /= bp;
  }
  return n;
}

int valuation(const BigInt& n, std::int64_t p) {
  if (n == 0) throw BadInput("valuation of zero");
  BigInt m = abs(n);
  const BigInt bp(static_cast<long>(p));
  int v = 0;
  while (m % bp == 0) {
    m /= bp;
    ++v;
  }
  return v;
}

std::map<BigInt, int> factor_big(BigInt n) {
  std::map<BigInt, int> out;
  n = abs(n);
  if (n <= 1) return out;
  for (BigInt p = 2; p * p <= n; ++p) {
    while (n % p == 0) {
      n /= p;
      ++out[p];
    }
  }
  if (n > 1) ++out[n];
  return out;
}

std::int64_t gcd64(std::int64_t a, std::int64_t b) {
  a = std::llabs(a);
  b = std::llabs(b);
  while (b != 0) {
    const auto t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::int64_t mod64(std::int64_t a, std::int64_t m) {
  const auto r = a % m;
  return r < 0 ? r + m : r;
}

std::int64_t ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& x, std::int64_t& y) {
  std::int64_t old_r = a, r = b, old_s = 1, s = 0, old_t = 0, t = 1;
  while (r != 0) {
    const auto q = old_r / r;
    auto tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s;
    old_s = s;
    s = tmp;
    tmp = old_t - q * t;
    old_t = t;
    t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  x = old_s;
  y = old_t;
  return old_r;
}

std::int64_t inverse_mod(std::int64_t a, std::int64_t m) {
  if (m == 1) return 0;
  std::int64_t x = 0, y = 0;
  const auto g = ext_gcd(mod64(a, m), m, x, y);
  if (g != 1) {
    throw InternalError("no inverse of " + std::to_string(a) + " mod " + std::to_string(m));
  }
  return mod64(x, m);
}

std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t m) {
  __int128 result = 1 % m;
  __int128 b = mod64(base, m);
  while (exp > 0) {
    if (exp & 1) result = result * b % m;
    b = b * b % m;
    exp >>= 1;
  }
  return static_cast<std::int64_t>(result);
}

std::int64_t sigma1(std::int64_t n) {
  std::int64_t s = 0;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    s += d;
    if (d * d != n) s += n / d;
  }
  return s;
}

}  // namespace eisen
