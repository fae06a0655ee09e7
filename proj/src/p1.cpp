#include "eisen/p1.hpp"

#include "eisen/error.hpp"

#include <map>

namespace eisen {

namespace {

std::int64_t smallest_coprime_in_class(std::int64_t r, std::int64_t modulus, std::int64_t g) {
  for (std::int64_t x = r;; x += modulus) {
    if (gcd64(x, g) == 1) return x;
  }
}

}  // namespace

P1Element p1_normalize(std::int64_t c, std::int64_t d, const SquarefreeLevel& level) {
  const std::int64_t n = level.value();
  c = mod64(c, n);
  d = mod64(d, n);
  if (gcd64(gcd64(c, d), n) != 1) {
    throw NotProjectivePoint("(" + std::to_string(c) + ", " + std::to_string(d) + ") mod " +
                             std::to_string(n));
  }
  if (n == 1) return {0, 0};
  const std::int64_t g = gcd64(c, n);
  const std::int64_t m = n / g;
  const std::int64_t lambda = m == 1 ? 0 : inverse_mod(c / g, m);
  const std::int64_t r = m == 1 ? 0 : mod64(lambda * d, m);
  return {g == n ? 0 : g, smallest_coprime_in_class(r, m, g)};
}

P1List::P1List(const SquarefreeLevel& level) : n_(level.value()) {
  const auto& primes = level.primes();
  if (primes.size() > 32) throw BadInput("too many prime factors");
  mask_.resize(static_cast<std::size_t>(n_));
  slot_.resize(static_cast<std::size_t>(n_));
  for (std::int64_t x = 0; x < n_; ++x) {
    std::uint32_t m = 0;
    for (std::size_t i = 0; i < primes.size(); ++i) {
      if (x % primes[i] == 0) m |= 1u << i;
    }
    mask_[x] = m;
  }
  // Points with gcd(c, N) = g are (g : r) for r mod N/g, lifted to be
  // coprime to g. Classes are laid out by ascending g, with g = N written c = 0.
  std::map<std::int64_t, std::int64_t> base;
  std::vector<std::int64_t> divisors = level.divisors();
  std::int64_t next = 0;
  // c = 0 (g = N) sorts first lexicographically
  std::vector<std::int64_t> order;
  order.push_back(n_);
  for (auto g : divisors) {
    if (g != n_) order.push_back(g);
  }
  for (auto g : order) {
    const std::int64_t m = n_ / g;
    base[g] = next;
    for (std::int64_t r = 0; r < m; ++r) {
      points_.push_back({g == n_ ? 0 : g, smallest_coprime_in_class(r, m, g)});
    }
    next += m;
  }
  if (n_ == 1) points_ = {{0, 0}};
  for (std::int64_t x = 0; x < n_; ++x) {
    const std::int64_t g = gcd64(x, n_);
    const std::int64_t m = n_ / g;
    slot_[x] = Slot{base[g], m, m == 1 ? 0 : inverse_mod(x / g, m)};
  }
}

}  // namespace eisen
