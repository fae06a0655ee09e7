#pragma once

#include "eisen/numtheory.hpp"

#include <cstdint>
#include <vector>

namespace eisen {

struct P1Element {
  std::int64_t c = 0;
  std::int64_t d = 0;
  friend bool operator==(const P1Element& a, const P1Element& b) { return a.c == b.c && a.d == b.d; }
  friend bool operator<(const P1Element& a, const P1Element& b) {
    return a.c != b.c ? a.c < b.c : a.d < b.d;
  }
};

// Canonical form: the lexicographically smallest (c, d) among unit multiples.
P1Element p1_normalize(std::int64_t c, std::int64_t d, const SquarefreeLevel& n);

// Enumeration of P^1(Z/NZ) with constant-time index lookup.
class P1List {
 public:
  explicit P1List(const SquarefreeLevel& n);

  std::int64_t level() const { return n_; }
  std::size_t size() const { return points_.size(); }
  const P1Element& operator[](std::size_t i) const { return points_[i]; }
  const std::vector<P1Element>& points() const { return points_; }

  // Index of the point (c : d), or -1 when gcd(c, d, N) > 1.
  std::int64_t index(std::int64_t c, std::int64_t d) const {
    c = c % n_;
    if (c < 0) c += n_;
    d = d % n_;
    if (d < 0) d += n_;
    return index_reduced(c, d);
  }
  // Same as index() for arguments already reduced into [0, N).
  std::int64_t index_reduced(std::int64_t c, std::int64_t d) const {
    if (mask_[c] & mask_[d]) return -1;
    const auto& slot = slot_[c];
    return slot.base + (static_cast<std::int64_t>(slot.inv) * d) % slot.modulus;
  }

 private:
  struct Slot {
    std::int64_t base;     // first index for this gcd class
    std::int64_t modulus;  // N / gcd(c, N)
    std::int64_t inv;      // (c / g)^{-1} mod N / g
  };

  std::int64_t n_;
  std::vector<P1Element> points_;
  std::vector<Slot> slot_;
  std::vector<std::uint32_t> mask_;
};

}  // namespace eisen
