#pragma once

#include "eisen/numtheory.hpp"

#include <string>
#include <vector>

namespace eisen {

// The maximal ideal (ell, I_M) at level N.
struct EisensteinIdealDescriptor {
  SquarefreeLevel n;
  std::int64_t m = 1;
  std::int64_t ell = 0;
  bool canonical = false;
};

struct Interval {
  int lo = 0;
  int hi = 0;
  bool contains(int x) const { return lo <= x && x <= hi; }
  friend bool operator==(const Interval& a, const Interval& b) { return a.lo == b.lo && a.hi == b.hi; }
};

struct InvariantReport {
  int s = 0;   // primes of N that are 1 mod ell
  int s0 = 0;  // primes of M
  int varpi0 = 0;
  int varpi_ell_SN = 0;
  bool maximal = false;
  Interval predicted;  // the general bounds, before any refinement
};

struct Prediction {
  Interval interval;
  std::string rule;        // which statement produced the interval
  std::string annotation;  // optimality remark, informational only
  // Set when the dimension decides ramification at this prime: dim 3
  // means ramified, dim 2 unramified.
  std::int64_t ramification_prime = 0;
};

// Throws BadInput unless 1 < M | N; BadEll unless ell is a prime not
// dividing 6N.
void check_ell(const SquarefreeLevel& n, std::int64_t ell);
EisensteinIdealDescriptor canonicalize(std::int64_t n, std::int64_t m, std::int64_t ell);
bool is_maximal(const EisensteinIdealDescriptor& d);
InvariantReport invariants(const EisensteinIdealDescriptor& d);
Prediction refine_prediction(const EisensteinIdealDescriptor& d, const InvariantReport& report);

// Whether a is an ell-th power modulo the prime p, for ell | p - 1.
bool is_ell_th_power_mod(std::int64_t a, std::int64_t p, std::int64_t ell);

struct ReferenceRecord {
  std::string object;
  std::string statement;
  BigInt order;  // 0 when the record is not an order formula
  bool up_to_2_3 = false;
};

// Static eigenvalue and order tables attached to a prime p | N.
std::vector<ReferenceRecord> reference_tables(std::int64_t p, const SquarefreeLevel& n, std::int64_t ell);

}  // namespace eisen
