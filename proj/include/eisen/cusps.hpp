#pragma once

#include "eisen/modsym.hpp"
#include "eisen/numtheory.hpp"

#include <map>
#include <string>

namespace eisen {

// The cusp P_n, the class of 1/n, for n | N.
struct Cusp {
  std::int64_t n = 1;
  friend bool operator==(const Cusp& a, const Cusp& b) { return a.n == b.n; }
};

class CuspidalDivisor {
 public:
  explicit CuspidalDivisor(SquarefreeLevel level) : level_(std::move(level)) {}

  const SquarefreeLevel& level() const { return level_; }
  const std::map<std::int64_t, BigInt>& coeffs() const { return coeffs_; }
  BigInt coeff(std::int64_t n) const;
  void add(std::int64_t n, const BigInt& c);
  BigInt degree() const;
  std::string str() const;

  CuspidalDivisor& operator+=(const CuspidalDivisor& o);
  CuspidalDivisor scaled(const BigInt& c) const;
  friend bool operator==(const CuspidalDivisor& a, const CuspidalDivisor& b) {
    return a.level_ == b.level_ && a.coeffs_ == b.coeffs_;
  }

 private:
  SquarefreeLevel level_;
  std::map<std::int64_t, BigInt> coeffs_;  // zero coefficients are never stored
};

// Gamma_0(N)-class of a/b for square-free N; (1, 0) is infinity.
Cusp cusp_class(std::int64_t a, std::int64_t b, const SquarefreeLevel& n);

// C_{M,N}: alternating sum of P_n over n | M.
CuspidalDivisor c_divisor(std::int64_t m, const SquarefreeLevel& n);

// Closed-form action of T_r, U_p and w_p on cuspidal divisors.
CuspidalDivisor formal_hecke_on_cusps(const OperatorLabel& op, const CuspidalDivisor& d);

// Image of a vector in the boundary as a divisor.
CuspidalDivisor divisor_of_boundary(const ModularSymbolSpace& space, const ZVec& boundary);
ZVec boundary_of_divisor(const ModularSymbolSpace& space, const CuspidalDivisor& d);

// Lattice of boundaries of integral Eisenstein symbols; a degree-zero
// divisor D has order k in the Jacobian iff k is least with k*D in it.
class CuspOrderLattice {
 public:
  explicit CuspOrderLattice(const ModularSymbolSpace& space);
  BigInt order(const CuspidalDivisor& d) const;
  // Saturated integral basis of the Eisenstein subspace.
  const std::vector<ZVec>& eisenstein_basis() const { return eisenstein_; }
  const std::vector<ZVec>& boundary_basis() const { return lattice_; }
  bool contains(const ZVec& boundary) const;

 private:
  const ModularSymbolSpace& space_;
  std::vector<ZVec> eisenstein_;
  std::vector<ZVec> lattice_;
};

BigInt class_order(const CuspidalDivisor& d, const ModularSymbolSpace& space);

}  // namespace eisen
