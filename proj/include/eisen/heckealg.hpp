#pragma once

#include "eisen/linalg.hpp"
#include "eisen/modsym.hpp"
#include "eisen/numtheory.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace eisen {

// Expected eigenvalue of U_p modulo an Eisenstein ideal.
enum class LocalEigen { One, Q, MinusOne };

std::int64_t eigen_value(LocalEigen e, std::int64_t p);
std::string eigen_str(LocalEigen e);

struct IdealSpec {
  SquarefreeLevel level;
  std::map<std::int64_t, LocalEigen> local_eigens;
  bool use_Tr = true;

  // I_M: U_p - 1 for p | M, U_p - p for p | N/M.
  static IdealSpec eisenstein(const SquarefreeLevel& n, std::int64_t m);
  // U_p - 1 for p | N/q and U_q + 1.
  static IdealSpec new_eisenstein(const SquarefreeLevel& n, std::int64_t q);

  // Throws BadInput unless every prime of N has exactly one symbol.
  void validate() const;
  std::string str() const;
};

// The Hecke ring as a lattice of operators. An operator T is recorded by
// the rows e_j T of its matrix on the saturated cuspidal lattice for a
// fixed set of probe rows j; enough probes are taken that this is
// injective on the ring.
class HeckeLattice {
 public:
  HeckeLattice(std::shared_ptr<const ModularSymbolSpace> space, std::int64_t bound);

  const SquarefreeLevel& level() const { return space_->level(); }
  const ModularSymbolSpace& space() const { return *space_; }
  std::int64_t degree_bound() const { return bound_; }
  std::size_t rank() const { return hnf_basis_.size(); }
  const std::vector<std::size_t>& probes() const { return probes_; }
  std::size_t flat_size() const { return probes_.size() * dim_; }

  // Flattened T_n for n = 1..bound (index n - 1).
  const std::vector<ZVec>& op_basis() const { return op_basis_; }
  const std::vector<ZVec>& hnf_basis() const { return hnf_basis_; }
  bool contains(const ZVec& flat) const { return hnf_.contains(flat); }
  ZVec coordinates(const ZVec& flat) const { return hnf_.coordinates(flat); }

  // Matrix on cuspidal coordinates of T_p (p prime to N) or U_p (p | N).
  const ZMatrix& prime_operator(std::int64_t p) const;
  // flat(x) -> flat(x * (A - lambda)) for the operator A of the prime p.
  ZVec times_shifted(const ZVec& flat, std::int64_t p, std::int64_t lambda) const;
  ZVec flatten(const ZMatrix& op) const;

 private:
  std::shared_ptr<const ModularSymbolSpace> space_;
  std::int64_t bound_;
  std::size_t dim_;
  std::map<std::int64_t, ZMatrix> prime_ops_;
  std::vector<std::size_t> probes_;
  std::vector<ZVec> op_basis_;
  std::vector<ZVec> hnf_basis_;
  HnfBuilder hnf_{0};
};

std::shared_ptr<const HeckeLattice> build_hecke_lattice(std::shared_ptr<const ModularSymbolSpace> space,
                                                        std::int64_t bound);

struct IndexResult {
  BigInt n;
  std::map<BigInt, int> factorization;
  std::vector<BigInt> elementary_divisors;  // the ones greater than 1
};

IndexResult ideal_index(const HeckeLattice& lattice, const IdealSpec& ideal);

struct PrimeComparison {
  std::int64_t y = 0;
  bool in_scope = false;  // false for y | 2N
  int computed = 0;
  int expected = 0;
  bool pass() const { return !in_scope || computed == expected; }
};

struct TheoremReport {
  IndexResult index;
  BigInt m;  // numerator of phi(N) psi(N/M) / 3
  std::vector<PrimeComparison> primes;
  bool pass() const;
};

// Compares v_y of the index of I_M with v_y(m) for primes y <= y_max and
// every prime dividing n or m.
TheoremReport compare_index_with_theorem(const HeckeLattice& lattice, std::int64_t m, std::int64_t y_max = 50);

struct NewIndexExpectation {
  BigInt m;
  int valuation = 0;
  bool trivial_case = false;  // y = q, where the localized quotient is zero
};

// Expected y-adic part of T/(U_p - 1, U_q + 1, T_r - r - 1) at level pq.
NewIndexExpectation new_ideal_index_expected(std::int64_t p, std::int64_t q, std::int64_t y);

}  // namespace eisen
