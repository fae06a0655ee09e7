#pragma once

#include "eisen/classifier.hpp"
#include "eisen/heckealg.hpp"
#include "eisen/linalg.hpp"
#include "eisen/modsym.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <vector>

namespace eisen {

class SpaceStore;

// The saturated cuspidal lattice reduced mod ell, with the Hecke action.
class ModEllSpace {
 public:
  ModEllSpace(std::shared_ptr<const ModularSymbolSpace> space, std::int64_t ell);

  const SquarefreeLevel& level() const { return space_->level(); }
  const ModularSymbolSpace& space() const { return *space_; }
  std::int64_t ell() const { return ell_; }
  std::size_t basis_dim() const { return space_->cuspidal_dimension(); }

  // Full matrix of an operator mod ell, computed once.
  const modp::Mat& operator_matrix(const OperatorLabel& op) const;
  // rows * T_r for a prime r prime to N, without forming T_r.
  modp::Mat apply_T(const modp::Mat& rows, std::int64_t r) const;

 private:
  std::shared_ptr<const ModularSymbolSpace> space_;
  std::int64_t ell_;
  mutable std::mutex mutex_;
  mutable std::map<std::pair<int, std::int64_t>, modp::Mat> cache_;
};

std::shared_ptr<const ModEllSpace> build_mod_ell(std::shared_ptr<const ModularSymbolSpace> space, std::int64_t ell);

struct KernelStep {
  std::string generator;
  std::size_t dim = 0;  // kernel dimension after this generator
};

// Dimension of the common kernel of the generators of the ideal on the
// mod-ell lattice. T_r is used for primes r <= bound prime to N; bound 0
// means the Sturm bound.
std::size_t dim_kernel(const ModEllSpace& mspace, const IdealSpec& ideal, std::vector<KernelStep>* trace = nullptr,
                       std::int64_t bound = 0);

struct DimReport {
  EisensteinIdealDescriptor descriptor;  // canonical
  std::int64_t given_m = 0;
  InvariantReport invariants;
  Prediction prediction;
  std::size_t dim = 0;
  bool verdict = false;
  bool ramification_inferred = false;
  bool ramified = false;  // at prediction.ramification_prime
  std::vector<KernelStep> trace;
};

// Joins dim_kernel with the classifier. Spaces come from the store when one
// is given. Throws NotMaximal before any modular-symbol work.
DimReport dim_report(std::int64_t n, std::int64_t m, std::int64_t ell, SpaceStore* store = nullptr);

}  // namespace eisen
