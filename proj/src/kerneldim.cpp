#include "eisen/kerneldim.hpp"

#include "eisen/error.hpp"
#include "eisen/space_cache.hpp"

namespace eisen {

namespace {

modp::Mat multiply(const modp::Mat& a, const modp::Mat& b, std::uint32_t ell) {
  const std::size_t cols = b.empty() ? 0 : b[0].size();
  modp::Mat out(a.size(), modp::Vec(cols, 0));
  std::vector<std::uint64_t> acc(cols);
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    for (std::size_t k = 0; k < a[i].size(); ++k) {
      const std::uint64_t f = a[i][k];
      if (f == 0) continue;
      const auto& row = b[k];
      for (std::size_t j = 0; j < cols; ++j) acc[j] += f * row[j];
      // ell < 2^16 in practice; fold before the sum can overflow
      if ((k & 0xfff) == 0xfff) {
        for (auto& x : acc) x %= ell;
      }
    }
    for (std::size_t j = 0; j < cols; ++j) out[i][j] = static_cast<std::uint32_t>(acc[j] % ell);
  }
  return out;
}

}  // namespace

ModEllSpace::ModEllSpace(std::shared_ptr<const ModularSymbolSpace> space, std::int64_t ell)
    : space_(std::move(space)), ell_(ell) {
  check_ell(space_->level(), ell);
  if (ell >= (1 << 16)) throw BadEll("residue characteristic too large for the word-size kernels");
}

const modp::Mat& ModEllSpace::operator_matrix(const OperatorLabel& op) const {
  const auto key = std::make_pair(static_cast<int>(op.kind), op.p);
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
  }
  const auto route = op.kind == OperatorLabel::Kind::T ? HeckeRoute::Heilbronn : HeckeRoute::Coset;
  const auto m = space_->cuspidal_matrix_i64(op, route);
  modp::Mat out(m.size(), modp::Vec(m.size()));
  const auto ell = static_cast<std::uint32_t>(ell_);
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) out[i][j] = modp::reduce(m[i][j], ell);
  }
  std::lock_guard<std::mutex> lock(mutex_);
  return cache_.emplace(key, std::move(out)).first->second;
}

modp::Mat ModEllSpace::apply_T(const modp::Mat& rows, std::int64_t r) const {
  const auto& sp = *space_;
  const std::size_t k = rows.size();
  const std::size_t dim = basis_dim();
  const std::size_t nfree = sp.dimension();
  const auto ell = static_cast<std::uint64_t>(ell_);
  if (k == 0) return {};

  // Rows as combinations of free symbols, k interleaved columns.
  std::vector<std::int64_t> coef(nfree * k, 0);
  const auto& sparse = sp.cuspidal_basis_sparse();
  for (std::size_t w = 0; w < k; ++w) {
    for (std::size_t i = 0; i < dim; ++i) {
      const std::int64_t a = rows[w][i];
      if (a == 0) continue;
      for (auto [f, c] : sparse[i]) coef[f * k + w] += a * c;
    }
  }
  for (auto& c : coef) c = static_cast<std::int64_t>(modp::reduce(c, static_cast<std::uint32_t>(ell)));

  const auto& pres = sp.presentation();
  const auto& p1 = sp.p1();
  const std::int64_t n = sp.n();
  const auto& hs = heilbronn_merel(r);
  std::vector<std::int64_t> acc(pres.generators.size() * k, 0);
  for (std::size_t f = 0; f < nfree; ++f) {
    const std::int64_t* src = &coef[f * k];
    bool any = false;
    for (std::size_t w = 0; w < k; ++w) any = any || src[w] != 0;
    if (!any) continue;
    const auto& x = pres.generators[static_cast<std::size_t>(pres.free_symbol[f])];
    for (const auto& h : hs) {
      const auto idx = p1.index_reduced((x.c * h.a + x.d * h.c) % n, (x.c * h.b + x.d * h.d) % n);
      if (idx < 0) continue;
      std::int64_t* dst = &acc[static_cast<std::size_t>(idx) * k];
      for (std::size_t w = 0; w < k; ++w) dst[w] += src[w];
    }
  }
  for (auto& a : acc) a %= static_cast<std::int64_t>(ell);
  const auto down = sp.push_down(std::move(acc), k);
  const auto& coord = sp.cuspidal_free_edges();
  modp::Mat out(k, modp::Vec(dim));
  for (std::size_t w = 0; w < k; ++w) {
    for (std::size_t j = 0; j < dim; ++j) out[w][j] = modp::reduce(down[coord[j] * k + w], static_cast<std::uint32_t>(ell));
  }
  return out;
}

std::shared_ptr<const ModEllSpace> build_mod_ell(std::shared_ptr<const ModularSymbolSpace> space, std::int64_t ell) {
  return std::make_shared<const ModEllSpace>(std::move(space), ell);
}

std::size_t dim_kernel(const ModEllSpace& mspace, const IdealSpec& ideal, std::vector<KernelStep>* trace,
                       std::int64_t bound) {
  ideal.validate();
  if (!(ideal.level == mspace.level())) throw LevelMismatch("ideal and mod-ell space have different levels");
  const auto ell = static_cast<std::uint32_t>(mspace.ell());
  const std::size_t dim = mspace.basis_dim();
  if (bound == 0) bound = sturm_bound(mspace.level());

  modp::Mat k(dim, modp::Vec(dim, 0));
  for (std::size_t i = 0; i < dim; ++i) k[i][i] = 1;

  // Replaces K by the part of its span killed by A - lambda, given K A.
  auto cut = [&](const modp::Mat& image, std::int64_t lambda, const std::string& label) {
    const std::uint32_t l = modp::reduce(lambda, ell);
    modp::Mat r = image;
    for (std::size_t i = 0; i < r.size(); ++i) {
      for (std::size_t j = 0; j < dim; ++j) r[i][j] = static_cast<std::uint32_t>((r[i][j] + (ell - l) * static_cast<std::uint64_t>(k[i][j])) % ell);
    }
    const auto y = modp::left_nullspace(r, dim, ell);
    k = multiply(y, k, ell);
    if (trace) trace->push_back({label, k.size()});
  };

  for (const auto& [p, e] : ideal.local_eigens) {
    const OperatorLabel op{OperatorLabel::Kind::U, p};
    const auto& a = mspace.operator_matrix(op);
    const std::int64_t lambda = eigen_value(e, p);
    const std::string label = op.str() + (lambda < 0 ? " + " + std::to_string(-lambda) : " - " + std::to_string(lambda));
    cut(k.size() == dim ? a : multiply(k, a, ell), lambda, label);
  }
  if (ideal.use_Tr) {
    for (auto r : primes_up_to(bound)) {
      if (mspace.level().divisible_by(r)) continue;
      const std::string label = "T_" + std::to_string(r) + " - " + std::to_string(r + 1);
      if (k.empty()) {
        if (trace) trace->push_back({label, 0});
        continue;
      }
      cut(mspace.apply_T(k, r), r + 1, label);
    }
  }
  return k.size();
}

DimReport dim_report(std::int64_t n, std::int64_t m, std::int64_t ell, SpaceStore* store) {
  DimReport rep;
  rep.given_m = m;
  rep.descriptor = canonicalize(n, m, ell);
  if (!is_maximal(rep.descriptor)) {
    throw NotMaximal("(" + std::to_string(ell) + ", I_" + std::to_string(rep.descriptor.m) +
                     ") is not maximal at level " + std::to_string(n) + ": " + std::to_string(ell) +
                     " does not divide phi(N) psi(N/M)");
  }
  rep.invariants = invariants(rep.descriptor);
  rep.prediction = refine_prediction(rep.descriptor, rep.invariants);
  const auto& lv = rep.descriptor.n;
  auto space = store ? store->get(lv) : build_space(lv);
  ModEllSpace mspace(space, ell);
  rep.dim = dim_kernel(mspace, IdealSpec::eisenstein(lv, rep.descriptor.m), &rep.trace);
  rep.verdict = rep.prediction.interval.contains(static_cast<int>(rep.dim)) &&
                rep.invariants.predicted.contains(static_cast<int>(rep.dim));
  if (rep.prediction.ramification_prime != 0) {
    rep.ramification_inferred = true;
    rep.ramified = rep.dim == 3;
  }
  return rep;
}

}  // namespace eisen
