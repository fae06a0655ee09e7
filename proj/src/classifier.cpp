#include "eisen/classifier.hpp"

#include "eisen/error.hpp"

#include <algorithm>
#include <set>

namespace eisen {

namespace {

bool is_one(std::int64_t p, std::int64_t ell) { return p % ell == 1; }
bool is_minus_one(std::int64_t p, std::int64_t ell) { return p % ell == ell - 1; }

}  // namespace

void check_ell(const SquarefreeLevel& n, std::int64_t ell) {
  if (ell < 5 || !is_prime(ell)) throw BadEll(std::to_string(ell) + " is not a prime larger than 3");
  if (n.divisible_by(ell)) throw BadEll(std::to_string(ell) + " divides the level " + std::to_string(n.value()));
}

EisensteinIdealDescriptor canonicalize(std::int64_t n, std::int64_t m, std::int64_t ell) {
  const auto level = factor_squarefree(n);
  if (m <= 1 || n % m != 0) {
    throw BadInput("M must satisfy 1 < M | N, got M=" + std::to_string(m) + " N=" + std::to_string(n));
  }
  check_ell(level, ell);
  EisensteinIdealDescriptor d{level, m, ell, true};
  for (auto p : level.primes()) {
    if (m % p != 0 && is_one(p, ell)) d.m *= p;
  }
  return d;
}

bool is_maximal(const EisensteinIdealDescriptor& d) {
  const auto co = factor_squarefree(d.n.value() / d.m);
  const BigInt v = phi_sf(d.n) * psi_sf(co);
  return v % d.ell == 0;
}

InvariantReport invariants(const EisensteinIdealDescriptor& d) {
  if (!d.canonical) throw BadInput("descriptor must be canonical");
  InvariantReport r;
  r.maximal = is_maximal(d);
  if (!r.maximal) {
    throw NotMaximal("(" + std::to_string(d.ell) + ", I_" + std::to_string(d.m) + ") is not maximal at level " +
                     std::to_string(d.n.value()));
  }
  for (auto p : d.n.primes()) {
    if (is_one(p, d.ell)) ++r.s;
    if (d.m % p == 0) ++r.s0;
  }
  r.varpi0 = r.s == r.s0 ? r.s : 0;
  const auto& ps = d.n.primes();
  r.varpi_ell_SN = varpi_ell(std::set<std::int64_t>(ps.begin(), ps.end()), d.ell);
  r.predicted = {std::max(1 + r.varpi0, 2), 1 + r.varpi0 + r.varpi_ell_SN};
  return r;
}

bool is_ell_th_power_mod(std::int64_t a, std::int64_t p, std::int64_t ell) {
  if ((p - 1) % ell != 0) throw BadInput(std::to_string(ell) + " does not divide " + std::to_string(p) + " - 1");
  if (mod64(a, p) == 0) return true;
  return pow_mod(mod64(a, p), (p - 1) / ell, p) == 1;
}

Prediction refine_prediction(const EisensteinIdealDescriptor& d, const InvariantReport& report) {
  Prediction out{report.predicted, "general bounds", "", 0};
  const std::int64_t ell = d.ell;
  if (report.varpi_ell_SN == 1) {
    out.interval = {2, 2};
    out.rule = "multiplicity one, one prime is +-1";
  } else if (d.n.num_primes() == report.s0 + 1 && phi_sf(d.n) % ell != 0) {
    out.interval = {2, 2};
    out.rule = "multiplicity one, t = s + 1";
  }

  if (d.n.num_primes() == 2) {
    const auto p1 = d.n.primes()[0];
    const auto p2 = d.n.primes()[1];
    if (report.s0 == 1) {
      const std::int64_t p = d.m;
      const std::int64_t q = p == p1 ? p2 : p1;
      if (!is_one(p, ell)) {
        out.interval = {2, 2};
        out.rule = "pq, M = p, p not 1";
      } else if (!is_minus_one(q, ell)) {
        out.interval = {2, 2};
        out.rule = "pq, M = p, p = 1, q not -1";
      } else {
        out.interval = {2, 3};
        out.rule = "pq, M = p, p = 1, q = -1";
        out.ramification_prime = q;
      }
    } else {
      // M = N; some prime is 1 mod ell because the ideal is maximal.
      const bool one1 = is_one(p1, ell);
      const bool one2 = is_one(p2, ell);
      const std::int64_t p = one1 ? p1 : p2;
      const std::int64_t q = one1 ? p2 : p1;
      if (one1 && one2) {
        out.interval = {4, 5};
        out.rule = "pq, M = N, p = q = 1";
      } else if (!is_minus_one(q, ell)) {
        out.interval = {2, 2};
        out.rule = "pq, M = N, p = 1, q not +-1";
      } else if (!is_ell_th_power_mod(q, p, ell)) {
        out.interval = {2, 2};
        out.rule = "pq, M = N, p = 1, q = -1, q not an ell-th power mod p";
      } else {
        out.interval = {2, 3};
        out.rule = "pq, M = N, p = 1, q = -1";
        out.ramification_prime = q;
      }
    }
  }

  if (out.interval.lo < report.predicted.lo || out.interval.hi > report.predicted.hi) {
    throw InternalError("refined interval leaves the general bounds");
  }
  if (report.varpi0 == 0) {
    out.annotation = "upper bound expected optimal (informational)";
  } else if (report.varpi0 == 1) {
    out.annotation = "interval, optimality conjectural";
  }
  return out;
}

std::vector<ReferenceRecord> reference_tables(std::int64_t p, const SquarefreeLevel& n, std::int64_t ell) {
  if (!is_prime(p) || !n.divisible_by(p)) {
    throw BadPrime(std::to_string(p) + " is not a prime divisor of " + std::to_string(n.value()));
  }
  const auto rest = factor_squarefree(n.value() / p);
  const BigInt phi_order = BigInt(static_cast<long>(p - 1)) * psi_sf(rest);
  std::vector<ReferenceRecord> out;
  out.push_back({"Sigma_" + std::to_string(p), "cyclic of order p - 1", BigInt(static_cast<long>(p - 1)), true});
  out.push_back({"Sigma_" + std::to_string(p),
                 "U_p acts by 1, U_q by q for the other q | N, T_r by r + 1 for r prime to N", 0, false});
  out.push_back({"Phi_" + std::to_string(p) + "(J)", "order (p - 1) psi(N/p); the image of P_1 - P_p generates Phi",
                 phi_order, true});
  out.push_back({"Phi", "U_p acts by 1, U_q by q for q | N/p, T_r by r + 1 for r prime to N", 0, false});
  if (ell > 3 && phi_order % ell == 0) {
    out.push_back({"Phi[" + std::to_string(ell) + "]", "cyclic of order ell and equal to Phi_p(J)[ell]",
                   BigInt(static_cast<long>(ell)), false});
  } else {
    out.push_back({"Phi[" + std::to_string(ell) + "]", "no cyclic ell-part is asserted", 0, false});
  }
  out.push_back({"torus", "Frob_p acts by -p w_p", 0, false});
  out.push_back({"torus", "U_p + w_p vanishes, so Frob_p acts by p U_p", 0, false});
  return out;
}

}  // namespace eisen
