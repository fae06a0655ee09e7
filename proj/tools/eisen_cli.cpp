#include "eisen/classifier.hpp"
#include "eisen/cusps.hpp"
#include "eisen/error.hpp"
#include "eisen/heckealg.hpp"
#include "eisen/kerneldim.hpp"
#include "eisen/space_cache.hpp"
#include "eisen/verify.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>
#include <unistd.h>

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace eisen {
namespace {

constexpr int kSchemaVersion = 1;
constexpr const char* kArtifactVersion = "0.1.0";
constexpr int kScanCacheVersion = 1;

enum Exit { kPass = 0, kFail = 1, kUsage = 2, kInternal = 3, kNotApplicable = 4 };

class Clock {
 public:
  double lap() {
    const auto now = std::chrono::steady_clock::now();
    const double s = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    return s;
  }

 private:
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

std::string str(const BigInt& x) { return x.get_str(); }

std::string factorization(const SquarefreeLevel& n) {
  std::string out;
  for (auto p : n.primes()) out += (out.empty() ? "" : "*") + std::to_string(p);
  return out.empty() ? "1" : out;
}

json interval_json(const Interval& i) { return {{"lo", i.lo}, {"hi", i.hi}}; }

json store_stats(const SpaceStore& store) {
  const auto s = store.stats();
  return {{"space_memory", s.memory_hits}, {"space_disk", s.disk_hits}, {"space_builds", s.builds},
          {"space_rejected", s.rejected}};
}

struct Common {
  bool json = false;
  bool no_timings = false;
  bool no_cache = false;
};

// Everything that varies between identical runs lives under "timings", so a
// comparison drops that one key (or --no-timings omits it).
void emit(const Common& c, const std::string& command, json inputs, json result, json verdicts, json timings) {
  json rec{{"schema_version", kSchemaVersion},
           {"artifact_version", kArtifactVersion},
           {"command", command},
           {"inputs", std::move(inputs)},
           {"result", std::move(result)},
           {"verdicts", std::move(verdicts)}};
  if (!c.no_timings) rec["timings"] = std::move(timings);
  std::cout << rec.dump(2) << "\n";
}

SpaceStore make_store(const Common& c) { return SpaceStore(c.no_cache ? fs::path{} : SpaceStore::default_dir()); }

// ---- index

struct IndexArgs {
  std::int64_t level = 0, m = 0, bound = 0;
};

int cmd_index(const Common& c, const IndexArgs& a) {
  Clock clock;
  const auto lv = factor_squarefree(a.level);
  if (a.m <= 1 || a.level % a.m != 0) throw BadDivisor("M must satisfy 1 < M | N");
  auto store = make_store(c);
  auto space = store.get(lv);
  const double t_space = clock.lap();
  const std::int64_t bound = a.bound > 0 ? a.bound : sturm_bound(lv);
  const auto lat = build_hecke_lattice(space, bound);
  const double t_lattice = clock.lap();
  const auto rep = compare_index_with_theorem(*lat, a.m, 50);
  const double t_index = clock.lap();
  const auto spec = IdealSpec::eisenstein(lv, a.m);

  if (c.json) {
    json primes = json::array();
    for (const auto& p : rep.primes) {
      primes.push_back({{"y", p.y}, {"in_scope", p.in_scope}, {"computed", p.computed}, {"expected", p.expected},
                        {"pass", p.pass()}});
    }
    json divisors = json::array();
    for (const auto& d : rep.index.elementary_divisors) divisors.push_back(str(d));
    json fac = json::object();
    for (const auto& [p, e] : rep.index.factorization) fac[str(p)] = e;
    emit(c, "index", {{"level", a.level}, {"m", a.m}, {"bound", bound}},
         {{"ideal", spec.str()}, {"genus", lat->rank()}, {"index", str(rep.index.n)}, {"factorization", fac},
          {"elementary_divisors", divisors}, {"m_formula", str(rep.m)}, {"primes", primes}},
         {{"pass", rep.pass()}},
         {{"space", t_space}, {"lattice", t_lattice}, {"index", t_index}, {"cache_hits", store_stats(store)}});
  } else {
    std::printf("level %lld, ideal %s, degree bound %lld, genus %zu\n", static_cast<long long>(a.level),
                spec.str().c_str(), static_cast<long long>(bound), lat->rank());
    std::printf("index n = %s\n", str(rep.index.n).c_str());
    std::printf("m = num(phi(N) psi(N/M) / 3) = %s\n", str(rep.m).c_str());
    std::printf("%4s %7s %7s  %s\n", "y", "v_y(n)", "v_y(m)", "verdict");
    for (const auto& p : rep.primes) {
      if (!p.in_scope && p.computed == 0 && p.expected == 0) continue;
      std::printf("%4lld %7d %7d  %s\n", static_cast<long long>(p.y), p.computed, p.expected,
                  !p.in_scope ? "not checked (y | 2N)" : p.pass() ? "pass" : "FAIL");
    }
    std::printf("%s\n", rep.pass() ? "pass" : "FAIL");
  }
  return rep.pass() ? kPass : kFail;
}

// ---- cusp-order

int cmd_cusp_order(const Common& c, std::int64_t level, std::int64_t m) {
  Clock clock;
  const auto lv = factor_squarefree(level);
  const auto divisor = c_divisor(m, lv);
  auto store = make_store(c);
  auto space = store.get(lv);
  const double t_space = clock.lap();
  const BigInt order = class_order(divisor, *space);
  const auto co = factor_squarefree(level / m);
  const BigInt formula = numerator_of(Rational(phi_sf(lv) * psi_sf(co), BigInt(3)));
  const BigInt odd_order = strip_primes(order, {2});
  const BigInt odd_formula = strip_primes(formula, {2});
  const bool pass = odd_order == odd_formula;
  const double t_order = clock.lap();
  if (c.json) {
    emit(c, "cusp-order", {{"level", level}, {"m", m}},
         {{"divisor", divisor.str()}, {"order", str(order)}, {"formula", str(formula)},
          {"odd_order", str(odd_order)}, {"odd_formula", str(odd_formula)},
          {"two_part_agrees", order == formula}},
         {{"pass", pass}, {"two_part", "unchecked"}},
         {{"space", t_space}, {"order", t_order}, {"cache_hits", store_stats(store)}});
  } else {
    std::printf("C_{%lld,%lld} = %s\n", static_cast<long long>(m), static_cast<long long>(level), divisor.str().c_str());
    std::printf("order %s, formula num(phi(N) psi(N/M) / 3) = %s\n", str(order).c_str(), str(formula).c_str());
    std::printf("odd parts %s and %s: %s (2-part %s, unchecked)\n", str(odd_order).c_str(), str(odd_formula).c_str(),
                pass ? "pass" : "FAIL", order == formula ? "agrees" : "differs");
  }
  return pass ? kPass : kFail;
}

// ---- dim

json report_json(const DimReport& r) {
  const auto& inv = r.invariants;
  json trace = json::array();
  for (const auto& s : r.trace) trace.push_back({{"generator", s.generator}, {"dim", s.dim}});
  json out{{"canonical_m", r.descriptor.m},
           {"s", inv.s},
           {"s0", inv.s0},
           {"varpi0", inv.varpi0},
           {"varpi_ell", inv.varpi_ell_SN},
           {"general_interval", interval_json(inv.predicted)},
           {"interval", interval_json(r.prediction.interval)},
           {"rule", r.prediction.rule},
           {"annotation", r.prediction.annotation},
           {"dim", r.dim},
           {"trace", trace}};
  if (r.ramification_inferred) {
    out["ramification"] = {{"prime", r.prediction.ramification_prime}, {"ramified", r.ramified}};
  }
  return out;
}

int cmd_dim(const Common& c, std::int64_t level, std::int64_t m, std::int64_t ell, bool show_trace) {
  Clock clock;
  auto store = make_store(c);
  const auto r = dim_report(level, m, ell, &store);
  const double t_total = clock.lap();
  if (c.json) {
    emit(c, "dim", {{"level", level}, {"m", m}, {"ell", ell}}, report_json(r), {{"pass", r.verdict}},
         {{"total", t_total}, {"cache_hits", store_stats(store)}});
    return r.verdict ? kPass : kFail;
  }
  const auto& inv = r.invariants;
  std::printf("level %lld = %s, ell %lld\n", static_cast<long long>(level), factorization(r.descriptor.n).c_str(),
              static_cast<long long>(ell));
  if (r.descriptor.m != m) {
    std::printf("M = %lld canonicalizes to %lld (added primes are 1 mod ell)\n", static_cast<long long>(m),
                static_cast<long long>(r.descriptor.m));
  }
  std::printf("s = %d, s0 = %d, varpi0 = %d, varpi_ell(S_N) = %d\n", inv.s, inv.s0, inv.varpi0, inv.varpi_ell_SN);
  std::printf("general bounds [%d, %d]; predicted [%d, %d] by %s\n", inv.predicted.lo, inv.predicted.hi,
              r.prediction.interval.lo, r.prediction.interval.hi, r.prediction.rule.c_str());
  if (!r.prediction.annotation.empty()) std::printf("note: %s\n", r.prediction.annotation.c_str());
  if (show_trace) {
    for (const auto& s : r.trace) std::printf("  after %-14s dim %zu\n", s.generator.c_str(), s.dim);
  }
  std::printf("dim J[m] = %zu: %s\n", r.dim, r.verdict ? "pass" : "FAIL");
  if (r.ramification_inferred) {
    std::printf("inferred: %s at %lld\n", r.ramified ? "ramified" : "unramified",
                static_cast<long long>(r.prediction.ramification_prime));
  }
  return r.verdict ? kPass : kFail;
}

// ---- scan

struct ScanArgs {
  std::int64_t max_n = 0, ell_max = 0;
  std::string shape = "any", regime = "all", out;
  unsigned jobs = 1;
};

struct ScanRow {
  std::int64_t n = 0, m = 0, ell = 0;
  std::string fac;
  int s = 0, s0 = 0, varpi0 = 0, varpi_ell = 0, dim = 0, lo = 0, hi = 0;
  bool verdict = false;
  std::string rule;
  std::int64_t ramification_prime = 0;
  bool ramified = false;
};

void to_json(json& j, const ScanRow& r) {
  j = {{"N", r.n}, {"factorization", r.fac}, {"M", r.m}, {"ell", r.ell}, {"s", r.s}, {"s0", r.s0},
       {"varpi0", r.varpi0}, {"varpi_ell", r.varpi_ell}, {"dim", r.dim}, {"lo", r.lo}, {"hi", r.hi},
       {"verdict", r.verdict ? "pass" : "fail"}, {"rule", r.rule}};
  if (r.ramification_prime != 0) j["ramification"] = {{"prime", r.ramification_prime}, {"ramified", r.ramified}};
}

void from_json(const json& j, ScanRow& r) {
  r.n = j.at("N");
  r.fac = j.at("factorization");
  r.m = j.at("M");
  r.ell = j.at("ell");
  r.s = j.at("s");
  r.s0 = j.at("s0");
  r.varpi0 = j.at("varpi0");
  r.varpi_ell = j.at("varpi_ell");
  r.dim = j.at("dim");
  r.lo = j.at("lo");
  r.hi = j.at("hi");
  r.verdict = j.at("verdict") == "pass";
  r.rule = j.at("rule");
  if (j.contains("ramification")) {
    r.ramification_prime = j["ramification"].at("prime");
    r.ramified = j["ramification"].at("ramified");
  }
}

struct WorkItem {
  SquarefreeLevel n;
  std::int64_t ell = 0;
  std::vector<EisensteinIdealDescriptor> descriptors;
};

std::vector<SquarefreeLevel> scan_levels(const ScanArgs& a) {
  std::vector<SquarefreeLevel> out;
  if (a.shape == "any") {
    for (std::int64_t n = 2; n <= a.max_n; ++n) {
      if (is_squarefree(n)) out.push_back(factor_squarefree(n));
    }
  } else {
    // pq: the bound applies to each prime, not to the product.
    std::vector<std::int64_t> ns;
    const auto ps = primes_up_to(a.max_n);
    for (std::size_t i = 0; i < ps.size(); ++i) {
      for (std::size_t j = i + 1; j < ps.size(); ++j) ns.push_back(ps[i] * ps[j]);
    }
    std::sort(ns.begin(), ns.end());
    for (auto n : ns) out.push_back(factor_squarefree(n));
  }
  return out;
}

// N = pq, M = p with p = 1 and q = -1 mod ell; the only pq shape whose
// dimension can be 3 for M = p.
bool in_p1_qm1(const EisensteinIdealDescriptor& d) {
  if (d.n.num_primes() != 2 || !is_prime(d.m)) return false;
  const auto q = d.n.value() / d.m;
  return d.m % d.ell == 1 && q % d.ell == d.ell - 1;
}

std::vector<WorkItem> scan_items(const ScanArgs& a) {
  std::vector<WorkItem> items;
  std::vector<std::int64_t> ells;
  for (auto ell : primes_up_to(a.ell_max)) {
    if (ell >= 5) ells.push_back(ell);
  }
  for (const auto& lv : scan_levels(a)) {
    for (auto ell : ells) {
      if (lv.divisible_by(ell)) continue;
      WorkItem item{lv, ell, {}};
      std::set<std::int64_t> seen;
      for (auto m : lv.divisors()) {
        if (m == 1) continue;
        const auto d = canonicalize(lv.value(), m, ell);
        if (!is_maximal(d) || !seen.insert(d.m).second) continue;
        if (a.regime == "p1-qm1" && !in_p1_qm1(d)) continue;
        item.descriptors.push_back(d);
      }
      if (!item.descriptors.empty()) items.push_back(std::move(item));
    }
  }
  return items;
}

fs::path scan_cache_file(const fs::path& dir, const WorkItem& item) {
  return dir / ("scan-v" + std::to_string(kScanCacheVersion)) /
         (std::to_string(item.n.value()) + "-" + std::to_string(item.ell) + ".json");
}

bool load_rows(const fs::path& file, const WorkItem& item, std::vector<ScanRow>& rows) {
  std::ifstream in(file);
  if (!in) return false;
  try {
    const auto j = json::parse(in);
    std::vector<ScanRow> all = j.at("rows").get<std::vector<ScanRow>>();
    // the file covers every descriptor of the item; keep the requested ones
    for (const auto& d : item.descriptors) {
      auto it = std::find_if(all.begin(), all.end(), [&](const ScanRow& r) { return r.m == d.m; });
      if (it == all.end()) return false;
      rows.push_back(*it);
    }
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

void save_rows(const fs::path& file, const std::vector<ScanRow>& rows) {
  try {
    fs::create_directories(file.parent_path());
    const auto tmp = file.string() + ".tmp." + std::to_string(::getpid()) + "." +
                     std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
    {
      std::ofstream out(tmp);
      out << json{{"version", kScanCacheVersion}, {"rows", rows}}.dump() << "\n";
      if (!out) return;
    }
    fs::rename(tmp, file);
  } catch (const std::exception&) {
    // the cache is an optimization only
  }
}

ScanRow make_row(const EisensteinIdealDescriptor& d, const ModEllSpace& ms) {
  const auto inv = invariants(d);
  const auto pred = refine_prediction(d, inv);
  ScanRow r;
  r.n = d.n.value();
  r.fac = factorization(d.n);
  r.m = d.m;
  r.ell = d.ell;
  r.s = inv.s;
  r.s0 = inv.s0;
  r.varpi0 = inv.varpi0;
  r.varpi_ell = inv.varpi_ell_SN;
  r.dim = static_cast<int>(dim_kernel(ms, IdealSpec::eisenstein(d.n, d.m)));
  r.lo = pred.interval.lo;
  r.hi = pred.interval.hi;
  r.verdict = pred.interval.contains(r.dim) && inv.predicted.contains(r.dim);
  r.rule = pred.rule;
  if (pred.ramification_prime != 0) {
    r.ramification_prime = pred.ramification_prime;
    r.ramified = r.dim == 3;
  }
  return r;
}

void write_csv(std::ostream& os, const std::vector<ScanRow>& rows) {
  os << "N,p-factorization,M,ell,s,s0,varpi0,varpi_ell,dim,lo,hi,verdict\n";
  for (const auto& r : rows) {
    os << r.n << ',' << r.fac << ',' << r.m << ',' << r.ell << ',' << r.s << ',' << r.s0 << ',' << r.varpi0 << ','
       << r.varpi_ell << ',' << r.dim << ',' << r.lo << ',' << r.hi << ',' << (r.verdict ? "pass" : "fail") << '\n';
  }
}

int cmd_scan(const Common& c, ScanArgs a) {
  if (a.shape != "any" && a.shape != "pq") throw UsageError("--shape must be pq or any");
  if (a.regime != "all" && a.regime != "p1-qm1") throw UsageError("--regime must be all or p1-qm1");
  if (a.jobs == 0) throw UsageError("--jobs must be positive");
  enum class Format { Csv, Json };
  Format format = c.json ? Format::Json : Format::Csv;
  if (!a.out.empty()) {
    const auto ext = fs::path(a.out).extension();
    if (ext == ".csv") {
      format = Format::Csv;
    } else if (ext == ".json") {
      format = Format::Json;
    } else {
      throw UsageError("--out must end in .csv or .json");
    }
  }

  Clock clock;
  const auto items = scan_items(a);
  const fs::path cache_dir = c.no_cache ? fs::path{} : SpaceStore::default_dir();
  SpaceStore store(cache_dir);
  std::vector<std::vector<ScanRow>> results(items.size());
  std::atomic<std::size_t> next{0}, item_hits{0};
  std::mutex error_mutex;
  std::exception_ptr error;

  auto worker = [&] {
    for (;;) {
      const std::size_t i = next++;
      if (i >= items.size()) return;
      const auto& item = items[i];
      try {
        const auto file = cache_dir.empty() ? fs::path{} : scan_cache_file(cache_dir, item);
        std::vector<ScanRow> rows;
        if (!file.empty() && load_rows(file, item, rows)) {
          ++item_hits;
        } else {
          rows.clear();
          ModEllSpace ms(store.get(item.n), item.ell);
          for (const auto& d : item.descriptors) rows.push_back(make_row(d, ms));
          if (!file.empty()) save_rows(file, rows);
        }
        results[i] = std::move(rows);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
        next = items.size();
      }
    }
  };
  std::vector<std::thread> pool;
  const unsigned workers = std::min<unsigned>(a.jobs, std::max<std::size_t>(items.size(), 1));
  for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (error) std::rethrow_exception(error);
  const double t_scan = clock.lap();

  std::vector<ScanRow> rows;
  for (auto& r : results) rows.insert(rows.end(), r.begin(), r.end());
  std::sort(rows.begin(), rows.end(), [](const ScanRow& x, const ScanRow& y) {
    return std::tie(x.n, x.ell, x.m) < std::tie(y.n, y.ell, y.m);
  });
  const auto failed = static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [](const ScanRow& r) { return !r.verdict; }));
  std::map<int, std::size_t> by_dim;
  for (const auto& r : rows) ++by_dim[r.dim];

  std::ostringstream summary;
  summary << "scan: " << rows.size() << " rows, " << rows.size() - failed << " pass, " << failed << " fail;";
  for (const auto& [d, k] : by_dim) summary << " dim " << d << ": " << k << ";";
  summary << " " << item_hits.load() << " of " << items.size() << " work items from cache";

  std::ofstream file;
  if (!a.out.empty()) {
    file.open(a.out);
    if (!file) throw UsageError("cannot write " + a.out);
  }
  std::ostream& os = a.out.empty() ? std::cout : file;
  if (format == Format::Csv) {
    write_csv(os, rows);
  } else {
    json rec{{"schema_version", kSchemaVersion},
             {"artifact_version", kArtifactVersion},
             {"command", "scan"},
             {"inputs",
              {{"max_N", a.max_n}, {"ell_max", a.ell_max}, {"shape", a.shape}, {"regime", a.regime}}},
             {"result", {{"rows", rows}}},
             {"verdicts", {{"pass", failed == 0}, {"rows", rows.size()}, {"failed", failed}}}};
    if (!c.no_timings) {
      json hits = store_stats(store);
      hits["scan_items"] = item_hits.load();
      rec["timings"] = {{"scan", t_scan}, {"jobs", a.jobs}, {"cache_hits", hits}};
    }
    os << rec.dump(2) << "\n";
  }
  // keep stdout clean when it carries the table
  (a.out.empty() ? std::cerr : std::cout) << summary.str() << "\n";
  return failed == 0 ? kPass : kFail;
}

// ---- verify

int cmd_verify(const Common& c, const std::string& suite, double budget) {
  VerifyOptions opts;
  opts.budget_seconds = budget;
  if (!c.json) {
    opts.on_check = [](const CheckOutcome& o) {
      std::printf("check %2d %s  %s [%zu cases, %.1f s]: %s\n", o.id, o.skipped ? "SKIP" : o.pass ? "PASS" : "FAIL",
                  o.name.c_str(), o.cases, o.seconds, o.detail.c_str());
      for (const auto& f : o.failures) std::printf("    failed: %s\n", f.c_str());
      std::fflush(stdout);
    };
  }
  const auto res = run_suite(suite, opts);
  if (c.json) {
    json checks = json::array();
    json seconds = json::object();
    for (const auto& o : res.checks) {
      checks.push_back({{"id", o.id}, {"name", o.name}, {"pass", o.pass}, {"skipped", o.skipped},
                        {"cases", o.cases}, {"failures", o.failures}, {"detail", o.detail}});
      seconds[std::to_string(o.id)] = o.seconds;
    }
    emit(c, "verify", {{"suite", suite}, {"budget", budget}},
         {{"checks", checks}, {"budget_exhausted", res.budget_exhausted}}, {{"pass", res.pass()}},
         {{"checks", seconds}});
  } else {
    std::printf("suite %s: %s%s\n", suite.c_str(), res.pass() ? "pass" : "FAIL",
                res.budget_exhausted ? " (budget exhausted)" : "");
  }
  return res.pass() ? kPass : kFail;
}

int exit_code(const Error& e) {
  switch (e.kind()) {
    case Error::Kind::Usage: return kUsage;
    case Error::Kind::NotApplicable: return kNotApplicable;
    case Error::Kind::Internal: break;
  }
  return kInternal;
}

}  // namespace
}  // namespace eisen

int main(int argc, char** argv) {
  using namespace eisen;
  CLI::App app{"Eisenstein ideals on J_0(N) for square-free N"};
  app.require_subcommand(1);
  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_flag("--json", common.json, "Print one JSON record");
    sub->add_flag("--no-timings", common.no_timings, "Leave run-dependent fields out of JSON output");
    sub->add_flag("--no-cache", common.no_cache, "Do not read or write the cache directory ($EISEN_CACHE)");
  };

  IndexArgs index_args;
  auto* index = app.add_subcommand("index", "Index of I_M in the Hecke ring, compared with the closed form");
  index->add_option("--level", index_args.level, "Square-free level N")->required();
  index->add_option("--m", index_args.m, "Divisor M of N, M > 1")->required();
  index->add_option("--bound", index_args.bound, "Degree bound for the Hecke ring (default: Sturm bound)");
  add_common(index);

  std::int64_t level = 0, m = 0, ell = 0;
  auto* cusp = app.add_subcommand("cusp-order", "Order of the cuspidal divisor C_{M,N}");
  cusp->add_option("--level", level, "Square-free level N")->required();
  cusp->add_option("--m", m, "Divisor M of N, M > 1")->required();
  add_common(cusp);

  bool trace = false;
  auto* dim = app.add_subcommand("dim", "Dimension of J_0(N)[m] with its predicted interval");
  dim->add_option("--level", level, "Square-free level N")->required();
  dim->add_option("--m", m, "Divisor M of N, M > 1")->required();
  dim->add_option("--ell", ell, "Prime ell >= 5 not dividing N")->required();
  dim->add_flag("--trace", trace, "Show the kernel dimension after each generator");
  add_common(dim);

  ScanArgs scan_args;
  auto* scan = app.add_subcommand("scan", "Dimensions for every canonical maximal ideal in a range");
  scan->add_option("--max-N", scan_args.max_n, "Largest level; with --shape pq, the largest prime")->required();
  scan->add_option("--ell-max", scan_args.ell_max, "Largest ell (every prime 5 <= ell <= this)")->required();
  scan->add_option("--shape", scan_args.shape, "pq or any")->capture_default_str();
  scan->add_option("--regime", scan_args.regime, "all, or p1-qm1 for N = pq, M = p, p = 1, q = -1 mod ell")
      ->capture_default_str();
  scan->add_option("--out", scan_args.out, "Write the table to a .csv or .json file");
  scan->add_option("--jobs", scan_args.jobs, "Worker threads")->capture_default_str();
  add_common(scan);

  std::string suite = "all";
  double budget = 0;
  auto* verify = app.add_subcommand("verify", "Run the verification checks");
  verify->add_option("--suite", suite, "index, cusp, dim, eisen, structure or all")->capture_default_str();
  verify->add_option("--budget", budget, "Seconds after which no further check starts (0: none)");
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }

  try {
    if (*index) return cmd_index(common, index_args);
    if (*cusp) return cmd_cusp_order(common, level, m);
    if (*dim) return cmd_dim(common, level, m, ell, trace);
    if (*scan) return cmd_scan(common, scan_args);
    if (*verify) return cmd_verify(common, suite, budget);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return exit_code(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "internal error: %s\n", e.what());
    return kInternal;
  }
  return kUsage;
}
