#include "eisen/space_cache.hpp"

#include "eisen/error.hpp"

#include <cstdlib>
#include <cstring>
#include <fstream>
#include <random>
#include <thread>
#include <unistd.h>

namespace eisen {

namespace {

constexpr char kMagic[8] = {'E', 'I', 'S', 'M', 'S', 'Y', 'M', '1'};
constexpr std::uint32_t kVersion = 1;

class Writer {
 public:
  explicit Writer(std::ofstream& out) : out_(out) {}
  template <typename T>
  void pod(const T& x) {
    out_.write(reinterpret_cast<const char*>(&x), sizeof(T));
  }
  template <typename T>
  void vec(const std::vector<T>& v) {
    pod(static_cast<std::uint64_t>(v.size()));
    if (!v.empty()) out_.write(reinterpret_cast<const char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(T)));
  }

 private:
  std::ofstream& out_;
};

class Reader {
 public:
  explicit Reader(std::ifstream& in) : in_(in) {}
  template <typename T>
  T pod() {
    T x{};
    in_.read(reinterpret_cast<char*>(&x), sizeof(T));
    if (!in_) throw CacheError("truncated cache file");
    return x;
  }
  template <typename T>
  std::vector<T> vec() {
    const auto n = pod<std::uint64_t>();
    if (n > (1ull << 32)) throw CacheError("implausible vector length");
    std::vector<T> v(n);
    if (n) in_.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(n * sizeof(T)));
    if (!in_) throw CacheError("truncated cache file");
    return v;
  }

 private:
  std::ifstream& in_;
};

void validate(const ModularSymbolSpace& space, std::size_t stored_cuspidal_dim) {
  const auto& pres = space.presentation();
  const auto& p1 = space.p1();
  const std::size_t psi = pres.generators.size();
  std::mt19937_64 rng(static_cast<std::uint64_t>(space.n()));
  for (int trial = 0; trial < 2; ++trial) {
    const std::size_t i = static_cast<std::size_t>(rng() % psi);
    const auto& x = pres.generators[i];
    std::vector<std::int64_t> two(psi, 0), three(psi, 0);
    two[i] += 1;
    two[static_cast<std::size_t>(p1.index(x.d, -x.c))] += 1;
    three[i] += 1;
    three[static_cast<std::size_t>(p1.index(x.d, -x.c - x.d))] += 1;
    three[static_cast<std::size_t>(p1.index(-x.c - x.d, x.c))] += 1;
    for (const auto& v : {two, three}) {
      for (auto c : space.push_down(v)) {
        if (c != 0) throw CacheError("cached presentation violates a Manin relation");
      }
    }
  }
  if (space.cuspidal_dimension() != stored_cuspidal_dim ||
      space.cuspidal_dimension() + space.num_cusps() - 1 != space.dimension()) {
    throw CacheError("boundary kernel dimension mismatch");
  }
}

}  // namespace

void save_space(const ModularSymbolSpace& space, const std::filesystem::path& file) {
  const auto& pres = space.presentation();
  std::filesystem::create_directories(file.parent_path());
  const auto tmp = file.string() + ".tmp." + std::to_string(::getpid()) + "." +
                   std::to_string(std::hash<std::thread::id>{}(std::this_thread::get_id()));
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw CacheError("cannot write " + tmp);
    Writer w(out);
    out.write(kMagic, sizeof(kMagic));
    w.pod(kVersion);
    w.pod(pres.level);
    w.pod(static_cast<std::uint64_t>(space.cuspidal_dimension()));
    w.vec(pres.generators);
    w.vec(pres.alias_edge);
    w.vec(pres.alias_sign);
    w.pod(pres.num_edges);
    w.vec(pres.edge_free);
    w.vec(pres.free_symbol);
    w.vec(pres.pivot_edge);
    w.vec(pres.pivot_offset);
    w.vec(pres.term_edge);
    w.vec(pres.term_coef);
    w.vec(pres.cusp_tree);
    if (!out) throw CacheError("write failed for " + tmp);
  }
  std::filesystem::rename(tmp, file);
}

std::shared_ptr<const ModularSymbolSpace> load_space(const std::filesystem::path& file, std::int64_t level) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw CacheError("cannot open " + file.string());
  char magic[sizeof(kMagic)];
  in.read(magic, sizeof(magic));
  if (!in || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0) throw CacheError("bad magic tag");
  Reader r(in);
  if (r.pod<std::uint32_t>() != kVersion) throw CacheError("unsupported cache version");
  Presentation pres;
  pres.level = r.pod<std::int64_t>();
  if (pres.level != level) throw CacheError("cache file is for another level");
  const auto cusp_dim = r.pod<std::uint64_t>();
  pres.generators = r.vec<P1Element>();
  pres.alias_edge = r.vec<std::int32_t>();
  pres.alias_sign = r.vec<std::int8_t>();
  pres.num_edges = r.pod<std::int32_t>();
  pres.edge_free = r.vec<std::int32_t>();
  pres.free_symbol = r.vec<std::int32_t>();
  pres.pivot_edge = r.vec<std::int32_t>();
  pres.pivot_offset = r.vec<std::int32_t>();
  pres.term_edge = r.vec<std::int32_t>();
  pres.term_coef = r.vec<std::int8_t>();
  pres.cusp_tree = r.vec<std::uint8_t>();
  const std::size_t psi = pres.generators.size();
  if (pres.alias_edge.size() != psi || pres.alias_sign.size() != psi ||
      pres.edge_free.size() != static_cast<std::size_t>(pres.num_edges) ||
      pres.pivot_offset.size() != pres.pivot_edge.size() + 1 || pres.term_coef.size() != pres.term_edge.size()) {
    throw CacheError("inconsistent array sizes");
  }
  for (auto e : pres.alias_edge) {
    if (e >= pres.num_edges) throw CacheError("edge index out of range");
  }
  for (auto e : pres.pivot_edge) {
    if (e < 0 || e >= pres.num_edges) throw CacheError("pivot index out of range");
  }
  for (auto e : pres.term_edge) {
    if (e < 0 || e >= pres.num_edges) throw CacheError("term index out of range");
  }
  for (auto o : pres.pivot_offset) {
    if (o < 0 || static_cast<std::size_t>(o) > pres.term_edge.size()) throw CacheError("offset out of range");
  }
  for (auto s : pres.free_symbol) {
    if (s < 0 || static_cast<std::size_t>(s) >= psi || pres.alias_edge[static_cast<std::size_t>(s)] < 0) {
      throw CacheError("free symbol out of range");
    }
  }
  auto space = std::make_shared<const ModularSymbolSpace>(std::move(pres));
  validate(*space, cusp_dim);
  return space;
}

SpaceStore::SpaceStore(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path SpaceStore::default_dir() {
  const char* env = std::getenv("EISEN_CACHE");
  if (env != nullptr && *env != '\0') return env;
  return ".eisen-cache";
}

std::shared_ptr<const ModularSymbolSpace> SpaceStore::get(const SquarefreeLevel& n) {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = memory_.find(n.value());
    if (it != memory_.end()) {
      if (auto live = it->second.lock()) {
        ++stats_.memory_hits;
        return live;
      }
    }
  }
  // Loading and building happen outside the lock; two threads asking for
  // the same level at once may both build it, and the first one wins.
  std::shared_ptr<const ModularSymbolSpace> space;
  bool from_disk = false, rejected = false;
  const auto file = dir_.empty() ? std::filesystem::path{} : dir_ / ("space-" + std::to_string(n.value()) + ".bin");
  if (!file.empty() && std::filesystem::exists(file)) {
    try {
      space = load_space(file, n.value());
      from_disk = true;
    } catch (const CacheError&) {
      rejected = true;
    }
  }
  if (!space) {
    space = build_space(n);
    if (!file.empty()) {
      try {
        save_space(*space, file);
      } catch (const std::exception&) {
        // a read-only cache directory only costs speed
      }
    }
  }
  std::lock_guard<std::mutex> lock(mutex_);
  if (rejected) ++stats_.rejected;
  ++(from_disk ? stats_.disk_hits : stats_.builds);
  auto& slot = memory_[n.value()];
  if (auto live = slot.lock()) return live;
  slot = space;
  return space;
}

SpaceStore::Stats SpaceStore::stats() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return stats_;
}

}  // namespace eisen
