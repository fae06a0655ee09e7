#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "eisen/error.hpp"
#include "eisen/space_cache.hpp"

#include <filesystem>
#include <fstream>

using namespace eisen;
namespace fs = std::filesystem;

namespace {

fs::path fresh_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("eisen-test-" + name + "-" + std::to_string(::getpid()));
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("save and load round trip") {
  const auto dir = fresh_dir("roundtrip");
  for (std::int64_t n : {11, 30, 143}) {
    CAPTURE(n);
    auto built = build_space(factor_squarefree(n));
    const auto file = dir / ("s" + std::to_string(n));
    save_space(*built, file);
    auto loaded = load_space(file, n);
    CHECK(loaded->dimension() == built->dimension());
    CHECK(loaded->cuspidal_basis() == built->cuspidal_basis());
    for (auto p : built->level().primes()) CHECK(loaded->hecke_U(p).matrix == built->hecke_U(p).matrix);
    for (std::int64_t r : {2, 3, 7}) {
      if (n % r != 0) CHECK(loaded->hecke_T(r).matrix == built->hecke_T(r).matrix);
    }
    CHECK_THROWS_AS(load_space(file, n == 11 ? 13 : 11), CacheError);
  }
  fs::remove_all(dir);
}

TEST_CASE("damaged cache files are rejected and rebuilt") {
  const auto dir = fresh_dir("damaged");
  {
    SpaceStore store(dir);
    store.get(factor_squarefree(77));
    CHECK(store.stats().builds == 1);
  }
  const auto file = dir / "space-77.bin";
  REQUIRE(fs::exists(file));
  {
    SpaceStore store(dir);
    auto s = store.get(factor_squarefree(77));
    CHECK(store.stats().disk_hits == 1);
    CHECK(s->cuspidal_dimension() == 2 * 7);
  }
  // flip bytes in the middle of the file
  {
    std::fstream f(file, std::ios::in | std::ios::out | std::ios::binary);
    f.seekp(static_cast<std::streamoff>(fs::file_size(file) / 2));
    const char junk[16] = {'\x7f', '\x7f', '\x7f', '\x7f', '\x7f', '\x7f', '\x7f', '\x7f',
                           '\x7f', '\x7f', '\x7f', '\x7f', '\x7f', '\x7f', '\x7f', '\x7f'};
    f.write(junk, sizeof(junk));
  }
  {
    SpaceStore store(dir);
    auto s = store.get(factor_squarefree(77));
    CHECK(store.stats().rejected == 1);
    CHECK(store.stats().builds == 1);
    CHECK(s->cuspidal_basis() == build_space(factor_squarefree(77))->cuspidal_basis());
  }
  // a truncated file is rejected too
  fs::resize_file(file, 40);
  {
    SpaceStore store(dir);
    store.get(factor_squarefree(77));
    CHECK(store.stats().rejected == 1);
  }
  fs::remove_all(dir);
}

TEST_CASE("memory layer") {
  SpaceStore store;
  auto a = store.get(factor_squarefree(35));
  auto b = store.get(factor_squarefree(35));
  CHECK(a.get() == b.get());
  CHECK(store.stats().memory_hits == 1);
  CHECK(store.stats().builds == 1);
  a.reset();
  b.reset();
  // nothing holds the space any more, so it is built again
  store.get(factor_squarefree(35));
  CHECK(store.stats().builds == 2);
}
