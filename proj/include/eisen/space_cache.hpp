#pragma once

#include "eisen/modsym.hpp"

#include <atomic>
#include <filesystem>
#include <map>
#include <memory>
#include <mutex>

namespace eisen {

// Binary on-disk form of a presentation. Loading re-validates two random
// Manin relations and the dimension of the boundary kernel.
void save_space(const ModularSymbolSpace& space, const std::filesystem::path& file);
std::shared_ptr<const ModularSymbolSpace> load_space(const std::filesystem::path& file, std::int64_t level);

// Store of spaces backed by an optional cache directory. The memory layer
// only holds weak references, so a space lives as long as some caller
// keeps it.
class SpaceStore {
 public:
  struct Stats {
    std::size_t memory_hits = 0;
    std::size_t disk_hits = 0;
    std::size_t builds = 0;
    std::size_t rejected = 0;
  };

  // An empty directory disables the disk layer.
  explicit SpaceStore(std::filesystem::path dir = {});

  // $EISEN_CACHE, or ".eisen-cache" when unset.
  static std::filesystem::path default_dir();

  std::shared_ptr<const ModularSymbolSpace> get(const SquarefreeLevel& n);
  Stats stats() const;
  const std::filesystem::path& dir() const { return dir_; }

 private:
  std::filesystem::path dir_;
  mutable std::mutex mutex_;
  std::map<std::int64_t, std::weak_ptr<const ModularSymbolSpace>> memory_;
  Stats stats_;
};

}  // namespace eisen
