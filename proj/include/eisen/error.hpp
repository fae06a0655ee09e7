#pragma once

#include <stdexcept>
#include <string>

namespace eisen {

// Base for every failure the library reports. The CLI maps the kind onto an
// exit code, so each concrete error says which bucket it belongs to.
class Error : public std::runtime_error {
 public:
  enum class Kind { Usage, Internal, NotApplicable };

  Error(Kind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  Kind kind() const noexcept { return kind_; }

 private:
  Kind kind_;
};

#define EISEN_DEFINE_ERROR(Name, KindValue)                         \
  class Name : public Error {                                      \
   public:                                                         \
    explicit Name(const std::string& what)                         \
        : Error(Kind::KindValue, std::string(#Name ": ") + what) {} \
  }

EISEN_DEFINE_ERROR(UsageError, Usage);
EISEN_DEFINE_ERROR(NotSquarefree, Usage);
EISEN_DEFINE_ERROR(NotProjectivePoint, Usage);
EISEN_DEFINE_ERROR(BadPrime, Usage);
EISEN_DEFINE_ERROR(BadDivisor, Usage);
EISEN_DEFINE_ERROR(BadLabel, Usage);
EISEN_DEFINE_ERROR(LevelMismatch, Usage);
EISEN_DEFINE_ERROR(NonzeroDegree, Usage);
EISEN_DEFINE_ERROR(NotMaximal, NotApplicable);
EISEN_DEFINE_ERROR(NotCyclic, Internal);
EISEN_DEFINE_ERROR(RankDeficient, Internal);
EISEN_DEFINE_ERROR(NoWqMatrix, Internal);
EISEN_DEFINE_ERROR(CacheError, Internal);
EISEN_DEFINE_ERROR(InternalError, Internal);

#undef EISEN_DEFINE_ERROR

class BadInput : public Error {
 public:
  explicit BadInput(const std::string& what) : BadInput("BadInput", what) {}

 protected:
  BadInput(const char* name, const std::string& what) : Error(Kind::Usage, std::string(name) + ": " + what) {}
};

// An unusable residue characteristic; also a BadInput for callers that
// only validate arguments.
class BadEll : public BadInput {
 public:
  explicit BadEll(const std::string& what) : BadInput("BadEll", what) {}
};

}  // namespace eisen
