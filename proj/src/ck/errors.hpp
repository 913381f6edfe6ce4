#pragma once

#include <stdexcept>
#include <string>

namespace ck {

enum class Errc {
  // usage / argument problems
  DimensionMismatch,
  BadArgument,
  // data / schema problems
  ParseError,
  EmptyDataset,
  RaggedRows,
  SchemaError,
  InvariantViolation,
  ClassTooSmall,
  ProtocolInfeasible,
  DuplicateSites,
  OutOfDomainSite,
  EmptyScene,
  // numerical problems
  DomainViolation,
  NumericalFailure,
  DegenerateLine,
  NotPositiveDefinite,
  SingularBlock,
  InconsistentForm,
  DegenerateForm,
  SingularCovariance,
  BadKappa,
  Diverged,
  CoincidentSites,
  DegenerateShape,
  NonpositiveRadius,
};

// Coarse category used for process exit codes and the C API.
enum class ErrCategory { Usage = 1, Data = 2, Numeric = 3 };

inline ErrCategory category(Errc c) {
  switch (c) {
    case Errc::DimensionMismatch:
    case Errc::BadArgument:
      return ErrCategory::Usage;
    case Errc::ParseError:
    case Errc::EmptyDataset:
    case Errc::RaggedRows:
    case Errc::SchemaError:
    case Errc::InvariantViolation:
    case Errc::ClassTooSmall:
    case Errc::ProtocolInfeasible:
    case Errc::DuplicateSites:
    case Errc::OutOfDomainSite:
    case Errc::EmptyScene:
      return ErrCategory::Data;
    default:
      return ErrCategory::Numeric;
  }
}

const char* errc_name(Errc c);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& msg)
      : std::runtime_error(std::string(errc_name(code)) + ": " + msg),
        code_(code) {}
  Errc code() const { return code_; }
  ErrCategory cat() const { return category(code_); }

 private:
  Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) {
  throw Error(code, msg);
}

inline void require(bool ok, Errc code, const std::string& msg) {
  if (!ok) fail(code, msg);
}

}  // namespace ck
