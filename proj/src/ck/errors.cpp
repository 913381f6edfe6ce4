#include "ck/errors.hpp"

namespace ck {

const char* errc_name(Errc c) {
  switch (c) {
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::BadArgument: return "BadArgument";
    case Errc::ParseError: return "ParseError";
    case Errc::EmptyDataset: return "EmptyDataset";
    case Errc::RaggedRows: return "RaggedRows";
    case Errc::SchemaError: return "SchemaError";
    case Errc::InvariantViolation: return "InvariantViolation";
    case Errc::ClassTooSmall: return "ClassTooSmall";
    case Errc::ProtocolInfeasible: return "ProtocolInfeasible";
    case Errc::DuplicateSites: return "DuplicateSites";
    case Errc::OutOfDomainSite: return "OutOfDomainSite";
    case Errc::EmptyScene: return "EmptyScene";
    case Errc::DomainViolation: return "DomainViolation";
    case Errc::NumericalFailure: return "NumericalFailure";
    case Errc::DegenerateLine: return "DegenerateLine";
    case Errc::NotPositiveDefinite: return "NotPositiveDefinite";
    case Errc::SingularBlock: return "SingularBlock";
    case Errc::InconsistentForm: return "InconsistentForm";
    case Errc::DegenerateForm: return "DegenerateForm";
    case Errc::SingularCovariance: return "SingularCovariance";
    case Errc::BadKappa: return "BadKappa";
    case Errc::Diverged: return "Diverged";
    case Errc::CoincidentSites: return "CoincidentSites";
    case Errc::DegenerateShape: return "DegenerateShape";
    case Errc::NonpositiveRadius: return "NonpositiveRadius";
  }
  return "UnknownError";
}

}  // namespace ck
