#include "tam/error.hpp"

namespace tam {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnknownTile: return "UnknownTile";
    case ErrorKind::Occupied: return "Occupied";
    case ErrorKind::InsufficientStrength: return "InsufficientStrength";
    case ErrorKind::ConstrainedLocation: return "ConstrainedLocation";
    case ErrorKind::NotAdjacent: return "NotAdjacent";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::InvalidStep: return "InvalidStep";
    case ErrorKind::StateBudgetExceeded: return "StateBudgetExceeded";
    case ErrorKind::InvalidWindow: return "InvalidWindow";
    case ErrorKind::WindowSideMismatch: return "WindowSideMismatch";
    case ErrorKind::MovieMismatch: return "MovieMismatch";
    case ErrorKind::SpliceStepInvalid: return "SpliceStepInvalid";
    case ErrorKind::InvalidTrace: return "InvalidTrace";
    case ErrorKind::NotTwoDimensional: return "NotTwoDimensional";
    case ErrorKind::NoMatchingWindow: return "NoMatchingWindow";
    case ErrorKind::InvalidSetup: return "InvalidSetup";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SchemaVersionUnsupported: return "SchemaVersionUnsupported";
    case ErrorKind::SliceOutOfRange: return "SliceOutOfRange";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message, std::optional<std::size_t> index,
             std::optional<ErrorKind> cause)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      index_(index),
      cause_(cause) {}

}  // namespace tam
