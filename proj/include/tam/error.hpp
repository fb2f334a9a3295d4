#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tam {

enum class ErrorKind {
  UnknownTile,
  Occupied,
  InsufficientStrength,
  ConstrainedLocation,
  NotAdjacent,
  DimensionMismatch,
  InvalidStep,
  StateBudgetExceeded,
  InvalidWindow,
  WindowSideMismatch,
  MovieMismatch,
  SpliceStepInvalid,
  InvalidTrace,
  NotTwoDimensional,
  NoMatchingWindow,
  InvalidSetup,
  ParseError,
  SchemaVersionUnsupported,
  SliceOutOfRange,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind);

// Every failure surfaced by the library. `index` carries a step index for
// InvalidStep / SpliceStepInvalid and a line number for ParseError.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message,
        std::optional<std::size_t> index = std::nullopt,
        std::optional<ErrorKind> cause = std::nullopt);

  ErrorKind kind() const noexcept { return kind_; }
  std::optional<std::size_t> index() const noexcept { return index_; }
  // Underlying attach error for InvalidStep / SpliceStepInvalid.
  std::optional<ErrorKind> cause() const noexcept { return cause_; }

 private:
  ErrorKind kind_;
  std::optional<std::size_t> index_;
  std::optional<ErrorKind> cause_;
};

}  // namespace tam
