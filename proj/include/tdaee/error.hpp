#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace tdaee {

enum class ErrorCode {
  // input data
  Io,
  MissingColumn,
  UnparsableRow,
  DuplicateDate,
  NonPositivePrice,
  EmptyIntersection,
  TooShort,
  BadManifest,
  // configuration / parameters
  BadConfig,
  WindowTooLarge,
  InvalidArgument,
  DimensionMismatch,
  TooFewDiagrams,
  SeriesTooShort,
  // broken internal invariant
  Invariant,
};

enum class ErrorCategory { Input, Config, Internal };

ErrorCategory category_of(ErrorCode code) noexcept;
std::string_view to_string(ErrorCode code) noexcept;

// All library failures are reported as tdaee::Error. `line` is 1-based and
// 0 when the error is not tied to a line of an input file.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::string file = {},
        std::size_t line = 0);

  ErrorCode code() const noexcept { return code_; }
  ErrorCategory category() const noexcept { return category_of(code_); }
  const std::string& file() const noexcept { return file_; }
  std::size_t line() const noexcept { return line_; }

 private:
  ErrorCode code_;
  std::string file_;
  std::size_t line_;
};

// Throws Error(ErrorCode::Invariant) when `condition` is false.
void check_invariant(bool condition, std::string_view what);

}  // namespace tdaee
