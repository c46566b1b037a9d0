#include "tdaee/error.hpp"

namespace tdaee {

ErrorCategory category_of(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Io:
    case ErrorCode::MissingColumn:
    case ErrorCode::UnparsableRow:
    case ErrorCode::DuplicateDate:
    case ErrorCode::NonPositivePrice:
    case ErrorCode::EmptyIntersection:
    case ErrorCode::TooShort:
    case ErrorCode::BadManifest:
      return ErrorCategory::Input;
    case ErrorCode::BadConfig:
    case ErrorCode::WindowTooLarge:
    case ErrorCode::InvalidArgument:
    case ErrorCode::DimensionMismatch:
    case ErrorCode::TooFewDiagrams:
    case ErrorCode::SeriesTooShort:
      return ErrorCategory::Config;
    case ErrorCode::Invariant:
      return ErrorCategory::Internal;
  }
  return ErrorCategory::Internal;
}

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::Io: return "Io";
    case ErrorCode::MissingColumn: return "MissingColumn";
    case ErrorCode::UnparsableRow: return "UnparsableRow";
    case ErrorCode::DuplicateDate: return "DuplicateDate";
    case ErrorCode::NonPositivePrice: return "NonPositivePrice";
    case ErrorCode::EmptyIntersection: return "EmptyIntersection";
    case ErrorCode::TooShort: return "TooShort";
    case ErrorCode::BadManifest: return "BadManifest";
    case ErrorCode::BadConfig: return "BadConfig";
    case ErrorCode::WindowTooLarge: return "WindowTooLarge";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::TooFewDiagrams: return "TooFewDiagrams";
    case ErrorCode::SeriesTooShort: return "SeriesTooShort";
    case ErrorCode::Invariant: return "Invariant";
  }
  return "Unknown";
}

namespace {

std::string decorate(ErrorCode code, const std::string& message,
                     const std::string& file, std::size_t line) {
  std::string out(to_string(code));
  if (!file.empty()) {
    out += " [" + file;
    if (line > 0) out += ":" + std::to_string(line);
    out += "]";
  } else if (line > 0) {
    out += " [line " + std::to_string(line) + "]";
  }
  out += ": " + message;
  return out;
}

}  // namespace

Error::Error(ErrorCode code, const std::string& message, std::string file,
             std::size_t line)
    : std::runtime_error(decorate(code, message, file, line)),
      code_(code),
      file_(std::move(file)),
      line_(line) {}

void check_invariant(bool condition, std::string_view what) {
  if (!condition) throw Error(ErrorCode::Invariant, std::string(what));
}

}  // namespace tdaee
