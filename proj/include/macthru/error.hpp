#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace macthru {

enum class ErrorKind {
  UnsupportedStandard,
  NotApplicable,
  InvalidMode,
  InvalidRate,
  InvalidPayload,
  InvalidBurst,
  UndefinedThroughput,
  UnknownOverride,
  InvalidOverride,
  InvalidSweep,
  ParseError,
  Usage,
};

inline constexpr std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::UnsupportedStandard: return "unsupported-standard";
    case ErrorKind::NotApplicable: return "not-applicable";
    case ErrorKind::InvalidMode: return "invalid-mode";
    case ErrorKind::InvalidRate: return "invalid-rate";
    case ErrorKind::InvalidPayload: return "invalid-payload";
    case ErrorKind::InvalidBurst: return "invalid-burst";
    case ErrorKind::UndefinedThroughput: return "undefined-throughput";
    case ErrorKind::UnknownOverride: return "unknown-override";
    case ErrorKind::InvalidOverride: return "invalid-override";
    case ErrorKind::InvalidSweep: return "invalid-sweep";
    case ErrorKind::ParseError: return "parse-error";
    case ErrorKind::Usage: return "usage";
  }
  return "unknown";
}

// Every failure raised by the library. `field()` names the offending input
// so the CLI can point at it.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, std::string field, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + field + ": " + detail),
        kind_(kind),
        field_(std::move(field)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& field() const noexcept { return field_; }

 private:
  ErrorKind kind_;
  std::string field_;
};

}  // namespace macthru
