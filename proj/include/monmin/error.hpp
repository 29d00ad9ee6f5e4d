#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace monmin {

enum class ErrorKind {
  NonPositiveInput,
  CurrencyMismatch,
  ItemMismatch,
  InvalidCurrency,
  InvalidArgument,
  EmptySeries,
  NonMonotoneYears,
  TooShort,
  MalformedRow,
  DuplicateCountry,
  DuplicatePair,
  DuplicateItem,
  UnknownCurrency,
  FileNotFound,
  ShapeMismatch,
};

std::string_view to_string(ErrorKind kind) noexcept;

// Every failure raised by the library carries a kind so callers (the CLI,
// the ingest report) can classify it without parsing the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind), detail_(message) {}

  ErrorKind kind() const noexcept { return kind_; }
  /// The message without the kind prefix that what() carries.
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::string detail_;
};

}  // namespace monmin
