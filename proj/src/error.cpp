#include "monmin/error.hpp"

namespace monmin {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::NonPositiveInput: return "NonPositiveInput";
    case ErrorKind::CurrencyMismatch: return "CurrencyMismatch";
    case ErrorKind::ItemMismatch: return "ItemMismatch";
    case ErrorKind::InvalidCurrency: return "InvalidCurrency";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::EmptySeries: return "EmptySeries";
    case ErrorKind::NonMonotoneYears: return "NonMonotoneYears";
    case ErrorKind::TooShort: return "TooShort";
    case ErrorKind::MalformedRow: return "MalformedRow";
    case ErrorKind::DuplicateCountry: return "DuplicateCountry";
    case ErrorKind::DuplicatePair: return "DuplicatePair";
    case ErrorKind::DuplicateItem: return "DuplicateItem";
    case ErrorKind::UnknownCurrency: return "UnknownCurrency";
    case ErrorKind::FileNotFound: return "FileNotFound";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
  }
  return "Unknown";
}

}  // namespace monmin
