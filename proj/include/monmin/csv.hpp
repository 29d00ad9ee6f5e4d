#pragma once

// Minimal RFC 4180 field handling for single-line records: comma separated,
// double-quoted fields may contain commas and doubled quotes.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace monmin::csv {

/// Splits one record. Unquoted fields are trimmed of surrounding blanks.
/// Returns nullopt on an unterminated quote or stray text after a quote.
std::optional<std::vector<std::string>> split(std::string_view line);

/// Quotes `field` only when it needs it.
std::string escape(std::string_view field);

std::string join(const std::vector<std::string>& fields);

}  // namespace monmin::csv
