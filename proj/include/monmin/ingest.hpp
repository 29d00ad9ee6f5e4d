#pragma once

// Loaders for the four input files.
//
// Every file is header-first CSV (UTF-8, comma separated, '.' decimal point,
// no thousands separators). Columns are matched by header name, so their order
// is free. Lines starting with '#' are comments; before the header they may
// carry directives:
//
//   # scale=1e9      multiply money columns (gdp, m1) into absolute units
//   # currency=USD   currency of an aggregate series file
//
// Loading is all-or-nothing: one bad row leaves the returned dataset empty
// and lists every problem found, each with its 1-based physical line.

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "monmin/core.hpp"
#include "monmin/series.hpp"

namespace monmin {

struct Diagnostic {
  std::size_t line = 0;
  ErrorKind kind = ErrorKind::MalformedRow;
  std::string message;
};

struct IngestReport {
  std::size_t records_accepted = 0;
  std::vector<Diagnostic> warnings;
  std::vector<Diagnostic> errors;

  bool ok() const noexcept { return errors.empty(); }
};

template <class T>
struct Loaded {
  T data;
  IngestReport report;
};

enum class QuoteRole { Item, Salary };

struct BasketEntry {
  PriceQuote quote;
  QuoteRole role = QuoteRole::Item;

  friend bool operator==(const BasketEntry&, const BasketEntry&) = default;
};

/// All quotes declared for one country, possibly in several currencies.
struct Basket {
  std::string country;
  std::vector<BasketEntry> entries;

  /// Currencies in order of first appearance.
  std::vector<CurrencyCode> currencies() const;
  const PriceQuote* salary(const CurrencyCode& currency) const noexcept;

  friend bool operator==(const Basket&, const Basket&) = default;
};

// Stream parsers behind the file loaders.
Loaded<std::vector<EconomySnapshot>> parse_economies(std::istream& in);
Loaded<RateTable> parse_rates(std::istream& in);
Loaded<std::vector<Basket>> parse_basket(std::istream& in,
                                         std::optional<std::span<const EconomySnapshot>> known = std::nullopt);
Loaded<std::optional<AggregateSeries>> parse_series(std::istream& in, const TimeStandard& standard = {});

// File loaders; throw Error(FileNotFound) when the file cannot be opened.
Loaded<std::vector<EconomySnapshot>> load_economies(const std::filesystem::path& path);
Loaded<RateTable> load_rates(const std::filesystem::path& path);

/// With `known`, every basket currency must belong to one of those economies
/// (UnknownCurrency otherwise).
Loaded<std::vector<Basket>> load_basket(const std::filesystem::path& path,
                                        std::optional<std::span<const EconomySnapshot>> known = std::nullopt);
Loaded<std::optional<AggregateSeries>> load_series(const std::filesystem::path& path,
                                                   const TimeStandard& standard = {});

// Writers produce files the loaders read back to identical datasets.
void write_economies(std::ostream& out, std::span<const EconomySnapshot> economies);
void write_rates(std::ostream& out, const RateTable& rates);
void write_basket(std::ostream& out, std::span<const Basket> baskets);
void write_series(std::ostream& out, const AggregateSeries& series);

}  // namespace monmin
