#pragma once

// Monetary Minute arithmetic.
//
// One Monetary Minute (MonMin) is 1/525600 of a year's total economic time
// capacity; its value Cm in a currency C is GDP per capita divided by the
// number of minutes in that year. Prices convert between C and MonMin by
// dividing or multiplying by Cm.
//
// All values here are immutable after construction and every operation is a
// pure function. Rounding never happens in this layer.

#include <chrono>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "monmin/error.hpp"

namespace monmin {

inline constexpr double kMinutesPerYear = 525600.0;
inline constexpr double kAstronomicalMinutesPerYear = 525948.766;

using Date = std::chrono::year_month_day;

/// Parses a strict ISO-8601 calendar date (YYYY-MM-DD).
std::optional<Date> parse_date(std::string_view text);
std::string format_date(const Date& date);

/// An ISO-style currency identifier: 3 or 4 uppercase ASCII letters.
class CurrencyCode {
 public:
  explicit CurrencyCode(std::string_view code, std::string symbol = {});

  /// The ISO "no currency" code, used when a Cm value is given without one.
  static CurrencyCode unspecified() { return CurrencyCode("XXX"); }

  const std::string& code() const noexcept { return code_; }
  const std::string& symbol() const noexcept { return symbol_; }

  friend bool operator==(const CurrencyCode& a, const CurrencyCode& b) noexcept {
    return a.code_ == b.code_;
  }
  friend std::strong_ordering operator<=>(const CurrencyCode& a, const CurrencyCode& b) noexcept {
    return a.code_ <=> b.code_;
  }

 private:
  std::string code_;
  std::string symbol_;
};

/// Minutes in one year of economic time capacity.
class TimeStandard {
 public:
  TimeStandard() = default;
  explicit TimeStandard(double minutes_per_year);

  static TimeStandard astronomical() { return TimeStandard(kAstronomicalMinutesPerYear); }

  double minutes_per_year() const noexcept { return minutes_; }

 private:
  double minutes_ = kMinutesPerYear;
};

/// One economy's GDP (absolute currency units) and total population.
class EconomySnapshot {
 public:
  EconomySnapshot(std::string country, CurrencyCode currency, double gdp, std::int64_t population,
                  std::optional<Date> as_of = std::nullopt);

  const std::string& country() const noexcept { return country_; }
  const CurrencyCode& currency() const noexcept { return currency_; }
  double gdp() const noexcept { return gdp_; }
  std::int64_t population() const noexcept { return population_; }
  const std::optional<Date>& as_of() const noexcept { return as_of_; }

  double gdp_per_capita() const noexcept { return gdp_ / static_cast<double>(population_); }

  friend bool operator==(const EconomySnapshot&, const EconomySnapshot&) = default;

 private:
  std::string country_;
  CurrencyCode currency_;
  double gdp_;
  std::int64_t population_;
  std::optional<Date> as_of_;
};

/// Where a Cm figure came from. The two computed provenances are never mixed
/// silently; reports print this label next to every Cm they use.
enum class CmSource { ComputedFromGdp, CrossRate, Manual };

std::string_view to_string(CmSource source) noexcept;

/// Currency units per Monetary Minute.
class MonMinValue {
 public:
  MonMinValue(CurrencyCode currency, double value, CmSource source = CmSource::Manual);

  const CurrencyCode& currency() const noexcept { return currency_; }
  double value() const noexcept { return value_; }
  CmSource source() const noexcept { return source_; }

 private:
  CurrencyCode currency_;
  double value_;
  CmSource source_;
};

/// `rate` units of `quote` buy one unit of `base`.
class ExchangeRate {
 public:
  ExchangeRate(CurrencyCode base, CurrencyCode quote, double rate,
               std::optional<Date> as_of = std::nullopt);

  const CurrencyCode& base() const noexcept { return base_; }
  const CurrencyCode& quote() const noexcept { return quote_; }
  double rate() const noexcept { return rate_; }
  const std::optional<Date>& as_of() const noexcept { return as_of_; }

  friend bool operator==(const ExchangeRate&, const ExchangeRate&) = default;

 private:
  CurrencyCode base_;
  CurrencyCode quote_;
  double rate_;
  std::optional<Date> as_of_;
};

/// A pair of stored rates (a->b, b->a) whose product strays from 1.
struct ReciprocalMismatch {
  ExchangeRate forward;
  ExchangeRate backward;
  double product;
};

/// Directed rates keyed by (base, quote), in insertion order.
class RateTable {
 public:
  /// Throws DuplicatePair if (base, quote) is already present.
  void insert(ExchangeRate rate);

  const ExchangeRate* find(const CurrencyCode& base, const CurrencyCode& quote) const noexcept;

  /// Pairs whose forward x backward product differs from 1 by more than
  /// `rel_tol`. Each pair is reported once, in the order the later one was
  /// inserted.
  std::vector<ReciprocalMismatch> reciprocal_mismatches(double rel_tol = 1e-6) const;

  std::size_t size() const noexcept { return rates_.size(); }
  bool empty() const noexcept { return rates_.empty(); }
  auto begin() const noexcept { return rates_.begin(); }
  auto end() const noexcept { return rates_.end(); }

  friend bool operator==(const RateTable&, const RateTable&) = default;

 private:
  std::vector<ExchangeRate> rates_;
};

/// A price (or salary) in a concrete currency.
class PriceQuote {
 public:
  PriceQuote(std::string item, std::string unit, CurrencyCode currency, double amount);

  const std::string& item() const noexcept { return item_; }
  const std::string& unit() const noexcept { return unit_; }
  const CurrencyCode& currency() const noexcept { return currency_; }
  double amount() const noexcept { return amount_; }

  friend bool operator==(const PriceQuote&, const PriceQuote&) = default;

 private:
  std::string item_;
  std::string unit_;
  CurrencyCode currency_;
  double amount_;
};

/// A price expressed in Monetary Minutes, remembering which currency's Cm
/// produced it.
class MonMinPrice {
 public:
  MonMinPrice(std::string item, CurrencyCode currency_context, double monmin);

  const std::string& item() const noexcept { return item_; }
  const CurrencyCode& currency_context() const noexcept { return currency_context_; }
  double monmin() const noexcept { return monmin_; }

 private:
  std::string item_;
  CurrencyCode currency_context_;
  double monmin_;
};

/// Cm = GDP / population / minutes per year.
MonMinValue compute_cm(const EconomySnapshot& economy, const TimeStandard& standard = {});

/// Cm in `rate.quote()` obtained from a reference Cm in `rate.base()`.
MonMinValue cross_cm(const MonMinValue& reference, const ExchangeRate& rate);

/// Monetary Minutes per one currency unit.
double invert_cm(const MonMinValue& cm);

MonMinPrice to_monmin(const PriceQuote& price, const MonMinValue& cm);

PriceQuote from_monmin(const MonMinPrice& price, const MonMinValue& cm, std::string unit = {});

enum class ItemCheck { Strict, Lenient };

/// The exchange rate at which `local` would cost the same number of
/// Monetary Minutes as `reference`:
///   current.rate * reference.monmin / local.monmin
/// With ItemCheck::Strict, differing item names raise ItemMismatch.
double parity_rate(const ExchangeRate& current, const MonMinPrice& reference,
                   const MonMinPrice& local, ItemCheck check = ItemCheck::Strict);

/// 100 * price / salary. Both must share a currency context, so the Cm
/// factor cancels.
double percent_of_salary(const MonMinPrice& price, const MonMinPrice& salary);

}  // namespace monmin
