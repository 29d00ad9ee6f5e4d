#pragma once

// Money stock M1 measured in Monetary Minutes, year by year, and the local
// peaks and troughs of that curve.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "monmin/core.hpp"

namespace monmin {

/// One year of a monetary aggregate. Amounts are absolute currency units.
struct AggregateYear {
  int year = 0;
  double m1 = 0.0;
  double gdp = 0.0;
  std::int64_t population = 0;
  // Free-text annotation carried through to reports untouched.
  std::string events;

  friend bool operator==(const AggregateYear&, const AggregateYear&) = default;
};

class AggregateSeries {
 public:
  /// Throws EmptySeries when `years` is empty and NonMonotoneYears unless
  /// years strictly increase.
  AggregateSeries(CurrencyCode currency, std::vector<AggregateYear> years, TimeStandard standard = {});

  const CurrencyCode& currency() const noexcept { return currency_; }
  const std::vector<AggregateYear>& years() const noexcept { return years_; }
  const TimeStandard& standard() const noexcept { return standard_; }

  AggregateSeries with_standard(const TimeStandard& standard) const {
    return AggregateSeries(currency_, years_, standard);
  }

  friend bool operator==(const AggregateSeries& a, const AggregateSeries& b) {
    return a.currency_ == b.currency_ && a.years_ == b.years_ &&
           a.standard_.minutes_per_year() == b.standard_.minutes_per_year();
  }

 private:
  CurrencyCode currency_;
  std::vector<AggregateYear> years_;
  TimeStandard standard_;
};

struct YearValue {
  int year = 0;
  double value = 0.0;
};

/// M1 divided by that year's Cm: m1 * population * minutes / gdp.
double m1_in_monmin(const AggregateYear& year, const TimeStandard& standard);

/// m1_in_monmin for every year, in order. Errors name the offending year.
std::vector<YearValue> series_in_monmin(const AggregateSeries& series);

struct ExtremaReport {
  std::vector<int> peaks;
  std::vector<int> troughs;

  friend bool operator==(const ExtremaReport&, const ExtremaReport&) = default;
};

/// Strict local extrema. A run of exactly equal values counts as one point
/// located at its first year; runs touching either end of the series are
/// never extrema. Needs at least three points (TooShort) with strictly
/// increasing years (NonMonotoneYears).
ExtremaReport detect_extrema(std::span<const YearValue> values);

}  // namespace monmin
