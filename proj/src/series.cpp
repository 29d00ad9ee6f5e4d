#include "monmin/series.hpp"

#include <cmath>

#include "monmin/rounding.hpp"

namespace monmin {

namespace {

void require_increasing_years(std::span<const YearValue> values) {
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (values[i].year <= values[i - 1].year) {
      throw Error(ErrorKind::NonMonotoneYears, "year " + std::to_string(values[i].year) +
                                                   " follows " + std::to_string(values[i - 1].year));
    }
  }
}

}  // namespace

AggregateSeries::AggregateSeries(CurrencyCode currency, std::vector<AggregateYear> years,
                                 TimeStandard standard)
    : currency_(std::move(currency)), years_(std::move(years)), standard_(standard) {
  if (years_.empty()) throw Error(ErrorKind::EmptySeries, "aggregate series has no years");
  for (std::size_t i = 1; i < years_.size(); ++i) {
    if (years_[i].year <= years_[i - 1].year) {
      throw Error(ErrorKind::NonMonotoneYears, "year " + std::to_string(years_[i].year) +
                                                   " follows " + std::to_string(years_[i - 1].year));
    }
  }
}

double m1_in_monmin(const AggregateYear& year, const TimeStandard& standard) {
  if (!std::isfinite(year.gdp) || year.gdp <= 0.0) {
    throw Error(ErrorKind::NonPositiveInput, "GDP must be positive, got " + format_shortest(year.gdp));
  }
  if (year.population <= 0) {
    throw Error(ErrorKind::NonPositiveInput,
                "population must be positive, got " + std::to_string(year.population));
  }
  if (!std::isfinite(year.m1) || year.m1 < 0.0) {
    throw Error(ErrorKind::NonPositiveInput, "M1 must be non-negative, got " + format_shortest(year.m1));
  }
  return year.m1 * static_cast<double>(year.population) * standard.minutes_per_year() / year.gdp;
}

std::vector<YearValue> series_in_monmin(const AggregateSeries& series) {
  std::vector<YearValue> out;
  out.reserve(series.years().size());
  for (const auto& y : series.years()) {
    try {
      out.push_back({y.year, m1_in_monmin(y, series.standard())});
    } catch (const Error& e) {
      throw Error(e.kind(), "year " + std::to_string(y.year) + ": " + e.detail());
    }
  }
  return out;
}

ExtremaReport detect_extrema(std::span<const YearValue> values) {
  if (values.size() < 3) {
    throw Error(ErrorKind::TooShort,
                "extrema need at least 3 points, got " + std::to_string(values.size()));
  }
  require_increasing_years(values);

  ExtremaReport report;
  const std::size_t n = values.size();
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start;
    while (end + 1 < n && values[end + 1].value == values[start].value) ++end;
    if (start > 0 && end + 1 < n) {
      const double v = values[start].value;
      const double before = values[start - 1].value;
      const double after = values[end + 1].value;
      if (v > before && v > after) report.peaks.push_back(values[start].year);
      if (v < before && v < after) report.troughs.push_back(values[start].year);
    }
    start = end + 1;
  }
  return report;
}

}  // namespace monmin
