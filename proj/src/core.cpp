#include "monmin/core.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>

#include "monmin/rounding.hpp"

namespace monmin {

namespace {

bool positive_finite(double x) { return std::isfinite(x) && x > 0.0; }

[[noreturn]] void non_positive(std::string_view what, double value) {
  throw Error(ErrorKind::NonPositiveInput,
              std::string(what) + " must be positive and finite, got " + format_shortest(value));
}

template <class Int>
bool parse_fixed_int(std::string_view text, Int& out) {
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), out);
  return ec == std::errc() && ptr == text.data() + text.size();
}

}  // namespace

std::optional<Date> parse_date(std::string_view text) {
  if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
  int y = 0;
  unsigned m = 0, d = 0;
  if (!parse_fixed_int(text.substr(0, 4), y) || !parse_fixed_int(text.substr(5, 2), m) ||
      !parse_fixed_int(text.substr(8, 2), d)) {
    return std::nullopt;
  }
  Date date{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
  if (!date.ok()) return std::nullopt;
  return date;
}

std::string format_date(const Date& date) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(date.year()),
                static_cast<unsigned>(date.month()), static_cast<unsigned>(date.day()));
  return buf;
}

CurrencyCode::CurrencyCode(std::string_view code, std::string symbol)
    : code_(code), symbol_(std::move(symbol)) {
  const bool upper = std::all_of(code.begin(), code.end(), [](char c) { return c >= 'A' && c <= 'Z'; });
  if (code.size() < 3 || code.size() > 4 || !upper) {
    throw Error(ErrorKind::InvalidCurrency,
                "currency code must be 3-4 uppercase letters, got '" + std::string(code) + "'");
  }
}

TimeStandard::TimeStandard(double minutes_per_year) : minutes_(minutes_per_year) {
  if (!positive_finite(minutes_per_year)) non_positive("minutes per year", minutes_per_year);
}

EconomySnapshot::EconomySnapshot(std::string country, CurrencyCode currency, double gdp,
                                 std::int64_t population, std::optional<Date> as_of)
    : country_(std::move(country)),
      currency_(std::move(currency)),
      gdp_(gdp),
      population_(population),
      as_of_(as_of) {
  if (!positive_finite(gdp)) non_positive("GDP of " + country_, gdp);
  if (population <= 0) non_positive("population of " + country_, static_cast<double>(population));
}

std::string_view to_string(CmSource source) noexcept {
  switch (source) {
    case CmSource::ComputedFromGdp: return "ComputedFromGdp";
    case CmSource::CrossRate: return "CrossRate";
    case CmSource::Manual: return "Manual";
  }
  return "Unknown";
}

MonMinValue::MonMinValue(CurrencyCode currency, double value, CmSource source)
    : currency_(std::move(currency)), value_(value), source_(source) {
  if (!positive_finite(value)) non_positive("Cm value", value);
}

ExchangeRate::ExchangeRate(CurrencyCode base, CurrencyCode quote, double rate,
                           std::optional<Date> as_of)
    : base_(std::move(base)), quote_(std::move(quote)), rate_(rate), as_of_(as_of) {
  if (!positive_finite(rate)) non_positive("exchange rate", rate);
  if (base_ == quote_) {
    throw Error(ErrorKind::InvalidArgument, "exchange rate base and quote are both " + base_.code());
  }
}

void RateTable::insert(ExchangeRate rate) {
  if (find(rate.base(), rate.quote()) != nullptr) {
    throw Error(ErrorKind::DuplicatePair,
                "rate " + rate.base().code() + "->" + rate.quote().code() + " already present");
  }
  rates_.push_back(std::move(rate));
}

const ExchangeRate* RateTable::find(const CurrencyCode& base, const CurrencyCode& quote) const noexcept {
  for (const auto& r : rates_) {
    if (r.base() == base && r.quote() == quote) return &r;
  }
  return nullptr;
}

std::vector<ReciprocalMismatch> RateTable::reciprocal_mismatches(double rel_tol) const {
  std::vector<ReciprocalMismatch> out;
  for (std::size_t i = 0; i < rates_.size(); ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const auto& later = rates_[i];
      const auto& earlier = rates_[j];
      if (later.base() != earlier.quote() || later.quote() != earlier.base()) continue;
      const double product = earlier.rate() * later.rate();
      if (std::abs(product - 1.0) > rel_tol) out.push_back({earlier, later, product});
    }
  }
  return out;
}

PriceQuote::PriceQuote(std::string item, std::string unit, CurrencyCode currency, double amount)
    : item_(std::move(item)), unit_(std::move(unit)), currency_(std::move(currency)), amount_(amount) {
  if (!std::isfinite(amount) || amount < 0.0) {
    throw Error(ErrorKind::NonPositiveInput,
                "price of '" + item_ + "' must be non-negative, got " + format_shortest(amount));
  }
}

MonMinPrice::MonMinPrice(std::string item, CurrencyCode currency_context, double monmin)
    : item_(std::move(item)), currency_context_(std::move(currency_context)), monmin_(monmin) {
  if (!std::isfinite(monmin) || monmin < 0.0) {
    throw Error(ErrorKind::NonPositiveInput,
                "MonMin price of '" + item_ + "' must be non-negative, got " + format_shortest(monmin));
  }
}

MonMinValue compute_cm(const EconomySnapshot& economy, const TimeStandard& standard) {
  const double value = economy.gdp() / static_cast<double>(economy.population()) /
                       standard.minutes_per_year();
  return MonMinValue(economy.currency(), value, CmSource::ComputedFromGdp);
}

MonMinValue cross_cm(const MonMinValue& reference, const ExchangeRate& rate) {
  if (rate.base() != reference.currency()) {
    throw Error(ErrorKind::CurrencyMismatch, "rate base " + rate.base().code() +
                                                 " does not match Cm currency " +
                                                 reference.currency().code());
  }
  return MonMinValue(rate.quote(), reference.value() * rate.rate(), CmSource::CrossRate);
}

double invert_cm(const MonMinValue& cm) { return 1.0 / cm.value(); }

MonMinPrice to_monmin(const PriceQuote& price, const MonMinValue& cm) {
  if (price.currency() != cm.currency()) {
    throw Error(ErrorKind::CurrencyMismatch, "price of '" + price.item() + "' is in " +
                                                 price.currency().code() + " but Cm is in " +
                                                 cm.currency().code());
  }
  return MonMinPrice(price.item(), cm.currency(), price.amount() / cm.value());
}

PriceQuote from_monmin(const MonMinPrice& price, const MonMinValue& cm, std::string unit) {
  if (price.currency_context() != cm.currency()) {
    throw Error(ErrorKind::CurrencyMismatch, "MonMin price of '" + price.item() + "' was taken in " +
                                                 price.currency_context().code() +
                                                 " but Cm is in " + cm.currency().code());
  }
  return PriceQuote(price.item(), std::move(unit), cm.currency(), price.monmin() * cm.value());
}

double parity_rate(const ExchangeRate& current, const MonMinPrice& reference,
                   const MonMinPrice& local, ItemCheck check) {
  if (!(local.monmin() > 0.0)) non_positive("local MonMin price", local.monmin());
  if (check == ItemCheck::Strict && reference.item() != local.item()) {
    throw Error(ErrorKind::ItemMismatch,
                "comparing '" + reference.item() + "' against '" + local.item() + "'");
  }
  return current.rate() * reference.monmin() / local.monmin();
}

double percent_of_salary(const MonMinPrice& price, const MonMinPrice& salary) {
  if (!(salary.monmin() > 0.0)) non_positive("salary in MonMin", salary.monmin());
  if (price.currency_context() != salary.currency_context()) {
    throw Error(ErrorKind::CurrencyMismatch, "price in " + price.currency_context().code() +
                                                 " context, salary in " +
                                                 salary.currency_context().code());
  }
  return 100.0 * price.monmin() / salary.monmin();
}

}  // namespace monmin
