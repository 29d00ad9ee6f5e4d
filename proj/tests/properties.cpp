#include "properties.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "monmin/core.hpp"
#include "monmin/csv.hpp"
#include "monmin/ingest.hpp"
#include "support.hpp"

namespace monmin::test {

namespace {

constexpr double kRel = 1e-12;

const char* const kCodes[] = {"USD", "EUR", "GBP", "JPY", "CNY", "CZK", "CHF", "SEK"};

template <class Body>
PropertyResult run(std::string name, std::uint64_t seed, int cases, Body&& body) {
  PropertyResult result{std::move(name), cases, 0, {}};
  Gen gen(seed);
  for (int i = 0; i < cases; ++i) {
    std::string failure;
    try {
      failure = body(gen);
    } catch (const std::exception& e) {
      failure = std::string("threw ") + e.what();
    }
    if (!failure.empty()) {
      if (result.failures++ == 0) result.first_failure = "case " + std::to_string(i) + ": " + failure;
    }
  }
  return result;
}

std::string mismatch(double got, double want, double rel = kRel) {
  if (near_rel(got, want, rel)) return {};
  std::ostringstream s;
  s.precision(17);
  s << got << " vs " << want;
  return s.str();
}

CurrencyCode code(Gen& g) { return CurrencyCode(kCodes[g.integer(0, 7)]); }

EconomySnapshot economy(Gen& g, const CurrencyCode& currency) {
  const auto pop = g.population();
  // GDP per head between 1e-3 and 1e9 currency units.
  const double gdp = g.log_uniform(1e-3, 1e9) * static_cast<double>(pop);
  return EconomySnapshot("c" + std::to_string(g.integer(0, 999)), currency, gdp, pop);
}

}  // namespace

double Gen::log_uniform(double lo, double hi) {
  return std::exp(std::uniform_real_distribution<double>(std::log(lo), std::log(hi))(rng_));
}

double Gen::uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng_); }

int Gen::integer(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }

std::int64_t Gen::population() {
  return std::max<std::int64_t>(1, static_cast<std::int64_t>(std::llround(log_uniform(1.0, 1.5e10))));
}

bool Gen::coin(double p) { return std::bernoulli_distribution(p)(rng_); }

std::string Gen::text(int max_len) {
  static const std::string alphabet = "abcXYZ 019,\"#.-'&()";
  std::string out;
  const int n = integer(0, max_len);
  for (int i = 0; i < n; ++i) out += alphabet[static_cast<std::size_t>(integer(0, static_cast<int>(alphabet.size()) - 1))];
  return out;
}

std::vector<YearValue> Gen::series_values(int length, bool allow_ties) {
  std::vector<YearValue> out;
  int year = integer(1900, 2000);
  // Small integer alphabets produce plenty of ties and plateaus.
  const int levels = allow_ties ? integer(2, 6) : 0;
  for (int i = 0; i < length; ++i) {
    double v = allow_ties ? static_cast<double>(integer(0, levels)) : uniform(-1e6, 1e6);
    if (!allow_ties) {
      while (!out.empty() && v == out.back().value) v = uniform(-1e6, 1e6);
    }
    out.push_back({year, v});
    year += integer(1, 3);
  }
  return out;
}

PropertyResult check_cm_round_trip(std::uint64_t seed, int cases) {
  return run("Cm round trip (cm x population x minutes = GDP)", seed, cases, [](Gen& g) -> std::string {
    const auto e = economy(g, code(g));
    const TimeStandard std(g.coin() ? kMinutesPerYear : g.log_uniform(1.0, 1e7));
    const double back = compute_cm(e, std).value() * static_cast<double>(e.population()) * std.minutes_per_year();
    return mismatch(back, e.gdp());
  });
}

PropertyResult check_inversion(std::uint64_t seed, int cases) {
  return run("inversion product is one", seed, cases, [](Gen& g) -> std::string {
    const MonMinValue cm(code(g), g.log_uniform(1e-9, 1e9));
    return mismatch(invert_cm(cm) * cm.value(), 1.0);
  });
}

PropertyResult check_monmin_round_trip(std::uint64_t seed, int cases) {
  return run("MonMin price round trip", seed, cases, [](Gen& g) -> std::string {
    const auto c = code(g);
    const MonMinValue cm(c, g.log_uniform(1e-9, 1e9));
    const PriceQuote p("item", "unit", c, g.coin(0.05) ? 0.0 : g.log_uniform(1e-4, 1e12));
    const double back = from_monmin(to_monmin(p, cm), cm).amount();
    return p.amount() == 0.0 ? (back == 0.0 ? "" : "zero did not survive") : mismatch(back, p.amount());
  });
}

PropertyResult check_price_scale_invariance(std::uint64_t seed, int cases) {
  return run("GDP and price scale invariance", seed, cases, [](Gen& g) -> std::string {
    const auto c = code(g);
    const auto e = economy(g, c);
    const double k = g.log_uniform(1e-6, 1e6);
    const EconomySnapshot scaled(e.country(), c, e.gdp() * k, e.population());
    const double amount = g.log_uniform(1e-2, 1e9);
    const double a = to_monmin(PriceQuote("x", "", c, amount), compute_cm(e)).monmin();
    const double b = to_monmin(PriceQuote("x", "", c, amount * k), compute_cm(scaled)).monmin();
    return mismatch(b, a);
  });
}

PropertyResult check_series_scale_invariance(std::uint64_t seed, int cases) {
  return run("M1 and GDP scale invariance", seed, cases, [](Gen& g) -> std::string {
    const double k = g.log_uniform(1e-6, 1e6);
    std::vector<AggregateYear> years, scaled;
    const int n = g.integer(1, 20);
    for (int i = 0; i < n; ++i) {
      const auto pop = g.population();
      const double gdp = g.log_uniform(1e-3, 1e9) * static_cast<double>(pop);
      const double m1 = gdp * g.uniform(0.0, 2.0);
      years.push_back({1950 + i, m1, gdp, pop, ""});
      scaled.push_back({1950 + i, m1 * k, gdp * k, pop, ""});
    }
    const auto a = series_in_monmin(AggregateSeries(CurrencyCode("USD"), years));
    const auto b = series_in_monmin(AggregateSeries(CurrencyCode("USD"), scaled));
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (auto m = mismatch(b[i].value, a[i].value); !m.empty()) return "year " + std::to_string(a[i].year) + ": " + m;
    }
    return std::string();
  });
}

PropertyResult check_parity_fixed_point(std::uint64_t seed, int cases) {
  return run("parity fixed point", seed, cases, [](Gen& g) -> std::string {
    const ExchangeRate rate(CurrencyCode("REF"), CurrencyCode("LOC"), g.log_uniform(1e-4, 1e4));
    const MonMinValue local_cm(CurrencyCode("LOC"), g.log_uniform(1e-6, 1e6));
    const PriceQuote local("x", "", CurrencyCode("LOC"), g.log_uniform(1e-2, 1e8));
    const MonMinPrice ref("x", CurrencyCode("REF"), g.log_uniform(1e-2, 1e8));
    const double parity = parity_rate(rate, ref, to_monmin(local, local_cm));
    // Requote the local price at the parity rate and convert it again.
    const PriceQuote requoted("x", "", CurrencyCode("LOC"), local.amount() * parity / rate.rate());
    return mismatch(to_monmin(requoted, local_cm).monmin(), ref.monmin(), 1e-9);
  });
}

PropertyResult check_cm_cancellation(std::uint64_t seed, int cases) {
  return run("Cm cancels in percent of salary", seed, cases, [](Gen& g) -> std::string {
    const auto c = code(g);
    const MonMinValue cm(c, g.log_uniform(1e-9, 1e9));
    const PriceQuote item("x", "", c, g.log_uniform(1e-2, 1e8));
    const PriceQuote salary("s", "", c, g.log_uniform(1.0, 1e9));
    const double pct = percent_of_salary(to_monmin(item, cm), to_monmin(salary, cm));
    return mismatch(pct, 100.0 * item.amount() / salary.amount());
  });
}

PropertyResult check_cross_composition(std::uint64_t seed, int cases) {
  return run("cross Cm composes with rates", seed, cases, [](Gen& g) -> std::string {
    const CurrencyCode a("AAA"), b("BBB"), c("CCC");
    const MonMinValue cm(a, g.log_uniform(1e-6, 1e6));
    const ExchangeRate r1(a, b, g.log_uniform(1e-4, 1e4));
    const ExchangeRate r2(b, c, g.log_uniform(1e-4, 1e4));
    const double stepwise = cross_cm(cross_cm(cm, r1), r2).value();
    const double direct = cross_cm(cm, ExchangeRate(a, c, r1.rate() * r2.rate())).value();
    return mismatch(stepwise, direct);
  });
}

PropertyResult check_series_shape(std::uint64_t seed, int cases) {
  return run("MonMin series keeps length and year order", seed, cases, [](Gen& g) -> std::string {
    std::vector<AggregateYear> years;
    int year = g.integer(1800, 2000);
    for (int i = 0, n = g.integer(1, 80); i < n; ++i) {
      years.push_back({year, g.uniform(0.0, 1e12), g.log_uniform(1.0, 1e14), g.population(), ""});
      year += g.integer(1, 5);
    }
    const auto out = series_in_monmin(AggregateSeries(CurrencyCode("USD"), years));
    if (out.size() != years.size()) return std::string("length changed");
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (out[i].year != years[i].year) return "year order changed at " + std::to_string(i);
    }
    return std::string();
  });
}

PropertyResult check_extrema_oracle(std::uint64_t seed, int cases) {
  return run("extrema agree with brute-force oracle", seed, cases, [](Gen& g) -> std::string {
    const auto values = g.series_values(g.integer(3, 100), g.coin(0.7));
    return detect_extrema(values) == extrema_oracle(values) ? "" : "differs on length " + std::to_string(values.size());
  });
}

PropertyResult check_extrema_alternate(std::uint64_t seed, int cases) {
  return run("peaks and troughs alternate without plateaus", seed, cases, [](Gen& g) -> std::string {
    const auto values = g.series_values(g.integer(3, 100), false);
    const auto report = detect_extrema(values);
    std::vector<std::pair<int, bool>> marks;
    for (int y : report.peaks) marks.push_back({y, true});
    for (int y : report.troughs) marks.push_back({y, false});
    std::sort(marks.begin(), marks.end());
    for (std::size_t i = 1; i < marks.size(); ++i) {
      if (marks[i].second == marks[i - 1].second) return "two of a kind at " + std::to_string(marks[i].first);
    }
    return std::string();
  });
}

PropertyResult check_csv_round_trip(std::uint64_t seed, int cases) {
  return run("CSV field escaping round trip", seed, cases, [](Gen& g) -> std::string {
    std::vector<std::string> fields;
    for (int i = 0, n = g.integer(1, 8); i < n; ++i) fields.push_back(g.text(12));
    const auto line = csv::join(fields);
    if (!line.empty() && line.front() == '#') return "record reads as a comment: " + line;
    const auto back = csv::split(line);
    return back && *back == fields ? "" : "split(join(x)) != x for " + line;
  });
}

PropertyResult check_ingest_round_trip(std::uint64_t seed, int cases) {
  return run("write then load reproduces the dataset", seed, cases, [](Gen& g) -> std::string {
    std::vector<EconomySnapshot> economies;
    for (int i = 0, n = g.integer(0, 6); i < n; ++i) {
      const auto pop = g.population();
      std::optional<Date> as_of;
      if (g.coin()) as_of = Date{std::chrono::year(g.integer(1950, 2030)), std::chrono::month(g.integer(1, 12)),
                                 std::chrono::day(g.integer(1, 28))};
      economies.emplace_back("n" + std::to_string(i) + g.text(10), code(g), g.log_uniform(1e-3, 1e9) * pop, pop,
                             as_of);
    }
    std::ostringstream eo;
    write_economies(eo, economies);
    std::istringstream ei(eo.str());
    const auto e = parse_economies(ei);
    if (!e.report.ok()) return "economies: " + e.report.errors[0].message;
    if (e.data != economies) return std::string("economies differ");

    std::vector<AggregateYear> years;
    int year = g.integer(1800, 2000);
    for (int i = 0, n = g.integer(1, 30); i < n; ++i) {
      years.push_back({year, g.coin(0.1) ? 0.0 : g.log_uniform(1.0, 1e13), g.log_uniform(1.0, 1e14), g.population(),
                       g.text(20)});
      year += g.integer(1, 3);
    }
    const AggregateSeries series(code(g), years);
    std::ostringstream so;
    write_series(so, series);
    std::istringstream si(so.str());
    const auto s = parse_series(si);
    if (!s.report.ok()) return "series: " + s.report.errors[0].message;
    return *s.data == series ? "" : "series differ";
  });
}

}  // namespace monmin::test
