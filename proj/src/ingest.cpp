#include "monmin/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <map>
#include <ostream>
#include <set>

#include "monmin/csv.hpp"
#include "monmin/rounding.hpp"

namespace monmin {

namespace {

struct ColumnDef {
  std::string_view name;
  bool required;
};

struct Directives {
  double scale = 1.0;
  std::optional<std::string> currency;
};

struct Row {
  std::size_t line;
  std::vector<std::string> fields;
};

// Splits a file into directives, header-mapped rows and diagnostics.
class CsvFile {
 public:
  CsvFile(std::istream& in, std::span<const ColumnDef> columns, IngestReport& report)
      : columns_(columns), report_(report) {
    std::string raw;
    std::size_t line = 0;
    bool have_header = false;
    while (std::getline(in, raw)) {
      ++line;
      if (line == 1 && raw.starts_with("\xEF\xBB\xBF")) raw.erase(0, 3);
      if (!raw.empty() && raw.back() == '\r') raw.pop_back();
      const auto first = raw.find_first_not_of(" \t");
      if (first == std::string::npos) continue;
      if (raw[first] == '#') {
        if (!have_header) directive(std::string_view(raw).substr(first + 1), line);
        continue;
      }
      auto fields = csv::split(raw);
      if (!fields) {
        error(line, ErrorKind::MalformedRow, "unbalanced quotes");
        if (!have_header) return;
        continue;
      }
      if (!have_header) {
        have_header = true;
        header(*fields, line);
        continue;
      }
      if (fields->size() != header_width_) {
        error(line, ErrorKind::MalformedRow,
              "expected " + std::to_string(header_width_) + " fields, found " + std::to_string(fields->size()));
        continue;
      }
      rows_.push_back({line, std::move(*fields)});
    }
    if (!have_header) error(line, ErrorKind::MalformedRow, "missing header line");
  }

  const Directives& directives() const { return directives_; }
  const std::vector<Row>& rows() const { return rows_; }
  bool header_ok() const { return header_ok_; }

  // Empty string for an optional column that is absent.
  const std::string& get(const Row& row, std::string_view column) const {
    static const std::string empty;
    const auto it = index_.find(std::string(column));
    return it == index_.end() ? empty : row.fields[it->second];
  }

  void error(std::size_t line, ErrorKind kind, std::string message) {
    report_.errors.push_back({line, kind, std::move(message)});
  }
  void warning(std::size_t line, ErrorKind kind, std::string message) {
    report_.warnings.push_back({line, kind, std::move(message)});
  }

 private:
  void directive(std::string_view text, std::size_t line) {
    const auto eq = text.find('=');
    if (eq == std::string_view::npos) return;
    auto strip = [](std::string_view s) {
      const auto a = s.find_first_not_of(" \t");
      if (a == std::string_view::npos) return std::string_view{};
      return s.substr(a, s.find_last_not_of(" \t") - a + 1);
    };
    const auto key = strip(text.substr(0, eq));
    const auto value = strip(text.substr(eq + 1));
    if (key == "scale") {
      double factor = 0.0;
      auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), factor);
      if (ec != std::errc() || ptr != value.data() + value.size() || !std::isfinite(factor) || factor <= 0.0) {
        error(line, ErrorKind::MalformedRow, "scale directive needs a positive number, got '" + std::string(value) + "'");
        return;
      }
      directives_.scale = factor;
    } else if (key == "currency") {
      directives_.currency = std::string(value);
    }
  }

  void header(const std::vector<std::string>& names, std::size_t line) {
    header_width_ = names.size();
    for (std::size_t i = 0; i < names.size(); ++i) {
      std::string name = names[i];
      std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
      const bool known = std::any_of(columns_.begin(), columns_.end(), [&](const ColumnDef& c) { return c.name == name; });
      if (!known) {
        warning(line, ErrorKind::MalformedRow, "ignoring unknown column '" + names[i] + "'");
        continue;
      }
      if (!index_.emplace(name, i).second) {
        error(line, ErrorKind::MalformedRow, "column '" + name + "' appears twice");
        header_ok_ = false;
      }
    }
    for (const auto& c : columns_) {
      if (c.required && !index_.contains(std::string(c.name))) {
        error(line, ErrorKind::MalformedRow, "missing required column '" + std::string(c.name) + "'");
        header_ok_ = false;
      }
    }
  }

  std::span<const ColumnDef> columns_;
  IngestReport& report_;
  Directives directives_;
  std::map<std::string, std::size_t> index_;
  std::size_t header_width_ = 0;
  bool header_ok_ = true;
  std::vector<Row> rows_;
};

std::optional<double> parse_number(std::string_view text) {
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

std::optional<std::int64_t> parse_integer(std::string_view text) {
  std::int64_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) return std::nullopt;
  return value;
}

// Per-row field reader; the first failure is recorded and later reads are
// no-ops so one bad row produces one diagnostic.
class FieldReader {
 public:
  FieldReader(CsvFile& table, const Row& row) : table_(table), row_(row) {}

  bool ok() const { return ok_; }

  const std::string& text(std::string_view column) { return table_.get(row_, column); }

  double number(std::string_view column) {
    if (!ok_) return 0.0;
    const auto& raw = text(column);
    auto v = parse_number(raw);
    if (!v) fail(ErrorKind::MalformedRow, std::string(column) + " is not a number: '" + raw + "'");
    return v.value_or(0.0);
  }

  std::int64_t integer(std::string_view column) {
    if (!ok_) return 0;
    const auto& raw = text(column);
    auto v = parse_integer(raw);
    if (!v) fail(ErrorKind::MalformedRow, std::string(column) + " is not an integer: '" + raw + "'");
    return v.value_or(0);
  }

  std::optional<Date> date(std::string_view column) {
    if (!ok_) return std::nullopt;
    const auto& raw = text(column);
    if (raw.empty()) return std::nullopt;
    auto d = parse_date(raw);
    if (!d) fail(ErrorKind::MalformedRow, std::string(column) + " is not a YYYY-MM-DD date: '" + raw + "'");
    return d;
  }

  void fail(ErrorKind kind, std::string message) {
    if (!ok_) return;
    ok_ = false;
    table_.error(row_.line, kind, std::move(message));
  }

  // Runs `build`, turning a library Error into a row diagnostic.
  template <class F>
  void guard(F&& build) {
    if (!ok_) return;
    try {
      build();
    } catch (const Error& e) {
      fail(e.kind(), e.detail());
    }
  }

 private:
  CsvFile& table_;
  const Row& row_;
  bool ok_ = true;
};

std::ifstream open_input(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::FileNotFound, "file not found: " + path.string());
  return in;
}

template <class T>
void finish(Loaded<T>& loaded, std::size_t accepted) {
  if (loaded.report.ok()) {
    loaded.report.records_accepted = accepted;
  } else {
    loaded.data = T{};
    loaded.report.records_accepted = 0;
  }
  std::stable_sort(loaded.report.errors.begin(), loaded.report.errors.end(),
                   [](const Diagnostic& a, const Diagnostic& b) { return a.line < b.line; });
  std::stable_sort(loaded.report.warnings.begin(), loaded.report.warnings.end(),
                   [](const Diagnostic& a, const Diagnostic& b) { return a.line < b.line; });
}

std::string optional_date(const std::optional<Date>& d) { return d ? format_date(*d) : std::string(); }

constexpr ColumnDef kEconomyColumns[] = {
    {"country", true}, {"currency", true}, {"gdp", true}, {"population", true}, {"as_of", false}};
constexpr ColumnDef kRateColumns[] = {{"base", true}, {"quote", true}, {"rate", true}, {"as_of", false}};
constexpr ColumnDef kBasketColumns[] = {{"country", false}, {"currency", true}, {"item", true},
                                        {"unit", false},    {"amount", true},   {"role", false}};
constexpr ColumnDef kSeriesColumns[] = {
    {"year", true}, {"m1", true}, {"gdp", true}, {"population", true}, {"events", false}};

}  // namespace

std::vector<CurrencyCode> Basket::currencies() const {
  std::vector<CurrencyCode> out;
  for (const auto& e : entries) {
    if (std::find(out.begin(), out.end(), e.quote.currency()) == out.end()) out.push_back(e.quote.currency());
  }
  return out;
}

const PriceQuote* Basket::salary(const CurrencyCode& currency) const noexcept {
  for (const auto& e : entries) {
    if (e.role == QuoteRole::Salary && e.quote.currency() == currency) return &e.quote;
  }
  return nullptr;
}

Loaded<std::vector<EconomySnapshot>> parse_economies(std::istream& in) {
  Loaded<std::vector<EconomySnapshot>> loaded;
  CsvFile table(in, kEconomyColumns, loaded.report);
  std::map<std::string, std::size_t> seen;
  if (table.header_ok()) {
    for (const auto& row : table.rows()) {
      FieldReader f(table, row);
      const auto& country = f.text("country");
      const double gdp = f.number("gdp") * table.directives().scale;
      const auto population = f.integer("population");
      const auto as_of = f.date("as_of");
      if (f.ok() && country.empty()) f.fail(ErrorKind::MalformedRow, "country is empty");
      if (f.ok()) {
        if (auto it = seen.find(country); it != seen.end()) {
          f.fail(ErrorKind::DuplicateCountry,
                 "country '" + country + "' already defined on line " + std::to_string(it->second));
        }
      }
      f.guard([&] {
        loaded.data.emplace_back(country, CurrencyCode(f.text("currency")), gdp, population, as_of);
        seen.emplace(country, row.line);
      });
    }
  }
  finish(loaded, loaded.data.size());
  return loaded;
}

Loaded<RateTable> parse_rates(std::istream& in) {
  Loaded<RateTable> loaded;
  CsvFile table(in, kRateColumns, loaded.report);
  std::map<std::pair<std::string, std::string>, std::size_t> lines;
  if (table.header_ok()) {
    for (const auto& row : table.rows()) {
      FieldReader f(table, row);
      const double rate = f.number("rate");
      const auto as_of = f.date("as_of");
      f.guard([&] {
        ExchangeRate r(CurrencyCode(f.text("base")), CurrencyCode(f.text("quote")), rate, as_of);
        const auto key = std::make_pair(r.base().code(), r.quote().code());
        if (auto it = lines.find(key); it != lines.end()) {
          throw Error(ErrorKind::DuplicatePair, key.first + "->" + key.second + " already defined on line " +
                                                    std::to_string(it->second));
        }
        loaded.data.insert(std::move(r));
        lines.emplace(key, row.line);
      });
    }
  }
  for (const auto& m : loaded.data.reciprocal_mismatches()) {
    const auto line = lines.at({m.backward.base().code(), m.backward.quote().code()});
    table.warning(line, ErrorKind::InvalidArgument,
                  m.forward.base().code() + "<->" + m.forward.quote().code() +
                      " rates are not reciprocal (product " + format_shortest(m.product) + ")");
  }
  finish(loaded, loaded.data.size());
  return loaded;
}

Loaded<std::vector<Basket>> parse_basket(std::istream& in, std::optional<std::span<const EconomySnapshot>> known) {
  Loaded<std::vector<Basket>> loaded;
  CsvFile table(in, kBasketColumns, loaded.report);
  std::map<std::string, std::size_t> duplicate_lines;
  std::size_t accepted = 0;
  if (table.header_ok()) {
    for (const auto& row : table.rows()) {
      FieldReader f(table, row);
      const double amount = f.number("amount");
      std::string role_text = f.text("role");
      if (role_text.starts_with("role=")) role_text.erase(0, 5);
      QuoteRole role = QuoteRole::Item;
      if (role_text == "salary") {
        role = QuoteRole::Salary;
      } else if (!role_text.empty() && role_text != "item") {
        f.fail(ErrorKind::MalformedRow, "role must be 'item' or 'salary', got '" + role_text + "'");
      }
      if (f.ok() && f.text("item").empty()) f.fail(ErrorKind::MalformedRow, "item is empty");
      f.guard([&] {
        PriceQuote quote(f.text("item"), f.text("unit"), CurrencyCode(f.text("currency")), amount);
        if (known) {
          const bool listed = std::any_of(known->begin(), known->end(),
                                          [&](const EconomySnapshot& e) { return e.currency() == quote.currency(); });
          if (!listed) {
            throw Error(ErrorKind::UnknownCurrency,
                        "currency " + quote.currency().code() + " is not used by any known economy");
          }
        }
        const auto& country = f.text("country");
        const std::string key = country + '\x1f' + quote.currency().code() + '\x1f' + quote.item() + '\x1f' + quote.unit();
        if (auto it = duplicate_lines.find(key); it != duplicate_lines.end()) {
          throw Error(ErrorKind::DuplicateItem, "'" + quote.item() + "' (" + quote.unit() + ") in " +
                                                    quote.currency().code() + " already listed on line " +
                                                    std::to_string(it->second));
        }
        if (role == QuoteRole::Salary) {
          for (const auto& b : loaded.data) {
            if (b.country == country && b.salary(quote.currency()) != nullptr) {
              throw Error(ErrorKind::DuplicateItem,
                          "second salary for " + (country.empty() ? std::string("<no country>") : country) + " in " +
                              quote.currency().code());
            }
          }
        }
        auto basket = std::find_if(loaded.data.begin(), loaded.data.end(),
                                   [&](const Basket& b) { return b.country == country; });
        if (basket == loaded.data.end()) {
          loaded.data.push_back({country, {}});
          basket = std::prev(loaded.data.end());
        }
        basket->entries.push_back({std::move(quote), role});
        duplicate_lines.emplace(key, row.line);
        ++accepted;
      });
    }
  }
  finish(loaded, accepted);
  return loaded;
}

Loaded<std::optional<AggregateSeries>> parse_series(std::istream& in, const TimeStandard& standard) {
  Loaded<std::optional<AggregateSeries>> loaded;
  CsvFile table(in, kSeriesColumns, loaded.report);
  std::optional<CurrencyCode> currency;
  try {
    currency = CurrencyCode(table.directives().currency.value_or("XXX"));
  } catch (const Error& e) {
    table.error(0, e.kind(), e.detail());
  }
  std::vector<AggregateYear> years;
  std::size_t last_line = 0;
  if (table.header_ok()) {
    for (const auto& row : table.rows()) {
      last_line = row.line;
      FieldReader f(table, row);
      AggregateYear y;
      y.year = static_cast<int>(f.integer("year"));
      y.m1 = f.number("m1") * table.directives().scale;
      y.gdp = f.number("gdp") * table.directives().scale;
      y.population = f.integer("population");
      y.events = f.text("events");
      if (f.ok() && !years.empty() && y.year <= years.back().year) {
        f.fail(ErrorKind::NonMonotoneYears,
               "year " + std::to_string(y.year) + " does not follow " + std::to_string(years.back().year));
      }
      if (f.ok() && y.m1 < 0.0) f.fail(ErrorKind::NonPositiveInput, "m1 must be non-negative");
      if (f.ok() && y.gdp <= 0.0) f.fail(ErrorKind::NonPositiveInput, "gdp must be positive");
      if (f.ok() && y.population <= 0) f.fail(ErrorKind::NonPositiveInput, "population must be positive");
      if (f.ok()) years.push_back(std::move(y));
    }
    if (years.empty() && loaded.report.ok()) table.error(last_line, ErrorKind::EmptySeries, "series has no data rows");
  }
  const std::size_t accepted = years.size();
  if (loaded.report.ok() && currency) loaded.data.emplace(*currency, std::move(years), standard);
  finish(loaded, accepted);
  return loaded;
}

Loaded<std::vector<EconomySnapshot>> load_economies(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_economies(in);
}

Loaded<RateTable> load_rates(const std::filesystem::path& path) {
  auto in = open_input(path);
  return parse_rates(in);
}

Loaded<std::vector<Basket>> load_basket(const std::filesystem::path& path,
                                        std::optional<std::span<const EconomySnapshot>> known) {
  auto in = open_input(path);
  return parse_basket(in, known);
}

Loaded<std::optional<AggregateSeries>> load_series(const std::filesystem::path& path, const TimeStandard& standard) {
  auto in = open_input(path);
  return parse_series(in, standard);
}

void write_economies(std::ostream& out, std::span<const EconomySnapshot> economies) {
  out << "country,currency,gdp,population,as_of\n";
  for (const auto& e : economies) {
    out << csv::join({e.country(), e.currency().code(), format_shortest(e.gdp()), std::to_string(e.population()),
                      optional_date(e.as_of())})
        << '\n';
  }
}

void write_rates(std::ostream& out, const RateTable& rates) {
  out << "base,quote,rate,as_of\n";
  for (const auto& r : rates) {
    out << csv::join({r.base().code(), r.quote().code(), format_shortest(r.rate()), optional_date(r.as_of())}) << '\n';
  }
}

void write_basket(std::ostream& out, std::span<const Basket> baskets) {
  out << "country,currency,item,unit,amount,role\n";
  for (const auto& b : baskets) {
    for (const auto& e : b.entries) {
      out << csv::join({b.country, e.quote.currency().code(), e.quote.item(), e.quote.unit(),
                        format_shortest(e.quote.amount()), e.role == QuoteRole::Salary ? "salary" : "item"})
          << '\n';
    }
  }
}

void write_series(std::ostream& out, const AggregateSeries& series) {
  out << "# currency=" << series.currency().code() << '\n';
  out << "year,m1,gdp,population,events\n";
  for (const auto& y : series.years()) {
    out << csv::join({std::to_string(y.year), format_shortest(y.m1), format_shortest(y.gdp),
                      std::to_string(y.population), y.events})
        << '\n';
  }
}

}  // namespace monmin
