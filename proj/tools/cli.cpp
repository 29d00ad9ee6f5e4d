#include "monmin/cli.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "monmin/ingest.hpp"
#include "monmin/report.hpp"
#include "monmin/series.hpp"

namespace monmin::cli {

namespace {

// Bad or missing flags detected after CLI11 parsing.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// An input file failed to load; diagnostics are already printed.
struct IngestFailure {};

struct CmSpec {
  std::optional<CurrencyCode> currency;
  double value;
};

CmSpec parse_cm_spec(const std::string& text) {
  const auto eq = text.find('=');
  const std::string number = eq == std::string::npos ? text : text.substr(eq + 1);
  double value = 0.0;
  auto [ptr, ec] = std::from_chars(number.data(), number.data() + number.size(), value);
  if (number.empty() || ec != std::errc() || ptr != number.data() + number.size()) {
    throw UsageError("--cm expects VALUE or CODE=VALUE, got '" + text + "'");
  }
  if (eq == std::string::npos) return {std::nullopt, value};
  return {CurrencyCode(text.substr(0, eq)), value};
}

class Runner {
 public:
  Runner(const CliConfig& config, std::ostream& out, std::ostream& err)
      : cfg_(config), out_(out), err_(err), standard_(config.tetcy) {}

  void cm() {
    const auto economies = economies_or_throw();
    emit(render(TableId::T1, build_table1(economies, standard_)));
  }

  void convert() {
    const MonMinValue cm = single_cm();
    const CurrencyCode currency = cfg_.currency.empty() ? cm.currency() : CurrencyCode(cfg_.currency);
    const PriceQuote price("price", "", currency, cfg_.amount);
    const auto monmin = to_monmin(price, cm);
    emit(format_rounded(monmin.monmin(), RoundingRule::decimals(cfg_.decimals.value_or(0))) + "\n");
  }

  void parity() {
    const ExchangeRate current(CurrencyCode("REF"), CurrencyCode("LOC"), cfg_.rate);
    const MonMinPrice reference("item", CurrencyCode("REF"), cfg_.ref);
    const MonMinPrice local("item", CurrencyCode("LOC"), cfg_.local);
    const double rate = parity_rate(current, reference, local);
    emit(format_rounded(rate, RoundingRule::decimals(cfg_.decimals.value_or(3))) + "\n");
  }

  void basket() { emit(render(TableId::T4, build_table4(baskets_or_throw(), cm_book()))); }

  void percent() { emit(render(TableId::T4B, build_table4b(baskets_or_throw(), cm_book()))); }

  void series() {
    const auto s = series_or_throw();
    const auto values = series_in_monmin(s);
    std::optional<ExtremaReport> extrema;
    if (cfg_.extrema) extrema = detect_extrema(values);
    std::string text = render(TableId::T5, build_table5(s));
    if (extrema) {
      auto years = [](const std::vector<int>& v) {
        std::string line;
        for (int y : v) line += " " + std::to_string(y);
        return line;
      };
      text += "\npeaks:" + years(extrema->peaks) + "\ntroughs:" + years(extrema->troughs) + "\n";
    }
    if (!cfg_.plot_out.empty()) {
      std::ofstream plot(cfg_.plot_out, std::ios::binary);
      if (!plot) throw Error(ErrorKind::FileNotFound, "cannot write " + cfg_.plot_out);
      emit_plot_data(plot, s, values, extrema ? &*extrema : nullptr);
    }
    emit(text);
  }

  void report() {
    const auto id = parse_table_id(cfg_.table);
    if (!id) throw UsageError("--table must be one of 1, 2, 3, 4, 4b, 5");
    switch (*id) {
      case TableId::T1: return cm();
      case TableId::T2: {
        if (cfg_.rates.empty()) throw UsageError("table 2 needs --rates");
        const auto rates = load_checked(load_rates(cfg_.rates), cfg_.rates);
        std::optional<MonMinValue> reference;
        if (!cfg_.cm.empty()) {
          if (cfg_.cm.size() != 1) throw UsageError("table 2 takes one reference --cm");
          auto spec = parse_cm_spec(cfg_.cm.front());
          if (!spec.currency && !rates.empty()) spec.currency = rates.begin()->base();
          reference.emplace(spec.currency.value_or(CurrencyCode::unspecified()), spec.value);
        } else {
          reference.emplace(single_cm());
        }
        return emit(render(*id, build_table2(*reference, rates)));
      }
      case TableId::T3: {
        const auto baskets = baskets_or_throw();
        const Basket* chosen = nullptr;
        for (const auto& b : baskets) {
          if (cfg_.country.empty() ? baskets.size() == 1 : b.country == cfg_.country) chosen = &b;
        }
        if (chosen == nullptr) throw UsageError("table 3 needs a single basket; pick one with --country");
        return emit(render(*id, build_table3(*chosen, cm_book())));
      }
      case TableId::T4: return basket();
      case TableId::T4B: return percent();
      case TableId::T5: return emit(render(*id, build_table5(series_or_throw())));
    }
  }

 private:
  template <class T>
  T load_checked(Loaded<T> loaded, const std::string& path) {
    for (const auto& w : loaded.report.warnings) {
      err_ << path << ':' << w.line << ": warning: " << w.message << '\n';
    }
    if (!loaded.report.ok()) {
      for (const auto& e : loaded.report.errors) {
        err_ << path << ':' << e.line << ": " << to_string(e.kind) << ": " << e.message << '\n';
      }
      throw IngestFailure{};
    }
    return std::move(loaded.data);
  }

  std::vector<EconomySnapshot> economies_or_throw() {
    if (cfg_.economies.empty()) throw UsageError("--economies is required");
    return load_checked(load_economies(cfg_.economies), cfg_.economies);
  }

  std::vector<Basket> baskets_or_throw() {
    if (cfg_.basket.empty()) throw UsageError("--basket is required");
    if (cfg_.check_currencies) {
      const auto economies = economies_or_throw();
      return load_checked(load_basket(cfg_.basket, std::span<const EconomySnapshot>(economies)), cfg_.basket);
    }
    return load_checked(load_basket(cfg_.basket), cfg_.basket);
  }

  AggregateSeries series_or_throw() {
    if (cfg_.series.empty()) throw UsageError("--series is required");
    auto loaded = load_checked(load_series(cfg_.series, standard_), cfg_.series);
    return std::move(*loaded);
  }

  const EconomySnapshot& pick_country(const std::vector<EconomySnapshot>& economies) {
    for (const auto& e : economies) {
      if (e.country() == cfg_.country) return e;
    }
    throw Error(ErrorKind::InvalidArgument, "country '" + cfg_.country + "' not found in " + cfg_.economies);
  }

  // Exactly one Cm, from --cm or from --economies plus --country.
  MonMinValue single_cm() {
    const bool from_flag = !cfg_.cm.empty();
    const bool from_file = !cfg_.economies.empty() || !cfg_.country.empty();
    if (from_flag && from_file) throw UsageError("give either --cm or --economies with --country, not both");
    if (from_flag) {
      if (cfg_.cm.size() != 1) throw UsageError("expected a single --cm value");
      const auto spec = parse_cm_spec(cfg_.cm.front());
      auto currency = spec.currency;
      if (!currency) currency = cfg_.currency.empty() ? CurrencyCode::unspecified() : CurrencyCode(cfg_.currency);
      return MonMinValue(*currency, spec.value, CmSource::Manual);
    }
    if (cfg_.economies.empty() || cfg_.country.empty()) {
      throw UsageError("missing Cm source: pass --cm VALUE or --economies FILE --country NAME");
    }
    const auto economies = economies_or_throw();
    return compute_cm(pick_country(economies), standard_);
  }

  // Cm per currency for the basket tables. Explicit --cm entries override
  // values computed from --economies.
  CmBook cm_book() {
    CmBook book;
    if (!cfg_.economies.empty()) {
      const auto economies = economies_or_throw();
      std::vector<CurrencyCode> seen;
      for (const auto& e : economies) {
        if (!cfg_.country.empty() && e.country() != cfg_.country) continue;
        if (std::find(seen.begin(), seen.end(), e.currency()) != seen.end()) {
          throw Error(ErrorKind::InvalidArgument,
                      "several economies use " + e.currency().code() + "; choose one with --country");
        }
        seen.push_back(e.currency());
        book.set(compute_cm(e, standard_));
      }
    }
    for (const auto& text : cfg_.cm) {
      const auto spec = parse_cm_spec(text);
      if (!spec.currency) throw UsageError("basket tables need --cm CODE=VALUE, got '" + text + "'");
      book.set(MonMinValue(*spec.currency, spec.value, CmSource::Manual));
    }
    if (book.empty()) throw UsageError("missing Cm source: pass --cm CODE=VALUE or --economies FILE");
    return book;
  }

  std::string render(TableId id, const TableData& data) {
    auto spec = default_spec(id);
    for (const auto& r : cfg_.round) {
      const auto eq = r.rfind('=');
      int digits = 0;
      const char* first = r.data() + (eq == std::string::npos ? 0 : eq + 1);
      auto [ptr, ec] = std::from_chars(first, r.data() + r.size(), digits);
      if (eq == std::string::npos || ec != std::errc() || ptr != r.data() + r.size() || digits < 0) {
        throw UsageError("--round expects HEADER=DIGITS, got '" + r + "'");
      }
      spec.overrides[r.substr(0, eq)] = RoundingRule::decimals(digits);
    }
    return render_table(spec, data, cfg_.format == "csv" ? TableFormat::Csv : TableFormat::Text);
  }

  void emit(const std::string& text) {
    if (cfg_.output.empty()) {
      out_ << text;
      return;
    }
    std::ofstream file(cfg_.output, std::ios::binary);
    if (!file) throw Error(ErrorKind::FileNotFound, "cannot write " + cfg_.output);
    file << text;
  }

  const CliConfig& cfg_;
  std::ostream& out_;
  std::ostream& err_;
  TimeStandard standard_;
};

void add_cm_sources(CLI::App* cmd, CliConfig& cfg, bool many) {
  cmd->add_option("--cm", cfg.cm, many ? "Cm as CODE=VALUE (repeatable)" : "Cm as VALUE or CODE=VALUE");
  cmd->add_option("--economies", cfg.economies, "Economies CSV to compute Cm from");
  cmd->add_option("--country", cfg.country, "Country to take from the economies file");
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CliConfig cfg;
  CLI::App app{"Monetary Minute (MonMin) calculator", "monmin"};
  app.set_config("--config", "", "Read options from a TOML/INI file; flags take precedence");
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--tetcy", cfg.tetcy, "Minutes per year of economic time capacity")
      ->envname("MONMIN_TETCY")
      ->check(CLI::PositiveNumber);
  app.add_option("--format", cfg.format, "Table format")->check(CLI::IsMember({"text", "csv"}));
  app.add_option("--output", cfg.output, "Write results to this file instead of stdout");

  auto* cm = app.add_subcommand("cm", "Cm per country from GDP and population");
  cm->add_option("--economies", cfg.economies, "Economies CSV")->required();

  auto* convert = app.add_subcommand("convert", "Convert a currency amount into MonMin");
  convert->add_option("--amount", cfg.amount, "Amount in currency units")->required()->check(CLI::NonNegativeNumber);
  convert->add_option("--currency", cfg.currency, "Currency of the amount");
  convert->add_option("--decimals", cfg.decimals, "Decimals in the printed result (default 0)")->check(CLI::NonNegativeNumber);
  add_cm_sources(convert, cfg, false);

  auto* parity = app.add_subcommand("parity", "Exchange rate equalizing an item's MonMin price");
  parity->add_option("--rate", cfg.rate, "Current rate, local units per reference unit")->required();
  parity->add_option("--ref", cfg.ref, "Item price in MonMin, reference context")->required();
  parity->add_option("--local", cfg.local, "Item price in MonMin, local context")->required();
  parity->add_option("--decimals", cfg.decimals, "Decimals in the printed result (default 3)")->check(CLI::NonNegativeNumber);

  auto* basket = app.add_subcommand("basket", "Basket prices in MonMin");
  auto* percent = app.add_subcommand("percent", "Basket prices as percent of salary");
  for (auto* cmd : {basket, percent}) {
    cmd->add_option("--basket", cfg.basket, "Basket CSV")->required();
    cmd->add_flag("--check-currencies", cfg.check_currencies, "Reject currencies absent from --economies");
    cmd->add_option("--round", cfg.round, "HEADER=DIGITS rounding override (repeatable)");
    add_cm_sources(cmd, cfg, true);
  }

  auto* series = app.add_subcommand("series", "M1 money stock in MonMin, with extrema");
  series->add_option("--series", cfg.series, "Aggregate series CSV")->required();
  series->add_option("--plot-out", cfg.plot_out, "Write plot data to this file");
  series->add_flag("--extrema", cfg.extrema, "Report peaks and troughs");

  auto* report = app.add_subcommand("report", "Render one of the standard tables");
  report->add_option("--table", cfg.table, "1, 2, 3, 4, 4b or 5")->required();
  report->add_option("--rates", cfg.rates, "Exchange rates CSV (table 2)");
  report->add_option("--basket", cfg.basket, "Basket CSV (tables 3, 4, 4b)");
  report->add_option("--series", cfg.series, "Aggregate series CSV (table 5)");
  report->add_option("--round", cfg.round, "HEADER=DIGITS rounding override (repeatable)");
  add_cm_sources(report, cfg, true);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kUsageError;
  }

  Runner runner(cfg, out, err);
  try {
    if (*cm) runner.cm();
    else if (*convert) runner.convert();
    else if (*parity) runner.parity();
    else if (*basket) runner.basket();
    else if (*percent) runner.percent();
    else if (*series) runner.series();
    else if (*report) runner.report();
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kUsageError;
  } catch (const IngestFailure&) {
    return kDataError;
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::FileNotFound) {
      err << "error: " << e.detail() << '\n';
    } else {
      err << "error: " << e.what() << '\n';
    }
    return kDataError;
  }
  return kSuccess;
}

}  // namespace monmin::cli
