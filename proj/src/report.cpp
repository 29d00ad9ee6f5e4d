#include "monmin/report.hpp"

#include <algorithm>
#include <ostream>
#include <sstream>

#include "monmin/csv.hpp"

namespace monmin {

namespace {

bool is_numeric(ColumnKind kind) { return kind != ColumnKind::Text && kind != ColumnKind::Integer; }

[[noreturn]] void shape(const std::string& message) { throw Error(ErrorKind::ShapeMismatch, message); }

std::string cm_note(const MonMinValue& cm) {
  return "Cm " + cm.currency().code() + " = " + format_shortest(cm.value()) + " (" +
         std::string(to_string(cm.source())) + ")";
}

// Item rows shared by the basket tables, keyed by (item, unit) in order of
// first appearance across all baskets.
struct ItemKey {
  std::string item;
  std::string unit;
  friend bool operator==(const ItemKey&, const ItemKey&) = default;
};

std::vector<ItemKey> collect_items(std::span<const Basket> baskets) {
  std::vector<ItemKey> keys;
  for (const auto& b : baskets) {
    for (const auto& e : b.entries) {
      ItemKey k{e.quote.item(), e.quote.unit()};
      if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(std::move(k));
    }
  }
  return keys;
}

struct Context {
  const Basket* basket;
  CurrencyCode currency;
  std::string label;
};

std::vector<Context> collect_contexts(std::span<const Basket> baskets) {
  std::vector<Context> out;
  for (const auto& b : baskets) {
    for (const auto& c : b.currencies()) {
      out.push_back({&b, c, b.country.empty() ? c.code() : b.country + " " + c.code()});
    }
  }
  return out;
}

const PriceQuote* find_quote(const Basket& basket, const CurrencyCode& currency, const ItemKey& key) {
  for (const auto& e : basket.entries) {
    if (e.quote.currency() == currency && e.quote.item() == key.item && e.quote.unit() == key.unit) return &e.quote;
  }
  return nullptr;
}

std::string format_cell(const Cell& cell, const Column& column, const RoundingRule* rule) {
  return std::visit(
      [&](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, std::monostate>) {
          return {};
        } else if constexpr (std::is_same_v<T, std::string>) {
          return v;
        } else if constexpr (std::is_same_v<T, std::int64_t>) {
          return std::to_string(v);
        } else {
          return format_rounded(v / column.divisor, *rule);
        }
      },
      cell);
}

void check_cell(const Cell& cell, const Column& column) {
  const bool ok = std::holds_alternative<std::monostate>(cell) ||
                  (column.kind == ColumnKind::Text && std::holds_alternative<std::string>(cell)) ||
                  (column.kind == ColumnKind::Integer && std::holds_alternative<std::int64_t>(cell)) ||
                  (is_numeric(column.kind) && std::holds_alternative<double>(cell));
  if (!ok) shape("cell type does not match column '" + column.header + "'");
}

}  // namespace

std::optional<TableId> parse_table_id(std::string_view text) {
  if (text == "1") return TableId::T1;
  if (text == "2") return TableId::T2;
  if (text == "3") return TableId::T3;
  if (text == "4") return TableId::T4;
  if (text == "4b" || text == "4B") return TableId::T4B;
  if (text == "5") return TableId::T5;
  return std::nullopt;
}

std::string_view to_string(TableId id) noexcept {
  switch (id) {
    case TableId::T1: return "1";
    case TableId::T2: return "2";
    case TableId::T3: return "3";
    case TableId::T4: return "4";
    case TableId::T4B: return "4b";
    case TableId::T5: return "5";
  }
  return "?";
}

const RoundingRule* TableSpec::rule_for(const Column& column) const {
  if (auto it = overrides.find(column.header); it != overrides.end()) return &it->second;
  if (auto it = rules.find(column.kind); it != rules.end()) return &it->second;
  return nullptr;
}

TableSpec default_spec(TableId id) {
  using K = ColumnKind;
  TableSpec spec{id, {}, {}};
  switch (id) {
    case TableId::T1:
      spec.rules = {{K::Amount, RoundingRule::decimals(0)}, {K::Cm, RoundingRule::decimals(7)}};
      break;
    case TableId::T2:
      spec.rules = {{K::Rate, RoundingRule::significant(6)},
                    {K::Cm, RoundingRule::significant(6)},
                    {K::InverseCm, RoundingRule::decimals(2)}};
      break;
    case TableId::T3:
      spec.rules = {{K::Amount, RoundingRule::decimals(2)}, {K::MonMin, RoundingRule::decimals(0)}};
      break;
    case TableId::T4:
      spec.rules = {{K::MonMin, RoundingRule::decimals(0)}};
      break;
    case TableId::T4B:
      spec.rules = {{K::Percent, RoundingRule::decimals(2)}};
      break;
    case TableId::T5:
      spec.rules = {{K::Amount, RoundingRule::decimals(0)}, {K::MonMin, RoundingRule::decimals(0)}};
      break;
  }
  return spec;
}

std::string render_table(const TableSpec& spec, const TableData& data, TableFormat format) {
  if (spec.id != data.id) {
    shape("spec for table " + std::string(to_string(spec.id)) + " applied to table " +
          std::string(to_string(data.id)));
  }
  std::vector<const RoundingRule*> rules;
  for (const auto& c : data.columns) {
    const RoundingRule* rule = is_numeric(c.kind) ? spec.rule_for(c) : nullptr;
    if (is_numeric(c.kind) && rule == nullptr) shape("no rounding rule for column '" + c.header + "'");
    rules.push_back(rule);
  }

  std::vector<std::vector<std::string>> cells;
  cells.reserve(data.rows.size());
  for (std::size_t r = 0; r < data.rows.size(); ++r) {
    const auto& row = data.rows[r];
    if (row.size() != data.columns.size()) {
      shape("row " + std::to_string(r + 1) + " has " + std::to_string(row.size()) + " cells for " +
            std::to_string(data.columns.size()) + " columns");
    }
    std::vector<std::string> text;
    for (std::size_t c = 0; c < row.size(); ++c) {
      check_cell(row[c], data.columns[c]);
      text.push_back(format_cell(row[c], data.columns[c], rules[c]));
    }
    cells.push_back(std::move(text));
  }

  std::vector<std::string> headers;
  for (const auto& c : data.columns) headers.push_back(c.header);

  std::ostringstream out;
  if (format == TableFormat::Csv) {
    out << "# " << data.title << '\n';
    out << csv::join(headers) << '\n';
    for (const auto& row : cells) out << csv::join(row) << '\n';
    for (const auto& n : data.notes) out << "# " << n << '\n';
    return out.str();
  }

  std::vector<std::size_t> width(headers.size());
  for (std::size_t c = 0; c < headers.size(); ++c) {
    width[c] = headers[c].size();
    for (const auto& row : cells) width[c] = std::max(width[c], row[c].size());
  }
  auto emit = [&](const std::vector<std::string>& row) {
    std::string line;
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) line += "  ";
      const std::string pad(width[c] - row[c].size(), ' ');
      line += data.columns[c].kind == ColumnKind::Text ? row[c] + pad : pad + row[c];
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << '\n';
  };
  out << data.title << "\n\n";
  emit(headers);
  std::vector<std::string> rule_line;
  for (auto w : width) rule_line.emplace_back(w, '-');
  emit(rule_line);
  for (const auto& row : cells) emit(row);
  if (!data.notes.empty()) {
    out << '\n';
    for (const auto& n : data.notes) out << n << '\n';
  }
  return out.str();
}

void CmBook::set(MonMinValue cm) {
  for (auto& v : values_) {
    if (v.currency() == cm.currency()) {
      v = std::move(cm);
      return;
    }
  }
  values_.push_back(std::move(cm));
}

const MonMinValue* CmBook::find(const CurrencyCode& currency) const noexcept {
  for (const auto& v : values_) {
    if (v.currency() == currency) return &v;
  }
  return nullptr;
}

const MonMinValue& CmBook::at(const CurrencyCode& currency) const {
  if (const auto* v = find(currency)) return *v;
  throw Error(ErrorKind::UnknownCurrency, "no Cm value available for " + currency.code());
}

TableData build_table1(std::span<const EconomySnapshot> economies, const TimeStandard& standard) {
  TableData t;
  t.id = TableId::T1;
  t.title = "Value of the Monetary Minute Cm from GDP and population";
  t.columns = {{"Country", ColumnKind::Text},      {"Currency", ColumnKind::Text},
               {"GDP", ColumnKind::Amount},        {"Population", ColumnKind::Integer},
               {"GDP p.c.", ColumnKind::Amount},   {"Cm", ColumnKind::Cm},
               {"Cm source", ColumnKind::Text}};
  for (const auto& e : economies) {
    const auto cm = compute_cm(e, standard);
    t.rows.push_back({e.country(), e.currency().code(), e.gdp(), e.population(), e.gdp_per_capita(), cm.value(),
                      std::string(to_string(cm.source()))});
  }
  t.notes.push_back("Cm in currency units per MonMin; minutes per year = " +
                    format_shortest(standard.minutes_per_year()));
  return t;
}

TableData build_table2(const MonMinValue& reference, const RateTable& rates) {
  TableData t;
  t.id = TableId::T2;
  const auto& base = reference.currency().code();
  t.title = "MonMin rates across currencies from " + base + " exchange rates";
  t.columns = {{"Currency", ColumnKind::Text},
               {"Rate per " + base, ColumnKind::Rate},
               {"Cm", ColumnKind::Cm},
               {"Inverse Cm", ColumnKind::InverseCm},
               {"Cm source", ColumnKind::Text}};
  auto add = [&](const MonMinValue& cm, double rate) {
    t.rows.push_back({cm.currency().code(), rate, cm.value(), invert_cm(cm), std::string(to_string(cm.source()))});
  };
  add(reference, 1.0);
  for (const auto& r : rates) {
    if (r.base() == reference.currency()) add(cross_cm(reference, r), r.rate());
  }
  t.notes.push_back("Rate = units of currency per 1 " + base + "; Cm in currency units per MonMin; "
                    "inverse Cm in MonMin per currency unit");
  t.notes.push_back(cm_note(reference));
  return t;
}

TableData build_table3(const Basket& basket, const CmBook& cms) {
  TableData t;
  t.id = TableId::T3;
  t.title = "Prices in currencies and in MonMin" + (basket.country.empty() ? std::string() : " (" + basket.country + ")");
  const auto currencies = basket.currencies();
  t.columns = {{"Item", ColumnKind::Text}, {"Unit", ColumnKind::Text}};
  for (const auto& c : currencies) t.columns.push_back({c.code(), ColumnKind::Amount});
  for (const auto& c : currencies) t.columns.push_back({"MonMin " + c.code(), ColumnKind::MonMin});

  const auto items = collect_items(std::span(&basket, 1));
  for (const auto& key : items) {
    std::vector<Cell> row{key.item, key.unit};
    std::vector<Cell> monmin;
    for (const auto& c : currencies) {
      if (const auto* q = find_quote(basket, c, key)) {
        row.emplace_back(q->amount());
        monmin.emplace_back(to_monmin(*q, cms.at(c)).monmin());
      } else {
        row.emplace_back(std::monostate{});
        monmin.emplace_back(std::monostate{});
      }
    }
    row.insert(row.end(), monmin.begin(), monmin.end());
    t.rows.push_back(std::move(row));
  }
  for (const auto& c : currencies) t.notes.push_back(cm_note(cms.at(c)));
  return t;
}

TableData build_table4(std::span<const Basket> baskets, const CmBook& cms) {
  TableData t;
  t.id = TableId::T4;
  t.title = "Prices and salaries in MonMin";
  const auto contexts = collect_contexts(baskets);
  t.columns = {{"Item", ColumnKind::Text}, {"Unit", ColumnKind::Text}};
  for (const auto& ctx : contexts) t.columns.push_back({ctx.label, ColumnKind::MonMin});

  for (const auto& key : collect_items(baskets)) {
    std::vector<Cell> row{key.item, key.unit};
    for (const auto& ctx : contexts) {
      if (const auto* q = find_quote(*ctx.basket, ctx.currency, key)) {
        row.emplace_back(to_monmin(*q, cms.at(ctx.currency)).monmin());
      } else {
        row.emplace_back(std::monostate{});
      }
    }
    t.rows.push_back(std::move(row));
  }
  std::vector<CurrencyCode> noted;
  for (const auto& ctx : contexts) {
    if (std::find(noted.begin(), noted.end(), ctx.currency) != noted.end()) continue;
    noted.push_back(ctx.currency);
    t.notes.push_back(cm_note(cms.at(ctx.currency)));
  }
  return t;
}

TableData build_table4b(std::span<const Basket> baskets, const CmBook& cms) {
  TableData t;
  t.id = TableId::T4B;
  t.title = "Prices as percent of the average monthly net salary";
  const auto contexts = collect_contexts(baskets);
  t.columns = {{"Item", ColumnKind::Text}, {"Unit", ColumnKind::Text}};
  for (const auto& ctx : contexts) t.columns.push_back({ctx.label, ColumnKind::Percent});

  std::vector<std::optional<MonMinPrice>> salaries;
  for (const auto& ctx : contexts) {
    const auto* s = ctx.basket->salary(ctx.currency);
    if (s == nullptr) {
      t.notes.push_back("no salary listed for " + ctx.label + "; column left empty");
      salaries.emplace_back();
    } else {
      salaries.emplace_back(to_monmin(*s, cms.at(ctx.currency)));
    }
  }
  for (const auto& key : collect_items(baskets)) {
    std::vector<Cell> row{key.item, key.unit};
    for (std::size_t i = 0; i < contexts.size(); ++i) {
      const auto* q = find_quote(*contexts[i].basket, contexts[i].currency, key);
      if (q != nullptr && salaries[i]) {
        row.emplace_back(percent_of_salary(to_monmin(*q, cms.at(contexts[i].currency)), *salaries[i]));
      } else {
        row.emplace_back(std::monostate{});
      }
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

TableData build_table5(const AggregateSeries& series) {
  TableData t;
  t.id = TableId::T5;
  const auto& code = series.currency().code();
  t.title = "Money stock M1 in " + code + " and in MonMin, with GDP";
  t.columns = {{"Year", ColumnKind::Integer},
               {"M1 (bn " + code + ")", ColumnKind::Amount, 1e9},
               {"M1 (bn MonMin)", ColumnKind::MonMin, 1e9},
               {"GDP (bn " + code + ")", ColumnKind::Amount, 1e9},
               {"Events", ColumnKind::Text}};
  const auto monmin = series_in_monmin(series);
  for (std::size_t i = 0; i < monmin.size(); ++i) {
    const auto& y = series.years()[i];
    t.rows.push_back({std::int64_t{y.year}, y.m1, monmin[i].value, y.gdp, y.events});
  }
  t.notes.push_back("MonMin column uses each year's Cm computed from GDP and population (ComputedFromGdp); "
                    "minutes per year = " + format_shortest(series.standard().minutes_per_year()));
  return t;
}

void emit_plot_data(std::ostream& out, const AggregateSeries& series, std::span<const YearValue> monmin,
                    const ExtremaReport* markers) {
  if (monmin.empty()) throw Error(ErrorKind::EmptySeries, "no series values to plot");
  if (monmin.size() != series.years().size()) shape("plot values do not match the series length");
  out << "year,m1_currency,m1_monmin,gdp_currency" << (markers ? ",extremum" : "") << '\n';
  for (std::size_t i = 0; i < monmin.size(); ++i) {
    const auto& y = series.years()[i];
    if (monmin[i].year != y.year) shape("plot values are not aligned with series year " + std::to_string(y.year));
    out << y.year << ',' << format_shortest(y.m1) << ',' << format_shortest(monmin[i].value) << ','
        << format_shortest(y.gdp);
    if (markers) {
      const auto has = [&](const std::vector<int>& v) { return std::find(v.begin(), v.end(), y.year) != v.end(); };
      out << ',' << (has(markers->peaks) ? "peak" : has(markers->troughs) ? "trough" : "");
    }
    out << '\n';
  }
}

}  // namespace monmin
