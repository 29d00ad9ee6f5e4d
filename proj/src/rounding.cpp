#include "monmin/rounding.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>

#include "monmin/error.hpp"

namespace monmin {

namespace {

double round_with(double x, RoundingMode mode) {
  switch (mode) {
    case RoundingMode::HalfAwayFromZero: return std::round(x);
    case RoundingMode::HalfEven: {
      const double r = std::round(x);
      if (std::abs(x - std::trunc(x)) == 0.5 && std::fmod(r, 2.0) != 0.0) return r - std::copysign(1.0, x);
      return r;
    }
    case RoundingMode::TowardZero: return std::trunc(x);
  }
  return x;
}

// Exactly representable integers only; beyond that the double already has no
// fractional digits to speak of.
constexpr double kExactIntegerLimit = 9007199254740992.0;  // 2^53

std::string fixed_decimals(double value, int decimals, RoundingMode mode) {
  if (decimals < 0) {
    const double unit = std::pow(10.0, -decimals);
    return fixed_decimals(round_with(value / unit, mode) * unit, 0, mode);
  }
  const double scaled = value * std::pow(10.0, decimals);
  if (std::abs(scaled) >= kExactIntegerLimit) {
    std::array<char, 400> buf{};
    auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value, std::chars_format::fixed, decimals);
    return std::string(buf.data(), res.ptr);
  }
  const double rounded = round_with(scaled, mode);
  const auto magnitude = static_cast<std::uint64_t>(std::abs(rounded));
  std::string digits = std::to_string(magnitude);
  if (decimals > 0) {
    if (digits.size() <= static_cast<std::size_t>(decimals)) {
      digits.insert(0, static_cast<std::size_t>(decimals) + 1 - digits.size(), '0');
    }
    digits.insert(digits.size() - static_cast<std::size_t>(decimals), 1, '.');
  }
  if (rounded < 0.0 && magnitude != 0) digits.insert(0, 1, '-');
  return digits;
}

void trim_fraction(std::string& text) {
  const auto dot = text.find('.');
  if (dot == std::string::npos) return;
  const auto last = text.find_last_not_of('0');
  text.erase(last == dot ? dot : last + 1);
}

}  // namespace

std::string format_rounded(double value, const RoundingRule& rule) {
  if (!std::isfinite(value)) return std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf");
  std::string text;
  if (rule.kind == RoundingRule::Kind::Decimals) {
    text = fixed_decimals(value, rule.digits, rule.mode);
  } else {
    if (rule.digits < 1) throw Error(ErrorKind::InvalidArgument, "significant digits must be >= 1");
    if (value == 0.0) {
      text = fixed_decimals(0.0, rule.digits - 1, rule.mode);
    } else {
      const int exponent = static_cast<int>(std::floor(std::log10(std::abs(value))));
      text = fixed_decimals(value, rule.digits - 1 - exponent, rule.mode);
    }
  }
  if (rule.trim_zeros) trim_fraction(text);
  return text;
}

std::string format_shortest(double value) {
  std::array<char, 64> buf{};
  auto res = std::to_chars(buf.data(), buf.data() + buf.size(), value);
  return std::string(buf.data(), res.ptr);
}

}  // namespace monmin
