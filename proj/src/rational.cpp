#include "cfp/rational.hpp"

#include <cctype>
#include <charconv>

#include "cfp/error.hpp"

namespace cfp {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::int64_t parse_int(std::string_view s, std::string_view whole) {
  std::int64_t v = 0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty())
    throw ParseError("invalid number '" + std::string(whole) + "'", 0);
  return v;
}

}  // namespace

std::int64_t parse_fixed4(std::string_view text) {
  const std::string_view s = trim(text);
  std::string_view body = s;
  bool neg = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    neg = body.front() == '-';
    body.remove_prefix(1);
  }
  const auto dot = body.find('.');
  const std::string_view whole = body.substr(0, dot);
  std::string_view frac = dot == std::string_view::npos ? std::string_view{} : body.substr(dot + 1);
  if (whole.empty() && frac.empty()) throw ParseError("invalid number '" + std::string(s) + "'", 0);
  for (char ch : frac)
    if (!std::isdigit(static_cast<unsigned char>(ch)))
      throw ParseError("invalid number '" + std::string(s) + "'", 0);

  std::int64_t value = whole.empty() ? 0 : parse_int(whole, s) * 10000;
  std::int64_t digits = 0;
  for (std::size_t k = 0; k < 4; ++k)
    digits = digits * 10 + (k < frac.size() ? frac[k] - '0' : 0);
  value += digits;
  if (frac.size() > 4 && frac[4] >= '5') ++value;
  return neg ? -value : value;
}

Rational parse_rational(std::string_view text) {
  const std::string_view s = trim(text);
  if (const auto slash = s.find('/'); slash != std::string_view::npos) {
    const std::int64_t den = parse_int(trim(s.substr(slash + 1)), s);
    if (den == 0) throw ParseError("zero denominator in '" + std::string(s) + "'", 0);
    return {parse_int(trim(s.substr(0, slash)), s), den};
  }
  if (s.find('.') == std::string_view::npos) return {parse_int(s, s), 1};
  return {parse_fixed4(s), 10000};
}

}  // namespace cfp
