#pragma once

#include <compare>
#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>
#include <string_view>

namespace cfp {

/// Exact fraction num/den kept in lowest terms with den >= 1.
///
/// Efficacy values and Dinkelbach parameters are ratios of small counts, so
/// 64-bit components are plenty; comparisons widen to 128 bits.
class Rational {
public:
  constexpr Rational() = default;
  constexpr Rational(std::int64_t num, std::int64_t den = 1) : num_(num), den_(den) {
    if (den_ == 0) throw std::invalid_argument("rational with zero denominator");
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const std::int64_t g = std::gcd(num_ < 0 ? -num_ : num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  constexpr std::int64_t num() const { return num_; }
  constexpr std::int64_t den() const { return den_; }

  constexpr bool is_zero() const { return num_ == 0; }

  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// Value scaled by 10^4 and rounded half-up (non-negative values).
  constexpr std::int64_t round4() const {
    const __int128 scaled = static_cast<__int128>(num_) * 20000 + den_;
    return static_cast<std::int64_t>(scaled / (2 * static_cast<__int128>(den_)));
  }

  friend constexpr bool operator==(const Rational&, const Rational&) = default;

  friend constexpr std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const __int128 lhs = static_cast<__int128>(a.num_) * b.den_;
    const __int128 rhs = static_cast<__int128>(b.num_) * a.den_;
    if (lhs < rhs) return std::strong_ordering::less;
    if (lhs > rhs) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

private:
  std::int64_t num_ = 0;
  std::int64_t den_ = 1;
};

/// "0.6957"-style rendering of a value already scaled by 10^4.
inline std::string format_fixed4(std::int64_t scaled) {
  const bool neg = scaled < 0;
  if (neg) scaled = -scaled;
  std::string frac = std::to_string(scaled % 10000);
  frac.insert(0, 4 - frac.size(), '0');
  return (neg ? "-" : "") + std::to_string(scaled / 10000) + "." + frac;
}

inline std::string format_fixed4(const Rational& r) { return format_fixed4(r.round4()); }

/// Parses "a/b", an integer, or a decimal such as "0.6957".
///
/// Decimal input is rounded to four places and returned over 10000, which is
/// the precision of published efficacy tables.
Rational parse_rational(std::string_view text);

/// Parses decimal text and returns it rounded to four places, scaled by 10^4.
std::int64_t parse_fixed4(std::string_view text);

}  // namespace cfp
