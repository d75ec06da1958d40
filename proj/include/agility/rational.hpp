#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <string>

namespace agility {

/// Exact rational used for fluxiness and density so that constancy
/// comparisons never break on floating-point noise.
using Rational = boost::rational<std::int64_t>;

/// Renders a rational as a decimal string with `digits` fractional digits,
/// rounding half away from zero. Trailing zeros are kept ("1.5000").
inline std::string to_decimal(const Rational& r, int digits = 4) {
  std::int64_t num = r.numerator();
  std::int64_t den = r.denominator();  // boost keeps den > 0
  const bool negative = num < 0;
  if (negative) num = -num;
  std::int64_t scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  // round(num * scale / den), half away from zero
  std::int64_t scaled = (num * scale + den / 2) / den;
  std::string whole = std::to_string(scaled / scale);
  std::string frac = std::to_string(scaled % scale);
  frac.insert(frac.begin(), static_cast<std::size_t>(digits) - frac.size(), '0');
  std::string out = negative && scaled != 0 ? "-" : "";
  out += whole;
  if (digits > 0) out += "." + frac;
  return out;
}

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

}  // namespace agility
