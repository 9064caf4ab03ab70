#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace clutter {

// Exact rational arithmetic. cpp_rational keeps the canonical form we rely
// on everywhere: gcd(p, q) = 1 and q > 0, so equality is plain comparison.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

// Serialized as "p" when the value is an integer and "p/q" otherwise.
// This is the only form rationals ever take in reports and files.
inline std::string to_fraction_string(const Rational& r) {
  if (denominator(r) == 1) return numerator(r).str();
  return numerator(r).str() + "/" + denominator(r).str();
}

inline Rational parse_fraction(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rational(BigInt(s));
    BigInt p(s.substr(0, slash));
    BigInt q(s.substr(slash + 1));
    if (q == 0) throw std::invalid_argument("zero denominator");
    return Rational(p, q);
  } catch (const std::exception&) {
    throw std::invalid_argument("parse_fraction: bad rational '" + s + "'");
  }
}

inline std::vector<std::string> to_fraction_strings(const std::vector<Rational>& v) {
  std::vector<std::string> out;
  out.reserve(v.size());
  for (const auto& r : v) out.push_back(to_fraction_string(r));
  return out;
}

}  // namespace clutter
