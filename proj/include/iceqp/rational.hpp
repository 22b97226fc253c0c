#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace iceqp {

namespace mp = boost::multiprecision;
using Integer = mp::number<mp::gmp_int, mp::et_off>;
using Rational = mp::number<mp::gmp_rational, mp::et_off>;

/// Parses "p", "-p" or "p/q" into an exact rational. Throws std::invalid_argument.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(Integer(s));
    }
    Integer num(s.substr(0, slash));
    Integer den(s.substr(slash + 1));
    if (den == 0) {
      throw std::invalid_argument("zero denominator in rational '" + s + "'");
    }
    return Rational(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("malformed rational '" + s + "'");
  }
}

inline std::string to_string(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

inline std::string to_string(const Integer& z) { return z.str(); }

}  // namespace iceqp
