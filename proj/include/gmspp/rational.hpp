#pragma once

#include <boost/rational.hpp>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace gmspp {

// Exact arithmetic for strip costs and objective values. Everything that the
// user sees as money goes through this type; doubles appear only inside the
// simplex kernel.
using Rational = boost::rational<long long>;

inline double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

inline Rational rational_from_tenths(long long tenths) {
  return Rational(tenths, 10);
}

// Accepts "p/q", "p", or "-p/q". Whitespace is not tolerated: these strings
// come from our own files.
inline Rational parse_rational(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  std::size_t slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(std::stoll(s));
    }
    long long num = std::stoll(s.substr(0, slash));
    long long den = std::stoll(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rational(num, den);
  } catch (const std::exception&) {
    throw std::invalid_argument("bad rational literal: '" + s + "'");
  }
}

inline std::string format_rational(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

// Recovers the small-denominator rational nearest to x, used to report LP
// bounds exactly when the underlying data is rational. Continued-fraction
// convergents; returns false when no denominator <= max_den lands within tol.
inline bool snap_rational(double x, Rational& out, long long max_den = 100000,
                          double tol = 1e-6) {
  long long h1 = 1, h2 = 0, k1 = 0, k2 = 1;
  double f = x;
  for (int it = 0; it < 64; ++it) {
    double fl = std::floor(f);
    if (fl > 9e17 || fl < -9e17) return false;
    long long a = static_cast<long long>(fl);
    long long h = a * h1 + h2, k = a * k1 + k2;
    if (k > max_den || k <= 0) return false;
    if (std::abs(x - static_cast<double>(h) / static_cast<double>(k)) <= tol) {
      out = Rational(h, k);
      return true;
    }
    double rem = f - fl;
    if (rem < 1e-12) return false;
    f = 1.0 / rem;
    h2 = h1; h1 = h;
    k2 = k1; k1 = k;
  }
  return false;
}

}  // namespace gmspp
