#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>
#include <string_view>

namespace rodcomp {

// Exact arbitrary-precision scalars. All geometry in this library is done
// over Int / Rat; no floating point enters any predicate.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct AllZeroVector : std::invalid_argument {
  AllZeroVector() : std::invalid_argument("all-zero integer vector") {}
};

struct NotPrimitive : std::invalid_argument {
  NotPrimitive() : std::invalid_argument("vector entries have gcd > 1") {}
};

struct DegenerateSpan : std::invalid_argument {
  DegenerateSpan() : std::invalid_argument("vectors are parallel or zero") {}
};

struct ParseError : std::runtime_error {
  explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

inline Int rat_num(const Rat& q) { return numerator(q); }
inline Int rat_den(const Rat& q) { return denominator(q); }

inline bool is_integer(const Rat& q) { return denominator(q) == 1; }

// floor(n/d) for d > 0
inline Int floor_div(const Int& n, const Int& d) {
  Int q = n / d;
  if (n % d != 0 && ((n < 0) != (d < 0))) --q;
  return q;
}

inline Int rat_floor(const Rat& q) { return floor_div(numerator(q), denominator(q)); }

inline Int rat_ceil(const Rat& q) { return -rat_floor(-q); }

// fractional part in [0,1)
inline Rat rat_frac(const Rat& q) { return q - Rat(rat_floor(q)); }

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

inline std::string int_str(const Int& n) { return n.str(); }

inline std::string rat_str(const Rat& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

// Accepts "p", "-p", "p/q" with integer p, q and q > 0 after reduction.
// Floating-point literals are rejected, never rounded.
inline Rat parse_rational(std::string_view s) {
  const std::string text(s);
  if (text.empty()) throw ParseError("empty rational literal");
  for (char ch : text) {
    const bool ok = (ch >= '0' && ch <= '9') || ch == '-' || ch == '/';
    if (!ok)
      throw ParseError("invalid character '" + std::string(1, ch) +
                       "' in rational literal \"" + text + "\" (floats are not accepted)");
  }
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(text));
    const std::string num = text.substr(0, slash);
    const std::string den = text.substr(slash + 1);
    if (num.empty() || den.empty() || den.find('/') != std::string::npos)
      throw ParseError("malformed rational literal \"" + text + "\"");
    Int d(den);
    if (d == 0) throw ParseError("zero denominator in \"" + text + "\"");
    return Rat(Int(num), d);
  } catch (const std::runtime_error& e) {
    throw ParseError("malformed rational literal \"" + text + "\": " + e.what());
  }
}

}  // namespace rodcomp
