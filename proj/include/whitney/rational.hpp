#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include <stdexcept>
#include <string>

namespace whitney {

// Exact scalars. cpp_rational keeps values reduced with positive denominator,
// which is exactly the invariant we need everywhere.
using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

// High-precision float for square roots of Gram determinants that are not
// rational squares (106 mantissa bits).
using BigFloat = boost::multiprecision::number<
    boost::multiprecision::cpp_bin_float<106, boost::multiprecision::digit_base_2>>;

class resource_limit_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline double to_double(const Rat& q) { return q.convert_to<double>(); }

inline BigFloat to_bigfloat(const Rat& q) {
  return BigFloat(numerator(q)) / BigFloat(denominator(q));
}

// Canonical "num/den" rendering used by every serialization surface.
inline std::string rat_to_string(const Rat& q) {
  return numerator(q).str() + "/" + denominator(q).str();
}

// Accepts "num/den" or a bare integer string.
inline Rat rat_from_string(const std::string& s) {
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, slash));
    Int den(s.substr(slash + 1));
    if (den == 0) throw std::invalid_argument("rational with zero denominator: " + s);
    return Rat(num, den);
  } catch (const std::runtime_error&) {
    throw std::invalid_argument("malformed rational: " + s);
  }
}

inline bool is_perfect_square(const Int& n, Int& root) {
  if (n < 0) return false;
  root = boost::multiprecision::sqrt(n);
  return root * root == n;
}

// Exact square root of a nonnegative rational, when one exists.
inline bool rat_sqrt_exact(const Rat& q, Rat& out) {
  Int rn, rd;
  if (!is_perfect_square(numerator(q), rn)) return false;
  if (!is_perfect_square(denominator(q), rd)) return false;
  out = Rat(rn, rd);
  return true;
}

inline BigFloat bigfloat_sqrt(const Rat& q) {
  return boost::multiprecision::sqrt(to_bigfloat(q));
}

}  // namespace whitney
