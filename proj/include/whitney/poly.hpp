#pragma once

#include <algorithm>
#include <sstream>
#include <vector>

#include "whitney/rational.hpp"

namespace whitney {

// Dense univariate polynomial with exact rational coefficients, lowest degree
// first. Degrees stay small here (<= ~30) so dense is the right call.
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<Rat> coeffs) : c_(std::move(coeffs)) { trim(); }

  static Poly zero() { return Poly(); }
  static Poly constant(Rat v) { return Poly({std::move(v)}); }
  // c * lambda^k
  static Poly monomial(Rat coeff, int k) {
    std::vector<Rat> c(static_cast<size_t>(k) + 1);
    c.back() = std::move(coeff);
    return Poly(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }

  const Rat& coeff(int k) const {
    static const Rat kZero{0};
    if (k < 0 || k >= static_cast<int>(c_.size())) return kZero;
    return c_[static_cast<size_t>(k)];
  }
  const std::vector<Rat>& coeffs() const { return c_; }

  Poly operator+(const Poly& o) const {
    std::vector<Rat> r(std::max(c_.size(), o.c_.size()));
    for (size_t i = 0; i < r.size(); ++i) {
      if (i < c_.size()) r[i] += c_[i];
      if (i < o.c_.size()) r[i] += o.c_[i];
    }
    return Poly(std::move(r));
  }

  Poly operator-(const Poly& o) const {
    std::vector<Rat> r(std::max(c_.size(), o.c_.size()));
    for (size_t i = 0; i < r.size(); ++i) {
      if (i < c_.size()) r[i] += c_[i];
      if (i < o.c_.size()) r[i] -= o.c_[i];
    }
    return Poly(std::move(r));
  }

  Poly operator*(const Poly& o) const {
    if (is_zero() || o.is_zero()) return Poly();
    std::vector<Rat> r(c_.size() + o.c_.size() - 1);
    for (size_t i = 0; i < c_.size(); ++i)
      for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return Poly(std::move(r));
  }

  Poly scale(const Rat& s) const {
    std::vector<Rat> r(c_);
    for (auto& v : r) v *= s;
    return Poly(std::move(r));
  }

  // Multiply by lambda^k.
  Poly shift_by_power(int k) const {
    if (is_zero()) return Poly();
    std::vector<Rat> r(c_.size() + static_cast<size_t>(k));
    std::copy(c_.begin(), c_.end(), r.begin() + k);
    return Poly(std::move(r));
  }

  // p(lambda^c), c >= 1.
  Poly substitute_power(int c) const {
    if (c < 1) throw std::invalid_argument("substitute_power requires c >= 1");
    if (is_zero()) return Poly();
    std::vector<Rat> r((c_.size() - 1) * static_cast<size_t>(c) + 1);
    for (size_t i = 0; i < c_.size(); ++i) r[i * static_cast<size_t>(c)] = c_[i];
    return Poly(std::move(r));
  }

  Rat eval(const Rat& x) const {
    Rat acc{0};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  // Coefficient-wise absolute values.
  Poly abs() const {
    std::vector<Rat> r(c_);
    for (auto& v : r) if (v < 0) v = -v;
    return Poly(std::move(r));
  }

  bool operator==(const Poly& o) const { return c_ == o.c_; }
  bool operator!=(const Poly& o) const { return !(*this == o); }

  std::string to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int k = degree(); k >= 0; --k) {
      const Rat& a = coeff(k);
      if (a == 0) continue;
      Rat mag = a < 0 ? Rat(-a) : a;
      if (!first) os << (a < 0 ? " - " : " + ");
      else if (a < 0) os << "-";
      first = false;
      bool unit = (mag == 1) && k > 0;
      if (!unit) {
        if (denominator(mag) == 1) os << numerator(mag);
        else os << numerator(mag) << "/" << denominator(mag);
      }
      if (k > 0) {
        os << "L";
        if (k > 1) os << "^" << k;
      }
    }
    return os.str();
  }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == 0) c_.pop_back();
  }
  std::vector<Rat> c_;
};

// (1 + lambda)^d, the workhorse reference polynomial.
inline Poly binomial_poly(int d) {
  Poly p = Poly::constant(Rat(1));
  Poly base({Rat(1), Rat(1)});
  for (int i = 0; i < d; ++i) p = p * base;
  return p;
}

}  // namespace whitney
