#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>
#include <limits>
#include <stdexcept>
#include <string>

// Mantissa width (decimal digits) of the certified-interval float type.
// Override at configure time with -DYF_FLOAT_DIGITS=<n>; must stay >= 25.
#ifndef YF_FLOAT_DIGITS
#define YF_FLOAT_DIGITS 50
#endif

namespace yf {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
using Float =
    boost::multiprecision::number<boost::multiprecision::cpp_bin_float<YF_FLOAT_DIGITS>>;

inline int float_precision_bits() { return std::numeric_limits<Float>::digits; }

inline Float to_float(const Int& x) { return Float(x); }
inline Float to_float(const Rat& x) { return Float(x); }

inline Rat rat_pow(const Rat& x, unsigned n) {
  using boost::multiprecision::pow;
  return Rat(pow(numerator(x), n), pow(denominator(x), n));
}

// Per-operation rounding allowance folded into every Approx radius.  The float
// type carries ~168 mantissa bits; 2^-150 per op leaves ~5 decimal orders of
// headroom over worst-case chains of ~1e4 operations at the tolerances used.
inline const Float& float_slop() {
  static const Float s = boost::multiprecision::ldexp(Float(1), -150);
  return s;
}

class budget_error : public std::runtime_error {
 public:
  explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

class parse_error : public std::runtime_error {
 public:
  explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// Exact rational, or a float enclosure [value - radius, value + radius].
class MeasureValue {
 public:
  static MeasureValue exact(Rat v) {
    MeasureValue m;
    m.exact_ = true;
    m.rat_ = std::move(v);
    return m;
  }
  static MeasureValue approx(Float value, Float radius) {
    MeasureValue m;
    m.exact_ = false;
    m.val_ = std::move(value);
    m.rad_ = radius < 0 ? -radius : radius;
    return m;
  }

  bool is_exact() const { return exact_; }
  const Rat& rational() const {
    if (!exact_) throw std::logic_error("MeasureValue: not exact");
    return rat_;
  }
  Float value() const { return exact_ ? to_float(rat_) : val_; }
  Float radius() const { return exact_ ? Float(0) : rad_; }

  MeasureValue operator-() const {
    if (exact_) return exact(-rat_);
    return approx(-val_, rad_);
  }

  friend MeasureValue operator+(const MeasureValue& a, const MeasureValue& b) {
    if (a.exact_ && b.exact_) return exact(a.rat_ + b.rat_);
    Float v = a.value() + b.value();
    Float r = a.radius() + b.radius() + slop_for(v);
    return approx(v, r);
  }
  friend MeasureValue operator-(const MeasureValue& a, const MeasureValue& b) {
    return a + (-b);
  }
  friend MeasureValue operator*(const MeasureValue& a, const MeasureValue& b) {
    if (a.exact_ && b.exact_) return exact(a.rat_ * b.rat_);
    Float av = a.value(), bv = b.value(), ar = a.radius(), br = b.radius();
    Float v = av * bv;
    Float r = abs(av) * br + abs(bv) * ar + ar * br + slop_for(v);
    return approx(v, r);
  }

  MeasureValue scaled(const Rat& c) const {
    if (exact_) return exact(rat_ * c);
    Float cf = to_float(c);
    Float v = val_ * cf;
    return approx(v, abs(cf) * rad_ + slop_for(v));
  }

  bool contains(const Rat& x) const {
    if (exact_) return rat_ == x;
    return abs(val_ - to_float(x)) <= rad_;
  }

 private:
  static Float slop_for(const Float& v) { return float_slop() * (abs(v) + 1); }

  bool exact_ = true;
  Rat rat_;
  Float val_;
  Float rad_;
};

// "p/q" (or "p" when q = 1).
std::string rat_string(const Rat& x);

// Deterministic decimal rendering with the given significant digits.
std::string float_string(const Float& x, int digits = 30);

// Exact decimal/scientific literal -> rational ("0.7" -> 7/10, "1e-9" -> 1/10^9).
Rat parse_decimal(const std::string& text);

}  // namespace yf
