#include "yf/numbers.hpp"

#include <cctype>
#include <iomanip>
#include <sstream>

namespace yf {

std::string rat_string(const Rat& x) {
  const Int& num = boost::multiprecision::numerator(x);
  const Int& den = boost::multiprecision::denominator(x);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string float_string(const Float& x, int digits) {
  std::ostringstream os;
  os << std::setprecision(digits) << std::scientific << x;
  return os.str();
}

Rat parse_decimal(const std::string& text) {
  if (text.empty()) throw parse_error("parse_decimal: empty string");
  std::size_t i = 0;
  bool neg = false;
  if (text[i] == '+' || text[i] == '-') {
    neg = (text[i] == '-');
    ++i;
  }
  Int num = 0;
  long frac_digits = 0;
  bool any = false, in_frac = false;
  for (; i < text.size() && text[i] != 'e' && text[i] != 'E'; ++i) {
    char c = text[i];
    if (c == '.') {
      if (in_frac) throw parse_error("parse_decimal: repeated '.' in \"" + text + "\"");
      in_frac = true;
    } else if (c == '/') {
      // "p/q" rational form: defer to the two integer halves
      Rat denom = parse_decimal(text.substr(i + 1));
      if (in_frac || denom == 0) throw parse_error("parse_decimal: bad rational \"" + text + "\"");
      return (neg ? Rat(-num) : Rat(num)) / denom;
    } else if (std::isdigit(static_cast<unsigned char>(c))) {
      num = num * 10 + (c - '0');
      if (in_frac) ++frac_digits;
      any = true;
    } else {
      throw parse_error("parse_decimal: unexpected character in \"" + text + "\"");
    }
  }
  if (!any) throw parse_error("parse_decimal: no digits in \"" + text + "\"");
  long exp10 = 0;
  if (i < text.size()) {  // exponent part
    ++i;
    bool eneg = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
      eneg = (text[i] == '-');
      ++i;
    }
    if (i == text.size()) throw parse_error("parse_decimal: empty exponent in \"" + text + "\"");
    for (; i < text.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(text[i])))
        throw parse_error("parse_decimal: bad exponent in \"" + text + "\"");
      exp10 = exp10 * 10 + (text[i] - '0');
      if (exp10 > 100000) throw parse_error("parse_decimal: exponent out of range");
    }
    if (eneg) exp10 = -exp10;
  }
  Rat value(num);
  long shift = exp10 - frac_digits;
  if (shift > 0)
    value *= Rat(boost::multiprecision::pow(Int(10), static_cast<unsigned>(shift)));
  else if (shift < 0)
    value /= Rat(boost::multiprecision::pow(Int(10), static_cast<unsigned>(-shift)));
  return neg ? -value : value;
}

}  // namespace yf
