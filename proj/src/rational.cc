#include "ipd/rational.h"

#include <charconv>
#include <cmath>
#include <stdexcept>

namespace ipd {

namespace {

Rational pow10(long e) {
  Rational r = 1;
  Rational ten = 10;
  long n = e < 0 ? -e : e;
  for (long i = 0; i < n; ++i) r *= ten;
  return e < 0 ? Rational(1) / r : r;
}

Rational parse_decimal(std::string_view s, std::string_view whole) {
  if (s.empty()) throw std::invalid_argument("empty number '" + std::string(whole) + "'");
  bool neg = false;
  if (s[0] == '+' || s[0] == '-') {
    neg = s[0] == '-';
    s.remove_prefix(1);
  }
  long exp10 = 0;
  auto epos = s.find_first_of("eE");
  if (epos != std::string_view::npos) {
    auto es = s.substr(epos + 1);
    if (!es.empty() && es[0] == '+') es.remove_prefix(1);
    auto [p, ec] = std::from_chars(es.data(), es.data() + es.size(), exp10);
    if (ec != std::errc() || p != es.data() + es.size())
      throw std::invalid_argument("bad exponent in '" + std::string(whole) + "'");
    s = s.substr(0, epos);
  }
  std::string digits;
  bool seen_dot = false, any = false;
  for (char ch : s) {
    if (ch == '.' && !seen_dot) {
      seen_dot = true;
    } else if (ch >= '0' && ch <= '9') {
      digits.push_back(ch);
      any = true;
      if (seen_dot) --exp10;
    } else {
      throw std::invalid_argument("bad number '" + std::string(whole) + "'");
    }
  }
  if (!any) throw std::invalid_argument("bad number '" + std::string(whole) + "'");
  auto first = digits.find_first_not_of('0');
  Rational r = first == std::string::npos ? Rational(0)
                                          : Rational(boost::multiprecision::mpz_int(digits.substr(first)));
  r *= pow10(exp10);
  return neg ? -r : r;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && text.front() == ' ') text.remove_prefix(1);
  while (!text.empty() && text.back() == ' ') text.remove_suffix(1);
  auto slash = text.find('/');
  if (slash == std::string_view::npos) return parse_decimal(text, text);
  Rational num = parse_decimal(text.substr(0, slash), text);
  Rational den = parse_decimal(text.substr(slash + 1), text);
  if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(text) + "'");
  return num / den;
}

Rational rational_from_double(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("non-finite number");
  char buf[64];
  auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw std::invalid_argument("number formatting failed");
  return parse_decimal(std::string_view(buf, p - buf), std::string_view(buf, p - buf));
}

Rational exact_from_double(double v) {
  if (!std::isfinite(v)) throw std::invalid_argument("non-finite number");
  return Rational(v);
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

std::string to_string(const Rational& r) { return r.str(); }

}  // namespace ipd
