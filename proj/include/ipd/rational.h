#pragma once

#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace ipd {

using Rational = boost::multiprecision::number<boost::multiprecision::gmp_rational,
                                               boost::multiprecision::et_off>;

// Accepts "3", "-2/7", "0.35", "1e-3", "-4.5E+2".
Rational parse_rational(std::string_view text);

// The decimal a human wrote, e.g. 0.1 -> 1/10 rather than the binary expansion.
Rational rational_from_double(double v);

// Exact binary value of v.
Rational exact_from_double(double v);

double to_double(const Rational& r);
std::string to_string(const Rational& r);

}  // namespace ipd
