#pragma once

// Small independent calculators the tests compare the library against.
#include "ipd/game.h"

namespace oracle {

using ipd::PointQ;
using ipd::Rational;

// a1 x + b1 y = c1, a2 x + b2 y = c2
inline PointQ cramer(const Rational& a1, const Rational& b1, const Rational& c1, const Rational& a2,
                     const Rational& b2, const Rational& c2) {
  Rational det = a1 * b2 - a2 * b1;
  return {(c1 * b2 - c2 * b1) / det, (a1 * c2 - a2 * c1) / det};
}

// coefficients (a, b, c) of a x + b y = c through p and q
struct Eq {
  Rational a, b, c;
};
inline Eq through(const PointQ& p, const PointQ& q) {
  Rational a = q.y - p.y, b = p.x - q.x;
  return {a, b, a * p.x + b * p.y};
}
inline Eq slope_through(const PointQ& p, const Rational& m) { return {-m, 1, p.y - m * p.x}; }
inline Eq horizontal(const Rational& y) { return {0, 1, y}; }
inline Eq vertical(const Rational& x) { return {1, 0, x}; }
inline Eq swapped(const Eq& e) { return {e.b, e.a, e.c}; }

inline PointQ meet(const Eq& e, const Eq& f) { return cramer(e.a, e.b, e.c, f.a, f.b, f.c); }

inline Rational q(long n, long d = 1) { return Rational(n) / d; }

}  // namespace oracle
