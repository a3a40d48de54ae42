#pragma once

#include <cmath>

namespace cotlift {

/* Value and first three derivatives of a scalar function of one variable,
   combined with truncated-Taylor arithmetic.  Profile functions are handled
   as jets so every derived quantity downstream (v', w'', ...) is exact
   instead of hand-expanded or finite-differenced. */
struct Jet3 {
  double f = 0.0;
  double d1 = 0.0;
  double d2 = 0.0;
  double d3 = 0.0;

  static Jet3 constant(double a) { return {a, 0.0, 0.0, 0.0}; }
  static Jet3 variable(double t) { return {t, 1.0, 0.0, 0.0}; }
};

inline Jet3 operator+(const Jet3& a, const Jet3& b) {
  return {a.f + b.f, a.d1 + b.d1, a.d2 + b.d2, a.d3 + b.d3};
}

inline Jet3 operator-(const Jet3& a, const Jet3& b) {
  return {a.f - b.f, a.d1 - b.d1, a.d2 - b.d2, a.d3 - b.d3};
}

inline Jet3 operator-(const Jet3& a) { return {-a.f, -a.d1, -a.d2, -a.d3}; }

inline Jet3 operator*(const Jet3& a, const Jet3& b) {
  return {a.f * b.f,
          a.d1 * b.f + a.f * b.d1,
          a.d2 * b.f + 2.0 * a.d1 * b.d1 + a.f * b.d2,
          a.d3 * b.f + 3.0 * a.d2 * b.d1 + 3.0 * a.d1 * b.d2 + a.f * b.d3};
}

inline Jet3 operator*(double s, const Jet3& a) {
  return {s * a.f, s * a.d1, s * a.d2, s * a.d3};
}

inline Jet3 operator*(const Jet3& a, double s) { return s * a; }

inline Jet3 operator+(const Jet3& a, double s) { return {a.f + s, a.d1, a.d2, a.d3}; }
inline Jet3 operator+(double s, const Jet3& a) { return a + s; }
inline Jet3 operator-(const Jet3& a, double s) { return a + (-s); }
inline Jet3 operator-(double s, const Jet3& a) { return (-a) + s; }

inline Jet3 reciprocal(const Jet3& g) {
  const double r = 1.0 / g.f;
  const double r2 = r * r;
  return {r,
          -g.d1 * r2,
          (2.0 * g.d1 * g.d1 - g.f * g.d2) * r2 * r,
          (-6.0 * g.d1 * g.d1 * g.d1 + 6.0 * g.f * g.d1 * g.d2 -
           g.f * g.f * g.d3) * r2 * r2};
}

inline Jet3 operator/(const Jet3& a, const Jet3& b) { return a * reciprocal(b); }
inline Jet3 operator/(const Jet3& a, double s) { return (1.0 / s) * a; }
inline Jet3 operator/(double s, const Jet3& b) { return s * reciprocal(b); }

inline Jet3 sqrt(const Jet3& a) {
  const double s = std::sqrt(a.f);
  const double s1 = a.d1 / (2.0 * s);
  const double s2 = (a.d2 - 2.0 * s1 * s1) / (2.0 * s);
  const double s3 = (a.d3 - 6.0 * s1 * s2) / (2.0 * s);
  return {s, s1, s2, s3};
}

}  // namespace cotlift
