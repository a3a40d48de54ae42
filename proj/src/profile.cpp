#include "cotlift/profile.hpp"

#include <cmath>
#include <limits>
#include <utility>

namespace cotlift {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Jet3 v_from_u(const Jet3& u, double c, double t) {
  const Jet3 tj = Jet3::variable(t);
  /* Jet of u'.  Its own third slot would need u'''', which callers never
     use: the result is exact through d2 and that is all the block
     derivatives require. */
  const Jet3 up = {u.d1, u.d2, u.d3, 0.0};
  const Jet3 den = 2.0 * tj * up - u;
  if (std::abs(den.f) < 1e-10 * (1.0 + std::abs(u.f)))
    throw SingularProfileError("v_from_u: 2tu' - u vanishes at t = " +
                               std::to_string(t));
  return (Jet3::constant(c) - u * up) / den;
}

Jet3 w_from_uv(const Jet3& u, const Jet3& v, double t) {
  const Jet3 tj = Jet3::variable(t);
  const Jet3 upv = u + 2.0 * tj * v;
  if (u.f <= 0.0 || upv.f <= 0.0)
    throw InadmissibleProfileError(
        "w_from_uv: positivity fails (u = " + std::to_string(u.f) +
        ", u + 2tv = " + std::to_string(upv.f) + ") at t = " + std::to_string(t));
  return -v / (u * upv);
}

double f_scalar(const Jet3& u, const Jet3& v, double t) {
  return v.f * (2.0 * t * u.d1 - u.f) + u.f * u.d1;
}

Jet3 einstein_u(double A, double c, double t) {
  if (A <= 0.0 || !std::isfinite(A)) throw InputError("einstein_u: need A > 0");
  const double disc = A * A - 2.0 * c * t;
  if (disc <= 0.0)
    throw DomainError("einstein_u: t = " + std::to_string(t) +
                      " is outside the admissible tube");
  const double s = std::sqrt(disc);
  /* derivatives of A + s in closed form: s' = -c/s */
  return {A + s, -c / s, -c * c / (s * s * s),
          -3.0 * c * c * c / (s * s * s * s * s)};
}

ClosedVW closed_form_vw(double A, double c, double t) {
  if (A <= 0.0 || !std::isfinite(A)) throw InputError("closed_form_vw: need A > 0");
  const double disc = A * A - 2.0 * c * t;
  if (disc <= 0.0)
    throw DomainError("closed_form_vw: t outside the admissible tube");
  const double s = std::sqrt(disc);
  /* Equivalent to ((A - 4ct/A - s)/2t, (-A^3 + 3Act + s^3)/(4ct^2 s^2)) but
     free of the 0/0 cancellation at small t. */
  const double v = -c * (A + 2.0 * s) / (A * (A + s));
  const double w = c * (A + 2.0 * s) / (2.0 * s * s * (A + s) * (A + s));
  return {v, w};
}

double ode_residual(const Jet3& u, double t) {
  return u.f * u.f * u.d2 - 2.0 * t * u.d1 * u.d1 * u.d1 +
         2.0 * u.f * u.d1 * u.d1;
}

LiftProfile LiftProfile::integrable(JetFn u, double c, double t_sup,
                                    std::string name) {
  LiftProfile p;
  p.u_ = u;
  p.v_ = [u, c](double t) { return v_from_u(u(t), c, t); };
  p.c_ = c;
  p.t_sup_ = t_sup;
  p.name_ = std::move(name);
  return p;
}

LiftProfile LiftProfile::explicit_v(JetFn u, JetFn v, double c, double t_sup,
                                    std::string name) {
  LiftProfile p;
  p.u_ = std::move(u);
  p.v_ = std::move(v);
  p.c_ = c;
  p.t_sup_ = t_sup;
  p.name_ = std::move(name);
  return p;
}

LiftProfile LiftProfile::einstein(double A, double c) {
  if (A <= 0.0) throw InputError("LiftProfile::einstein: need A > 0");
  const double sup = c > 0.0 ? A * A / (2.0 * c) : kInf;
  return integrable([A, c](double t) { return einstein_u(A, c, t); }, c, sup,
                    "einstein(A=" + std::to_string(A) + ")");
}

LiftProfile LiftProfile::general_sqrt(double A, double B, double c) {
  if (A <= 0.0 || B == 0.0)
    throw InputError("LiftProfile::general_sqrt: need A > 0 and B != 0");
  const double sup = B < 0.0 ? -A * A / B : kInf;
  auto u = [A, B](double t) {
    const double s = std::sqrt(A * A + B * t);
    return Jet3{A + s, B / (2.0 * s), -B * B / (4.0 * s * s * s),
                3.0 * B * B * B / (8.0 * s * s * s * s * s)};
  };
  return integrable(u, c, sup, "sqrt(A=" + std::to_string(A) +
                                   ",B=" + std::to_string(B) + ")");
}

LiftProfile LiftProfile::affine(double A, double slope, double c) {
  if (A <= 0.0) throw InputError("LiftProfile::affine: need A > 0");
  auto u = [A, slope](double t) { return Jet3{A + slope * t, slope, 0.0, 0.0}; };
  /* 2tu' - u = slope*t - A vanishes at t = A/slope; stay clear of it. */
  const double sup = slope > 0.0 ? A / slope : kInf;
  return integrable(u, c, sup, "affine(A=" + std::to_string(A) +
                                   ",slope=" + std::to_string(slope) + ")");
}

LiftProfile LiftProfile::sasaki(double c) {
  return explicit_v([](double) { return Jet3::constant(1.0); },
                    [](double) { return Jet3::constant(0.0); }, c, kInf,
                    "sasaki");
}

LiftProfile LiftProfile::constant(double A, double c) {
  if (A <= 0.0) throw InputError("LiftProfile::constant: need A > 0");
  return explicit_v([A](double) { return Jet3::constant(A); },
                    [](double) { return Jet3::constant(0.0); }, c, kInf,
                    "constant(A=" + std::to_string(A) + ")");
}

LiftProfile LiftProfile::linear(double A, double c) {
  if (A <= 0.0) throw InputError("LiftProfile::linear: need A > 0");
  return explicit_v([A](double t) { return Jet3{A * t, A, 0.0, 0.0}; },
                    [](double) { return Jet3::constant(0.0); }, c, kInf,
                    "linear(A=" + std::to_string(A) + ")");
}

LiftProfile LiftProfile::shifted_v(double dv, std::string name) const {
  LiftProfile p = *this;
  auto base_v = v_;
  p.v_ = [base_v, dv](double t) { return base_v(t) + dv; };
  p.name_ = std::move(name);
  return p;
}

Jet3 LiftProfile::u(double t) const {
  if (t < 0.0 || !std::isfinite(t))
    throw DomainError("LiftProfile: t must be finite and >= 0");
  if (t >= t_sup_)
    throw DomainError("LiftProfile " + name_ + ": t = " + std::to_string(t) +
                      " >= t_sup = " + std::to_string(t_sup_));
  return u_(t);
}

Jet3 LiftProfile::v(double t) const {
  if (t < 0.0 || !std::isfinite(t))
    throw DomainError("LiftProfile: t must be finite and >= 0");
  if (t >= t_sup_)
    throw DomainError("LiftProfile " + name_ + ": t = " + std::to_string(t) +
                      " >= t_sup = " + std::to_string(t_sup_));
  return v_(t);
}

bool LiftProfile::admissible(double t) const {
  if (!(t >= 0.0) || t >= t_sup_) return false;
  try {
    const Jet3 uj = u_(t);
    const Jet3 vj = v_(t);
    return uj.f > 0.0 && uj.f + 2.0 * t * vj.f > 0.0;
  } catch (const std::domain_error&) {
    return false;
  }
}

std::vector<AdmissibilityRow> positivity_check(const LiftProfile& prof,
                                               const std::vector<double>& grid) {
  std::vector<AdmissibilityRow> rows;
  rows.reserve(grid.size());
  const double c = prof.base_curvature();
  for (double t : grid) {
    AdmissibilityRow row{t, std::numeric_limits<double>::quiet_NaN(),
                         std::numeric_limits<double>::quiet_NaN(),
                         std::numeric_limits<double>::quiet_NaN(), false};
    if (prof.admissible(t)) {
      const Jet3 uj = prof.u(t);
      const Jet3 vj = prof.v(t);
      row.u = uj.f;
      row.u_plus_2tv = uj.f + 2.0 * t * vj.f;
      row.sing_dist = std::abs(uj.f * uj.f - 2.0 * c * t);
      row.ok = row.u > 0.0 && row.u_plus_2tv > 0.0;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace cotlift
