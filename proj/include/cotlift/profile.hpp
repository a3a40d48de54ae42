#pragma once

#include "cotlift/jet.hpp"
#include "cotlift/types.hpp"

#include <functional>
#include <string>
#include <vector>

namespace cotlift {

/* v determined by u through the integrability condition.  Throws
   SingularProfileError when 2tu' - u is (relatively) too close to zero.
   The returned jet (like everything derived from it) is exact through the
   second derivative; the d3 slot would need u'''' and is not meaningful. */
Jet3 v_from_u(const Jet3& u, double c, double t);

/* w from the inverse-block formula w = -v / (u (u + 2tv)).  Throws
   InadmissibleProfileError when positivity fails. */
Jet3 w_from_uv(const Jet3& u, const Jet3& v, double t);

/* The integrability scalar v(2tu' - u) + uu'; constant == c means the
   structure is integrable on a base of curvature c. */
double f_scalar(const Jet3& u, const Jet3& v, double t);

/* u = A + sqrt(A^2 - 2ct) with exact derivatives.  Throws DomainError when
   A^2 - 2ct <= 0 (outside the tube for c > 0), InputError for A <= 0. */
Jet3 einstein_u(double A, double c, double t);

/* Exact values of the Einstein-profile v and w, in a form that stays
   numerically stable down to and including t = 0:
     v = -c (A + 2s) / (A (A + s)),  w = c (A + 2s) / (2 s^2 (A + s)^2),
   s = sqrt(A^2 - 2ct).  At t = 0 these reduce to -3c/(2A) and 3c/(8A^3). */
struct ClosedVW {
  double v;
  double w;
};
ClosedVW closed_form_vw(double A, double c, double t);

/* Residual of u^2 u'' - 2t u'^3 + 2u u'^2. */
double ode_residual(const Jet3& u, double t);

/* A pair (u, v) of profile functions on [0, t_sup), with w derived from the
   inverse-block formula.  Factories pair every profile with the base
   curvature it is meant to live on (explicit-v profiles keep it only for
   bookkeeping). */
class LiftProfile {
 public:
  using JetFn = std::function<Jet3(double)>;

  /* v from the integrability condition. */
  static LiftProfile integrable(JetFn u, double c, double t_sup,
                                std::string name);
  /* explicit v, independent of the condition. */
  static LiftProfile explicit_v(JetFn u, JetFn v, double c, double t_sup,
                                std::string name);

  /* u = A + sqrt(A^2 - 2ct), v integrable.  Einstein for every (A, c). */
  static LiftProfile einstein(double A, double c);

  /* u = A + sqrt(A^2 + Bt), v integrable; Einstein only when B = -2c. */
  static LiftProfile general_sqrt(double A, double B, double c);

  /* u = A + slope * t, v integrable. */
  static LiftProfile affine(double A, double slope, double c);

  /* u = 1, v = 0: the classical lift of the base metric alone. */
  static LiftProfile sasaki(double c);

  /* u = A, v = 0 (kept around for the residual checks only). */
  static LiftProfile constant(double A, double c);

  /* u = A * t, v = 0 (likewise residual checks only; u(0) = 0 is not an
     admissible metric profile). */
  static LiftProfile linear(double A, double c);

  /* Same u, v shifted by a constant; breaks integrability on purpose. */
  LiftProfile shifted_v(double dv, std::string name) const;

  Jet3 u(double t) const;
  Jet3 v(double t) const;
  Jet3 w(double t) const { return w_from_uv(u(t), v(t), t); }

  double f_scalar_at(double t) const { return f_scalar(u(t), v(t), t); }
  double ode_residual_at(double t) const { return ode_residual(u(t), t); }

  bool admissible(double t) const;
  double t_sup() const { return t_sup_; }
  double base_curvature() const { return c_; }
  const std::string& name() const { return name_; }

 private:
  LiftProfile() = default;

  JetFn u_;
  JetFn v_;
  double c_ = 0.0;
  double t_sup_ = 0.0;
  std::string name_;
};

/* Positivity and singular-locus survey over a t-grid. */
struct AdmissibilityRow {
  double t;
  double u;
  double u_plus_2tv;
  double sing_dist;  // |u^2 - 2ct|
  bool ok;
};
std::vector<AdmissibilityRow> positivity_check(const LiftProfile& prof,
                                               const std::vector<double>& grid);

}  // namespace cotlift
