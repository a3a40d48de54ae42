#pragma once

#include "cotlift/types.hpp"

namespace cotlift {

/* Rotationally symmetric model of constant sectional curvature c.  On the
   chart the metric is conformally flat,

     g_ij(x) = delta_ij / f(x)^2,   f(x) = 1 + (c/4)|x|^2,

   so the Christoffel symbols and the curvature tensor have short closed
   forms.  For c < 0 the chart is the ball |x| < 2/sqrt(-c). */
class SpaceForm {
 public:
  SpaceForm(int n, double c);

  int dim() const { return n_; }
  double curvature() const { return c_; }

  /* n == 2 leaves some of the cross-checks with little room to detect index
     mistakes (many tensor slots coincide), so callers may want to flag it. */
  bool dimension_warning() const { return n_ == 2; }

  /* +inf for c >= 0. */
  double chart_radius() const;

  double conformal_factor(const Vec& x) const;

  Mat metric_at(const Vec& x) const;
  Mat metric_inv_at(const Vec& x) const;

  /* (k,i,j) = Gamma^k_ij */
  Tensor3 christoffel_at(const Vec& x) const;

  /* (l,k,i,j) = d/dx^l Gamma^k_ij */
  Tensor4 christoffel_grad_at(const Vec& x) const;

  /* (h,k,i,j) = R^h_kij = c (delta^h_i g_jk - delta^h_j g_ik) */
  Tensor4 riemann_at(const Vec& x) const;

  /* R^h_kij = d_i Gamma^h_jk - d_j Gamma^h_ik + Gamma^h_il Gamma^l_jk
     - Gamma^h_jl Gamma^l_ik, with the exact Christoffel gradient.  Agrees
     with riemann_at; kept separate so the sign conventions stay pinned by a
     test instead of by construction. */
  Tensor4 riemann_from_christoffel(const Vec& x) const;

  /* Central-difference rebuilds for cross-checking the closed forms.  The
     step for coordinate l is h * (1 + |x_l|). */
  Tensor3 christoffel_fd_oracle(const Vec& x, double h = 1e-5) const;
  Tensor4 riemann_fd_oracle(const Vec& x, double h = 1e-5) const;

 private:
  void require_chart(const Vec& x) const;

  int n_;
  double c_;
};

}  // namespace cotlift
