#include "cotlift/spaceform.hpp"

#include <cmath>
#include <limits>

namespace cotlift {

namespace {

/* f gets tiny near the chart boundary for c < 0; refuse evaluation before
   the metric entries overflow any sensible tolerance. */
constexpr double kMinConformalFactor = 1e-3;

}  // namespace

SpaceForm::SpaceForm(int n, double c) : n_(n), c_(c) {
  if (n < 2) throw InputError("SpaceForm: dimension must be at least 2");
  if (!std::isfinite(c)) throw InputError("SpaceForm: curvature must be finite");
}

double SpaceForm::chart_radius() const {
  if (c_ >= 0.0) return std::numeric_limits<double>::infinity();
  return 2.0 / std::sqrt(-c_);
}

void SpaceForm::require_chart(const Vec& x) const {
  if (x.size() != n_) throw InputError("SpaceForm: point has wrong dimension");
  if (!x.allFinite()) throw InputError("SpaceForm: point has non-finite entries");
  if (1.0 + 0.25 * c_ * x.squaredNorm() < kMinConformalFactor)
    throw DomainError("SpaceForm: point outside the chart");
}

double SpaceForm::conformal_factor(const Vec& x) const {
  require_chart(x);
  return 1.0 + 0.25 * c_ * x.squaredNorm();
}

Mat SpaceForm::metric_at(const Vec& x) const {
  const double f = conformal_factor(x);
  return Mat::Identity(n_, n_) / (f * f);
}

Mat SpaceForm::metric_inv_at(const Vec& x) const {
  const double f = conformal_factor(x);
  return Mat::Identity(n_, n_) * (f * f);
}

Tensor3 SpaceForm::christoffel_at(const Vec& x) const {
  /* g = e^{2phi} delta with phi = -log f, so
     Gamma^k_ij = delta^k_i phi_j + delta^k_j phi_i - delta_ij phi_k. */
  const double f = conformal_factor(x);
  const Vec phi = -(0.5 * c_ / f) * x;

  Tensor3 gamma(n_, n_, n_);
  gamma.setZero();
  for (int k = 0; k < n_; ++k)
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        double val = 0.0;
        if (k == i) val += phi(j);
        if (k == j) val += phi(i);
        if (i == j) val -= phi(k);
        gamma(k, i, j) = val;
      }
  return gamma;
}

Tensor4 SpaceForm::christoffel_grad_at(const Vec& x) const {
  const double f = conformal_factor(x);
  /* phi_il = d_l d_i (-log f) */
  Mat phi2 = (0.25 * c_ * c_ / (f * f)) * x * x.transpose();
  phi2 -= (0.5 * c_ / f) * Mat::Identity(n_, n_);

  Tensor4 dgamma(n_, n_, n_, n_);
  dgamma.setZero();
  for (int l = 0; l < n_; ++l)
    for (int k = 0; k < n_; ++k)
      for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
          double val = 0.0;
          if (k == i) val += phi2(j, l);
          if (k == j) val += phi2(i, l);
          if (i == j) val -= phi2(k, l);
          dgamma(l, k, i, j) = val;
        }
  return dgamma;
}

Tensor4 SpaceForm::riemann_at(const Vec& x) const {
  const Mat g = metric_at(x);
  Tensor4 riem(n_, n_, n_, n_);
  riem.setZero();
  for (int h = 0; h < n_; ++h)
    for (int k = 0; k < n_; ++k)
      for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) {
          double val = 0.0;
          if (h == i) val += g(j, k);
          if (h == j) val -= g(i, k);
          riem(h, k, i, j) = c_ * val;
        }
  return riem;
}

namespace {

Tensor4 riemann_from_parts(int n, const Tensor3& gamma, const Tensor4& dgamma) {
  Tensor4 riem(n, n, n, n);
  riem.setZero();
  for (int h = 0; h < n; ++h)
    for (int k = 0; k < n; ++k)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double val = dgamma(i, h, j, k) - dgamma(j, h, i, k);
          for (int l = 0; l < n; ++l)
            val += gamma(h, i, l) * gamma(l, j, k) -
                   gamma(h, j, l) * gamma(l, i, k);
          riem(h, k, i, j) = val;
        }
  return riem;
}

}  // namespace

Tensor4 SpaceForm::riemann_from_christoffel(const Vec& x) const {
  return riemann_from_parts(n_, christoffel_at(x), christoffel_grad_at(x));
}

Tensor3 SpaceForm::christoffel_fd_oracle(const Vec& x, double h) const {
  require_chart(x);
  /* Central differences of the metric, then the Koszul combination. */
  std::vector<Mat> dg(n_);
  for (int l = 0; l < n_; ++l) {
    const double step = h * (1.0 + std::abs(x(l)));
    Vec xp = x, xm = x;
    xp(l) += step;
    xm(l) -= step;
    dg[l] = (metric_at(xp) - metric_at(xm)) / (2.0 * step);
  }
  const Mat ginv = metric_inv_at(x);

  Tensor3 gamma(n_, n_, n_);
  gamma.setZero();
  for (int k = 0; k < n_; ++k)
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) {
        double val = 0.0;
        for (int l = 0; l < n_; ++l)
          val += 0.5 * ginv(k, l) * (dg[i](j, l) + dg[j](i, l) - dg[l](i, j));
        gamma(k, i, j) = val;
      }
  return gamma;
}

Tensor4 SpaceForm::riemann_fd_oracle(const Vec& x, double h) const {
  require_chart(x);
  Tensor4 dgamma(n_, n_, n_, n_);
  for (int l = 0; l < n_; ++l) {
    const double step = h * (1.0 + std::abs(x(l)));
    Vec xp = x, xm = x;
    xp(l) += step;
    xm(l) -= step;
    const Tensor3 gp = christoffel_at(xp);
    const Tensor3 gm = christoffel_at(xm);
    for (int k = 0; k < n_; ++k)
      for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j)
          dgamma(l, k, i, j) = (gp(k, i, j) - gm(k, i, j)) / (2.0 * step);
  }
  return riemann_from_parts(n_, christoffel_at(x), dgamma);
}

}  // namespace cotlift
