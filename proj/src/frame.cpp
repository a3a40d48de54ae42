#include "cotlift/frame.hpp"

#include <cmath>

namespace cotlift {

FrameChange frame_change_at(const SpaceForm& base, const PhasePoint& pt) {
  const int n = base.dim();
  if (pt.p.size() != n) throw InputError("frame_change_at: bad momentum size");
  const Tensor3 gamma = base.christoffel_at(pt.q);

  Mat gamma0(n, n);
  for (int i = 0; i < n; ++i)
    for (int h = 0; h < n; ++h) {
      double val = 0.0;
      for (int k = 0; k < n; ++k) val += pt.p(k) * gamma(k, i, h);
      gamma0(i, h) = val;
    }

  FrameChange fc;
  fc.gamma0 = gamma0;
  fc.B = Mat::Identity(2 * n, 2 * n);
  fc.Binv = Mat::Identity(2 * n, 2 * n);
  /* column i of B is delta_i in coordinates: (e_i, Gamma0_i.) */
  fc.B.bottomLeftCorner(n, n) = gamma0;
  fc.Binv.bottomLeftCorner(n, n) = -gamma0;
  return fc;
}

CoordVec to_coord(const FrameChange& fc, const AdaptedVec& x) {
  return {fc.B * x.v};
}

AdaptedVec to_adapted(const FrameChange& fc, const CoordVec& x) {
  return {fc.Binv * x.v};
}

VectorField adapted_basis_field(const SpaceForm& base, int a) {
  const int n = base.dim();
  if (a < 0 || a >= 2 * n) throw InputError("adapted_basis_field: index out of range");
  return [a, n, &base](const PhasePoint& pt) {
    Vec comp = Vec::Zero(2 * n);
    if (a < n) {
      const FrameChange fc = frame_change_at(base, pt);
      comp(a) = 1.0;
      comp.tail(n) = fc.gamma0.row(a).transpose();
    } else {
      comp(n + (a - n)) = 1.0;
    }
    return CoordVec{comp};
  };
}

AdaptedVec bracket_analytic(const SpaceForm& base, const PhasePoint& pt,
                            int a, int b) {
  const int n = base.dim();
  if (a < 0 || a >= 2 * n || b < 0 || b >= 2 * n)
    throw InputError("bracket_analytic: index out of range");
  AdaptedVec out{Vec::Zero(2 * n)};

  const bool a_h = a < n;
  const bool b_h = b < n;
  if (a_h && b_h) {
    const Tensor4 riem = base.riemann_at(pt.q);
    for (int k = 0; k < n; ++k) {
      double val = 0.0;
      for (int h = 0; h < n; ++h) val += pt.p(h) * riem(h, k, a, b);
      out.v(n + k) = val;
    }
  } else if (!a_h && b_h) {
    /* [del^i, delta_j] = Gamma^i_jk del^k */
    const Tensor3 gamma = base.christoffel_at(pt.q);
    const int i = a - n;
    for (int k = 0; k < n; ++k) out.v(n + k) = gamma(i, b, k);
  } else if (a_h && !b_h) {
    const Tensor3 gamma = base.christoffel_at(pt.q);
    const int j = b - n;
    for (int k = 0; k < n; ++k) out.v(n + k) = -gamma(j, a, k);
  }
  return out;
}

CoordVec bracket_fd_oracle(const VectorField& X, const VectorField& Y,
                           const PhasePoint& pt, double h) {
  const int n = static_cast<int>(pt.q.size());
  const Vec x_here = X(pt).v;
  const Vec y_here = Y(pt).v;

  Vec out = Vec::Zero(2 * n);
  for (int l = 0; l < 2 * n; ++l) {
    const double coord = l < n ? pt.q(l) : pt.p(l - n);
    const double step = h * (1.0 + std::abs(coord));
    PhasePoint plus = pt, minus = pt;
    if (l < n) {
      plus.q(l) += step;
      minus.q(l) -= step;
    } else {
      plus.p(l - n) += step;
      minus.p(l - n) -= step;
    }
    const Vec dY = (Y(plus).v - Y(minus).v) / (2.0 * step);
    const Vec dX = (X(plus).v - X(minus).v) / (2.0 * step);
    out += x_here(l) * dY - y_here(l) * dX;
  }
  return {out};
}

}  // namespace cotlift
