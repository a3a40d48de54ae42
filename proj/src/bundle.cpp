#include "cotlift/bundle.hpp"

#include "cotlift/frame.hpp"

namespace cotlift {

double energy_density(const SpaceForm& base, const PhasePoint& pt) {
  if (pt.p.size() != base.dim())
    throw InputError("energy_density: momentum has wrong dimension");
  if (!pt.p.allFinite())
    throw InputError("energy_density: momentum has non-finite entries");
  const Mat ginv = base.metric_inv_at(pt.q);
  return 0.5 * pt.p.dot(ginv * pt.p);
}

LiftBlocks lift_blocks(const SpaceForm& base, const LiftProfile& prof,
                       const PhasePoint& pt) {
  const double t = energy_density(base, pt);
  if (!prof.admissible(t))
    throw InadmissibleProfileError("lift_blocks: profile " + prof.name() +
                                   " not admissible at t = " + std::to_string(t));
  LiftBlocks out;
  out.t = t;
  out.u = prof.u(t);
  out.v = prof.v(t);
  out.w = w_from_uv(out.u, out.v, t);

  const Mat g = base.metric_at(pt.q);
  const Mat ginv = base.metric_inv_at(pt.q);
  out.g0 = ginv * pt.p;
  out.Gb = out.u.f * g + out.v.f * pt.p * pt.p.transpose();
  out.Hb = (1.0 / out.u.f) * ginv + out.w.f * out.g0 * out.g0.transpose();
  return out;
}

Mat metric_full(const SpaceForm& base, const LiftProfile& prof,
                const PhasePoint& pt) {
  const int n = base.dim();
  const LiftBlocks bl = lift_blocks(base, prof, pt);
  const FrameChange fc = frame_change_at(base, pt);

  /* G = Gb_ij dq^i dq^j + Hb^ij Dp_i Dp_j with Dp_i = dp_i - Gamma0_ij dq^j:
     congruent image of diag(Gb, Hb) under the inverse frame change. */
  Mat m(2 * n, 2 * n);
  const Mat HC = bl.Hb * fc.gamma0;
  m.topLeftCorner(n, n) = bl.Gb + fc.gamma0.transpose() * HC;
  m.topRightCorner(n, n) = -HC.transpose();
  m.bottomLeftCorner(n, n) = -HC;
  m.bottomRightCorner(n, n) = bl.Hb;
  return m;
}

Mat j_matrix_adapted(const LiftBlocks& blocks) {
  const int n = static_cast<int>(blocks.Gb.rows());
  Mat j = Mat::Zero(2 * n, 2 * n);
  j.topRightCorner(n, n) = -blocks.Hb;
  j.bottomLeftCorner(n, n) = blocks.Gb;
  return j;
}

AdaptedVec j_apply(const LiftBlocks& blocks, const AdaptedVec& x) {
  const int n = static_cast<int>(blocks.Gb.rows());
  AdaptedVec out{Vec(2 * n)};
  out.v.head(n) = -blocks.Hb * x.v.tail(n);
  out.v.tail(n) = blocks.Gb * x.v.head(n);
  return out;
}

double metric_adapted(const LiftBlocks& blocks, const AdaptedVec& x,
                      const AdaptedVec& y) {
  const int n = static_cast<int>(blocks.Gb.rows());
  return x.v.head(n).dot(blocks.Gb * y.v.head(n)) +
         x.v.tail(n).dot(blocks.Hb * y.v.tail(n));
}

double fundamental_form(const LiftBlocks& blocks, const AdaptedVec& x,
                        const AdaptedVec& y) {
  return metric_adapted(blocks, x, j_apply(blocks, y));
}

double canonical_pairing(const AdaptedVec& x, const AdaptedVec& y) {
  const int n = static_cast<int>(x.v.size()) / 2;
  return x.v.tail(n).dot(y.v.head(n)) - x.v.head(n).dot(y.v.tail(n));
}

Mat fundamental_form_coord(const SpaceForm& base, const LiftProfile& prof,
                           const PhasePoint& pt) {
  const LiftBlocks bl = lift_blocks(base, prof, pt);
  const FrameChange fc = frame_change_at(base, pt);
  /* phi_ab = M_ac J^c_b with both factors in coordinate components. */
  const Mat m = metric_full(base, prof, pt);
  const Mat j_coord = fc.B * j_matrix_adapted(bl) * fc.Binv;
  return m * j_coord;
}

}  // namespace cotlift
