#include "cotlift/nijenhuis.hpp"

#include <cmath>

namespace cotlift {

double f_coefficient(const LiftProfile& prof, double t) {
  const Jet3 u = prof.u(t);
  const Jet3 v = prof.v(t);
  return v.f * (2.0 * t * u.d1 - u.f) + u.f * u.d1;
}

double integrability_defect(const LiftProfile& prof, double c, double t) {
  return f_coefficient(prof, t) - c;
}

NijenhuisEval nijenhuis_analytic(const SpaceForm& base, const LiftProfile& prof,
                                 const PhasePoint& pt) {
  const int n = base.dim();
  const Mat g = base.metric_at(pt.q);
  const Tensor4 R = base.riemann_at(pt.q);
  const LiftBlocks bl = lift_blocks(base, prof, pt);
  const double F = f_coefficient(prof, bl.t);
  const Vec& p = pt.p;

  auto kron = [](int a, int b) { return a == b ? 1.0 : 0.0; };

  /* core(h;i,j,k) = F (delta^h_i g_jk - delta^h_j g_ik) - R^h_kij, the
     bracketed tensor all three families contract against p_h. */
  auto core = [&](int h, int i, int j, int k) {
    return F * (kron(h, i) * g(j, k) - kron(h, j) * g(i, k)) - R(h, k, i, j);
  };

  NijenhuisEval out;
  out.dd = Tensor3(n, n, n);
  out.dp = Tensor3(n, n, n);
  out.pp = Tensor3(n, n, n);
  out.max_abs = 0.0;

  /* core contracted with p on the h slot, reused by the raised families */
  Tensor3 core0(n, n, n);  // (k,i,j)
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double val = 0.0;
        for (int h = 0; h < n; ++h) val += core(h, i, j, k) * p(h);
        core0(k, i, j) = val;
      }

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        out.dd(i, j, k) = core0(k, i, j);

        double dp = 0.0;
        for (int l = 0; l < n; ++l)
          for (int r = 0; r < n; ++r)
            dp += bl.Hb(k, l) * bl.Hb(j, r) * core0(l, i, r);
        out.dp(i, j, k) = dp;

        double pp = 0.0;
        for (int r = 0; r < n; ++r)
          for (int l = 0; l < n; ++l)
            pp += bl.Hb(i, r) * bl.Hb(j, l) * core0(k, l, r);
        out.pp(i, j, k) = pp;

        out.max_abs = std::max({out.max_abs, std::abs(out.dd(i, j, k)),
                                std::abs(out.dp(i, j, k)),
                                std::abs(out.pp(i, j, k))});
      }
  return out;
}

VectorField j_field(const SpaceForm& base, const LiftProfile& prof,
                    const VectorField& x) {
  return [&base, &prof, x](const PhasePoint& pt) {
    const FrameChange fc = frame_change_at(base, pt);
    const LiftBlocks bl = lift_blocks(base, prof, pt);
    return to_coord(fc, j_apply(bl, to_adapted(fc, x(pt))));
  };
}

CoordVec nijenhuis_fd_oracle(const SpaceForm& base, const LiftProfile& prof,
                             const VectorField& x, const VectorField& y,
                             const PhasePoint& pt, double h) {
  const VectorField jx = j_field(base, prof, x);
  const VectorField jy = j_field(base, prof, y);

  const FrameChange fc = frame_change_at(base, pt);
  const LiftBlocks bl = lift_blocks(base, prof, pt);
  auto apply_j_here = [&](const CoordVec& v) {
    return to_coord(fc, j_apply(bl, to_adapted(fc, v)));
  };

  const CoordVec term1 = bracket_fd_oracle(jx, jy, pt, h);
  const CoordVec term2 = apply_j_here(bracket_fd_oracle(jx, y, pt, h));
  const CoordVec term3 = apply_j_here(bracket_fd_oracle(x, jy, pt, h));
  const CoordVec term4 = bracket_fd_oracle(x, y, pt, h);
  return {term1.v - term2.v - term3.v - term4.v};
}

IntegrabilityVerdict integrability_verdict(const SpaceForm& base,
                                           const LiftProfile& prof,
                                           const std::vector<PhasePoint>& pts,
                                           double tol) {
  if (pts.empty())
    throw InputError("integrability_verdict: empty sample set");
  IntegrabilityVerdict out;
  out.max_component = 0.0;
  out.max_f_defect = 0.0;
  out.samples = static_cast<int>(pts.size());
  const double c = base.curvature();
  for (const PhasePoint& pt : pts) {
    const NijenhuisEval ev = nijenhuis_analytic(base, prof, pt);
    out.max_component = std::max(out.max_component, ev.max_abs);
    const double t = energy_density(base, pt);
    out.max_f_defect =
        std::max(out.max_f_defect, std::abs(integrability_defect(prof, c, t)));
  }
  out.integrable = out.max_component < tol;
  return out;
}

}  // namespace cotlift
