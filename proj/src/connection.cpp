#include "cotlift/connection.hpp"

#include <cmath>
#include <vector>

namespace cotlift {

namespace {

/* Shared per-point evaluation context. */
struct Ctx {
  int n;
  Mat g, ginv;
  Vec p, g0;
  double t;
  Jet3 u, v, w, r;  // r = 1/u
  Tensor3 gamma;    // (k,i,j) = Gamma^k_ij
  Tensor4 R;        // (h,k,i,j) = R^h_kij
  Tensor3 R0;       // (l,j,k) = p_h R^h_ljk
};

Ctx make_ctx(const SpaceForm& base, const LiftProfile& prof,
             const PhasePoint& pt) {
  Ctx c;
  c.n = base.dim();
  c.g = base.metric_at(pt.q);
  c.ginv = base.metric_inv_at(pt.q);
  c.p = pt.p;
  c.g0 = c.ginv * pt.p;
  c.t = energy_density(base, pt);
  if (!prof.admissible(c.t))
    throw InadmissibleProfileError("connection: profile " + prof.name() +
                                   " not admissible at t = " + std::to_string(c.t));
  c.u = prof.u(c.t);
  c.v = prof.v(c.t);
  c.w = w_from_uv(c.u, c.v, c.t);
  c.r = reciprocal(c.u);
  c.gamma = base.christoffel_at(pt.q);
  c.R = base.riemann_at(pt.q);
  c.R0 = Tensor3(c.n, c.n, c.n);
  for (int l = 0; l < c.n; ++l)
    for (int j = 0; j < c.n; ++j)
      for (int k = 0; k < c.n; ++k) {
        double val = 0.0;
        for (int h = 0; h < c.n; ++h) val += pt.p(h) * c.R(h, l, j, k);
        c.R0(l, j, k) = val;
      }
  return c;
}

BlockDerivs block_derivs_from(const Ctx& c, const SpaceForm& base,
                              const LiftProfile& prof, const PhasePoint& pt) {
  const int n = c.n;
  BlockDerivs bd;
  bd.blocks = lift_blocks(base, prof, pt);
  bd.dG = Tensor3(n, n, n);
  bd.dH = Tensor3(n, n, n);
  bd.d2G = Tensor4(n, n, n, n);
  bd.d2H = Tensor4(n, n, n, n);

  auto kron = [](int a, int b) { return a == b ? 1.0 : 0.0; };

  for (int a = 0; a < n; ++a)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        bd.dG(a, j, k) = c.u.d1 * c.g0(a) * c.g(j, k) +
                         c.v.d1 * c.g0(a) * c.p(j) * c.p(k) +
                         c.v.f * (kron(a, j) * c.p(k) + kron(a, k) * c.p(j));
        bd.dH(a, j, k) = c.r.d1 * c.g0(a) * c.ginv(j, k) +
                         c.w.d1 * c.g0(a) * c.g0(j) * c.g0(k) +
                         c.w.f * (c.ginv(a, j) * c.g0(k) + c.ginv(a, k) * c.g0(j));
      }

  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          bd.d2G(a, b, j, k) =
              c.u.d2 * c.g0(a) * c.g0(b) * c.g(j, k) +
              c.u.d1 * c.ginv(a, b) * c.g(j, k) +
              c.v.d2 * c.g0(a) * c.g0(b) * c.p(j) * c.p(k) +
              c.v.d1 * c.ginv(a, b) * c.p(j) * c.p(k) +
              c.v.d1 * c.g0(a) * (kron(b, j) * c.p(k) + kron(b, k) * c.p(j)) +
              c.v.d1 * c.g0(b) * (kron(a, j) * c.p(k) + kron(a, k) * c.p(j)) +
              c.v.f * (kron(a, j) * kron(b, k) + kron(a, k) * kron(b, j));
          bd.d2H(a, b, j, k) =
              c.r.d2 * c.g0(a) * c.g0(b) * c.ginv(j, k) +
              c.r.d1 * c.ginv(a, b) * c.ginv(j, k) +
              c.w.d2 * c.g0(a) * c.g0(b) * c.g0(j) * c.g0(k) +
              c.w.d1 * c.ginv(a, b) * c.g0(j) * c.g0(k) +
              c.w.d1 * c.g0(a) * (c.ginv(b, j) * c.g0(k) + c.ginv(b, k) * c.g0(j)) +
              c.w.d1 * c.g0(b) * (c.ginv(a, j) * c.g0(k) + c.ginv(a, k) * c.g0(j)) +
              c.w.f * (c.ginv(a, j) * c.ginv(b, k) + c.ginv(a, k) * c.ginv(b, j));
        }
  return bd;
}

ConnCoeffs conn_from(const Ctx& c, const BlockDerivs& bd) {
  const int n = c.n;
  const Mat& Gb = bd.blocks.Gb;
  const Mat& Hb = bd.blocks.Hb;
  ConnCoeffs cc;
  cc.Q = Tensor3(n, n, n);
  cc.P = Tensor3(n, n, n);
  cc.S = Tensor3(n, n, n);

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int h = 0; h < n; ++h) {
        double q = 0.0;
        for (int k = 0; k < n; ++k)
          q += 0.5 * Gb(h, k) *
               (bd.dH(i, j, k) + bd.dH(j, i, k) - bd.dH(k, i, j));
        cc.Q(i, j, h) = q;
      }

  for (int h = 0; h < n; ++h)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double pval = 0.0;
        for (int k = 0; k < n; ++k) {
          double inner = bd.dG(i, j, k);
          for (int l = 0; l < n; ++l) inner -= Hb(i, l) * c.R0(l, j, k);
          pval += 0.5 * Hb(h, k) * inner;
        }
        cc.P(h, i, j) = pval;

        double sval = 0.5 * c.R0(h, i, j);
        for (int k = 0; k < n; ++k) sval -= 0.5 * Gb(h, k) * bd.dG(k, i, j);
        cc.S(h, i, j) = sval;
      }
  return cc;
}

ConnDerivs conn_derivs_from(const Ctx& c, const BlockDerivs& bd) {
  const int n = c.n;
  const Mat& Gb = bd.blocks.Gb;
  const Mat& Hb = bd.blocks.Hb;
  ConnDerivs cd;
  cd.dQ = Tensor4(n, n, n, n);
  cd.dP = Tensor4(n, n, n, n);
  cd.dS = Tensor4(n, n, n, n);

  for (int a = 0; a < n; ++a) {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int h = 0; h < n; ++h) {
          double q = 0.0;
          for (int k = 0; k < n; ++k) {
            q += 0.5 * bd.dG(a, h, k) *
                 (bd.dH(i, j, k) + bd.dH(j, i, k) - bd.dH(k, i, j));
            q += 0.5 * Gb(h, k) *
                 (bd.d2H(a, i, j, k) + bd.d2H(a, j, i, k) - bd.d2H(a, k, i, j));
          }
          cd.dQ(a, i, j, h) = q;
        }

    for (int h = 0; h < n; ++h)
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
          double pval = 0.0;
          for (int k = 0; k < n; ++k) {
            double inner = bd.dG(i, j, k);
            for (int l = 0; l < n; ++l) inner -= Hb(i, l) * c.R0(l, j, k);
            pval += 0.5 * bd.dH(a, h, k) * inner;

            double dinner = bd.d2G(a, i, j, k);
            for (int l = 0; l < n; ++l)
              dinner -= bd.dH(a, i, l) * c.R0(l, j, k) + Hb(i, l) * c.R(a, l, j, k);
            pval += 0.5 * Hb(h, k) * dinner;
          }
          cd.dP(a, h, i, j) = pval;

          double sval = 0.5 * c.R(a, h, i, j);
          for (int k = 0; k < n; ++k)
            sval -= 0.5 * (bd.dG(a, h, k) * bd.dG(k, i, j) +
                           Gb(h, k) * bd.d2G(a, k, i, j));
          cd.dS(a, h, i, j) = sval;
        }
  }
  return cd;
}

CurvatureBlocks blocks_from(const Ctx& c, const ConnCoeffs& cc,
                            const ConnDerivs& cd) {
  const int n = c.n;
  CurvatureBlocks b;
  b.PPP = Tensor4(n, n, n, n);
  b.PPQ = Tensor4(n, n, n, n);
  b.QQP = Tensor4(n, n, n, n);
  b.QQQ = Tensor4(n, n, n, n);
  b.PQQ = Tensor4(n, n, n, n);
  b.PQP = Tensor4(n, n, n, n);

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int h = 0; h < n; ++h) {
          double ppp = cd.dQ(i, j, k, h) - cd.dQ(j, i, k, h);
          double ppq = cd.dP(i, h, j, k) - cd.dP(j, h, i, k);
          double qqp = -c.R(k, h, i, j);
          double qqq = c.R(h, k, i, j);
          double pqq = cd.dS(i, h, j, k);
          double pqp = cd.dP(i, h, k, j);
          for (int l = 0; l < n; ++l) {
            ppp += cc.Q(j, k, l) * cc.Q(i, l, h) - cc.Q(i, k, l) * cc.Q(j, l, h);
            ppq += cc.P(l, j, k) * cc.P(h, i, l) - cc.P(l, i, k) * cc.P(h, j, l);
            qqp += -c.R0(l, i, j) * cc.Q(l, k, h) + cc.S(h, i, l) * cc.P(l, k, j) -
                   cc.S(h, j, l) * cc.P(l, k, i);
            qqq += -c.R0(l, i, j) * cc.P(h, l, k) + cc.S(l, j, k) * cc.P(h, l, i) -
                   cc.S(l, i, k) * cc.P(h, l, j);
            pqq += cc.S(l, j, k) * cc.Q(i, l, h) - cc.S(h, j, l) * cc.P(l, i, k);
            pqp += cc.P(h, i, l) * cc.P(l, k, j) - cc.Q(i, k, l) * cc.P(h, l, j);
          }
          b.PPP(i, j, k, h) = ppp;
          b.PPQ(i, j, k, h) = ppq;
          b.QQP(i, j, k, h) = qqp;
          b.QQQ(i, j, k, h) = qqq;
          b.PQQ(i, j, k, h) = pqq;
          b.PQP(i, j, k, h) = pqp;
        }
  return b;
}

}  // namespace

BlockDerivs block_derivs(const SpaceForm& base, const LiftProfile& prof,
                         const PhasePoint& pt) {
  const Ctx c = make_ctx(base, prof, pt);
  return block_derivs_from(c, base, prof, pt);
}

ConnCoeffs conn_coeffs_generic(const SpaceForm& base, const LiftProfile& prof,
                               const PhasePoint& pt) {
  const Ctx c = make_ctx(base, prof, pt);
  return conn_from(c, block_derivs_from(c, base, prof, pt));
}

std::optional<ConnCoeffs> conn_coeffs_expanded(const SpaceForm& base,
                                               const LiftProfile& prof,
                                               const PhasePoint& pt) {
  const Ctx c = make_ctx(base, prof, pt);
  const double U = c.u.f, U1 = c.u.d1;
  const double V = c.v.f, V1 = c.v.d1;
  const double W = c.w.f, W1 = c.w.d1;
  const double cc = base.curvature();

  /* The scalar coefficients divide by v and w; near the removable zeros the
     generic contraction is the reliable route. */
  if (std::abs(V) < 1e-6 || std::abs(W) < 1e-6) return std::nullopt;

  const int n = c.n;
  ConnCoeffs out;
  out.Q = Tensor3(n, n, n);
  out.P = Tensor3(n, n, n);
  out.S = Tensor3(n, n, n);

  const double q1 = -U1 / (2.0 * U);
  const double q2 = -V * (U1 + 2.0 * U * U * W) / (2.0 * U * U * U * W);
  const double q3 = -V * (2.0 * U1 * W + U * W1) / (2.0 * U * U * W);

  const double p1 = U1 / (2.0 * U);
  const double p2 = -(cc + U * V) * W / (2.0 * V);
  const double p3 = (U * V - cc) / (2.0 * U * U);
  const double p4 =
      (V * W * (U * V - cc) + U * W * (U1 * V - U * V1)) / (2.0 * U * V);

  const double s1 = (cc - U * V) / 2.0;
  const double s2 = -(cc + U * V) / 2.0;
  const double s3 = U1 * V / (2.0 * U * W);
  const double s4 = V * (V1 - 2.0 * U * V * W) / (2.0 * U * W);

  auto kron = [](int a, int b) { return a == b ? 1.0 : 0.0; };
  for (int h = 0; h < n; ++h)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        out.Q(i, j, h) = q1 * (kron(i, h) * c.g0(j) + kron(j, h) * c.g0(i)) +
                         q2 * c.ginv(i, j) * c.p(h) +
                         q3 * c.g0(i) * c.g0(j) * c.p(h);
        out.P(h, i, j) = p1 * kron(h, j) * c.g0(i) + p2 * kron(i, j) * c.g0(h) +
                         p3 * c.ginv(i, h) * c.p(j) +
                         p4 * c.g0(i) * c.g0(h) * c.p(j);
        out.S(h, i, j) = s1 * c.g(j, h) * c.p(i) + s2 * c.g(i, h) * c.p(j) +
                         s3 * c.g(i, j) * c.p(h) +
                         s4 * c.p(h) * c.p(i) * c.p(j);
      }
  return out;
}

ConnDerivs conn_derivs(const SpaceForm& base, const LiftProfile& prof,
                       const PhasePoint& pt) {
  const Ctx c = make_ctx(base, prof, pt);
  return conn_derivs_from(c, block_derivs_from(c, base, prof, pt));
}

CurvatureBlocks curvature_blocks(const SpaceForm& base, const LiftProfile& prof,
                                 const PhasePoint& pt) {
  const Ctx c = make_ctx(base, prof, pt);
  const BlockDerivs bd = block_derivs_from(c, base, prof, pt);
  return blocks_from(c, conn_from(c, bd), conn_derivs_from(c, bd));
}

AdaptedVec apply_curvature(const CurvatureBlocks& blocks, const AdaptedVec& x,
                           const AdaptedVec& y, const AdaptedVec& z) {
  const int n = static_cast<int>(x.v.size()) / 2;
  const auto xh = x.v.head(n), xv = x.v.tail(n);
  const auto yh = y.v.head(n), yv = y.v.tail(n);
  const auto zh = z.v.head(n), zv = z.v.tail(n);

  AdaptedVec out{Vec::Zero(2 * n)};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int h = 0; h < n; ++h) {
          /* vertical-vertical arguments */
          out.v(n + h) += xv(i) * yv(j) * zv(k) * blocks.PPP(i, j, k, h);
          out.v(h) += xv(i) * yv(j) * zh(k) * blocks.PPQ(i, j, k, h);
          /* horizontal-horizontal */
          out.v(n + h) += xh(i) * yh(j) * zv(k) * blocks.QQP(i, j, k, h);
          out.v(h) += xh(i) * yh(j) * zh(k) * blocks.QQQ(i, j, k, h);
          /* mixed, using K(delta, del) = -K(del, delta) */
          out.v(n + h) +=
              (xv(i) * yh(j) - yv(i) * xh(j)) * zh(k) * blocks.PQQ(i, j, k, h);
          out.v(h) +=
              (xv(i) * yh(j) - yv(i) * xh(j)) * zv(k) * blocks.PQP(i, j, k, h);
        }
  return out;
}

Tensor4 curvature_full(const SpaceForm& base, const LiftProfile& prof,
                       const PhasePoint& pt) {
  const Ctx c = make_ctx(base, prof, pt);
  const BlockDerivs bd = block_derivs_from(c, base, prof, pt);
  const ConnCoeffs cc = conn_from(c, bd);
  const ConnDerivs cd = conn_derivs_from(c, bd);
  const Tensor4 dgamma = base.christoffel_grad_at(pt.q);
  const int n = c.n;
  const int N = 2 * n;

  /* Total connection table: nabla_{E_a} E_b = C(a,b,d) E_d. */
  Tensor3 C(N, N, N);
  C.setZero();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int h = 0; h < n; ++h) {
        C(i, j, h) = c.gamma(h, i, j);
        C(i, j, n + h) = cc.S(h, i, j);
        C(i, n + j, n + h) = -c.gamma(j, i, h);
        C(i, n + j, h) = cc.P(h, j, i);
        C(n + i, j, h) = cc.P(h, i, j);
        C(n + i, n + j, n + h) = cc.Q(i, j, h);
      }

  /* Directional derivatives of the table entries: Dc(e,a,b,d) = E_e(C(a,b,d)).
     Vertical directions use the exact del-derivatives; horizontal ones use
     the base-covariance of the coefficient fields (checked against finite
     differences in the tests). */
  Tensor4 Dc(N, N, N, N);
  Dc.setZero();
  for (int e = 0; e < n; ++e)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int h = 0; h < n; ++h) {
          Dc(n + e, i, j, n + h) = cd.dS(e, h, i, j);
          Dc(n + e, i, n + j, h) = cd.dP(e, h, j, i);
          Dc(n + e, n + i, j, h) = cd.dP(e, h, i, j);
          Dc(n + e, n + i, n + j, n + h) = cd.dQ(e, i, j, h);

          Dc(e, i, j, h) = dgamma(e, h, i, j);
          Dc(e, i, n + j, n + h) = -dgamma(e, j, i, h);
          double s_cov = 0.0, pji_cov = 0.0, pij_cov = 0.0, q_cov = 0.0;
          for (int l = 0; l < n; ++l) {
            s_cov += c.gamma(l, e, h) * cc.S(l, i, j) +
                     c.gamma(l, e, i) * cc.S(h, l, j) +
                     c.gamma(l, e, j) * cc.S(h, i, l);
            pji_cov += -c.gamma(h, e, l) * cc.P(l, j, i) -
                       c.gamma(j, e, l) * cc.P(h, l, i) +
                       c.gamma(l, e, i) * cc.P(h, j, l);
            pij_cov += -c.gamma(h, e, l) * cc.P(l, i, j) -
                       c.gamma(i, e, l) * cc.P(h, l, j) +
                       c.gamma(l, e, j) * cc.P(h, i, l);
            q_cov += -c.gamma(i, e, l) * cc.Q(l, j, h) -
                     c.gamma(j, e, l) * cc.Q(i, l, h) +
                     c.gamma(l, e, h) * cc.Q(i, j, l);
          }
          Dc(e, i, j, n + h) = s_cov;
          Dc(e, i, n + j, h) = pji_cov;
          Dc(e, n + i, j, h) = pij_cov;
          Dc(e, n + i, n + j, n + h) = q_cov;
        }

  Tensor3 Br(N, N, N);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b) {
      const AdaptedVec br = bracket_analytic(base, pt, a, b);
      for (int d = 0; d < N; ++d) Br(a, b, d) = br.v(d);
    }

  Tensor4 K(N, N, N, N);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      for (int z = 0; z < N; ++z)
        for (int e = 0; e < N; ++e) {
          double val = Dc(a, b, z, e) - Dc(b, a, z, e);
          for (int d = 0; d < N; ++d)
            val += C(b, z, d) * C(a, d, e) - C(a, z, d) * C(b, d, e) -
                   Br(a, b, d) * C(d, z, e);
          K(a, b, z, e) = val;
        }
  return K;
}

RicciBlocks ricci_blocks(const SpaceForm& base, const LiftProfile& prof,
                         const PhasePoint& pt) {
  const int n = base.dim();
  const CurvatureBlocks cb = curvature_blocks(base, prof, pt);
  RicciBlocks rb;
  rb.qq = Mat::Zero(n, n);
  rb.pp = Mat::Zero(n, n);
  rb.cross = Mat::Zero(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      double qq = 0.0, pp = 0.0;
      for (int h = 0; h < n; ++h) {
        qq += cb.QQQ(h, j, k, h) + cb.PQQ(h, j, k, h);
        pp += cb.PPP(h, j, k, h) - cb.PQP(j, h, k, h);
      }
      rb.qq(j, k) = qq;
      rb.pp(j, k) = pp;
    }

  /* No structural shortcut for the mixed block: trace the full assembly. */
  const Tensor4 K = curvature_full(base, prof, pt);
  const int N = 2 * n;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k) {
      double val = 0.0;
      for (int a = 0; a < N; ++a) val += K(a, n + j, k, a);
      rb.cross(j, k) = val;
    }
  return rb;
}

double ricci_coeff_a(int n, double c, const Jet3& u, double t) {
  const double U = u.f, U1 = u.d1, U2 = u.d2;
  return n * (U - 2 * t * U1) * (2 * c * U - 2 * c * t * U1 - U * U * U1) +
         2 * (2 * c * t - U * U) * (t * U * U2 + U * U1 - t * U1 * U1);
}

double ricci_coeff_alpha(int n, double c, const Jet3& u, double t) {
  const double U = u.f, U1 = u.d1, U2 = u.d2, U3 = u.d3;
  const double U_2 = U * U, U_3 = U_2 * U, U_4 = U_3 * U, U_5 = U_4 * U,
               U_6 = U_5 * U;
  const double t2 = t * t, t3 = t2 * t, c2 = c * c;
  const double n_part =
      -2 * c2 * U_3 + 6 * c2 * t * U_2 * U1 + 3 * c * U_4 * U1 -
      12 * c2 * t2 * U * U1 * U1 - 3 * U_5 * U1 * U1 +
      8 * c2 * t3 * U1 * U1 * U1 - 4 * c * t2 * U_2 * U1 * U1 * U1 +
      4 * t * U_4 * U1 * U1 * U1 - 4 * c2 * t2 * U_2 * U2 +
      4 * c * t * U_4 * U2 - U_6 * U2;
  const double rest =
      -3 * c * U_3 * U1 + 7 * c * t * U_2 * U1 * U1 + 4 * U_4 * U1 * U1 -
      8 * c * t2 * U * U1 * U1 * U1 - 8 * t * U_3 * U1 * U1 * U1 +
      4 * c * t3 * U1 * U1 * U1 * U1 + 4 * t2 * U_2 * U1 * U1 * U1 * U1 -
      7 * c * t * U_3 * U2 + 2 * U_5 * U2 + 6 * c * t2 * U_2 * U1 * U2 +
      3 * t * U_4 * U1 * U2 - 6 * t2 * U_3 * U1 * U1 * U2 -
      8 * c * t3 * U_2 * U2 * U2 + 4 * t2 * U_4 * U2 * U2 -
      2 * c * t2 * U_3 * U3 + t * U_5 * U3 + 4 * c * t3 * U_2 * U1 * U3 -
      2 * t2 * U_4 * U1 * U3;
  return n * (U - 2 * t * U1) * n_part + 2 * (2 * c * t - U_2) * rest;
}

double ricci_coeff_beta(int n, double c, const Jet3& u, double t) {
  const double U = u.f, U1 = u.d1, U2 = u.d2, U3 = u.d3;
  const double U_2 = U * U, U_3 = U_2 * U, U_4 = U_3 * U, U_5 = U_4 * U;
  const double t2 = t * t, t3 = t2 * t, c2 = c * c;
  const double n_part = 2 * c2 * U - 2 * c2 * t * U1 - 3 * c * U_2 * U1 +
                        6 * c * t * U * U1 * U1 - U_3 * U1 * U1 -
                        4 * c * t2 * U1 * U1 * U1 + 2 * t * U_2 * U1 * U1 * U1 +
                        2 * c * t * U_2 * U2 - U_4 * U2;
  const double rest =
      2 * c2 * t * U * U1 + c * U_3 * U1 - 2 * c2 * t2 * U1 * U1 -
      5 * c * t * U_2 * U1 * U1 - 2 * U_4 * U1 * U1 +
      8 * c * t2 * U * U1 * U1 * U1 + 4 * t * U_3 * U1 * U1 * U1 -
      4 * c * t3 * U1 * U1 * U1 * U1 - 2 * t2 * U_2 * U1 * U1 * U1 * U1 +
      2 * c2 * t2 * U * U2 + 5 * c * t * U_3 * U2 - 2 * U_5 * U2 -
      6 * c * t2 * U_2 * U1 * U2 - t * U_4 * U1 * U2 +
      4 * t2 * U_3 * U1 * U1 * U2 + 8 * c * t3 * U_2 * U2 * U2 -
      4 * t2 * U_4 * U2 * U2 + 2 * c * t2 * U_3 * U3 - t * U_5 * U3 -
      4 * c * t3 * U_2 * U1 * U3 + 2 * t2 * U_4 * U1 * U3;
  return n * (U - 2 * t * U1) * n_part + 2 * rest;
}

double ricci_coeff_gamma(int n, double c, const Jet3& u, double t) {
  const double U = u.f, U1 = u.d1, U2 = u.d2, U3 = u.d3;
  const double U_2 = U * U, U_3 = U_2 * U, U_4 = U_3 * U, U_5 = U_4 * U;
  const double t2 = t * t, t3 = t2 * t;
  const double ode = U_2 * U2 - 2 * t * U1 * U1 * U1 + 2 * U * U1 * U1;
  const double rest =
      2 * c * U_3 * U1 - 4 * c * t * U_2 * U1 * U1 - 3 * U_4 * U1 * U1 +
      6 * c * t2 * U * U1 * U1 * U1 + 5 * t * U_3 * U1 * U1 * U1 -
      4 * c * t3 * U1 * U1 * U1 * U1 - 2 * t2 * U_2 * U1 * U1 * U1 * U1 +
      6 * c * t * U_3 * U2 - 2 * U_5 * U2 - 4 * c * t2 * U_2 * U1 * U2 -
      2 * t * U_4 * U1 * U2 + 4 * t2 * U_3 * U1 * U1 * U2 +
      8 * c * t3 * U_2 * U2 * U2 - 4 * t2 * U_4 * U2 * U2 +
      2 * c * t2 * U_3 * U3 - t * U_5 * U3 - 4 * c * t3 * U_2 * U1 * U3 +
      2 * t2 * U_4 * U1 * U3;
  return n * (U_2 - 2 * c * t) * (2 * t * U1 - U) * ode + 2 * rest;
}

double ricci_coeff_gamma_scale(int n, double c, const Jet3& u, double t) {
  const double U = std::abs(u.f), U1 = std::abs(u.d1), U2 = std::abs(u.d2),
               U3 = std::abs(u.d3);
  const double ca = std::abs(c);
  const double U_2 = U * U, U_3 = U_2 * U, U_4 = U_3 * U, U_5 = U_4 * U;
  const double t2 = t * t, t3 = t2 * t;
  const double ode = U_2 * U2 + 2 * t * U1 * U1 * U1 + 2 * U * U1 * U1;
  const double rest =
      2 * ca * U_3 * U1 + 4 * ca * t * U_2 * U1 * U1 + 3 * U_4 * U1 * U1 +
      6 * ca * t2 * U * U1 * U1 * U1 + 5 * t * U_3 * U1 * U1 * U1 +
      4 * ca * t3 * U1 * U1 * U1 * U1 + 2 * t2 * U_2 * U1 * U1 * U1 * U1 +
      6 * ca * t * U_3 * U2 + 2 * U_5 * U2 + 4 * ca * t2 * U_2 * U1 * U2 +
      2 * t * U_4 * U1 * U2 + 4 * t2 * U_3 * U1 * U1 * U2 +
      8 * ca * t3 * U_2 * U2 * U2 + 4 * t2 * U_4 * U2 * U2 +
      2 * ca * t2 * U_3 * U3 + t * U_5 * U3 + 4 * ca * t3 * U_2 * U1 * U3 +
      2 * t2 * U_4 * U1 * U3;
  return n * (U_2 + 2 * ca * t) * (2 * t * U1 + U) * ode + 2 * rest;
}

RicciBlocks ricci_closed_forms(const SpaceForm& base, const LiftProfile& prof,
                               const PhasePoint& pt) {
  const Ctx c = make_ctx(base, prof, pt);
  const int n = c.n;
  const double cc = base.curvature();
  const double den1 = c.u.f - 2.0 * c.t * c.u.d1;
  const double sing = c.u.f * c.u.f - 2.0 * cc * c.t;
  const double scale = 1.0 + c.u.f * c.u.f;
  if (std::abs(den1) < 1e-10 * scale || std::abs(sing) < 1e-10 * scale)
    throw SingularProfileError("ricci_closed_forms: denominator too small");

  const double a = ricci_coeff_a(n, cc, c.u, c.t);
  const double alpha = ricci_coeff_alpha(n, cc, c.u, c.t);
  const double beta = ricci_coeff_beta(n, cc, c.u, c.t);
  const double u2 = c.u.f * c.u.f;
  const double den1_2 = den1 * den1;

  RicciBlocks rb;
  rb.qq = (a / (2.0 * den1_2)) * c.g +
          (alpha / (2.0 * u2 * den1_2 * den1_2)) * c.p * c.p.transpose();
  rb.pp = (a / (2.0 * u2 * den1_2)) * c.ginv +
          (beta / (2.0 * u2 * sing * den1_2)) * c.g0 * c.g0.transpose();
  rb.cross = Mat::Zero(n, n);
  return rb;
}

GammaDiffs gamma_and_diffs(const SpaceForm& base, const LiftProfile& prof,
                           const PhasePoint& pt) {
  const Ctx c = make_ctx(base, prof, pt);
  const double cc = base.curvature();
  const double den1 = c.u.f - 2.0 * c.t * c.u.d1;
  const double sing = c.u.f * c.u.f - 2.0 * cc * c.t;
  const double scale = 1.0 + c.u.f * c.u.f;
  if (std::abs(den1) < 1e-10 * scale || std::abs(sing) < 1e-10 * scale)
    throw SingularProfileError("gamma_and_diffs: denominator too small");

  const RicciBlocks traced = ricci_blocks(base, prof, pt);
  const LiftBlocks bl = lift_blocks(base, prof, pt);

  GammaDiffs gd;
  gd.a = ricci_coeff_a(c.n, cc, c.u, c.t);
  gd.gamma = ricci_coeff_gamma(c.n, cc, c.u, c.t);

  const double u2 = c.u.f * c.u.f;
  const double den1_2 = den1 * den1;
  const double pref = gd.a / (2.0 * c.u.f * den1_2);
  gd.diff_qq = traced.qq - pref * bl.Gb;
  gd.diff_pp = traced.pp - pref * bl.Hb;
  gd.model_qq =
      (sing * gd.gamma / (2.0 * u2 * den1_2 * den1_2)) * c.p * c.p.transpose();
  gd.model_pp =
      (gd.gamma / (2.0 * u2 * sing * den1_2)) * c.g0 * c.g0.transpose();
  return gd;
}

/* ---- finite-difference oracles ------------------------------------------ */

namespace {

PhasePoint displaced(const PhasePoint& pt, const Vec& dir, double s) {
  const int n = static_cast<int>(pt.q.size());
  PhasePoint out = pt;
  out.q += s * dir.head(n);
  out.p += s * dir.tail(n);
  return out;
}

double point_scale(const PhasePoint& pt) {
  double m = 0.0;
  if (pt.q.size() > 0) m = std::max(m, pt.q.cwiseAbs().maxCoeff());
  if (pt.p.size() > 0) m = std::max(m, pt.p.cwiseAbs().maxCoeff());
  return 1.0 + m;
}

}  // namespace

CoordVec koszul_nabla(const SpaceForm& base, const LiftProfile& prof,
                      const VectorField& X, const VectorField& Y,
                      const PhasePoint& pt, double h) {
  const int n = base.dim();
  const int N = 2 * n;
  const double s = h * point_scale(pt);

  auto metric_of = [&](const VectorField& U, const VectorField& V) {
    return [&base, &prof, U, V](const PhasePoint& q) {
      return U(q).v.dot(metric_full(base, prof, q) * V(q).v);
    };
  };
  auto dir_deriv = [&](auto&& f, const Vec& dir) {
    return (f(displaced(pt, dir, s)) - f(displaced(pt, dir, -s))) / (2.0 * s);
  };

  const Vec xv = X(pt).v;
  const Vec yv = Y(pt).v;
  const Mat m = metric_full(base, prof, pt);
  const Vec br_xy = bracket_fd_oracle(X, Y, pt, h).v;

  Vec rhs(N);
  for (int zc = 0; zc < N; ++zc) {
    Vec ez = Vec::Zero(N);
    ez(zc) = 1.0;
    VectorField Z = [ez](const PhasePoint&) { return CoordVec{ez}; };

    double val = dir_deriv(metric_of(Y, Z), xv) + dir_deriv(metric_of(X, Z), yv) -
                 dir_deriv(metric_of(X, Y), ez);
    val += br_xy.dot(m * ez);
    val -= bracket_fd_oracle(X, Z, pt, h).v.dot(m * yv);
    val -= bracket_fd_oracle(Y, Z, pt, h).v.dot(m * xv);
    rhs(zc) = val;
  }
  return {0.5 * m.llt().solve(rhs)};
}

KoszulCoeffs koszul_conn_coeffs(const SpaceForm& base, const LiftProfile& prof,
                                const PhasePoint& pt, double h) {
  const int n = base.dim();
  const Tensor3 gamma = base.christoffel_at(pt.q);
  const FrameChange fc = frame_change_at(base, pt);

  std::vector<VectorField> E;
  E.reserve(2 * n);
  for (int a = 0; a < 2 * n; ++a) E.push_back(adapted_basis_field(base, a));

  KoszulCoeffs out;
  out.coeffs.Q = Tensor3(n, n, n);
  out.coeffs.P = Tensor3(n, n, n);
  out.coeffs.S = Tensor3(n, n, n);
  out.offblock_residual = 0.0;
  auto track = [&out](double r) {
    out.offblock_residual = std::max(out.offblock_residual, std::abs(r));
  };

  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const AdaptedVec dd =
          to_adapted(fc, koszul_nabla(base, prof, E[n + i], E[n + j], pt, h));
      const AdaptedVec dp =
          to_adapted(fc, koszul_nabla(base, prof, E[n + i], E[j], pt, h));
      const AdaptedVec qq =
          to_adapted(fc, koszul_nabla(base, prof, E[i], E[j], pt, h));
      const AdaptedVec qp =
          to_adapted(fc, koszul_nabla(base, prof, E[i], E[n + j], pt, h));
      for (int hh = 0; hh < n; ++hh) {
        out.coeffs.Q(i, j, hh) = dd.v(n + hh);
        track(dd.v(hh));
        out.coeffs.P(hh, i, j) = dp.v(hh);
        track(dp.v(n + hh));
        out.coeffs.S(hh, i, j) = qq.v(n + hh);
        track(qq.v(hh) - gamma(hh, i, j));
        track(qp.v(n + hh) + gamma(j, i, hh));
      }
    }
  return out;
}

Tensor3 conn_coord_fd(const SpaceForm& base, const LiftProfile& prof,
                      const PhasePoint& pt, double h) {
  const int n = base.dim();
  const int N = 2 * n;

  std::vector<Mat> dM(N);
  for (int l = 0; l < N; ++l) {
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
    dM[l] = (metric_full(base, prof, plus) - metric_full(base, prof, minus)) /
            (2.0 * step);
  }

  const Mat minv = metric_full(base, prof, pt).llt().solve(Mat::Identity(N, N));
  Tensor3 conn(N, N, N);
  for (int cidx = 0; cidx < N; ++cidx)
    for (int a = 0; a < N; ++a)
      for (int b = 0; b < N; ++b) {
        double val = 0.0;
        for (int d = 0; d < N; ++d)
          val += 0.5 * minv(cidx, d) * (dM[a](b, d) + dM[b](a, d) - dM[d](a, b));
        conn(cidx, a, b) = val;
      }
  return conn;
}

Tensor4 curvature_fd_oracle(const SpaceForm& base, const LiftProfile& prof,
                            const PhasePoint& pt, double h_outer,
                            double h_inner) {
  const int n = base.dim();
  const int N = 2 * n;

  const Tensor3 conn0 = conn_coord_fd(base, prof, pt, h_inner);
  std::vector<Tensor3> dconn(N);
  for (int l = 0; l < N; ++l) {
    const double coord = l < n ? pt.q(l) : pt.p(l - n);
    const double step = h_outer * (1.0 + std::abs(coord));
    PhasePoint plus = pt, minus = pt;
    if (l < n) {
      plus.q(l) += step;
      minus.q(l) -= step;
    } else {
      plus.p(l - n) += step;
      minus.p(l - n) -= step;
    }
    const Tensor3 cp = conn_coord_fd(base, prof, plus, h_inner);
    const Tensor3 cm = conn_coord_fd(base, prof, minus, h_inner);
    dconn[l] = Tensor3(N, N, N);
    for (int x = 0; x < N; ++x)
      for (int y = 0; y < N; ++y)
        for (int z = 0; z < N; ++z)
          dconn[l](x, y, z) = (cp(x, y, z) - cm(x, y, z)) / (2.0 * step);
  }

  /* coordinate curvature, then a stepwise basis change to the adapted frame */
  Tensor4 kc(N, N, N, N);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      for (int z = 0; z < N; ++z)
        for (int d = 0; d < N; ++d) {
          double val = dconn[a](d, b, z) - dconn[b](d, a, z);
          for (int e = 0; e < N; ++e)
            val += conn0(d, a, e) * conn0(e, b, z) -
                   conn0(d, b, e) * conn0(e, a, z);
          kc(a, b, z, d) = val;
        }

  const FrameChange fc = frame_change_at(base, pt);
  Tensor4 k1(N, N, N, N), k2(N, N, N, N), k3(N, N, N, N), out(N, N, N, N);
  k1.setZero();
  k2.setZero();
  k3.setZero();
  out.setZero();
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      for (int z = 0; z < N; ++z)
        for (int d = 0; d < N; ++d)
          for (int m = 0; m < N; ++m) {
            k1(a, b, z, d) += fc.B(m, a) * kc(m, b, z, d);
          }
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      for (int z = 0; z < N; ++z)
        for (int d = 0; d < N; ++d)
          for (int m = 0; m < N; ++m) k2(a, b, z, d) += fc.B(m, b) * k1(a, m, z, d);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      for (int z = 0; z < N; ++z)
        for (int d = 0; d < N; ++d)
          for (int m = 0; m < N; ++m) k3(a, b, z, d) += fc.B(m, z) * k2(a, b, m, d);
  for (int a = 0; a < N; ++a)
    for (int b = 0; b < N; ++b)
      for (int z = 0; z < N; ++z)
        for (int d = 0; d < N; ++d)
          for (int m = 0; m < N; ++m)
            out(a, b, z, d) += fc.Binv(d, m) * k3(a, b, z, m);
  return out;
}

}  // namespace cotlift
