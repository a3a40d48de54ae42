#include "doctest.h"
#include "testutil.hpp"

#include "cotlift/connection.hpp"

#include <cmath>

using namespace cotlift;
using testutil::diff3;
using testutil::diff4;

namespace {

PhasePoint generic_point() {
  PhasePoint pt;
  pt.q = Vec::Zero(3);
  pt.q << 0.15, -0.2, 0.1;
  pt.p = Vec::Zero(3);
  pt.p << 0.7, -0.4, 0.5;
  return pt;
}

}  // namespace

TEST_SUITE("connection") {

TEST_CASE("expanded coefficient forms equal the generic contractions") {
  const PhasePoint pt = generic_point();
  for (double c : {-1.0, 1.0}) {
    const SpaceForm base(3, c);
    for (const auto& prof :
         {LiftProfile::einstein(1.0, c), LiftProfile::affine(2.5, 1.0, c),
          LiftProfile::general_sqrt(1.0, 0.7, c)}) {
      const ConnCoeffs gen = conn_coeffs_generic(base, prof, pt);
      const auto exp = conn_coeffs_expanded(base, prof, pt);
      REQUIRE(exp.has_value());
      CHECK(diff3(exp->Q, gen.Q) < 1e-10);
      CHECK(diff3(exp->P, gen.P) < 1e-10);
      CHECK(diff3(exp->S, gen.S) < 1e-10);
    }
  }
}

TEST_CASE("expanded forms step aside when v or w vanishes") {
  const SpaceForm base(3, 0.0);
  const LiftProfile sas = LiftProfile::sasaki(0.0);
  CHECK_FALSE(conn_coeffs_expanded(base, sas, generic_point()).has_value());
}

TEST_CASE("koszul oracle reproduces the coefficient tables") {
  const SpaceForm base(3, -1.0);
  const LiftProfile prof = LiftProfile::einstein(1.0, -1.0);
  const PhasePoint pt = generic_point();
  const ConnCoeffs gen = conn_coeffs_generic(base, prof, pt);
  const KoszulCoeffs ko = koszul_conn_coeffs(base, prof, pt);
  CHECK(diff3(ko.coeffs.Q, gen.Q) < 1e-5);
  CHECK(diff3(ko.coeffs.P, gen.P) < 1e-5);
  CHECK(diff3(ko.coeffs.S, gen.S) < 1e-5);
  CHECK(ko.offblock_residual < 1e-5);
}

TEST_CASE("vertical derivatives of the coefficient tables match FD") {
  const SpaceForm base(3, -1.0);
  const LiftProfile prof = LiftProfile::general_sqrt(1.0, 1.3, -1.0);
  const PhasePoint pt = generic_point();
  const ConnDerivs cd = conn_derivs(base, prof, pt);
  const int n = 3;
  const double h = 1e-5;

  double worst = 0.0;
  for (int a = 0; a < n; ++a) {
    PhasePoint plus = pt, minus = pt;
    const double step = h * (1.0 + std::abs(pt.p(a)));
    plus.p(a) += step;
    minus.p(a) -= step;
    const ConnCoeffs cp = conn_coeffs_generic(base, prof, plus);
    const ConnCoeffs cm = conn_coeffs_generic(base, prof, minus);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
          worst = std::max(worst,
                           std::abs((cp.Q(i, j, k) - cm.Q(i, j, k)) /
                                        (2.0 * step) -
                                    cd.dQ(a, i, j, k)));
          worst = std::max(worst,
                           std::abs((cp.P(i, j, k) - cm.P(i, j, k)) /
                                        (2.0 * step) -
                                    cd.dP(a, i, j, k)));
          worst = std::max(worst,
                           std::abs((cp.S(i, j, k) - cm.S(i, j, k)) /
                                        (2.0 * step) -
                                    cd.dS(a, i, j, k)));
        }
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("curvature assembly fills exactly the six block families") {
  const SpaceForm base(2, -1.0);
  const LiftProfile prof = LiftProfile::einstein(1.0, -1.0);
  PhasePoint pt;
  pt.q = Vec::Zero(2);
  pt.q << 0.2, -0.1;
  pt.p = Vec::Zero(2);
  pt.p << 0.6, 0.4;

  const int n = 2;
  const Tensor4 K = curvature_full(base, prof, pt);
  const CurvatureBlocks b = curvature_blocks(base, prof, pt);
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        for (int h = 0; h < n; ++h) {
          worst = std::max(worst, std::abs(K(i, j, k, h) - b.QQQ(i, j, k, h)));
          worst = std::max(worst,
                           std::abs(K(i, j, n + k, n + h) - b.QQP(i, j, k, h)));
          worst = std::max(
              worst, std::abs(K(n + i, n + j, n + k, n + h) -
                              b.PPP(i, j, k, h)));
          worst = std::max(worst,
                           std::abs(K(n + i, n + j, k, h) - b.PPQ(i, j, k, h)));
          worst = std::max(worst,
                           std::abs(K(n + i, j, k, n + h) - b.PQQ(i, j, k, h)));
          worst = std::max(worst,
                           std::abs(K(n + i, j, n + k, h) - b.PQP(i, j, k, h)));
          // parity-violating slots vanish
          worst = std::max(worst, std::abs(K(i, j, k, n + h)));
          worst = std::max(worst, std::abs(K(n + i, n + j, k, n + h)));
          worst = std::max(worst, std::abs(K(n + i, j, k, h)));
          worst = std::max(worst, std::abs(K(n + i, j, n + k, n + h)));
        }
  CHECK(worst < 1e-10);
}

TEST_CASE("curvature matches the nested finite-difference oracle") {
  const SpaceForm base(2, -1.0);
  PhasePoint pt;
  pt.q = Vec::Zero(2);
  pt.q << 0.15, 0.1;
  pt.p = Vec::Zero(2);
  pt.p << 0.5, -0.3;
  for (const auto& prof : {LiftProfile::einstein(1.0, -1.0),
                           LiftProfile::affine(2.0, 1.0, -1.0)}) {
    const Tensor4 K = curvature_full(base, prof, pt);
    CHECK(diff4(curvature_fd_oracle(base, prof, pt), K) < 1e-3);
  }
}

TEST_CASE("finite-difference curvature error shrinks at second order") {
  const SpaceForm base(2, -1.0);
  const LiftProfile prof = LiftProfile::einstein(1.0, -1.0);
  PhasePoint pt;
  pt.q = Vec::Zero(2);
  pt.q << 0.15, 0.1;
  pt.p = Vec::Zero(2);
  pt.p << 0.5, -0.3;

  const Tensor4 K = curvature_full(base, prof, pt);
  const double e1 = diff4(curvature_fd_oracle(base, prof, pt, 1e-3, 1e-6), K);
  const double e2 = diff4(curvature_fd_oracle(base, prof, pt, 2e-3, 1e-6), K);
  CHECK(e2 / e1 > 2.8);
  CHECK(e2 / e1 < 5.5);
}

TEST_CASE("ricci blocks: einstein proportionality at frozen constants") {
  // (n+1)c/A = -4 for n=3, c=-1, A=1 and +2 for n=3, c=1, A=2
  const PhasePoint pt = generic_point();
  {
    const SpaceForm base(3, -1.0);
    const LiftProfile prof = LiftProfile::einstein(1.0, -1.0);
    const RicciBlocks rb = ricci_blocks(base, prof, pt);
    const LiftBlocks bl = lift_blocks(base, prof, pt);
    CHECK(max_abs(rb.qq + 4.0 * bl.Gb) < 1e-10);
    CHECK(max_abs(rb.pp + 4.0 * bl.Hb) < 1e-10);
    CHECK(max_abs(rb.cross) < 1e-12);
  }
  {
    const SpaceForm base(3, 1.0);
    const LiftProfile prof = LiftProfile::einstein(2.0, 1.0);
    PhasePoint small = pt;
    small.p *= 0.5;  // keep t inside the tube
    const RicciBlocks rb = ricci_blocks(base, prof, small);
    const LiftBlocks bl = lift_blocks(base, prof, small);
    CHECK(max_abs(rb.qq - 2.0 * bl.Gb) < 1e-10);
    CHECK(max_abs(rb.pp - 2.0 * bl.Hb) < 1e-10);
  }
}

TEST_CASE("traced ricci equals the closed coefficient forms off shell") {
  // holds for any admissible profile, not only the Einstein one
  const SpaceForm base(3, -1.0);
  const PhasePoint pt = generic_point();
  for (const auto& prof : {LiftProfile::general_sqrt(1.0, 1.0, -1.0),
                           LiftProfile::affine(2.0, 1.0, -1.0)}) {
    const RicciBlocks traced = ricci_blocks(base, prof, pt);
    const RicciBlocks closed = ricci_closed_forms(base, prof, pt);
    CHECK(max_abs(traced.qq - closed.qq) < 1e-9);
    CHECK(max_abs(traced.pp - closed.pp) < 1e-9);

    const GammaDiffs gd = gamma_and_diffs(base, prof, pt);
    CHECK(max_abs(gd.diff_qq - gd.model_qq) < 1e-9);
    CHECK(max_abs(gd.diff_pp - gd.model_pp) < 1e-9);
  }
}

TEST_CASE("obstruction scalar distinguishes the einstein radicand") {
  const int n = 3;
  const double c = -1.0;
  const LiftProfile ein = LiftProfile::general_sqrt(1.0, 2.0, c);  // B = -2c
  const LiftProfile off = LiftProfile::general_sqrt(1.0, 1.0, c);
  for (double t : {0.0, 0.5, 1.2}) {
    CHECK(std::abs(ricci_coeff_gamma(n, c, ein.u(t), t)) < 1e-12);
    if (t > 0.0)
      CHECK(std::abs(ricci_coeff_gamma(n, c, off.u(t), t)) > 1e-3);
  }
}

TEST_CASE("momentum transvections of the base data") {
  // p_k g^{kj} p_j = 2t and d/dp_a of t is g^{0a}
  const SpaceForm base(3, -1.0);
  const PhasePoint pt = generic_point();
  const Mat ginv = base.metric_inv_at(pt.q);
  const Vec g0 = ginv * pt.p;
  const double t = 0.5 * pt.p.dot(g0);
  CHECK(pt.p.dot(g0) == doctest::Approx(2.0 * t));

  const double h = 1e-6;
  for (int a = 0; a < 3; ++a) {
    PhasePoint plus = pt, minus = pt;
    plus.p(a) += h;
    minus.p(a) -= h;
    const double dt = (0.5 * plus.p.dot(ginv * plus.p) -
                       0.5 * minus.p.dot(ginv * minus.p)) /
                      (2.0 * h);
    CHECK(dt == doctest::Approx(g0(a)).epsilon(1e-8));
  }
}

TEST_CASE("inadmissible configurations are rejected") {
  const SpaceForm base(3, -1.0);
  const LiftProfile bad =
      LiftProfile::einstein(1.0, -1.0).shifted_v(-10.0, "bad");
  PhasePoint pt = generic_point();
  pt.p *= 2.0;
  CHECK_THROWS_AS(conn_coeffs_generic(base, bad, pt),
                  InadmissibleProfileError);
}

}
