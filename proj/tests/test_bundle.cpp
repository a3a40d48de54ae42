#include "doctest.h"

#include "cotlift/bundle.hpp"
#include "cotlift/frame.hpp"

#include <cmath>

using namespace cotlift;

namespace {

PhasePoint frozen_point() {
  PhasePoint pt;
  pt.q = Vec::Zero(3);
  pt.p = Vec::Zero(3);
  pt.p(0) = std::sqrt(8.0);
  return pt;
}

}  // namespace

TEST_SUITE("bundle") {

TEST_CASE("energy density at the origin is |p|^2 / 2") {
  const SpaceForm base(3, -1.0);
  PhasePoint pt;
  pt.q = Vec::Zero(3);
  pt.p = Vec::Zero(3);
  pt.p << 3.0, 4.0, 0.0;
  CHECK(energy_density(base, pt) == doctest::Approx(12.5));
}

TEST_CASE("lifted blocks at a frozen point") {
  // q = 0, p = sqrt(8) e1, einstein profile A = 1, c = -1: t = 4, u = 4,
  // v = 7/4, so Gb = 4 I + (7/4) p p^T and Hb its inverse
  const SpaceForm base(3, -1.0);
  const LiftProfile prof = LiftProfile::einstein(1.0, -1.0);
  const LiftBlocks bl = lift_blocks(base, prof, frozen_point());
  CHECK(bl.t == doctest::Approx(4.0));
  CHECK(bl.Gb(0, 0) == doctest::Approx(18.0));
  CHECK(bl.Gb(1, 1) == doctest::Approx(4.0));
  CHECK(bl.Gb(0, 1) == doctest::Approx(0.0));
  CHECK(bl.Hb(0, 0) == doctest::Approx(1.0 / 18.0));
  CHECK(bl.Hb(1, 1) == doctest::Approx(0.25));
  CHECK(max_abs(bl.Gb * bl.Hb - Mat::Identity(3, 3)) < 1e-13);
}

TEST_CASE("adapted metric agrees with the coordinate metric") {
  const SpaceForm base(3, -1.0);
  const LiftProfile prof = LiftProfile::einstein(1.0, -1.0);
  PhasePoint pt;
  pt.q = Vec::Zero(3);
  pt.q << 0.2, -0.1, 0.3;
  pt.p = Vec::Zero(3);
  pt.p << 0.4, 0.8, -0.2;

  const LiftBlocks bl = lift_blocks(base, prof, pt);
  const Mat gf = metric_full(base, prof, pt);
  const FrameChange fc = frame_change_at(base, pt);

  AdaptedVec x{Vec::Zero(6)}, y{Vec::Zero(6)};
  x.v << 1.0, -0.5, 0.25, 0.7, 0.1, -1.2;
  y.v << 0.3, 0.9, -0.4, -0.6, 1.1, 0.5;
  const Vec xc = to_coord(fc, x).v;
  const Vec yc = to_coord(fc, y).v;
  CHECK(metric_adapted(bl, x, y) ==
        doctest::Approx(xc.dot(gf * yc)).epsilon(1e-12));
}

TEST_CASE("complex structure squares to minus the identity") {
  const SpaceForm base(2, 1.0);
  const LiftProfile prof = LiftProfile::einstein(2.0, 1.0);
  PhasePoint pt;
  pt.q = Vec::Zero(2);
  pt.q << 0.3, 0.1;
  pt.p = Vec::Zero(2);
  pt.p << 0.5, -0.7;

  const LiftBlocks bl = lift_blocks(base, prof, pt);
  const Mat J = j_matrix_adapted(bl);
  CHECK(max_abs(J * J + Mat::Identity(4, 4)) < 1e-13);

  AdaptedVec x{Vec::Zero(4)};
  x.v << 0.2, -1.0, 0.8, 0.4;
  CHECK((j_apply(bl, x).v - J * x.v).cwiseAbs().maxCoeff() < 1e-14);
}

TEST_CASE("fundamental form is the canonical pairing with constant matrix") {
  const SpaceForm base(3, -1.0);
  PhasePoint pt;
  pt.q = Vec::Zero(3);
  pt.q << -0.2, 0.25, 0.05;
  pt.p = Vec::Zero(3);
  pt.p << 1.0, 0.3, -0.4;

  Mat canon = Mat::Zero(6, 6);
  canon.block(0, 3, 3, 3) = -Mat::Identity(3, 3);
  canon.block(3, 0, 3, 3) = Mat::Identity(3, 3);

  for (const auto& prof :
       {LiftProfile::einstein(1.0, -1.0), LiftProfile::sasaki(-1.0),
        LiftProfile::affine(2.0, 1.0, -1.0)}) {
    const LiftBlocks bl = lift_blocks(base, prof, pt);
    AdaptedVec x{Vec::Zero(6)}, y{Vec::Zero(6)};
    x.v << 1.0, 0.5, -0.25, 0.7, 0.2, -1.0;
    y.v << -0.3, 0.9, 0.4, 0.6, -1.1, 0.5;
    CHECK(fundamental_form(bl, x, y) ==
          doctest::Approx(canonical_pairing(x, y)).epsilon(1e-13));
    CHECK(max_abs(fundamental_form_coord(base, prof, pt) - canon) < 1e-13);
  }
}

TEST_CASE("positivity failure is rejected") {
  const SpaceForm base(3, -1.0);
  const LiftProfile bad =
      LiftProfile::einstein(1.0, -1.0).shifted_v(-10.0, "bad");
  PhasePoint pt;
  pt.q = Vec::Zero(3);
  pt.p = Vec::Zero(3);
  pt.p << 1.5, 0.0, 0.0;  // t about 1.1, u + 2tv far below zero
  CHECK_THROWS_AS(lift_blocks(base, bad, pt), InadmissibleProfileError);
}

}
