#include "doctest.h"

#include "cotlift/nijenhuis.hpp"

#include <cmath>
#include <vector>

using namespace cotlift;

namespace {

PhasePoint generic_point() {
  PhasePoint pt;
  pt.q = Vec::Zero(3);
  pt.q << 0.1, 0.25, -0.2;
  pt.p = Vec::Zero(3);
  pt.p << 0.9, -0.5, 0.3;
  return pt;
}

}  // namespace

TEST_SUITE("nijenhuis") {

TEST_CASE("closed-form components vanish when v satisfies the condition") {
  const PhasePoint pt = generic_point();
  for (double c : {-1.0, 0.0, 1.0}) {
    const SpaceForm base(3, c);
    // A = 2 keeps the c = +1 tube (t < A^2/2c = 2) clear of the sample energy
    for (const auto& prof :
         {LiftProfile::einstein(2.0, c), LiftProfile::affine(2.0, 1.0, c)}) {
      CHECK(nijenhuis_analytic(base, prof, pt).max_abs < 1e-12);
      CHECK(std::abs(f_coefficient(prof, energy_density(base, pt)) - c) <
            1e-13);
    }
  }
}

TEST_CASE("unit lift on a curved base is visibly non-integrable") {
  const SpaceForm base(3, -1.0);
  const LiftProfile sas = LiftProfile::sasaki(-1.0);
  const PhasePoint pt = generic_point();
  CHECK(nijenhuis_analytic(base, sas, pt).max_abs > 0.1);
  CHECK(integrability_defect(sas, -1.0, energy_density(base, pt)) ==
        doctest::Approx(1.0));  // |F - c| with F = 0
}

TEST_CASE("bracket oracle reproduces the component families") {
  const SpaceForm base(3, -1.0);
  const LiftProfile prof =
      LiftProfile::einstein(1.0, -1.0).shifted_v(0.2, "off");
  const PhasePoint pt = generic_point();
  const FrameChange fc = frame_change_at(base, pt);
  const NijenhuisEval ev = nijenhuis_analytic(base, prof, pt);
  const int n = 3;

  auto oracle_adapted = [&](int a, int b) {
    const VectorField X = adapted_basis_field(base, a);
    const VectorField Y = adapted_basis_field(base, b);
    return to_adapted(fc, nijenhuis_fd_oracle(base, prof, X, Y, pt));
  };

  // N(delta_0, delta_1): vertical components dd(0,1,k)
  const AdaptedVec ndd = oracle_adapted(0, 1);
  for (int k = 0; k < n; ++k) {
    CHECK(std::abs(ndd.v(k)) < 1e-5);
    CHECK(std::abs(ndd.v(n + k) - ev.dd(0, 1, k)) < 1e-5);
  }

  // N(delta_0, del^2): horizontal components dp(0,2,k)
  const AdaptedVec ndp = oracle_adapted(0, n + 2);
  for (int k = 0; k < n; ++k) {
    CHECK(std::abs(ndp.v(k) - ev.dp(0, 2, k)) < 1e-5);
    CHECK(std::abs(ndp.v(n + k)) < 1e-5);
  }

  // N(del^1, del^2): vertical components pp(1,2,k)
  const AdaptedVec npp = oracle_adapted(n + 1, n + 2);
  for (int k = 0; k < n; ++k) {
    CHECK(std::abs(npp.v(k)) < 1e-5);
    CHECK(std::abs(npp.v(n + k) - ev.pp(1, 2, k)) < 1e-5);
  }
}

TEST_CASE("verdict aggregates over sample sets") {
  const SpaceForm base(3, -1.0);
  const LiftProfile good = LiftProfile::einstein(1.0, -1.0);
  const LiftProfile bad = good.shifted_v(0.05, "bad");

  std::vector<PhasePoint> pts;
  for (double s : {0.3, 0.7, 1.2}) {
    PhasePoint pt = generic_point();
    pt.p *= s;
    pts.push_back(pt);
  }

  const IntegrabilityVerdict ok = integrability_verdict(base, good, pts);
  CHECK(ok.integrable);
  CHECK(ok.samples == 3);
  CHECK(ok.max_component < 1e-12);
  CHECK(ok.max_f_defect < 1e-13);

  const IntegrabilityVerdict no = integrability_verdict(base, bad, pts);
  CHECK_FALSE(no.integrable);
  CHECK(no.max_component > 1e-3);

  CHECK_THROWS_AS(integrability_verdict(base, good, {}), InputError);
}

TEST_CASE("j field converts through the adapted frame") {
  const SpaceForm base(2, 1.0);
  const LiftProfile prof = LiftProfile::einstein(2.0, 1.0);
  PhasePoint pt;
  pt.q = Vec::Zero(2);
  pt.q << 0.2, -0.3;
  pt.p = Vec::Zero(2);
  pt.p << 0.4, 0.5;

  const VectorField X = adapted_basis_field(base, 0);
  const VectorField JX = j_field(base, prof, X);
  const FrameChange fc = frame_change_at(base, pt);
  const LiftBlocks bl = lift_blocks(base, prof, pt);
  const AdaptedVec expect = j_apply(bl, AdaptedVec{Vec::Unit(4, 0)});
  CHECK((to_adapted(fc, JX(pt)).v - expect.v).cwiseAbs().maxCoeff() < 1e-13);
}

}
