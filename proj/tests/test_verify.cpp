#include "doctest.h"

#include "cotlift/verify.hpp"

#include <cmath>

using namespace cotlift;

TEST_SUITE("verify") {

TEST_CASE("rng streams are deterministic and well scaled") {
  Rng a(7), b(7);
  for (int i = 0; i < 50; ++i) {
    const double x = a.uniform();
    CHECK(x == b.uniform());
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
  for (int i = 0; i < 20; ++i) {
    CHECK(std::abs(a.sphere(4).norm() - 1.0) < 1e-12);
    CHECK(a.ball(3, 0.7).norm() <= 0.7 + 1e-12);
  }
  const double lo = a.uniform(2.0, 5.0);
  CHECK(lo >= 2.0);
  CHECK(lo < 5.0);
}

TEST_CASE("sampling respects energy bounds, chart, and tube") {
  SampleSpec spec;
  spec.count = 40;
  {
    const SpaceForm base(3, -1.0);
    const LiftProfile prof = LiftProfile::einstein(1.0, -1.0);
    const auto pts = sample_phase_points(base, prof, spec);
    CHECK(pts.size() == 40);
    for (const auto& pt : pts) {
      CHECK(pt.q.norm() <= spec.q_radius + 1e-12);
      const double t = energy_density(base, pt);
      CHECK(t >= spec.t_min);
      CHECK(t <= spec.t_max);
    }
  }
  {
    // positive curvature: the profile domain (tube) caps t below 0.5
    const SpaceForm base(3, 1.0);
    const LiftProfile prof = LiftProfile::einstein(1.0, 1.0);
    for (const auto& pt : sample_phase_points(base, prof, spec))
      CHECK(energy_density(base, pt) < 0.5);
  }
  {
    // same seed, same points
    const SpaceForm base(3, -1.0);
    const LiftProfile prof = LiftProfile::einstein(1.0, -1.0);
    const auto p1 = sample_phase_points(base, prof, spec);
    const auto p2 = sample_phase_points(base, prof, spec);
    CHECK((p1[7].q - p2[7].q).norm() == 0.0);
    CHECK((p1[7].p - p2[7].p).norm() == 0.0);
  }
}

TEST_CASE("sampling rejects impossible requests") {
  const SpaceForm base(3, 1.0);
  const LiftProfile prof = LiftProfile::einstein(1.0, 1.0);
  SampleSpec spec;
  spec.count = 0;
  CHECK_THROWS_AS(sample_phase_points(base, prof, spec), InputError);
  spec.count = 5;
  spec.t_min = 1.0;  // above the tube bound 0.5
  CHECK_THROWS_AS(sample_phase_points(base, prof, spec), InputError);
}

TEST_CASE("check semantics for residuals and witnesses") {
  CHECK(make_check("r", "", 1e-12, 1e-10, 1).pass);
  CHECK_FALSE(make_check("r", "", 1e-8, 1e-10, 1).pass);
  CHECK(make_check("w", "", 0.5, 1e-2, 1, true).pass);
  CHECK_FALSE(make_check("w", "", 1e-5, 1e-2, 1, true).pass);

  SuiteResult s;
  s.suite = "x";
  s.checks.push_back(make_check("a", "", 0.0, 1.0, 1));
  s.pass = true;
  SuiteResult f = s;
  f.pass = false;
  CHECK(all_pass({s}));
  CHECK_FALSE(all_pass({s, f}));
}

TEST_CASE("default profile set is admissible over the sampling window") {
  for (double c : {-1.0, 0.0, 1.0}) {
    const auto profs = default_check_profiles(c, 1.0);
    CHECK(profs.size() == 3);
    for (const auto& p : profs) {
      const double t_hi = std::isfinite(p.t_sup())
                              ? std::min(1.4, 0.9 * p.t_sup())
                              : 1.4;
      for (double t : {0.0, 0.5 * t_hi, t_hi}) CHECK(p.admissible(t));
    }
  }
}

TEST_CASE("suites pass on a small deterministic sample") {
  const SpaceForm base(2, -1.0);
  SampleSpec spec;
  spec.count = 4;
  const Tolerances tol;
  CHECK(almost_kaehler_suite(base, default_check_profiles(-1.0, 1.0), spec,
                             tol)
            .pass);
  CHECK(integrability_suite(base, LiftProfile::einstein(1.0, -1.0), spec, tol)
            .pass);
  CHECK(connection_suite(base, default_check_profiles(-1.0, 1.0), spec, tol)
            .pass);
  CHECK(einstein_suite(base, 1.0, spec, tol).pass);
  CHECK(holomorphic_suite(base, 1.0, spec, tol).pass);
}

TEST_CASE("integrability suite flags a broken profile") {
  const SpaceForm base(2, -1.0);
  SampleSpec spec;
  spec.count = 4;
  const SuiteResult sr = integrability_suite(base, LiftProfile::sasaki(-1.0),
                                             spec, Tolerances{});
  CHECK_FALSE(sr.pass);
  bool analytic_failed = false;
  for (const auto& ck : sr.checks)
    if (ck.name == "analytic_components_vanish") analytic_failed = !ck.pass;
  CHECK(analytic_failed);
}

TEST_CASE("holomorphic sectional value of the model blocks") {
  const SpaceForm base(3, -1.0);
  const LiftProfile prof = LiftProfile::einstein(1.0, -1.0);
  PhasePoint pt;
  pt.q = Vec::Zero(3);
  pt.q << 0.1, 0.2, -0.1;
  pt.p = Vec::Zero(3);
  pt.p << 0.4, -0.3, 0.6;

  const LiftBlocks bl = lift_blocks(base, prof, pt);
  const CurvatureBlocks mb = model_curvature_blocks(bl, -1.0, 1.0);
  Rng rng(3);
  for (int rep = 0; rep < 5; ++rep) {
    AdaptedVec x{rng.normal_vec(6)};
    CHECK(holomorphic_sectional(mb, bl, x) == doctest::Approx(-2.0));
  }

  // model tensor route gives the same K(X,JX)JX
  AdaptedVec x{rng.normal_vec(6)};
  const AdaptedVec jx = j_apply(bl, x);
  const AdaptedVec lhs = apply_curvature(mb, x, jx, jx);
  const AdaptedVec rhs = holomorphic_model(-2.0, bl, x, jx, jx);
  CHECK((lhs.v - rhs.v).cwiseAbs().maxCoeff() < 1e-10);
}

}
