#pragma once

#include "cotlift/bundle.hpp"
#include "cotlift/connection.hpp"
#include "cotlift/frame.hpp"
#include "cotlift/nijenhuis.hpp"
#include "cotlift/profile.hpp"
#include "cotlift/spaceform.hpp"
#include "cotlift/types.hpp"

#include <cstdint>
#include <random>
#include <string>
#include <vector>

namespace cotlift {

/* Deterministic sampling plan.  t_max is clipped to the profile's domain
   (minus the relative guard) and, through the profile, to the tube bound
   for positive base curvature. */
struct SampleSpec {
  std::uint64_t seed = 42;
  int count = 100;
  double q_radius = 0.4;
  double t_min = 0.0;
  double t_max = 1.5;
  double guard = 1e-3;
};

/* mt19937_64 with explicit uniform/normal mappings.  The standard
   distributions are not bit-stable across library implementations and the
   golden report requires identical streams everywhere. */
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(seed) {}

  double uniform();  // [0, 1)
  double uniform(double lo, double hi);
  double normal();   // Box-Muller, fresh pair per call
  Vec normal_vec(int n);
  Vec sphere(int n);                 // uniform direction
  Vec ball(int n, double radius);    // uniform in the solid ball

 private:
  std::mt19937_64 eng_;
};

/* q uniform in the (chart-clipped) ball, p along a uniform direction scaled
   so the energy density hits a uniform target t. */
std::vector<PhasePoint> sample_phase_points(const SpaceForm& base,
                                            const LiftProfile& prof,
                                            const SampleSpec& spec);

/* One verified identity.  comparison is "below" for residual checks and
   "above" for witness checks (quantities that must stay clearly nonzero). */
struct CheckResult {
  std::string name;
  std::string identity;
  std::string comparison;  // "below" | "above"
  double max_residual = 0.0;
  double tolerance = 0.0;
  int samples = 0;
  bool pass = false;
};

CheckResult make_check(std::string name, std::string identity, double residual,
                       double tol, int samples, bool above = false);

/* Pinned tolerances; every check references one of these by name. */
struct Tolerances {
  double analytic = 1e-10;       // pointwise algebraic identities
  double analytic_loose = 1e-9;  // closed forms with heavier cancellation
  double fd = 1e-4;              // first-order finite-difference comparisons
  double fd_curvature = 1e-3;    // nested-difference curvature oracle
  double ricci_closed = 1e-6;    // trace route vs closed-form Ricci
  double cross_block = 1e-8;     // mixed Ricci block
  double einstein_rel = 1e-6;    // relative Einstein residual
  double holomorphic = 1e-6;     // model curvature comparisons
  double sectional_spread = 1e-5;
  double ode = 1e-10;
  double f_defect = 1e-10;       // integrability scalar drift
  double witness = 1e-2;         // non-integrability oracle magnitude
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckResult> checks;
  bool pass = false;
};

bool all_pass(const std::vector<SuiteResult>& suites);

/* The profile set exercised by the profile-generic suites: the Einstein
   profile, a square-root profile with the wrong radicand slope, and an
   affine profile.  All carry the integrability v. */
std::vector<LiftProfile> default_check_profiles(double c, double A);

/* Suites.  Each aggregates per-check worst residuals over its samples. */
SuiteResult almost_kaehler_suite(const SpaceForm& base,
                                 const std::vector<LiftProfile>& profs,
                                 const SampleSpec& spec, const Tolerances& tol);
SuiteResult integrability_suite(const SpaceForm& base, const LiftProfile& prof,
                                const SampleSpec& spec, const Tolerances& tol);
SuiteResult connection_suite(const SpaceForm& base,
                             const std::vector<LiftProfile>& profs,
                             const SampleSpec& spec, const Tolerances& tol);
SuiteResult einstein_suite(const SpaceForm& base, double A,
                           const SampleSpec& spec, const Tolerances& tol);
SuiteResult holomorphic_suite(const SpaceForm& base, double A,
                              const SampleSpec& spec, const Tolerances& tol);

/* Constant-holomorphic-curvature machinery (Einstein configuration). */

/* The six curvature families of the c/2A model, same layout as
   CurvatureBlocks. */
CurvatureBlocks model_curvature_blocks(const LiftBlocks& bl, double c,
                                       double A);

/* R(X,Y)Z = (k/4)(g(Z,Y)X - g(Z,X)Y + g(Z,JY)JX - g(Z,JX)JY + 2g(X,JY)JZ) */
AdaptedVec holomorphic_model(double k, const LiftBlocks& bl,
                             const AdaptedVec& x, const AdaptedVec& y,
                             const AdaptedVec& z);

/* G(K(X,JX)JX, X) / G(X,X)^2, the definitional holomorphic sectional value. */
double holomorphic_sectional(const CurvatureBlocks& kb, const LiftBlocks& bl,
                             const AdaptedVec& x);

}  // namespace cotlift
