#pragma once

#include "cotlift/bundle.hpp"
#include "cotlift/frame.hpp"
#include "cotlift/profile.hpp"
#include "cotlift/spaceform.hpp"
#include "cotlift/types.hpp"

#include <vector>

namespace cotlift {

/* Component families of the Nijenhuis tensor of J in the adapted frame:
     N(delta_i, delta_j) = dd(i,j,k) del^k
     N(delta_i, del^j)   = dp(i,j,k) delta_k
     N(del^i,  del^j)    = pp(i,j,k) del^k
   For a constant-curvature base every family is proportional to
   F(t) - c where F = v(2tu' - u) + uu'. */
struct NijenhuisEval {
  Tensor3 dd, dp, pp;
  double max_abs;
};

NijenhuisEval nijenhuis_analytic(const SpaceForm& base, const LiftProfile& prof,
                                 const PhasePoint& pt);

/* The scalar coefficient F(t) = v(2tu' - u) + uu' and its defect against the
   base curvature; the defect vanishes exactly when v satisfies the
   integrability relation. */
double f_coefficient(const LiftProfile& prof, double t);
double integrability_defect(const LiftProfile& prof, double c, double t);

/* Pointwise action of J on a coordinate vector field (convert, apply the
   adapted block matrix, convert back). */
VectorField j_field(const SpaceForm& base, const LiftProfile& prof,
                    const VectorField& x);

/* N(X,Y) = [JX,JY] - J[JX,Y] - J[X,JY] - [X,Y] with finite-difference
   brackets, in coordinate components. */
CoordVec nijenhuis_fd_oracle(const SpaceForm& base, const LiftProfile& prof,
                             const VectorField& x, const VectorField& y,
                             const PhasePoint& pt, double h = 1e-5);

struct IntegrabilityVerdict {
  bool integrable;
  double max_component;  // largest analytic component over the samples
  double max_f_defect;   // largest |F(t) - c| over the samples
  int samples;
};

IntegrabilityVerdict integrability_verdict(const SpaceForm& base,
                                           const LiftProfile& prof,
                                           const std::vector<PhasePoint>& pts,
                                           double tol = 1e-9);

}  // namespace cotlift
