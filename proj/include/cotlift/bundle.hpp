#pragma once

#include "cotlift/profile.hpp"
#include "cotlift/spaceform.hpp"
#include "cotlift/types.hpp"

namespace cotlift {

/* Energy density t = (1/2) g^{ik} p_i p_k at a phase point. */
double energy_density(const SpaceForm& base, const PhasePoint& pt);

/* The two diagonal blocks of the lifted metric in the adapted frame,

     Gb_ij  = u g_ij + v p_i p_j          (horizontal-horizontal)
     Hb^ij  = (1/u) g^ij + w g0^i g0^j    (vertical-vertical)

   with g0 = g^{-1} p, plus the scalar data they were built from.  Hb is the
   inverse of Gb by construction of w. */
struct LiftBlocks {
  double t;
  Jet3 u, v, w;
  Vec g0;
  Mat Gb, Hb;
};

LiftBlocks lift_blocks(const SpaceForm& base, const LiftProfile& prof,
                       const PhasePoint& pt);

/* Full 2n x 2n metric in the coordinate frame (dq, dp ordering). */
Mat metric_full(const SpaceForm& base, const LiftProfile& prof,
                const PhasePoint& pt);

/* The almost complex structure in the adapted frame: J delta_i = Gb_ik del^k
   and J del^i = -Hb^ik delta_k, i.e. the block matrix [[0, -Hb], [Gb, 0]]. */
Mat j_matrix_adapted(const LiftBlocks& blocks);

AdaptedVec j_apply(const LiftBlocks& blocks, const AdaptedVec& x);

/* Lifted-metric inner product of adapted vectors. */
double metric_adapted(const LiftBlocks& blocks, const AdaptedVec& x,
                      const AdaptedVec& y);

/* Fundamental 2-form phi(X, Y) = G(X, JY). */
double fundamental_form(const LiftBlocks& blocks, const AdaptedVec& x,
                        const AdaptedVec& y);

/* The canonical pairing the fundamental form must coincide with,
   independently of the profile: X_vert . Y_horiz - X_horiz . Y_vert. */
double canonical_pairing(const AdaptedVec& x, const AdaptedVec& y);

/* Coordinate-frame component matrix of the fundamental form.  Constant in
   the chart (the canonical symplectic matrix), which is what makes the
   closedness of phi immediate. */
Mat fundamental_form_coord(const SpaceForm& base, const LiftProfile& prof,
                           const PhasePoint& pt);

}  // namespace cotlift
