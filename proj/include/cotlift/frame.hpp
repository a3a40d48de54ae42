#pragma once

#include "cotlift/spaceform.hpp"
#include "cotlift/types.hpp"

#include <functional>

namespace cotlift {

/* Change of frame between coordinate vectors (d/dq, d/dp) and the adapted
   frame

     delta_i = d/dq^i + Gamma0_ih d/dp_h,   del^i = d/dp_i,

   where Gamma0_ih = p_k Gamma^k_ih.  B maps adapted components to coordinate
   components; its inverse is available in closed form. */
struct FrameChange {
  Mat B;
  Mat Binv;
  Mat gamma0;  // (i,h) = Gamma0_ih, symmetric
};

FrameChange frame_change_at(const SpaceForm& base, const PhasePoint& pt);

CoordVec to_coord(const FrameChange& fc, const AdaptedVec& x);
AdaptedVec to_adapted(const FrameChange& fc, const CoordVec& x);

/* A vector field on phase space, reported in coordinate components. */
using VectorField = std::function<CoordVec(const PhasePoint&)>;

/* The adapted basis as vector fields: a in 0..n-1 gives delta_{a}, a in
   n..2n-1 gives del^{a-n}.  The returned closure keeps a reference to the
   base, which must outlive it. */
VectorField adapted_basis_field(const SpaceForm& base, int a);

/* Lie bracket of two adapted basis fields, in adapted components:
     [del^i, del^j] = 0
     [del^i, delta_j] = Gamma^i_jk del^k
     [delta_i, delta_j] = R0_kij del^k,   R0_kij = p_h R^h_kij. */
AdaptedVec bracket_analytic(const SpaceForm& base, const PhasePoint& pt,
                            int a, int b);

/* Central-difference bracket [X,Y]^k = X^l d_l Y^k - Y^l d_l X^k over the 2n
   phase coordinates; step for coordinate l is h (1 + |coordinate|). */
CoordVec bracket_fd_oracle(const VectorField& X, const VectorField& Y,
                           const PhasePoint& pt, double h = 1e-5);

}  // namespace cotlift
