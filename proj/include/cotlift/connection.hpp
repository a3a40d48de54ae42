#pragma once

#include "cotlift/bundle.hpp"
#include "cotlift/frame.hpp"
#include "cotlift/profile.hpp"
#include "cotlift/spaceform.hpp"
#include "cotlift/types.hpp"

#include <optional>

namespace cotlift {

/* Vertical derivatives of the metric blocks at a phase point:
     dG(a,j,k)    = del^a G_jk         d2G(a,b,j,k) = del^a del^b G_jk
     dH(a,j,k)    = del^a H^jk         d2H(a,b,j,k) = del^a del^b H^jk
   Exact: the (t,p) dependence is differentiated by the chain rule with the
   profile jets, never by finite differences. */
struct BlockDerivs {
  LiftBlocks blocks;
  Tensor3 dG, dH;
  Tensor4 d2G, d2H;
};

BlockDerivs block_derivs(const SpaceForm& base, const LiftProfile& prof,
                         const PhasePoint& pt);

/* Connection coefficients in the adapted frame:
     nabla_{del^i} del^j  = Q^{ij}_h del^h
     nabla_{delta_i} del^j = -Gamma^j_ih del^h + P^{hj}_i delta_h
     nabla_{del^i} delta_j = P^{hi}_j delta_h
     nabla_{delta_i} delta_j = Gamma^h_ij delta_h + S_hij del^h
   Layout: Q(i,j,h) = Q^{ij}_h, P(h,i,j) = P^{hi}_j, S(h,i,j) = S_hij. */
struct ConnCoeffs {
  Tensor3 Q, P, S;
};

/* From the defining contractions
     Q^{ij}_h = (1/2) G_hk (del^i H^jk + del^j H^ik - del^k H^ij)
     P^{hi}_j = (1/2) H^hk (del^i G_jk - H^il R0_ljk)
     S_hij    = -(1/2) G_hk del^k G_ij + (1/2) R0_hij. */
ConnCoeffs conn_coeffs_generic(const SpaceForm& base, const LiftProfile& prof,
                               const PhasePoint& pt);

/* The fully expanded scalar-coefficient forms of the same tensors.  They
   divide by v and w, so profiles where either is (near) zero return nullopt:
   callers fall back to the generic contraction. */
std::optional<ConnCoeffs> conn_coeffs_expanded(const SpaceForm& base,
                                               const LiftProfile& prof,
                                               const PhasePoint& pt);

/* del^a of Q, P, S, exact (leading index a). */
struct ConnDerivs {
  Tensor4 dQ, dP, dS;
};
ConnDerivs conn_derivs(const SpaceForm& base, const LiftProfile& prof,
                       const PhasePoint& pt);

/* Curvature components in the adapted frame, uniform layout (i,j,k,h):
   coefficient of basis vector h in K(arg_i, arg_j) arg_k, where the argument
   kinds per block are the ones in the block name (P = del, Q = delta; name
   order is arg1 arg2 input). */
struct CurvatureBlocks {
  Tensor4 PPP;  // K(del^i, del^j) del^k   -> del^h
  Tensor4 PPQ;  // K(del^i, del^j) delta_k -> delta_h
  Tensor4 QQP;  // K(delta_i, delta_j) del^k -> del^h
  Tensor4 QQQ;  // K(delta_i, delta_j) delta_k -> delta_h
  Tensor4 PQQ;  // K(del^i, delta_j) delta_k -> del^h
  Tensor4 PQP;  // K(del^i, delta_j) del^k -> delta_h
};
CurvatureBlocks curvature_blocks(const SpaceForm& base, const LiftProfile& prof,
                                 const PhasePoint& pt);

/* K(X,Y)Z for adapted vectors, bilinear in the six blocks (the mixed
   delta/del argument order is handled by antisymmetry). */
AdaptedVec apply_curvature(const CurvatureBlocks& blocks, const AdaptedVec& x,
                           const AdaptedVec& y, const AdaptedVec& z);

/* Full curvature assembly over the whole adapted basis,
     K(a,b,c,e) = coefficient of E_e in K(E_a, E_b) E_c,  a..e in 0..2n-1,
   built directly from nabla-of-nabla minus nabla-of-bracket with exact
   directional derivatives of the coefficient functions.  Unlike
   curvature_blocks this makes no structural assumption about which output
   components vanish, so it is the honest source for the mixed Ricci block. */
Tensor4 curvature_full(const SpaceForm& base, const LiftProfile& prof,
                       const PhasePoint& pt);

/* Ricci tensor as traces of the curvature:
     qq(j,k)    = Ric(delta_j, delta_k)
     pp(j,k)    = Ric(del^j, del^k)
     cross(j,k) = Ric(del^j, delta_k), assembled from curvature_full. */
struct RicciBlocks {
  Mat qq, pp, cross;
};
RicciBlocks ricci_blocks(const SpaceForm& base, const LiftProfile& prof,
                         const PhasePoint& pt);

/* Scalar coefficient polynomials of the closed-form Ricci expressions, in
   (n, c, t) and the u-jet.  coeff_gamma is the obstruction scalar whose
   vanishing (together with u > 0 positivity) characterises the Einstein
   profiles. */
double ricci_coeff_a(int n, double c, const Jet3& u, double t);
double ricci_coeff_alpha(int n, double c, const Jet3& u, double t);
double ricci_coeff_beta(int n, double c, const Jet3& u, double t);
double ricci_coeff_gamma(int n, double c, const Jet3& u, double t);

/* Sum of the absolute monomials of ricci_coeff_gamma: the rounding scale of
   its cancellation, so vanishing tests can be made relative.  Blows up like
   1/s^5 toward the tube edge, where an absolute test would measure noise. */
double ricci_coeff_gamma_scale(int n, double c, const Jet3& u, double t);

/* Closed-form Ricci blocks
     qq = a / (2 (u-2tu')^2) g + alpha / (2 u^2 (u-2tu')^4) p p^T
     pp = a / (2 u^2 (u-2tu')^2) g^{-1} + beta / (2 u^2 (u^2-2ct) (u-2tu')^2) g0 g0^T
   Valid for profiles whose v comes from the integrability condition. */
RicciBlocks ricci_closed_forms(const SpaceForm& base, const LiftProfile& prof,
                               const PhasePoint& pt);

/* Difference between the traced Ricci and a/(2u(u-2tu')^2) times the metric
   blocks, together with the rank-one model it must equal:
     diff_qq = (u^2-2ct) gamma / (2u^2 (u-2tu')^4) p p^T
     diff_pp = gamma / (2u^2 (u^2-2ct) (u-2tu')^2) g0 g0^T. */
struct GammaDiffs {
  double a;
  double gamma;
  Mat diff_qq, diff_pp;
  Mat model_qq, model_pp;
};
GammaDiffs gamma_and_diffs(const SpaceForm& base, const LiftProfile& prof,
                           const PhasePoint& pt);

/* --- finite-difference oracles ------------------------------------------ */

/* nabla_X Y from the six-term Koszul formula, with central-difference
   directional derivatives of metric_full and finite-difference brackets. */
CoordVec koszul_nabla(const SpaceForm& base, const LiftProfile& prof,
                      const VectorField& X, const VectorField& Y,
                      const PhasePoint& pt, double h = 1e-5);

/* Q, P, S re-extracted from koszul_nabla over the adapted basis.
   offblock_residual collects everything that should have matched the
   Christoffel terms or vanished (the -Gamma^j_ih part, the mixed zeros). */
struct KoszulCoeffs {
  ConnCoeffs coeffs;
  double offblock_residual;
};
KoszulCoeffs koszul_conn_coeffs(const SpaceForm& base, const LiftProfile& prof,
                                const PhasePoint& pt, double h = 1e-5);

/* Coordinate-frame Christoffel symbols of metric_full by central differences
   (the connection oracle underlying curvature_fd_oracle). */
Tensor3 conn_coord_fd(const SpaceForm& base, const LiftProfile& prof,
                      const PhasePoint& pt, double h = 1e-5);

/* Curvature of metric_full in the adapted frame, computed as the derivative
   of the connection oracle (finite differences of conn_coord_fd plus the
   quadratic terms), then converted.  Same layout as curvature_full. */
Tensor4 curvature_fd_oracle(const SpaceForm& base, const LiftProfile& prof,
                            const PhasePoint& pt, double h_outer = 1e-4,
                            double h_inner = 1e-5);

}  // namespace cotlift
