// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "risemf/linalg.hpp"
#include "risemf/zf_link.hpp"

namespace risemf {

using Multipliers = RVector; // lambda_k >= 0, one per power cap

/// The Lagrangian rewritten in terms of the column-weighted composite channel
///
///   Q = H^r Phi(theta) H^u A^{-1/2} + H^d A^{-1/2},  T = (Q^H Q)^{-1},
///
/// with a_k = (SAR_ref_k + lambda_k) sigma~_k^2, so that L = tr(T) - p_max ||lambda||_1.
/// Holds the factors shared by the value, the gradient and the Hessian at one theta.
struct WeightedProblem {
    RVector a;           // K
    RVector noise_scale; // sigma~_k^2
    CMatrix h_r;         // M x N
    CMatrix h_u_bar;     // N x K
    CMatrix h_d_bar;     // M x K
    CVector phase;       // e^{j theta_n}
    CMatrix q;           // M x K
    CMatrix t;           // K x K, Hermitian positive definite
    double p_max = kDefaultPmax;

    int users() const { return static_cast<int>(q.cols()); }
    int elements() const { return static_cast<int>(h_r.cols()); }
};

WeightedProblem build_weighted(const ChannelSet& channels, const PhaseVector& theta,
                               const Multipliers& lambda, const SarRefs& sar, double sigma2,
                               const RVector& r_th, double p_max);

WeightedProblem build_weighted(const UplinkProblem& problem, const PhaseVector& theta,
                               const Multipliers& lambda);

/// tr(T) - p_max ||lambda||_1.
double lagrangian_value(const WeightedProblem& wp, const Multipliers& lambda);

/// The same Lagrangian evaluated along independent routes. All four agree for
/// a full-rank composite channel.
struct LagrangianRoutes {
    double penalty_form = 0.0;    // EI(p) + lambda^T (p - p_max)
    double beamformer_form = 0.0; // sum_k a_k ||g_(k)||^2 - p_max ||lambda||_1
    double quadratic_form = 0.0;  // tr(G^H A G) - p_max ||lambda||_1
    double gram_form = 0.0;       // tr((Q^H Q)^{-1}) - p_max ||lambda||_1
};

LagrangianRoutes lagrangian_routes(const UplinkProblem& problem, const PhaseVector& theta,
                                   const Multipliers& lambda);

/// dL/dtheta_i = Re tr( j e^{j theta_i} (h^r_i (x) hbar^u_(i)) (dL/dQ)^H ), dL/dQ = -2 Q T^2.
/// O(NMK).
RVector grad_theta(const WeightedProblem& wp);

/// dL/dlambda_k = p_k(theta) - p_max.
RVector grad_lambda(const WeightedProblem& wp, const LinkState& link);

enum class HessianForm {
    Derived, // C = R^H Q + Q^H R, dL'(v)/dQ = R T^2 - Q T (T C + C T) T
    Commutator, // C = R^H Q - Q^H R, dL'(v)/dQ = R T^2 - Q T (T C - C T) T
};

/// Hessian split into its three contributions. Only the real parts are kept.
///   curvature: diagonal, Re tr(j R_v T^2 Q^H)
///   direct:    Re tr(D_u (R_v T^2)^H)
///   gram:      Re tr(D_u (-Q T (T C +- C T) T)^H)
/// where D_u = j e^{j theta_u} (h^r_u (x) hbar^u_(u)) and R_v = -2 D_v.
struct HessianTerms {
    RMatrix curvature;
    RMatrix direct;
    RMatrix gram;

    RMatrix total() const { return curvature + direct + gram; }
};

HessianTerms hessian_terms(const WeightedProblem& wp, HessianForm form = HessianForm::Derived);

/// d^2 L / dtheta_v dtheta_u, N x N. O(N^2 K^2 + N M K).
RMatrix hessian_theta(const WeightedProblem& wp, HessianForm form = HessianForm::Derived);

} // namespace risemf
