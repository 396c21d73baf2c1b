// SPDX-License-Identifier: Apache-2.0
#include "risemf/lagrangian.hpp"

#include "risemf/errors.hpp"

namespace risemf {

namespace {

constexpr cdouble kJ{0.0, 1.0};

CVector phase_factors(const PhaseVector& theta)
{
    return (theta.cast<cdouble>() * kJ).array().exp();
}

} // namespace

WeightedProblem build_weighted(const ChannelSet& channels, const PhaseVector& theta,
                               const Multipliers& lambda, const SarRefs& sar, double sigma2,
                               const RVector& r_th, double p_max)
{
    const auto k = channels.users();
    if (theta.size() != channels.elements()) {
        throw LengthMismatch("build_weighted: theta must have length N");
    }
    if (lambda.size() != k || sar.size() != k || r_th.size() != k) {
        throw LengthMismatch("build_weighted: per-user vectors must have length K");
    }

    WeightedProblem wp;
    wp.noise_scale = noise_scale(r_th, sigma2);
    wp.a = (sar + lambda).cwiseProduct(wp.noise_scale);
    if ((wp.a.array() <= 0.0).any()) {
        throw ConfigError("build_weighted: every a_k must be positive");
    }
    const RVector inv_sqrt_a = wp.a.cwiseSqrt().cwiseInverse();

    wp.h_r = channels.h_r;
    wp.h_u_bar = channels.h_u * inv_sqrt_a.asDiagonal();
    wp.h_d_bar = channels.h_d * inv_sqrt_a.asDiagonal();
    wp.phase = phase_factors(theta);
    wp.q = wp.h_r * (wp.phase.asDiagonal() * wp.h_u_bar) + wp.h_d_bar;
    wp.t = gram_inverse(wp.q);
    wp.p_max = p_max;
    return wp;
}

WeightedProblem build_weighted(const UplinkProblem& problem, const PhaseVector& theta,
                               const Multipliers& lambda)
{
    return build_weighted(problem.channels, theta, lambda, problem.sar_ref, problem.sigma2,
                          problem.rate_targets, problem.p_max);
}

double lagrangian_value(const WeightedProblem& wp, const Multipliers& lambda)
{
    return wp.t.trace().real() - wp.p_max * lambda.lpNorm<1>();
}

LagrangianRoutes lagrangian_routes(const UplinkProblem& problem, const PhaseVector& theta,
                                   const Multipliers& lambda)
{
    LagrangianRoutes routes;
    const double penalty = problem.p_max * lambda.lpNorm<1>();

    const LinkState link = make_link(problem, theta);
    const RVector p_max_vec = RVector::Constant(lambda.size(), problem.p_max);
    routes.penalty_form = exposure_index(problem.sar_ref, link.p_star) +
                          lambda.dot(link.p_star - p_max_vec);

    const RVector a = (problem.sar_ref + lambda).cwiseProduct(problem.noise_scale());
    routes.beamformer_form = a.dot(link.g_norm2) - penalty;
    routes.quadratic_form =
        (link.g.adjoint() * a.cast<cdouble>().asDiagonal() * link.g).trace().real() - penalty;

    const WeightedProblem wp = build_weighted(problem, theta, lambda);
    routes.gram_form = lagrangian_value(wp, lambda);
    return routes;
}

RVector grad_theta(const WeightedProblem& wp)
{
    // dL/dQ = -2 Q T^2, so tr(D_i (dL/dQ)^H) = -2 j e^{j theta_i} (Hbar^u T^2 Q^H H^r)_{ii}.
    const CMatrix t2 = wp.t * wp.t;
    const CMatrix z = wp.q.adjoint() * wp.h_r;              // K x N
    const CMatrix bt2 = wp.h_u_bar * t2;                     // N x K
    const CVector diag = bt2.cwiseProduct(z.transpose()).rowwise().sum();
    return (cdouble(0.0, -2.0) * wp.phase.cwiseProduct(diag)).real();
}

RVector grad_lambda(const WeightedProblem& wp, const LinkState& link)
{
    return link.p_star.array() - wp.p_max;
}

HessianTerms hessian_terms(const WeightedProblem& wp, HessianForm form)
{
    const auto n = wp.elements();
    const double s = form == HessianForm::Derived ? 1.0 : -1.0;

    const CMatrix& b = wp.h_u_bar;            // rows b_v = hbar^u_(v)
    const CVector& e = wp.phase;
    const CMatrix t2 = wp.t * wp.t;
    const CMatrix z = wp.q.adjoint() * wp.h_r; // column v: Q^H h^r_v

    HessianTerms terms;

    // Re tr(j R_v T^2 Q^H) with R_v = -2j e^{j theta_v} h^r_v b_v.
    const CVector bt2z = (b * t2).cwiseProduct(z.transpose()).rowwise().sum();
    terms.curvature = (2.0 * e.cwiseProduct(bt2z)).real().asDiagonal();

    // Re tr(D_u (R_v T^2)^H) = Re(-2 e^{j(theta_u - theta_v)} (B T^2 B^H)_{uv} (H^rH H^r)_{vu}).
    const CMatrix s_mat = b * t2 * b.adjoint();
    const CMatrix hrh = wp.h_r.adjoint() * wp.h_r;
    const CMatrix rotated = e.conjugate().asDiagonal() * hrh * e.asDiagonal();
    terms.direct = (-2.0 * rotated.cwiseProduct(s_mat.transpose())).real();

    // Gram correction. With u = b_v^H and c = Q^H a_v, a_v = -2j e^{j theta_v} h^r_v:
    //   R^H Q = u c^H,  Q^H R = c u^H,  C = u c^H + s c u^H,
    //   X = T (T C + s C T) T,
    //   X^H = (Tc)(T^2u)^H + (T^2u)(Tc)^H + s[(T^2c)(Tu)^H + (Tu)(T^2c)^H].
    // Each rank-one piece p r^H contributes (B p)_u (r^H Z)_u to b_u X^H Q^H h^r_u.
    terms.gram.resize(n, n);
    const CMatrix bt = b * wp.t;  // B T
    const CMatrix bt2 = b * t2;   // B T^2
    const CMatrix tz = wp.t * z;  // T Z   (T Hermitian: (T y)^H Z = y^H T Z)
    const CMatrix t2z = t2 * z;   // T^2 Z
    for (Eigen::Index v = 0; v < n; ++v) {
        const cdouble av_scale = cdouble(0.0, -2.0) * e(v);
        const CVector u = b.row(v).adjoint();
        const CVector c = av_scale * z.col(v);

        // B p for p in {Tc, T^2 u, T^2 c, T u}
        const CVector b_tc = bt * c;
        const CVector b_t2u = bt2 * u;
        const CVector b_t2c = bt2 * c;
        const CVector b_tu = bt * u;
        // (r^H Z)^T for r in {T^2 u, T c, T u, T^2 c}
        const CVector t2u_z = (u.adjoint() * t2z).transpose();
        const CVector tc_z = (c.adjoint() * tz).transpose();
        const CVector tu_z = (u.adjoint() * tz).transpose();
        const CVector t2c_z = (c.adjoint() * t2z).transpose();

        const CVector contraction = b_tc.cwiseProduct(t2u_z) + b_t2u.cwiseProduct(tc_z) +
                                    s * (b_t2c.cwiseProduct(tu_z) + b_tu.cwiseProduct(t2c_z));
        // psi_gram(v, u) = tr(D_u (-Q X)^H) = -j e^{j theta_u} b_u X^H Q^H h^r_u
        terms.gram.row(v) = (cdouble(0.0, -1.0) * e.cwiseProduct(contraction)).real().transpose();
    }
    return terms;
}

RMatrix hessian_theta(const WeightedProblem& wp, HessianForm form)
{
    return hessian_terms(wp, form).total();
}

} // namespace risemf
