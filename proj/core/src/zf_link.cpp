// SPDX-License-Identifier: Apache-2.0
#include "risemf/zf_link.hpp"

#include <algorithm>
#include <cmath>

#include "risemf/errors.hpp"

namespace risemf {

RVector noise_scale(const RVector& r_th, double sigma2)
{
    return r_th.unaryExpr([sigma2](double r) { return (std::exp2(r) - 1.0) * sigma2; });
}

RVector UplinkProblem::noise_scale() const
{
    return risemf::noise_scale(rate_targets, sigma2);
}

void UplinkProblem::validate() const
{
    channels.validate();
    const auto k = channels.users();
    if (sar_ref.size() != k || rate_targets.size() != k) {
        throw LengthMismatch("uplink problem: per-user vectors must have length K");
    }
    if (channels.elements() < k || channels.antennas() < k) {
        throw DimensionError("uplink problem: zero-forcing needs N >= K and M >= K");
    }
    if (!(sigma2 > 0.0) || !(p_max > 0.0)) {
        throw ConfigError("uplink problem: sigma2 and p_max must be positive");
    }
}

UplinkProblem make_problem(ChannelSet channels, std::span<const User> users, double sigma2,
                           double p_max)
{
    UplinkProblem problem;
    problem.channels = std::move(channels);
    const auto k = static_cast<Eigen::Index>(users.size());
    problem.sar_ref.resize(k);
    problem.rate_targets.resize(k);
    for (Eigen::Index i = 0; i < k; ++i) {
        problem.sar_ref(i) = users[static_cast<std::size_t>(i)].profile.sar_ref;
        problem.rate_targets(i) = users[static_cast<std::size_t>(i)].profile.r_th;
    }
    problem.sigma2 = sigma2;
    problem.p_max = p_max;
    problem.validate();
    return problem;
}

double dbm_to_watts(double dbm)
{
    return std::pow(10.0, (dbm - 30.0) / 10.0);
}

double watts_to_dbm(double watts)
{
    return 10.0 * std::log10(watts) + 30.0;
}

CMatrix composite_channel(const ChannelSet& channels, const PhaseVector& theta)
{
    if (theta.size() != channels.elements()) {
        throw LengthMismatch("composite_channel: theta must have length N");
    }
    const CVector phase = (theta.cast<cdouble>() * cdouble(0.0, 1.0)).array().exp();
    return channels.h_r * (phase.asDiagonal() * channels.h_u) + channels.h_d;
}

CMatrix zf_beamformer(const ChannelSet& channels, const PhaseVector& theta)
{
    return pseudo_inverse(composite_channel(channels, theta));
}

LinkState make_link(const UplinkProblem& problem, const PhaseVector& theta)
{
    LinkState link;
    link.g = zf_beamformer(problem.channels, theta);
    link.g_norm2 = row_norms2(link.g);
    link.p_star = problem.noise_scale().cwiseProduct(link.g_norm2);
    link.sigma2 = problem.sigma2;
    return link;
}

PowerVector required_powers(const ChannelSet& channels, const PhaseVector& theta, double sigma2,
                            const RVector& r_th)
{
    if (r_th.size() != channels.users()) {
        throw LengthMismatch("required_powers: r_th must have length K");
    }
    const CMatrix g = zf_beamformer(channels, theta);
    return noise_scale(r_th, sigma2).cwiseProduct(row_norms2(g));
}

double sinr(const LinkState& link, const PowerVector& p, int k)
{
    return p(k) / (link.sigma2 * link.g_norm2(k));
}

SinrTerms sinr_general(const CMatrix& g, const CMatrix& composite, const PowerVector& p,
                       double sigma2, int k)
{
    SinrTerms terms;
    const CRowVector gk = g.row(k);
    terms.noise = sigma2 * gk.squaredNorm();
    const CRowVector response = gk * composite;
    for (Eigen::Index i = 0; i < composite.cols(); ++i) {
        const double gain = std::norm(response(i)) * p(i);
        if (i == k) {
            terms.signal = gain;
        } else {
            terms.interference += gain;
        }
    }
    return terms;
}

double achieved_rate(double p, double sigma2, double g_norm2)
{
    return std::log2(1.0 + p / (sigma2 * g_norm2));
}

CappedOutcome evaluate_capped(const UplinkProblem& problem, const LinkState& link)
{
    CappedOutcome out;
    out.p = link.p_star.cwiseMin(problem.p_max);
    out.rates.resize(out.p.size());
    for (Eigen::Index k = 0; k < out.p.size(); ++k) {
        // Uncapped users hit their target exactly; recomputing keeps roundoff out of the ratio.
        out.rates(k) = link.p_star(k) <= problem.p_max
                           ? problem.rate_targets(k)
                           : achieved_rate(out.p(k), link.sigma2, link.g_norm2(k));
    }
    out.ei = exposure_index(problem.sar_ref, out.p);
    out.ei_uncapped = exposure_index(problem.sar_ref, link.p_star);
    out.rate_satisfaction = rate_satisfaction(out.rates, problem.rate_targets);
    return out;
}

} // namespace risemf
