// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <span>

#include "risemf/exposure.hpp"
#include "risemf/linalg.hpp"
#include "risemf/scenario.hpp"

namespace risemf {

using PhaseVector = RVector; // radians, length N

inline constexpr double kDefaultPmax = 0.2; // W

/// Everything the link layer and the optimizer need about one drop.
struct UplinkProblem {
    ChannelSet channels;
    SarRefs sar_ref;      // K
    RVector rate_targets; // K, bits/s/Hz
    double sigma2 = 1e-12; // W, shared by all users
    double p_max = kDefaultPmax;

    int users() const { return channels.users(); }
    int elements() const { return channels.elements(); }

    /// sigma~_k^2 = (2^{r_th_k} - 1) sigma^2.
    RVector noise_scale() const;

    void validate() const;
};

UplinkProblem make_problem(ChannelSet channels, std::span<const User> users, double sigma2,
                           double p_max = kDefaultPmax);

/// (2^{r_th_k} - 1) sigma^2 per user.
RVector noise_scale(const RVector& r_th, double sigma2);

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

/// H^r diag(e^{j theta}) H^u + H^d.
CMatrix composite_channel(const ChannelSet& channels, const PhaseVector& theta);

/// G = (H^r Phi H^u + H^d)^+, K x M.
CMatrix zf_beamformer(const ChannelSet& channels, const PhaseVector& theta);

struct LinkState {
    CMatrix g;          // K x M
    RVector g_norm2;    // ||g_(k)||^2
    PowerVector p_star; // uncapped powers hitting the targets exactly
    double sigma2 = 0.0;
};

/// Builds G and the minimum powers for the rate targets at theta.
LinkState make_link(const UplinkProblem& problem, const PhaseVector& theta);

/// p_k = (2^{r_th_k} - 1) sigma^2 ||g_(k)||^2.
PowerVector required_powers(const ChannelSet& channels, const PhaseVector& theta, double sigma2,
                            const RVector& r_th);

/// SINR under ZF: p_k / (sigma^2 ||g_(k)||^2).
double sinr(const LinkState& link, const PowerVector& p, int k);

/// Terms of the general SINR expression with expected symbol powers.
struct SinrTerms {
    double signal = 0.0;
    double interference = 0.0;
    double noise = 0.0;

    double value() const { return signal / (noise + interference); }
};

SinrTerms sinr_general(const CMatrix& g, const CMatrix& composite, const PowerVector& p,
                       double sigma2, int k);

/// log2(1 + p / (sigma^2 ||g||^2)).
double achieved_rate(double p, double sigma2, double g_norm2);

/// Powers clipped to p_max and the rates they actually reach.
struct CappedOutcome {
    PowerVector p;
    RVector rates;
    double ei = 0.0;
    double ei_uncapped = 0.0; // with p_star, above the cap where needed
    double rate_satisfaction = 0.0;
};

CappedOutcome evaluate_capped(const UplinkProblem& problem, const LinkState& link);

} // namespace risemf
