// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "risemf/errors.hpp"
#include "risemf/gradcheck.hpp"
#include "risemf/zf_link.hpp"

using namespace risemf;

TEST_CASE("zf_beamformer of an identity direct link with no RIS is the identity")
{
    ChannelSet ch;
    ch.h_u = CMatrix::Ones(3, 2);
    ch.h_r = CMatrix::Zero(2, 3);
    ch.h_d = CMatrix::Identity(2, 2);
    const CMatrix g = zf_beamformer(ch, PhaseVector::Zero(3));
    CHECK((g - CMatrix::Identity(2, 2)).norm() < 1e-15);
}

TEST_CASE("zf_beamformer inverts the composite channel")
{
    Rng rng(17);
    for (int trial = 0; trial < 20; ++trial) {
        const auto inst = random_instance(4, 8, 6, rng);
        const auto& ch = inst.problem.channels;
        const CMatrix g = zf_beamformer(ch, inst.theta);
        const CMatrix h = ch.h_r * CVector((inst.theta.cast<cdouble>() * cdouble(0, 1)).array().exp()).asDiagonal() * ch.h_u + ch.h_d;
        CHECK((g * h - CMatrix::Identity(4, 4)).norm() < 1e-9);
    }
}

TEST_CASE("zero phases equal an explicit identity phase matrix")
{
    Rng rng(18);
    const auto inst = random_instance(3, 5, 4, rng);
    const auto& ch = inst.problem.channels;
    const CMatrix explicit_g = pseudo_inverse(ch.h_r * CMatrix::Identity(5, 5) * ch.h_u + ch.h_d);
    CHECK((zf_beamformer(ch, PhaseVector::Zero(5)) - explicit_g).norm() == 0.0);
}

TEST_CASE("general SINR under ZF has vanishing interference")
{
    Rng rng(19);
    for (int trial = 0; trial < 20; ++trial) {
        const auto inst = random_instance(4, 8, 6, rng);
        const auto& problem = inst.problem;
        const LinkState link = make_link(problem, inst.theta);
        const CMatrix h = composite_channel(problem.channels, inst.theta);
        for (int k = 0; k < 4; ++k) {
            const SinrTerms terms = sinr_general(link.g, h, link.p_star, problem.sigma2, k);
            CHECK(terms.interference < 1e-18 * terms.signal);
            CHECK(terms.value() == doctest::Approx(sinr(link, link.p_star, k)).epsilon(1e-10));
        }
    }
}

TEST_CASE("ZF SINR scaling")
{
    LinkState link;
    link.sigma2 = 2.0;
    link.g_norm2 = RVector::Constant(2, 3.0);
    PowerVector p(2);
    p << 6.0, 12.0;
    CHECK(sinr(link, p, 0) == doctest::Approx(1.0));
    CHECK(sinr(link, p, 1) == doctest::Approx(2.0 * sinr(link, p, 0)));
}

TEST_CASE("required_powers examples")
{
    ChannelSet ch;
    ch.h_u = CMatrix::Zero(1, 1);
    ch.h_r = CMatrix::Zero(1, 1);
    ch.h_d = CMatrix::Identity(1, 1); // ||g||^2 = 1
    CHECK(required_powers(ch, PhaseVector::Zero(1), 1.0, RVector::Ones(1))(0) == doctest::Approx(1.0));
    CHECK(required_powers(ch, PhaseVector::Zero(1), 1.0, RVector::Zero(1))(0) == 0.0);
}

TEST_CASE("required_powers reproduce the rate targets exactly")
{
    Rng rng(20);
    for (int trial = 0; trial < 20; ++trial) {
        const auto inst = random_instance(4, 8, 6, rng);
        const auto& problem = inst.problem;
        const LinkState link = make_link(problem, inst.theta);
        const CMatrix h = composite_channel(problem.channels, inst.theta);
        for (int k = 0; k < 4; ++k) {
            const double rate = std::log2(1.0 + sinr_general(link.g, h, link.p_star, problem.sigma2, k).value());
            CHECK(std::abs(rate - problem.rate_targets(k)) < 1e-10);
        }
    }
}

TEST_CASE("required_powers scale linearly with the noise variance")
{
    Rng rng(21);
    const auto inst = random_instance(3, 6, 5, rng);
    const auto& ch = inst.problem.channels;
    const auto& r = inst.problem.rate_targets;
    const PowerVector base = required_powers(ch, inst.theta, 1.0, r);
    const PowerVector scaled = required_powers(ch, inst.theta, 7.5, r);
    CHECK((scaled - 7.5 * base).norm() < 1e-12 * scaled.norm());
}

TEST_CASE("capping at p_max keeps the rate satisfaction in [0, 1]")
{
    Rng rng(22);
    for (int trial = 0; trial < 20; ++trial) {
        auto inst = random_instance(4, 8, 6, rng);
        auto& problem = inst.problem;
        const LinkState link = make_link(problem, inst.theta);
        problem.p_max = link.p_star.mean(); // some users above the cap, some below
        const CappedOutcome out = evaluate_capped(problem, link);
        CHECK(out.rate_satisfaction >= 0.0);
        CHECK(out.rate_satisfaction <= 1.0);
        CHECK(out.p.maxCoeff() <= problem.p_max);
        CHECK(out.ei_uncapped == doctest::Approx(exposure_index(problem.sar_ref, link.p_star)));
        CHECK(out.ei <= out.ei_uncapped);
        for (int k = 0; k < 4; ++k) {
            if (link.p_star(k) > problem.p_max) {
                CHECK(out.rates(k) < problem.rate_targets(k));
                CHECK(out.rates(k) == doctest::Approx(std::log2(1.0 + problem.p_max / (problem.sigma2 * link.g_norm2(k)))));
            } else {
                CHECK(out.rates(k) == problem.rate_targets(k));
            }
        }
    }
}

TEST_CASE("dBm conversion")
{
    CHECK(dbm_to_watts(30.0) == doctest::Approx(1.0));
    CHECK(dbm_to_watts(-90.0) == doctest::Approx(1e-12));
    CHECK(watts_to_dbm(dbm_to_watts(-97.5)) == doctest::Approx(-97.5));
}

TEST_CASE("uplink problem validation")
{
    Rng rng(23);
    auto inst = random_instance(3, 6, 5, rng);
    inst.problem.sar_ref = RVector::Ones(2);
    CHECK_THROWS_AS(inst.problem.validate(), LengthMismatch);
}
