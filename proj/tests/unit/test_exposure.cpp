// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>

#include "risemf/errors.hpp"
#include "risemf/exposure.hpp"

using namespace risemf;

TEST_CASE("exposure_index examples")
{
    SarRefs sar(2);
    sar << 41e-4, 63e-4;
    PowerVector p(2);
    p << 0.1, 0.1;
    CHECK(exposure_index(sar, p) == doctest::Approx(1.04e-3).epsilon(1e-12));
    CHECK(exposure_index(sar, PowerVector::Zero(2)) == 0.0);
}

TEST_CASE("exposure_index equals the brute-force sum and is linear in p")
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        SarRefs sar(3);
        PowerVector p(3);
        double brute = 0.0;
        for (int k = 0; k < 3; ++k) {
            sar(k) = 1e-3 + 1e-2 * unit(rng);
            p(k) = 0.2 * unit(rng);
            brute += sar(k) * p(k);
        }
        CHECK(exposure_index(sar, p) == doctest::Approx(brute).epsilon(1e-14));
        const double scale = 10.0 * unit(rng);
        CHECK(exposure_index(sar, scale * p) == doctest::Approx(scale * exposure_index(sar, p)).epsilon(1e-14));
    }
}

TEST_CASE("exposure_index rejects mismatched lengths")
{
    CHECK_THROWS_AS(exposure_index(SarRefs::Ones(2), PowerVector::Ones(3)), LengthMismatch);
}

TEST_CASE("rate_satisfaction examples")
{
    RVector target(2);
    target << 6.0, 6.0;
    CHECK(rate_satisfaction(target, target) == 1.0);
    CHECK(rate_satisfaction(RVector::Zero(2), target) == 0.0);
    RVector achieved(2);
    achieved << 3.0, 6.0;
    CHECK(rate_satisfaction(achieved, target) == doctest::Approx(0.75));
    CHECK_THROWS_AS(rate_satisfaction(RVector::Ones(3), target), LengthMismatch);
}
