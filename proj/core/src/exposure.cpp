// SPDX-License-Identifier: Apache-2.0
#include "risemf/exposure.hpp"

#include "risemf/errors.hpp"

namespace risemf {

double exposure_index(const SarRefs& sar, const PowerVector& p)
{
    if (sar.size() != p.size()) {
        throw LengthMismatch("exposure_index: SAR and power vectors differ in length");
    }
    return sar.dot(p);
}

double rate_satisfaction(const RVector& r_achieved, const RVector& r_target)
{
    if (r_achieved.size() != r_target.size()) {
        throw LengthMismatch("rate_satisfaction: rate vectors differ in length");
    }
    if ((r_target.array() <= 0.0).any()) {
        throw LengthMismatch("rate_satisfaction: targets must be positive");
    }
    return r_achieved.sum() / r_target.sum();
}

} // namespace risemf
