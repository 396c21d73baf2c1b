// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "risemf/linalg.hpp"

namespace risemf {

using PowerVector = RVector; // W per user
using SarRefs = RVector;     // W/kg per W per user

/// EI = sum_k sar_ref_k * p_k, in W/kg.
double exposure_index(const SarRefs& sar, const PowerVector& p);

/// sum_k r_k / sum_k r_th_k.
double rate_satisfaction(const RVector& r_achieved, const RVector& r_target);

} // namespace risemf
