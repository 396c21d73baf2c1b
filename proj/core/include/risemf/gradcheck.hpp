// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>

#include "risemf/lagrangian.hpp"

namespace risemf {

/// Small random instance with unit-variance Gaussian channels, used to check
/// the analytic derivatives against finite differences.
struct RandomInstance {
    UplinkProblem problem;
    PhaseVector theta;
    Multipliers lambda;
};

RandomInstance random_instance(int k, int n, int m, Rng& rng);

struct GradcheckOptions {
    int instances = 20;
    int k = 3;
    int n = 6;
    int m = 4;
    std::uint64_t seed = 7;
    double grad_step = 3e-5;
    double hess_step = 1e-5;
    double grad_tol = 1e-6;
    double hess_tol = 1e-4;
    double symmetry_tol = 1e-9;
    double routes_tol = 1e-9;
    double abs_floor = 1e-10;
};

struct GradcheckReport {
    double grad_max_rel = 0.0;
    double hess_max_rel = 0.0;
    double hess_commutator_max_rel = 0.0; // commutator-form Hessian, informational
    double hess_symmetry = 0.0;        // ||H - H^T||_F / ||H||_F
    double routes_max_rel = 0.0;
    bool grad_ok = false;
    bool hess_ok = false;
    bool routes_ok = false;

    bool passed() const { return grad_ok && hess_ok && routes_ok; }
    std::string summary() const;
};

GradcheckReport run_gradcheck(const GradcheckOptions& options = {});

} // namespace risemf
