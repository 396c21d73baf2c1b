// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <limits>
#include <string_view>
#include <vector>

#include "risemf/lagrangian.hpp"
#include "risemf/scenario.hpp"
#include "risemf/zf_link.hpp"

namespace risemf {

struct OptimizerConfig {
    double gamma = 1.0;       // multiplier step scale, beta = gamma * mean(SAR_ref)
    int max_iters = 100;
    double ei_rel_tol = 1e-5; // |dEI| / EI below this for stall_window iterations stops
    int stall_window = 3;

    void validate() const;
};

/// What the step-size search needs from the objective: the exposure used for
/// the incumbent check, and the gradient/Hessian of the Lagrangian.
class PhaseObjective {
public:
    struct LocalModel {
        RVector gradient;
        RMatrix hessian;
    };

    virtual ~PhaseObjective() = default;

    virtual double exposure(const PhaseVector& theta) const = 0;
    virtual RVector gradient(const PhaseVector& theta) const = 0;
    virtual RMatrix hessian(const PhaseVector& theta) const = 0;

    virtual LocalModel local_model(const PhaseVector& theta) const
    {
        return {gradient(theta), hessian(theta)};
    }
};

/// EI with uncapped powers, and the Lagrangian at fixed multipliers.
class EmfObjective final : public PhaseObjective {
public:
    EmfObjective(const UplinkProblem& problem, Multipliers lambda);

    double exposure(const PhaseVector& theta) const override;
    RVector gradient(const PhaseVector& theta) const override;
    RMatrix hessian(const PhaseVector& theta) const override;
    LocalModel local_model(const PhaseVector& theta) const override;

private:
    const UplinkProblem* problem_;
    Multipliers lambda_;
};

struct StepResult {
    double alpha = 0.0;
    double best_exposure = std::numeric_limits<double>::infinity();
    int accepted = 0; // candidates that passed both the EI and curvature checks
};

/// Newton-type step along -g from the trial points {0, pi/2, pi} / max|g|.
/// Returns alpha = 0 when no improving candidate has positive curvature.
StepResult optimal_step(const PhaseVector& theta, const RVector& g,
                        const PhaseObjective& objective);

/// One iterate of the solver. alpha and grad_inf_norm describe the step that
/// produced it, so both are zero for the start point.
struct IterationRecord {
    int iteration = 0;
    double ei = 0.0;            // W/kg, capped powers
    double ei_uncapped = 0.0;
    double grad_inf_norm = 0.0;
    double alpha = 0.0;
    int active_multipliers = 0;
};

enum class StopReason { ZeroStep, Stalled, IterationLimit };

std::string_view to_string(StopReason reason);

struct SolverState {
    PhaseVector theta;
    Multipliers lambda;
    PowerVector powers; // capped at p_max
    double ei = 0.0;    // W/kg, capped powers
    double rate_satisfaction = 0.0;
    int iterations = 0;
    StopReason stop_reason = StopReason::IterationLimit;
    std::vector<IterationRecord> trace; // trace[0] is the theta = 0 start point
};

/// Dual gradient descent on the RIS phases and the power-cap multipliers.
SolverState dual_gradient_descent(const UplinkProblem& problem, const OptimizerConfig& config = {});

/// Wrap to [0, 2 pi) and snap to the nearest of 2 pi l / L, ties to the lower level.
PhaseVector quantize_phases(const PhaseVector& theta, int levels);

enum class BaselineKind { Zero, Random, NoRIS };

struct PhaseProfile {
    PhaseVector theta;
    bool ris_enabled = true; // false: evaluate with H^r forced to zero
};

PhaseProfile baseline_phases(BaselineKind kind, int n, Rng& rng);

} // namespace risemf
