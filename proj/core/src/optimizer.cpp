// SPDX-License-Identifier: Apache-2.0
#include "risemf/optimizer.hpp"

#include <array>
#include <cmath>
#include <numbers>
#include <utility>

#include "risemf/errors.hpp"

namespace risemf {

void OptimizerConfig::validate() const
{
    if (!(gamma > 0.0)) {
        throw ConfigError("optimizer: gamma must be positive");
    }
    if (max_iters < 1) {
        throw ConfigError("optimizer: max_iters must be >= 1");
    }
    if (!(ei_rel_tol > 0.0) || stall_window < 1) {
        throw ConfigError("optimizer: ei_rel_tol and stall_window must be positive");
    }
}

EmfObjective::EmfObjective(const UplinkProblem& problem, Multipliers lambda)
    : problem_(&problem), lambda_(std::move(lambda))
{
}

double EmfObjective::exposure(const PhaseVector& theta) const
{
    const PowerVector p = required_powers(problem_->channels, theta, problem_->sigma2,
                                          problem_->rate_targets);
    return exposure_index(problem_->sar_ref, p);
}

RVector EmfObjective::gradient(const PhaseVector& theta) const
{
    return grad_theta(build_weighted(*problem_, theta, lambda_));
}

RMatrix EmfObjective::hessian(const PhaseVector& theta) const
{
    return hessian_theta(build_weighted(*problem_, theta, lambda_));
}

PhaseObjective::LocalModel EmfObjective::local_model(const PhaseVector& theta) const
{
    const WeightedProblem wp = build_weighted(*problem_, theta, lambda_);
    return {grad_theta(wp), hessian_theta(wp)};
}

StepResult optimal_step(const PhaseVector& theta, const RVector& g,
                        const PhaseObjective& objective)
{
    StepResult result;
    const double g_max = g.size() > 0 ? g.cwiseAbs().maxCoeff() : 0.0;
    if (!(g_max > 0.0) || !std::isfinite(g_max)) {
        return result;
    }

    // Trial points move the largest phase by 0, pi/2 and pi.
    const std::array<double, 3> trial{0.0, 0.5 * std::numbers::pi / g_max, std::numbers::pi / g_max};
    for (const double alpha_bar : trial) {
        const PhaseVector theta_trial = theta - alpha_bar * g;
        const double ei = objective.exposure(theta_trial);
        if (!(ei < result.best_exposure)) {
            continue;
        }
        const auto local = objective.local_model(theta_trial);
        const double curvature = g.dot(local.hessian * g);
        if (curvature > 0.0) {
            result.alpha = alpha_bar + g.dot(local.gradient) / curvature;
            result.best_exposure = ei;
            ++result.accepted;
        }
    }
    return result;
}

std::string_view to_string(StopReason reason)
{
    switch (reason) {
    case StopReason::ZeroStep:
        return "zero-step";
    case StopReason::Stalled:
        return "stalled";
    case StopReason::IterationLimit:
        return "iteration-limit";
    }
    return "unknown";
}

SolverState dual_gradient_descent(const UplinkProblem& problem, const OptimizerConfig& config)
{
    problem.validate();
    config.validate();

    const auto k = problem.users();
    const auto n = problem.elements();
    const double beta = config.gamma * problem.sar_ref.mean();

    SolverState state;
    state.theta = PhaseVector::Zero(n);
    state.lambda = Multipliers::Zero(k);

    LinkState link = make_link(problem, state.theta);
    CappedOutcome outcome = evaluate_capped(problem, link);
    double previous_ei = exposure_index(problem.sar_ref, link.p_star);
    state.trace.push_back({0, outcome.ei, previous_ei, 0.0, 0.0, 0});

    int stalled = 0;
    for (int it = 1; it <= config.max_iters; ++it) {
        const EmfObjective objective(problem, state.lambda);
        const RVector g = objective.gradient(state.theta);
        const StepResult step = optimal_step(state.theta, g, objective);
        if (step.alpha == 0.0) {
            state.stop_reason = StopReason::ZeroStep;
            break;
        }
        state.theta -= step.alpha * g;
        state.iterations = it;

        link = make_link(problem, state.theta);
        const RVector dual_grad = link.p_star.array() - problem.p_max;
        state.lambda = (state.lambda + beta * dual_grad).cwiseMax(0.0);
        for (Eigen::Index i = 0; i < k; ++i) {
            if (link.p_star(i) < problem.p_max) {
                state.lambda(i) = 0.0;
            }
        }

        outcome = evaluate_capped(problem, link);
        const double ei = exposure_index(problem.sar_ref, link.p_star);
        state.trace.push_back({it, outcome.ei, ei, g.cwiseAbs().maxCoeff(), step.alpha,
                               static_cast<int>((state.lambda.array() > 0.0).count())});

        stalled = std::abs(ei - previous_ei) / ei < config.ei_rel_tol ? stalled + 1 : 0;
        previous_ei = ei;
        if (stalled >= config.stall_window) {
            state.stop_reason = StopReason::Stalled;
            break;
        }
        if (it == config.max_iters) {
            state.stop_reason = StopReason::IterationLimit;
        }
    }

    state.powers = outcome.p;
    state.ei = outcome.ei;
    state.rate_satisfaction = outcome.rate_satisfaction;
    return state;
}

PhaseVector quantize_phases(const PhaseVector& theta, int levels)
{
    if (levels < 2) {
        throw ConfigError("quantize_phases: need at least 2 levels");
    }
    constexpr double two_pi = 2.0 * std::numbers::pi;
    const double step = two_pi / levels;
    PhaseVector out(theta.size());
    for (Eigen::Index i = 0; i < theta.size(); ++i) {
        double wrapped = std::fmod(theta(i), two_pi);
        if (wrapped < 0.0) {
            wrapped += two_pi;
        }
        // Round half down, so a phase midway between two levels takes the lower one.
        auto level = static_cast<int>(std::ceil(wrapped / step - 0.5));
        if (level >= levels) {
            level = 0;
        }
        out(i) = step * level;
    }
    return out;
}

PhaseProfile baseline_phases(BaselineKind kind, int n, Rng& rng)
{
    PhaseProfile profile{PhaseVector::Zero(n), true};
    switch (kind) {
    case BaselineKind::Zero:
        break;
    case BaselineKind::Random: {
        std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);
        for (Eigen::Index i = 0; i < n; ++i) {
            profile.theta(i) = phase(rng);
        }
        break;
    }
    case BaselineKind::NoRIS:
        profile.ris_enabled = false;
        break;
    }
    return profile;
}

} // namespace risemf
