// SPDX-License-Identifier: Apache-2.0
#include "risemf/gradcheck.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace risemf {

namespace {

CMatrix gaussian(Eigen::Index rows, Eigen::Index cols, Rng& rng)
{
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    CMatrix out(rows, cols);
    for (Eigen::Index c = 0; c < cols; ++c) {
        for (Eigen::Index r = 0; r < rows; ++r) {
            const double re = normal(rng);
            out(r, c) = {re, normal(rng)};
        }
    }
    return out;
}

// Largest |a - b| / |b| over entries whose error exceeds the absolute floor.
double max_rel_error(const RMatrix& analytic, const RMatrix& reference, double abs_floor)
{
    double worst = 0.0;
    for (Eigen::Index i = 0; i < analytic.size(); ++i) {
        const double err = std::abs(analytic(i) - reference(i));
        if (err <= abs_floor) {
            continue;
        }
        worst = std::max(worst, err / std::max(std::abs(reference(i)), abs_floor));
    }
    return worst;
}

double lagrangian_at(const UplinkProblem& problem, const PhaseVector& theta, const Multipliers& lambda)
{
    return lagrangian_value(build_weighted(problem, theta, lambda), lambda);
}

} // namespace

RandomInstance random_instance(int k, int n, int m, Rng& rng)
{
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_real_distribution<double> phase(0.0, 2.0 * std::numbers::pi);

    RandomInstance inst;
    auto& p = inst.problem;
    p.channels.h_u = gaussian(n, k, rng);
    p.channels.h_r = gaussian(m, n, rng);
    p.channels.h_d = gaussian(m, k, rng);
    p.sar_ref.resize(k);
    p.rate_targets.resize(k);
    for (int i = 0; i < k; ++i) {
        p.sar_ref(i) = 1e-3 + 9e-3 * unit(rng);
        p.rate_targets(i) = 1.0 + 5.0 * unit(rng);
    }
    p.sigma2 = 1.0;
    p.p_max = 0.2;
    inst.theta.resize(n);
    for (int i = 0; i < n; ++i) {
        inst.theta(i) = phase(rng);
    }
    inst.lambda.resize(k);
    for (int i = 0; i < k; ++i) {
        inst.lambda(i) = unit(rng);
    }
    return inst;
}

std::string GradcheckReport::summary() const
{
    std::ostringstream os;
    os << "gradient        max rel err " << grad_max_rel << (grad_ok ? "  ok" : "  FAIL") << '\n'
       << "hessian         max rel err " << hess_max_rel << ", asymmetry " << hess_symmetry
       << (hess_ok ? "  ok" : "  FAIL") << '\n'
       << "hessian commutator max rel err " << hess_commutator_max_rel << "  (reference only)\n"
       << "lagrangian routes max rel   " << routes_max_rel << (routes_ok ? "  ok" : "  FAIL") << '\n';
    return os.str();
}

GradcheckReport run_gradcheck(const GradcheckOptions& options)
{
    GradcheckReport report;
    Rng rng(options.seed);
    for (int i = 0; i < options.instances; ++i) {
        const RandomInstance inst = random_instance(options.k, options.n, options.m, rng);
        const auto& problem = inst.problem;
        const WeightedProblem wp = build_weighted(problem, inst.theta, inst.lambda);

        const RVector grad = grad_theta(wp);
        RVector fd_grad(options.n);
        RMatrix fd_hess(options.n, options.n);
        for (int j = 0; j < options.n; ++j) {
            PhaseVector up = inst.theta;
            PhaseVector down = inst.theta;
            up(j) += options.grad_step;
            down(j) -= options.grad_step;
            fd_grad(j) = (lagrangian_at(problem, up, inst.lambda) - lagrangian_at(problem, down, inst.lambda)) /
                         (2.0 * options.grad_step);

            up = inst.theta;
            down = inst.theta;
            up(j) += options.hess_step;
            down(j) -= options.hess_step;
            fd_hess.col(j) = (grad_theta(build_weighted(problem, up, inst.lambda)) -
                              grad_theta(build_weighted(problem, down, inst.lambda))) /
                             (2.0 * options.hess_step);
        }
        report.grad_max_rel = std::max(report.grad_max_rel, max_rel_error(grad, fd_grad, options.abs_floor));

        const RMatrix hess = hessian_theta(wp);
        report.hess_max_rel = std::max(report.hess_max_rel, max_rel_error(hess, fd_hess, options.abs_floor));
        report.hess_symmetry = std::max(report.hess_symmetry, (hess - hess.transpose()).norm() / hess.norm());
        const RMatrix commutator = hessian_theta(wp, HessianForm::Commutator);
        report.hess_commutator_max_rel =
            std::max(report.hess_commutator_max_rel, max_rel_error(commutator, fd_hess, options.abs_floor));

        const LagrangianRoutes routes = lagrangian_routes(problem, inst.theta, inst.lambda);
        for (double v : {routes.penalty_form, routes.beamformer_form, routes.quadratic_form}) {
            report.routes_max_rel =
                std::max(report.routes_max_rel, std::abs(v - routes.gram_form) / std::abs(routes.gram_form));
        }
    }
    report.grad_ok = report.grad_max_rel < options.grad_tol;
    report.hess_ok = report.hess_max_rel < options.hess_tol && report.hess_symmetry < options.symmetry_tol;
    report.routes_ok = report.routes_max_rel < options.routes_tol;
    return report;
}

} // namespace risemf
