// SPDX-License-Identifier: Apache-2.0
//
// Reference computations used only by the tests. Nothing here calls into the
// analytic derivative code it is used to check.
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace risemf::oracle {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

inline Vec central_gradient(const std::function<double(const Vec&)>& f, const Vec& x, double h)
{
    Vec g(x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        Vec up = x;
        Vec down = x;
        up(i) += h;
        down(i) -= h;
        g(i) = (f(up) - f(down)) / (2.0 * h);
    }
    return g;
}

inline Mat central_jacobian(const std::function<Vec(const Vec&)>& f, const Vec& x, double h)
{
    Mat j(x.size(), x.size());
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        Vec up = x;
        Vec down = x;
        up(i) += h;
        down(i) -= h;
        j.col(i) = (f(up) - f(down)) / (2.0 * h);
    }
    return j;
}

/// Largest relative error over entries whose absolute error exceeds abs_floor.
inline double max_rel_error(const Mat& analytic, const Mat& reference, double abs_floor)
{
    double worst = 0.0;
    for (Eigen::Index i = 0; i < analytic.size(); ++i) {
        const double err = std::abs(analytic(i) - reference(i));
        if (err > abs_floor) {
            worst = std::max(worst, err / std::max(std::abs(reference(i)), abs_floor));
        }
    }
    return worst;
}

/// Scalar link q(theta) = c e^{j theta} + d with L = 1 / |q|^2.
/// |q|^2 = A + 2 rho cos(theta + phi), where c conj(d) = rho e^{j phi}.
struct ScalarLink {
    std::complex<double> c;
    std::complex<double> d;

    double big_a() const { return std::norm(c) + std::norm(d); }
    double rho() const { return std::abs(c * std::conj(d)); }
    double phi() const { return std::arg(c * std::conj(d)); }
    double denom(double theta) const { return big_a() + 2.0 * rho() * std::cos(theta + phi()); }

    double value(double theta) const { return 1.0 / denom(theta); }

    double first(double theta) const
    {
        const double den = denom(theta);
        return 2.0 * rho() * std::sin(theta + phi()) / (den * den);
    }

    double second(double theta) const
    {
        const double den = denom(theta);
        const double s = std::sin(theta + phi());
        return 2.0 * rho() * std::cos(theta + phi()) / (den * den) +
               8.0 * rho() * rho() * s * s / (den * den * den);
    }
};

/// Kolmogorov-Smirnov distance between a sample and a continuous CDF.
inline double ks_statistic(std::vector<double> sample, const std::function<double(double)>& cdf)
{
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = cdf(sample[i]);
        d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
    }
    return d;
}

/// Numerical rank from singular values.
inline int numerical_rank(const Eigen::MatrixXcd& a, double rel_tol = 1e-10)
{
    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(a);
    const auto& s = svd.singularValues();
    int r = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
        if (s(i) > rel_tol * s(0)) {
            ++r;
        }
    }
    return r;
}

} // namespace risemf::oracle
