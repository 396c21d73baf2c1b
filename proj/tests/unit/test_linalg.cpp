// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "risemf/errors.hpp"
#include "risemf/linalg.hpp"

using namespace risemf;

namespace {

CMatrix random_cmatrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng)
{
    std::normal_distribution<double> normal;
    CMatrix a(rows, cols);
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        a(i) = {normal(rng), normal(rng)};
    }
    return a;
}

} // namespace

TEST_CASE("pseudo_inverse of the identity is the identity")
{
    const CMatrix eye = CMatrix::Identity(3, 3);
    CHECK((pseudo_inverse(eye) - eye).norm() < 1e-15);
}

TEST_CASE("pseudo_inverse of a diagonal inverts the diagonal")
{
    CMatrix d = CMatrix::Zero(2, 2);
    d(0, 0) = 2.0;
    d(1, 1) = 4.0;
    const CMatrix p = pseudo_inverse(d);
    CHECK(std::abs(p(0, 0) - cdouble(0.5)) < 1e-15);
    CHECK(std::abs(p(1, 1) - cdouble(0.25)) < 1e-15);
    CHECK(std::abs(p(0, 1)) < 1e-15);
}

TEST_CASE("pseudo_inverse satisfies the Moore-Penrose identities")
{
    std::mt19937_64 rng(11);
    for (int trial = 0; trial < 25; ++trial) {
        const CMatrix a = random_cmatrix(6, 3, rng);
        const CMatrix p = pseudo_inverse(a);
        CHECK((p * a - CMatrix::Identity(3, 3)).norm() < 1e-10);

        const double tol = 1e-9;
        CHECK((a * p * a - a).norm() / a.norm() < tol);
        CHECK((p * a * p - p).norm() / p.norm() < tol);
        const CMatrix ap = a * p;
        const CMatrix pa = p * a;
        CHECK((ap - ap.adjoint()).norm() / ap.norm() < tol);
        CHECK((pa - pa.adjoint()).norm() / pa.norm() < tol);
    }
}

TEST_CASE("pseudo_inverse rejects rank-deficient input")
{
    std::mt19937_64 rng(3);
    CMatrix a = random_cmatrix(5, 3, rng);
    a.col(2) = a.col(0) * cdouble(2.0, -1.0);
    CHECK_THROWS_AS(pseudo_inverse(a), RankDeficient);
    CHECK_THROWS_AS(pseudo_inverse(CMatrix::Zero(4, 2)), RankDeficient);
}

TEST_CASE("pseudo_inverse rejects non-finite entries")
{
    CMatrix a = CMatrix::Identity(2, 2);
    a(0, 1) = {std::nan(""), 0.0};
    CHECK_THROWS_AS(pseudo_inverse(a), DimensionError);
}

TEST_CASE("gram_inverse examples")
{
    CHECK((gram_inverse(CMatrix::Identity(2, 2)) - CMatrix::Identity(2, 2)).norm() < 1e-15);

    CMatrix q = CMatrix::Zero(2, 2);
    q(0, 0) = 2.0;
    q(1, 1) = 1.0;
    const CMatrix t = gram_inverse(q);
    CHECK(std::abs(t(0, 0) - cdouble(0.25)) < 1e-15);
    CHECK(std::abs(t(1, 1) - cdouble(1.0)) < 1e-15);
}

TEST_CASE("gram_inverse inverts Q^H Q and is Hermitian positive definite")
{
    std::mt19937_64 rng(5);
    std::normal_distribution<double> normal;
    for (int trial = 0; trial < 25; ++trial) {
        const CMatrix q = random_cmatrix(5, 3, rng);
        const CMatrix t = gram_inverse(q);
        CHECK((t * (q.adjoint() * q) - CMatrix::Identity(3, 3)).norm() < 1e-10);
        CHECK((t - t.adjoint()).norm() / t.norm() < 1e-12);
        const CVector x = random_cmatrix(3, 1, rng);
        const cdouble quad = (x.adjoint() * t * x)(0, 0);
        CHECK(quad.real() > 0.0);
        CHECK(std::abs(quad.imag()) < 1e-12 * quad.real());
    }
}

TEST_CASE("gram_inverse flags ill-conditioned input")
{
    CMatrix q = CMatrix::Zero(3, 2);
    q(0, 0) = 1.0;
    q(1, 1) = 1e-7; // cond(Q^H Q) = 1e14
    CHECK_THROWS_AS(gram_inverse(q), Singular);
    CHECK_NOTHROW(gram_inverse(q, 1e15));
}

TEST_CASE("col_row_outer examples")
{
    CVector a(2);
    a << 1.0, cdouble(0.0, 1.0);
    CRowVector b(2);
    b << 1.0, -1.0;
    const CMatrix out = col_row_outer(a, b);
    CHECK(out(0, 0) == cdouble(1.0));
    CHECK(out(0, 1) == cdouble(-1.0));
    CHECK(out(1, 0) == cdouble(0.0, 1.0));
    CHECK(out(1, 1) == cdouble(0.0, -1.0));

    CHECK(col_row_outer(CVector::Zero(3), b).norm() == 0.0);
}

TEST_CASE("col_row_outer of random vectors has rank one")
{
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 10; ++trial) {
        const CVector a = random_cmatrix(5, 1, rng);
        const CRowVector b = random_cmatrix(1, 4, rng);
        CHECK(oracle::numerical_rank(col_row_outer(a, b)) == 1);
    }
}

TEST_CASE("trace of a product is invariant under cyclic permutation")
{
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 20; ++trial) {
        const CMatrix a = random_cmatrix(4, 3, rng);
        const CMatrix b = random_cmatrix(3, 5, rng);
        const CMatrix c = random_cmatrix(5, 4, rng);
        const cdouble abc = (a * b * c).trace();
        const cdouble bca = (b * c * a).trace();
        const cdouble cab = (c * a * b).trace();
        CHECK(std::abs(abc - bca) < 1e-10 * std::abs(abc));
        CHECK(std::abs(abc - cab) < 1e-10 * std::abs(abc));
        CHECK(re_trace_product(a * b, c) == doctest::Approx(abc.real()).epsilon(1e-12));
    }
}
