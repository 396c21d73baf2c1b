// SPDX-License-Identifier: Apache-2.0
#include "risemf/linalg.hpp"

#include <string>

#include "risemf/errors.hpp"

namespace risemf {

void require_finite(const CMatrix& a, const char* what)
{
    if (a.size() == 0) {
        throw DimensionError(std::string(what) + ": empty matrix");
    }
    if (!a.allFinite()) {
        throw DimensionError(std::string(what) + ": non-finite entry");
    }
}

CMatrix pseudo_inverse(const CMatrix& a, double rank_tol)
{
    require_finite(a, "pseudo_inverse");
    Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const RVector& s = svd.singularValues();
    const double s_max = s(0);
    const double cutoff = rank_tol * s_max;
    if (s_max <= 0.0 || s(s.size() - 1) < cutoff) {
        throw RankDeficient("pseudo_inverse: smallest singular value " +
                            std::to_string(s(s.size() - 1)) + " below cutoff " +
                            std::to_string(cutoff));
    }
    const RVector s_inv = s.cwiseInverse();
    return svd.matrixV() * s_inv.asDiagonal() * svd.matrixU().adjoint();
}

CMatrix gram_inverse(const CMatrix& q, double cond_max)
{
    require_finite(q, "gram_inverse");
    const CMatrix gram = q.adjoint() * q;
    Eigen::SelfAdjointEigenSolver<CMatrix> eig(gram);
    if (eig.info() != Eigen::Success) {
        throw Singular("gram_inverse: eigendecomposition failed");
    }
    const RVector& ev = eig.eigenvalues(); // ascending
    const double lo = ev(0);
    const double hi = ev(ev.size() - 1);
    if (lo <= 0.0 || hi / lo > cond_max) {
        throw Singular("gram_inverse: condition number " + std::to_string(hi / lo) +
                       " exceeds " + std::to_string(cond_max));
    }
    const CMatrix& v = eig.eigenvectors();
    return v * ev.cwiseInverse().asDiagonal() * v.adjoint();
}

CMatrix col_row_outer(const CVector& a, const CRowVector& b)
{
    return a * b;
}

double re_trace_product(const CMatrix& a, const CMatrix& b)
{
    // tr(AB) = sum_ij A_ij B_ji
    return (a.array() * b.transpose().array()).real().sum();
}

RVector row_norms2(const CMatrix& a)
{
    return a.rowwise().squaredNorm();
}

} // namespace risemf
