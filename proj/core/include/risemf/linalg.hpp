// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <complex>

#include <Eigen/Dense>

namespace risemf {

using cdouble = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using CRowVector = Eigen::RowVectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

inline constexpr double kDefaultRankTol = 1e-12;
inline constexpr double kDefaultCondMax = 1e12;

/// Throws DimensionError if the matrix is empty or holds a NaN/Inf entry.
void require_finite(const CMatrix& a, const char* what);

/// Moore-Penrose pseudo-inverse through the SVD.
///
/// Singular values below rank_tol * sigma_max are treated as zero; since every
/// caller expects a full-column-rank channel, hitting the cutoff raises
/// RankDeficient instead of silently truncating.
CMatrix pseudo_inverse(const CMatrix& a, double rank_tol = kDefaultRankTol);

/// T = (Q^H Q)^{-1}. Raises Singular when cond(Q^H Q) > cond_max.
CMatrix gram_inverse(const CMatrix& q, double cond_max = kDefaultCondMax);

/// Entry (m, k) = a_m * b_k.
CMatrix col_row_outer(const CVector& a, const CRowVector& b);

/// Real part of tr(A B) without forming the product.
double re_trace_product(const CMatrix& a, const CMatrix& b);

/// Squared Euclidean norm of every row.
RVector row_norms2(const CMatrix& a);

} // namespace risemf
