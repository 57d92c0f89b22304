#pragma once

#include <limits>

#include <Eigen/Dense>

#include "errors.hpp"

namespace hybridfd {

// Row-pivoted dense solve. Guard on size; exact zero pivot reported as a
// singular-matrix error (ill-conditioning is the caller's concern — local
// stencil solves apply their own pivot threshold).
inline Eigen::MatrixXcd dense_solve(const Eigen::MatrixXcd& A, const Eigen::MatrixXcd& B) {
    if (A.rows() != A.cols())
        throw validation_error("dense_solve requires a square matrix");
    if (A.rows() > 10000)
        throw validation_error("dense_solve size guard exceeded (10^4)");
    if (A.rows() != B.rows())
        throw validation_error("dense_solve dimension mismatch");
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(A);
    if (lu.matrixLU().diagonal().cwiseAbs().minCoeff() == 0.0)
        throw singular_error("dense_solve: exactly singular matrix (zero pivot)");
    return lu.solve(B);
}

// 2-norm condition number sigma_max / sigma_min via SVD; +inf when the
// smallest singular value underflows to zero.
inline double condition_2norm(const Eigen::MatrixXcd& A) {
    if (A.rows() > 2000 || A.cols() > 2000)
        throw validation_error("condition_2norm size guard exceeded (2000)");
    if (A.size() == 0)
        throw validation_error("condition_2norm on empty matrix");
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(A);
    const auto& s = svd.singularValues();
    const double smin = s(s.size() - 1);
    if (smin == 0.0) return std::numeric_limits<double>::infinity();
    return s(0) / smin;
}

inline double condition_2norm(const Eigen::MatrixXd& A) {
    return condition_2norm(Eigen::MatrixXcd(A.cast<std::complex<double>>()));
}

} // namespace hybridfd
