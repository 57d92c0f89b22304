#pragma once

#include <cmath>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "dense.hpp"
#include "poly.hpp"

namespace hybridfd {

// Diagnostics from one local weight solve.
struct LocalSolveInfo {
    double rho = 1.0;             // shift/scale radius (max stencil distance)
    double min_pivot = 0.0;       // smallest |U_ii| of the local LU
    double pivot_threshold = 0.0; // 1e-14 * max|K_loc|
    bool ill_conditioned = false; // min_pivot fell below the threshold
    double residual = 0.0;        // ||A w - rhs|| after the solve
    double rhs_norm = 0.0;
};

namespace detail {

template <typename Scalar>
Eigen::Vector<Scalar, Eigen::Dynamic> lu_solve_local(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& A,
    const Eigen::Vector<Scalar, Eigen::Dynamic>& b, double kmax, bool tolerant,
    LocalSolveInfo& info) {
    Eigen::PartialPivLU<Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>> lu(A);
    info.min_pivot = lu.matrixLU().diagonal().cwiseAbs().minCoeff();
    info.pivot_threshold = 1e-14 * kmax;
    info.ill_conditioned = info.min_pivot < info.pivot_threshold;
    Eigen::Vector<Scalar, Eigen::Dynamic> w = lu.solve(b);
    info.residual = (A * w - b).norm();
    info.rhs_norm = b.norm();
    if (!tolerant) {
        if (info.ill_conditioned)
            throw conditioning_error(
                "local system numerically singular (pivot below 1e-14*||K||)",
                condition_2norm(Eigen::MatrixXcd(A.template cast<std::complex<double>>())));
        if (info.residual > 1e-8 * info.rhs_norm)
            throw conditioning_error(
                "local solve residual above 1e-8 * ||rhs||",
                condition_2norm(Eigen::MatrixXcd(A.template cast<std::complex<double>>())));
    }
    return w;
}

// Shared core for plain and augmented weights. Coordinates are shifted to
// the stencil center and divided by the max stencil radius rho; kernel and
// operator parameters are rescaled so the local system equals the global
// one written in the global parameter convention, and the solved weights
// are unscaled by rho^order afterward. poly_degree < 0 means no
// augmentation.
inline Eigen::VectorXcd solve_weights(const KernelSpec& kernel, const DiffOperatorSpec& op,
                                      int poly_degree, const Point& center,
                                      std::span<const Point> stencil, bool tolerant,
                                      LocalSolveInfo* info_out) {
    const int n = static_cast<int>(stencil.size());
    if (n == 0)
        throw validation_error("local weights require a nonempty stencil");
    require_operator_capable(kernel);

    int q = 0;
    if (poly_degree >= 0) {
        if (poly_degree > 10)
            throw validation_error("polynomial degree must be in [0, 10]");
        q = poly_basis_size(poly_degree);
        if (n < 2 * q)
            throw validation_error(
                "augmented stencil too small: need n >= 2(p+1)(p+2)/2");
    }

    LocalSolveInfo info;
    std::vector<Point> y(static_cast<std::size_t>(n));
    double rho = 0.0;
    for (int j = 0; j < n; ++j) {
        y[static_cast<std::size_t>(j)] = stencil[static_cast<std::size_t>(j)] - center;
        rho = std::max(rho, y[static_cast<std::size_t>(j)].norm());
    }
    if (rho == 0.0) rho = 1.0;
    for (auto& p : y) p /= rho;
    info.rho = rho;

    const KernelSpec kloc = kernel.scaled(rho);
    const DiffOperatorSpec oploc = op.scaled(rho);
    const Point origin{0.0, 0.0};

    Eigen::MatrixXd K(n, n);
    for (int j = 0; j < n; ++j) {
        K(j, j) = eval_kernel(kloc, 0.0);
        for (int l = j + 1; l < n; ++l) {
            const double v = eval_kernel(
                kloc, (y[static_cast<std::size_t>(j)] - y[static_cast<std::size_t>(l)]).norm());
            K(j, l) = v;
            K(l, j) = v;
        }
    }
    const double kmax = K.cwiseAbs().maxCoeff();

    Eigen::VectorXcd rhs(n);
    for (int j = 0; j < n; ++j)
        rhs(j) = eval_operator_kernel(kloc, oploc, origin, y[static_cast<std::size_t>(j)]);

    const int dim = n + q;
    Eigen::MatrixXd P;
    Eigen::VectorXcd rhs_poly;
    std::vector<std::pair<int, int>> exps;
    if (q > 0) {
        exps = monomial_exponents(poly_degree);
        P.resize(n, q);
        for (int j = 0; j < n; ++j)
            for (int c = 0; c < q; ++c)
                P(j, c) = monomial_value(exps[static_cast<std::size_t>(c)].first,
                                         exps[static_cast<std::size_t>(c)].second,
                                         y[static_cast<std::size_t>(j)]);
        rhs_poly = eval_poly_basis({poly_degree, 2}, oploc, origin);
    }

    // Real fast path unless the operator carries a genuinely complex
    // coefficient (absorbing Robin rows).
    const bool complex_path = oploc.coef.imag() != 0.0;
    Eigen::VectorXcd w(n);
    if (complex_path) {
        Eigen::MatrixXcd A = Eigen::MatrixXcd::Zero(dim, dim);
        A.topLeftCorner(n, n) = K.cast<Complex>();
        if (q > 0) {
            A.topRightCorner(n, q) = P.cast<Complex>();
            A.bottomLeftCorner(q, n) = P.transpose().cast<Complex>();
        }
        Eigen::VectorXcd b(dim);
        b.head(n) = rhs;
        if (q > 0) b.tail(q) = rhs_poly;
        w = lu_solve_local<Complex>(A, b, kmax, tolerant, info).head(n);
    } else {
        Eigen::MatrixXd A = Eigen::MatrixXd::Zero(dim, dim);
        A.topLeftCorner(n, n) = K;
        if (q > 0) {
            A.topRightCorner(n, q) = P;
            A.bottomLeftCorner(q, n) = P.transpose();
        }
        Eigen::VectorXd b(dim);
        b.head(n) = rhs.real();
        if (q > 0) b.tail(q) = rhs_poly.real();
        w = lu_solve_local<double>(A, b, kmax, tolerant, info).head(n).cast<Complex>();
    }

    w /= std::pow(rho, operator_order(op.kind));
    if (info_out) *info_out = info;
    return w;
}

} // namespace detail

// RBF-FD weights for one stencil: the row K_L K^{-1} of Eq.-(10) form,
// computed as the solution of K_loc w = (L phi)(center). Throws a
// conditioning error when the local factorization is untrustworthy.
inline Eigen::VectorXcd local_weights(const KernelSpec& kernel, const DiffOperatorSpec& op,
                                      const Point& center, std::span<const Point> stencil) {
    return detail::solve_weights(kernel, op, -1, center, stencil, false, nullptr);
}

// Polynomial-augmented weights from the bordered saddle system
// [[K, P],[P^T, 0]]; the Lagrange block is discarded. Requires
// n >= 2*(p+1)(p+2)/2.
inline Eigen::VectorXcd local_weights_augmented(const KernelSpec& kernel,
                                                const DiffOperatorSpec& op,
                                                const PolyBasisSpec& poly, const Point& center,
                                                std::span<const Point> stencil) {
    return detail::solve_weights(kernel, op, poly.degree, center, stencil, false, nullptr);
}

// Same computation but never rejects an ill-conditioned stencil; the solve
// diagnostics are reported instead. The derivative-convergence study needs
// this to traverse the flat-Gaussian regime, where the interesting result
// *is* the breakdown ("convergence is disrupted") and a hard error would
// hide it.
inline Eigen::VectorXcd local_weights_tolerant(const KernelSpec& kernel,
                                               const DiffOperatorSpec& op, int poly_degree,
                                               const Point& center,
                                               std::span<const Point> stencil,
                                               LocalSolveInfo* info = nullptr) {
    return detail::solve_weights(kernel, op, poly_degree, center, stencil, true, info);
}

// 2-norm condition number of the raw local interpolation matrix
// K_jl = phi(||z_j - z_l||). This is the diagnostic quantity behind the
// epsilon-gamma condition contours (raw distances, not the shifted/scaled
// system the solver factorizes).
inline double local_condition_number(const KernelSpec& kernel, std::span<const Point> stencil) {
    const int n = static_cast<int>(stencil.size());
    if (n == 0)
        throw validation_error("local_condition_number requires a nonempty stencil");
    if (n > 200)
        throw validation_error("local_condition_number stencil cap exceeded (200)");
    Eigen::MatrixXd K(n, n);
    for (int j = 0; j < n; ++j) {
        K(j, j) = eval_kernel(kernel, 0.0);
        for (int l = j + 1; l < n; ++l) {
            const double v = eval_kernel(kernel, (stencil[static_cast<std::size_t>(j)] -
                                                  stencil[static_cast<std::size_t>(l)])
                                                     .norm());
            K(j, l) = v;
            K(l, j) = v;
        }
    }
    return condition_2norm(K);
}

} // namespace hybridfd
