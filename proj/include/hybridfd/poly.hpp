#pragma once

#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "operators.hpp"

namespace hybridfd {

// 2D monomial augmentation basis of total degree <= p.
struct PolyBasisSpec {
    int degree = 0;
    int dim = 2;
};

inline int poly_basis_size(int degree) {
    return (degree + 1) * (degree + 2) / 2;
}

// Graded lexicographic ordering: 1, x, z, x^2, xz, z^2, x^3, ... Each pair
// is (a, b) for x^a z^b. The ordering is a stability-relevant contract
// (regression tests depend on it), so it is fixed here and nowhere else.
inline std::vector<std::pair<int, int>> monomial_exponents(int degree) {
    std::vector<std::pair<int, int>> exps;
    exps.reserve(poly_basis_size(degree));
    for (int t = 0; t <= degree; ++t)
        for (int a = t; a >= 0; --a)
            exps.emplace_back(a, t - a);
    return exps;
}

inline double monomial_value(int a, int b, const Point& p) {
    double v = 1.0;
    for (int i = 0; i < a; ++i) v *= p.x();
    for (int i = 0; i < b; ++i) v *= p.y();
    return v;
}

// (L x^a z^b)(p) for the supported operator kinds.
inline Complex monomial_operator(int a, int b, const DiffOperatorSpec& op, const Point& p) {
    switch (op.kind) {
        case OpKind::identity:
            return monomial_value(a, b, p);
        case OpKind::ddx:
            return a >= 1 ? a * monomial_value(a - 1, b, p) : 0.0;
        case OpKind::ddz:
            return b >= 1 ? b * monomial_value(a, b - 1, p) : 0.0;
        case OpKind::directional: {
            const double gx = a >= 1 ? a * monomial_value(a - 1, b, p) : 0.0;
            const double gz = b >= 1 ? b * monomial_value(a, b - 1, p) : 0.0;
            return op.normal.x() * gx + op.normal.y() * gz;
        }
        case OpKind::laplacian: {
            double v = 0.0;
            if (a >= 2) v += a * (a - 1) * monomial_value(a - 2, b, p);
            if (b >= 2) v += b * (b - 1) * monomial_value(a, b - 2, p);
            return v;
        }
        case OpKind::helmholtz:
            return monomial_operator(a, b, DiffOperatorSpec::laplacian(), p) +
                   static_cast<double>(op.sign) * op.k * op.k * monomial_value(a, b, p);
        case OpKind::robin: {
            DiffOperatorSpec dn = DiffOperatorSpec::directional(op.normal);
            return monomial_operator(a, b, dn, p) + op.coef * monomial_value(a, b, p);
        }
    }
    throw capability_error("unknown operator kind");
}

// (L p_j)(point) for every monomial in the fixed ordering.
inline Eigen::VectorXcd eval_poly_basis(const PolyBasisSpec& spec, const DiffOperatorSpec& op,
                                        const Point& point) {
    if (spec.degree < 0 || spec.degree > 10)
        throw validation_error("polynomial degree must be in [0, 10]");
    if (spec.dim != 2)
        throw validation_error("polynomial basis implemented for dim = 2 only");
    const auto exps = monomial_exponents(spec.degree);
    Eigen::VectorXcd out(static_cast<Eigen::Index>(exps.size()));
    for (std::size_t j = 0; j < exps.size(); ++j)
        out(static_cast<Eigen::Index>(j)) = monomial_operator(exps[j].first, exps[j].second, op, point);
    return out;
}

} // namespace hybridfd
