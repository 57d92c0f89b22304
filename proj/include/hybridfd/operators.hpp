#pragma once

#include <complex>

#include "geometry.hpp"
#include "kernels.hpp"

namespace hybridfd {

using Complex = std::complex<double>;

enum class OpKind {
    identity,
    ddx,
    ddz,
    directional, // n . grad
    laplacian,
    helmholtz, // lap + sign * k^2 * id
    robin,     // n . grad + coef * id
};

inline const char* op_name(OpKind k) {
    switch (k) {
        case OpKind::identity: return "identity";
        case OpKind::ddx: return "d/dx";
        case OpKind::ddz: return "d/dz";
        case OpKind::directional: return "d/dn";
        case OpKind::laplacian: return "laplacian";
        case OpKind::helmholtz: return "helmholtz";
        case OpKind::robin: return "robin";
    }
    return "?";
}

// Homogeneity order under coordinate scaling; used to unscale weights
// computed in shifted/scaled stencil coordinates.
inline int operator_order(OpKind k) {
    switch (k) {
        case OpKind::identity: return 0;
        case OpKind::ddx:
        case OpKind::ddz:
        case OpKind::directional:
        case OpKind::robin: return 1;
        case OpKind::laplacian:
        case OpKind::helmholtz: return 2;
    }
    return 0;
}

// A linear differential operator L (or boundary operator B). The Helmholtz
// sign is explicit because the experiments use both conventions:
// lap - k^2 (modified Helmholtz) and lap + omega^2/c^2 (acoustic).
struct DiffOperatorSpec {
    OpKind kind = OpKind::identity;
    Point normal{0.0, 0.0}; // unit vector for directional/robin
    int sign = +1;          // Helmholtz s in lap + s k^2
    double k = 0.0;         // Helmholtz wavenumber
    Complex coef{0.0, 0.0}; // Robin identity coefficient (i omega / c)

    static DiffOperatorSpec identity() { return {OpKind::identity}; }
    static DiffOperatorSpec ddx() { return {OpKind::ddx}; }
    static DiffOperatorSpec ddz() { return {OpKind::ddz}; }
    static DiffOperatorSpec laplacian() { return {OpKind::laplacian}; }

    static DiffOperatorSpec directional(const Point& n) {
        DiffOperatorSpec op{OpKind::directional};
        op.normal = checked_normal(n);
        return op;
    }

    static DiffOperatorSpec helmholtz(double k, int sign) {
        if (sign != +1 && sign != -1)
            throw validation_error("helmholtz sign must be +1 or -1");
        if (k < 0.0)
            throw validation_error("helmholtz wavenumber must be nonnegative");
        DiffOperatorSpec op{OpKind::helmholtz};
        op.k = k;
        op.sign = sign;
        return op;
    }

    static DiffOperatorSpec robin(const Point& n, Complex coef) {
        DiffOperatorSpec op{OpKind::robin};
        op.normal = checked_normal(n);
        op.coef = coef;
        return op;
    }

    // Operator expressed in stencil coordinates y = (x - x_i)/rho: length
    // scales contract by rho, so k and the Robin coefficient pick up one
    // factor of rho each. Normals are scale-invariant.
    DiffOperatorSpec scaled(double rho) const {
        DiffOperatorSpec op = *this;
        op.k = k * rho;
        op.coef = coef * rho;
        return op;
    }

private:
    static Point checked_normal(const Point& n) {
        if (std::abs(n.norm() - 1.0) > 1e-12)
            throw validation_error("directional/robin operator requires a unit normal");
        return n;
    }
};

// (L phi(||. - source||))(center) by closed-form radial derivatives.
// For radial f in 2D: grad f = f'(r)/r * (x - source), lap f = f'' + f'/r;
// the r -> 0 limits are handled by the kernel derivative helpers (the
// d/dn-type terms vanish at the center because the displacement does).
inline Complex eval_operator_kernel(const KernelSpec& kernel, const DiffOperatorSpec& op,
                                    const Point& center, const Point& source) {
    const Point d = center - source;
    const double r = d.norm();
    switch (op.kind) {
        case OpKind::identity:
            return eval_kernel(kernel, r);
        case OpKind::ddx:
            return kernel_d1_over_r(kernel, r) * d.x();
        case OpKind::ddz:
            return kernel_d1_over_r(kernel, r) * d.y();
        case OpKind::directional:
            return kernel_d1_over_r(kernel, r) * d.dot(op.normal);
        case OpKind::laplacian:
            return kernel_lap2d(kernel, r);
        case OpKind::helmholtz:
            return kernel_lap2d(kernel, r) +
                   static_cast<double>(op.sign) * op.k * op.k * eval_kernel(kernel, r);
        case OpKind::robin:
            return kernel_d1_over_r(kernel, r) * d.dot(op.normal) +
                   op.coef * eval_kernel(kernel, r);
    }
    throw capability_error("unknown operator kind");
}

} // namespace hybridfd
