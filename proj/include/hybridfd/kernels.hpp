#pragma once

#include <cmath>
#include <string>

#include "errors.hpp"

namespace hybridfd {

enum class KernelVariant {
    gaussian,
    cubic,
    phs,
    multiquadric,
    inverse_multiquadric,
    wendland,
    hybrid,
};

inline const char* kernel_name(KernelVariant v) {
    switch (v) {
        case KernelVariant::gaussian: return "gaussian";
        case KernelVariant::cubic: return "cubic";
        case KernelVariant::phs: return "phs";
        case KernelVariant::multiquadric: return "multiquadric";
        case KernelVariant::inverse_multiquadric: return "inverse-multiquadric";
        case KernelVariant::wendland: return "wendland";
        case KernelVariant::hybrid: return "hybrid";
    }
    return "?";
}

// Radial kernel family. The hybrid kernel is the normalized form
// phi(r) = exp(-(eps r)^2) + gamma r^3, so phi(0) = 1; the raw
// alpha*exp(...) + beta*r^3 form enters only through the factory below
// (gamma = beta/alpha), since scaling a kernel by a constant leaves the
// generated weights unchanged.
struct KernelSpec {
    KernelVariant variant = KernelVariant::gaussian;
    double epsilon = 1.0; // shape parameter (inverse length)
    double gamma = 0.0;   // hybrid cubic weight
    int m = 3;            // PHS exponent

    static KernelSpec gaussian(double eps) { return checked({KernelVariant::gaussian, eps, 0.0, 3}); }
    static KernelSpec cubic() { return {KernelVariant::cubic, 1.0, 0.0, 3}; }
    static KernelSpec phs(int order) { return checked({KernelVariant::phs, 1.0, 0.0, order}); }
    static KernelSpec multiquadric(double eps) { return checked({KernelVariant::multiquadric, eps, 0.0, 3}); }
    static KernelSpec inverse_multiquadric(double eps) { return checked({KernelVariant::inverse_multiquadric, eps, 0.0, 3}); }
    static KernelSpec wendland(double eps) { return checked({KernelVariant::wendland, eps, 0.0, 3}); }
    static KernelSpec hybrid(double eps, double gam) { return checked({KernelVariant::hybrid, eps, gam, 3}); }

    // Raw two-coefficient form alpha*gaussian + beta*cubic.
    static KernelSpec hybrid_raw(double eps, double alpha, double beta) {
        if (alpha == 0.0)
            throw validation_error("hybrid_raw: alpha must be nonzero (gamma = beta/alpha)");
        return hybrid(eps, beta / alpha);
    }

    bool uses_epsilon() const {
        return variant != KernelVariant::cubic && variant != KernelVariant::phs;
    }

    // Local copy under the global-parameter convention when stencil
    // coordinates are divided by rho: eps_loc = eps*rho and, for the hybrid
    // kernel, gamma_loc = gamma*rho^3 so that phi_loc(r/rho) = phi(r).
    // Scale-homogeneous kernels (cubic, phs) need no adjustment; the weight
    // unscaling by the operator order absorbs their factor.
    KernelSpec scaled(double rho) const {
        KernelSpec s = *this;
        if (uses_epsilon()) s.epsilon = epsilon * rho;
        if (variant == KernelVariant::hybrid) s.gamma = gamma * rho * rho * rho;
        return s;
    }

private:
    static KernelSpec checked(KernelSpec s) {
        if (s.uses_epsilon() && !(s.epsilon > 0.0))
            throw validation_error("kernel shape parameter epsilon must be positive");
        if (s.gamma < 0.0)
            throw validation_error("hybrid gamma must be nonnegative");
        if (s.variant == KernelVariant::phs && s.m < 1)
            throw validation_error("PHS order m must be >= 1");
        return s;
    }
};

namespace detail {
inline void require_radius(double r) {
    if (r < 0.0) throw validation_error("kernel radius must be nonnegative");
}
} // namespace detail

// phi(r).
inline double eval_kernel(const KernelSpec& k, double r) {
    detail::require_radius(r);
    const double er = k.epsilon * r;
    switch (k.variant) {
        case KernelVariant::gaussian:
            return std::exp(-er * er);
        case KernelVariant::cubic:
            return r * r * r;
        case KernelVariant::phs:
            if (k.m % 2 == 1) return std::pow(r, k.m);
            // Even order r^m log r; the r -> 0 limit is 0.
            return r == 0.0 ? 0.0 : std::pow(r, k.m) * std::log(r);
        case KernelVariant::multiquadric:
            return std::sqrt(1.0 + er * er);
        case KernelVariant::inverse_multiquadric:
            return 1.0 / std::sqrt(1.0 + er * er);
        case KernelVariant::wendland: {
            const double t = 1.0 - er;
            if (t <= 0.0) return 0.0;
            const double t2 = t * t;
            return t2 * t2 * (4.0 * er + 1.0);
        }
        case KernelVariant::hybrid:
            return std::exp(-er * er) + k.gamma * r * r * r;
    }
    throw capability_error("unknown kernel variant");
}

// True for the kernels whose differential-operator application is in scope
// (the ones the experiments use). The remaining Table-1 kernels are
// evaluation-only.
inline bool operator_capable(const KernelSpec& k) {
    switch (k.variant) {
        case KernelVariant::gaussian:
        case KernelVariant::cubic:
        case KernelVariant::hybrid:
            return true;
        case KernelVariant::phs:
            return k.m % 2 == 1 && k.m >= 3; // odd orders only (no log term)
        default:
            return false;
    }
}

namespace detail {

inline void require_operator_capable(const KernelSpec& k) {
    if (!operator_capable(k))
        throw capability_error(std::string("differential operators not implemented for kernel ") +
                               kernel_name(k.variant));
}

} // namespace detail

// phi'(r)/r. This combination (not phi' itself) is what every first- and
// second-order operator needs, and it stays finite at r = 0 for the kernels
// in scope.
inline double kernel_d1_over_r(const KernelSpec& k, double r) {
    detail::require_radius(r);
    detail::require_operator_capable(k);
    const double e2 = k.epsilon * k.epsilon;
    switch (k.variant) {
        case KernelVariant::gaussian:
            return -2.0 * e2 * std::exp(-e2 * r * r);
        case KernelVariant::cubic:
            return 3.0 * r;
        case KernelVariant::phs:
            // (m r^{m-1})/r = m r^{m-2}; finite at 0 for m >= 3 (odd).
            return static_cast<double>(k.m) * std::pow(r, k.m - 2);
        case KernelVariant::hybrid:
            return -2.0 * e2 * std::exp(-e2 * r * r) + 3.0 * k.gamma * r;
        default:
            break;
    }
    throw capability_error("unreachable");
}

// phi''(r).
inline double kernel_d2(const KernelSpec& k, double r) {
    detail::require_radius(r);
    detail::require_operator_capable(k);
    const double e2 = k.epsilon * k.epsilon;
    switch (k.variant) {
        case KernelVariant::gaussian:
            return (4.0 * e2 * e2 * r * r - 2.0 * e2) * std::exp(-e2 * r * r);
        case KernelVariant::cubic:
            return 6.0 * r;
        case KernelVariant::phs:
            return static_cast<double>(k.m) * static_cast<double>(k.m - 1) * std::pow(r, k.m - 2);
        case KernelVariant::hybrid:
            return (4.0 * e2 * e2 * r * r - 2.0 * e2) * std::exp(-e2 * r * r) + 6.0 * k.gamma * r;
        default:
            break;
    }
    throw capability_error("unreachable");
}

// 2D Laplacian of the radial kernel: phi'' + phi'/r. The cubic term
// contributes 9*gamma*r (limit 0 at the center); the Gaussian contributes
// -4 eps^2 at the center.
inline double kernel_lap2d(const KernelSpec& k, double r) {
    return kernel_d2(k, r) + kernel_d1_over_r(k, r);
}

} // namespace hybridfd
