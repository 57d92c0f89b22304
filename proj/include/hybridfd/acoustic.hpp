#pragma once

#include <cmath>
#include <functional>
#include <string>
#include <vector>

#include "bessel.hpp"
#include "helmholtz.hpp"

namespace hybridfd {

// Primary-wave velocity; constant in every experiment here, but evaluated
// per node so heterogeneous models assemble without code changes.
struct VelocityModel {
    std::function<double(const Point&)> c;

    static VelocityModel constant(double c0) {
        if (!(c0 > 0.0))
            throw validation_error("velocity must be positive");
        return {[c0](const Point&) { return c0; }};
    }
};

enum class SourceKind { dirac, ricker_paper, ricker_amini };

// Point source with a spectral envelope. hx/hz carry the grid spacing that
// normalizes the discrete Dirac amplitude.
struct SourceSpec {
    SourceKind kind = SourceKind::dirac;
    Point location{0.0, 0.0};
    double fc = 25.0; // Ricker cutoff-related frequency (paper form)
    double f0 = 25.0; // Ricker dominant frequency (time-shifted form)
    double hx = 0.0, hz = 0.0;
};

// Complex pressure field at one angular frequency.
struct WaveField {
    double omega = 0.0;
    Eigen::VectorXcd p;
    double rel_residual = 0.0;
};

struct Seismogram {
    std::vector<Point> receivers;
    std::vector<std::size_t> receiver_nodes;
    double dt = 0.0, T = 0.0;
    std::vector<double> times;
    Eigen::MatrixXd traces; // sample x receiver
    bool nyquist_warning = false;
};

// Frequency-domain acoustic operator: interior rows lap + (omega/c)^2
// (Helmholtz sign +1), boundary rows the absorbing Robin operator
// d/dn + i*omega/c with zero data. With absorbing = false the boundary
// rows degrade to pure Neumann (the reflecting comparison run).
inline AssemblyResult acoustic_system(const NodeSet& nodes, const StencilMap& stencils,
                                      const VelocityModel& model, double omega,
                                      const KernelSpec& kernel, bool absorbing = true) {
    if (omega < 0.0)
        throw validation_error("angular frequency must be nonnegative");
    return assemble_rows(nodes, stencils, kernel, [&](std::size_t i) -> RowSpec {
        const double ci = model.c(nodes.coords[i]);
        if (!nodes.is_boundary(i))
            return {RowKind::pde, false, DiffOperatorSpec::helmholtz(omega / ci, +1)};
        if (!absorbing)
            return {RowKind::neumann, false, DiffOperatorSpec::directional(nodes.normal[i])};
        return {RowKind::robin, false,
                DiffOperatorSpec::robin(nodes.normal[i], Complex(0.0, omega / ci))};
    });
}

struct DiracSource {
    Eigen::VectorXcd vector;
    std::size_t node = 0;
    double snap_distance = 0.0;
};

// Discrete Dirac-delta source: a single entry 1/(hx*hz)^2 at the node
// nearest the requested location (the paper's normalization, kept as
// printed; the Green's-function calibration absorbs the convention).
inline DiracSource dirac_source_vector(const NodeSet& nodes, const Point& location, double hx,
                                       double hz) {
    if (!(hx > 0.0) || !(hz > 0.0))
        throw validation_error("dirac_source_vector requires positive grid spacings");
    if (!nodes.domain.contains(location))
        throw validation_error("source location outside the domain");
    DiracSource src;
    src.node = nodes.nearest_node(location);
    src.snap_distance = (nodes.coords[src.node] - location).norm();
    const double max_snap = 0.5 * std::max(hx, hz) * (1.0 + 1e-9);
    if (src.snap_distance > max_snap)
        throw validation_error("source does not coincide with a node (snap distance " +
                               format_double(src.snap_distance) + " exceeds h/2)");
    if (nodes.is_boundary(src.node))
        throw validation_error("source node lies on the boundary; boundary rhs must stay zero");
    src.vector = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(nodes.size()));
    src.vector(static_cast<Eigen::Index>(src.node)) = 1.0 / ((hx * hz) * (hx * hz));
    return src;
}

// Frequency-domain Ricker amplitude (2 f^2 / (sqrt(pi) fc^3)) e^{-f^2/fc^2}.
// This is the standard unit-consistent form; it peaks at f = fc.
inline double ricker_spectrum_paper(double f, double fc) {
    if (f < 0.0)
        throw validation_error("frequency must be nonnegative");
    if (!(fc > 0.0))
        throw validation_error("Ricker cutoff frequency must be positive");
    return (2.0 * f * f / (std::sqrt(M_PI) * fc * fc * fc)) * std::exp(-f * f / (fc * fc));
}

// Time-shifted Ricker spectrum sqrt(4/(pi f0^2)) (f/f0)^2 e^{-(f/f0)^2}
// e^{-2 i pi f / f0}; the phase factor delays the pulse by one dominant
// period so the synthesized wavelet is causal.
inline Complex ricker_spectrum_amini(double f, double f0) {
    if (f < 0.0)
        throw validation_error("frequency must be nonnegative");
    if (!(f0 > 0.0))
        throw validation_error("Ricker dominant frequency must be positive");
    const double u = f / f0;
    const double env = std::sqrt(4.0 / (M_PI * f0 * f0)) * u * u * std::exp(-u * u);
    return env * std::exp(Complex(0.0, -2.0 * M_PI * u));
}

// Outgoing 2D Helmholtz Green's function under the e^{-i omega t} forward
// transform convention: conj((i/4) H0^(1)(omega r / c)). The overall
// complex scale against the discrete solution is fixed separately by a
// one-point calibration (the discrete Dirac normalization is
// grid-dependent).
inline Eigen::VectorXcd greens_reference(double omega, double c, const Point& source,
                                         const std::vector<Point>& eval) {
    if (!(omega > 0.0) || !(c > 0.0))
        throw validation_error("greens_reference requires positive omega and c");
    Eigen::VectorXcd g(static_cast<Eigen::Index>(eval.size()));
    for (std::size_t i = 0; i < eval.size(); ++i) {
        const double r = (eval[i] - source).norm();
        if (r == 0.0)
            throw validation_error("greens_reference is singular at the source point");
        const double x = omega * r / c;
        // conj((i/4)(J0 + i Y0)) = (-Y0 - i J0)/4
        g(static_cast<Eigen::Index>(i)) = Complex(-bessel_y0(x) / 4.0, -bessel_j0(x) / 4.0);
    }
    return g;
}

inline Complex source_spectrum(const SourceSpec& source, double omega) {
    const double f = omega / (2.0 * M_PI);
    switch (source.kind) {
        case SourceKind::dirac: return {1.0, 0.0};
        case SourceKind::ricker_paper: return ricker_spectrum_paper(f, source.fc);
        case SourceKind::ricker_amini: return ricker_spectrum_amini(f, source.f0);
    }
    throw validation_error("unknown source kind");
}

// One frequency-domain solve: assemble the acoustic system at omega and
// solve against the Dirac vector scaled by the source spectrum.
inline WaveField solve_frequency(const NodeSet& nodes, const StencilMap& stencils,
                                 const VelocityModel& model, double omega,
                                 const SourceSpec& source, const KernelSpec& kernel,
                                 bool absorbing = true) {
    const AssemblyResult system = acoustic_system(nodes, stencils, model, omega, kernel, absorbing);
    const DiracSource dirac = dirac_source_vector(nodes, source.location, source.hx, source.hz);
    const Eigen::VectorXcd rhs = dirac.vector * source_spectrum(source, omega);
    const SparseSolveResult solved = sparse_direct_solve(system.op, rhs);
    return {omega, solved.x, solved.rel_residual};
}

// One solve per frequency. f = 0 is returned as an exact zero field (both
// Ricker spectra vanish there and the omega = 0 Robin operator is
// singular); every other frequency gets its own factorization — the matrix
// depends on omega, so reuse is impossible by construction.
inline std::vector<WaveField> frequency_sweep(const NodeSet& nodes, const StencilMap& stencils,
                                              const VelocityModel& model,
                                              const std::vector<double>& freqs_hz,
                                              const SourceSpec& source, const KernelSpec& kernel) {
    for (std::size_t i = 0; i < freqs_hz.size(); ++i) {
        if (freqs_hz[i] < 0.0)
            throw validation_error("sweep frequencies must be nonnegative");
        if (i > 0 && freqs_hz[i] <= freqs_hz[i - 1])
            throw validation_error("sweep frequencies must be strictly increasing");
    }
    std::vector<WaveField> fields;
    fields.reserve(freqs_hz.size());
    for (double f : freqs_hz) {
        if (f == 0.0) {
            fields.push_back({0.0, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(nodes.size())), 0.0});
            continue;
        }
        try {
            fields.push_back(solve_frequency(nodes, stencils, model, 2.0 * M_PI * f, source, kernel));
        } catch (const numerical_error& e) {
            throw numerical_error("frequency sweep failed at " + format_double(f) + " Hz: " +
                                  e.what());
        }
    }
    return fields;
}

// Inverse transform to time traces:
// trace(t) = Re sum_f p(rec, f) e^{+2 pi i f t} df * (2 for f > 0, 1 for f = 0),
// the conjugate-symmetric inverse of the e^{-i omega t} forward convention.
inline Seismogram synthesize_time(const std::vector<WaveField>& fields,
                                  const std::vector<Point>& receivers, const NodeSet& nodes,
                                  double dt, double T) {
    if (fields.size() < 2)
        throw validation_error("synthesize_time needs at least two frequency bins");
    if (!(dt > 0.0) || !(T > 0.0))
        throw validation_error("synthesize_time requires positive dt and T");
    const double two_pi = 2.0 * M_PI;
    const double df = (fields[1].omega - fields[0].omega) / two_pi;
    for (std::size_t i = 1; i < fields.size(); ++i) {
        const double step = (fields[i].omega - fields[i - 1].omega) / two_pi;
        if (std::abs(step - df) > 1e-9 * std::max(1.0, df))
            throw validation_error("synthesize_time requires a uniform frequency grid");
    }

    Seismogram seis;
    seis.receivers = receivers;
    seis.dt = dt;
    seis.T = T;
    const int nt = static_cast<int>(std::llround(T / dt)) + 1;
    seis.times.resize(static_cast<std::size_t>(nt));
    for (int s = 0; s < nt; ++s) seis.times[static_cast<std::size_t>(s)] = dt * s;
    const double f_max = fields.back().omega / two_pi;
    seis.nyquist_warning = f_max > 0.5 / dt;

    for (const Point& r : receivers) seis.receiver_nodes.push_back(nodes.nearest_node(r));

    seis.traces.setZero(nt, static_cast<Eigen::Index>(receivers.size()));
    for (const WaveField& field : fields) {
        const double f = field.omega / two_pi;
        const double weight = (f > 0.0 ? 2.0 : 1.0) * df;
        for (std::size_t rc = 0; rc < receivers.size(); ++rc) {
            const Complex v = field.p(static_cast<Eigen::Index>(seis.receiver_nodes[rc]));
            for (int s = 0; s < nt; ++s) {
                const double t = seis.times[static_cast<std::size_t>(s)];
                seis.traces(s, static_cast<Eigen::Index>(rc)) +=
                    weight * (v * std::exp(Complex(0.0, two_pi * f * t))).real();
            }
        }
    }
    return seis;
}

struct GreensComparison {
    double rms = 0.0;            // calibrated RMS over the included nodes
    Complex calibration{0.0, 0.0}; // sigma = G(ref) / u(ref), frozen
    std::size_t reference_node = 0;
    std::size_t included_nodes = 0;
};

// Calibrated RMS deviation of a computed Dirac field from the analytic
// Green's function. One complex constant is fitted at the node nearest the
// domain center (far from source and boundary) and then frozen; the RMS
// excludes a disk of the given radius around the source, where the analytic
// solution is singular.
inline GreensComparison greens_rms_error(const NodeSet& nodes, const Eigen::VectorXcd& field,
                                         double omega, double c, const Point& source,
                                         double exclude_radius) {
    GreensComparison cmp;
    const Point center{0.5 * (nodes.domain.x0 + nodes.domain.x1),
                       0.5 * (nodes.domain.z0 + nodes.domain.z1)};
    cmp.reference_node = nodes.nearest_node(center);
    const Eigen::VectorXcd g = greens_reference(
        omega, c, source, std::vector<Point>{nodes.coords[cmp.reference_node]});
    const Complex u_ref = field(static_cast<Eigen::Index>(cmp.reference_node));
    if (std::abs(u_ref) == 0.0)
        throw numerical_error("greens_rms_error: zero field at the calibration node");
    cmp.calibration = g(0) / u_ref;

    double acc = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double r = (nodes.coords[i] - source).norm();
        if (r <= exclude_radius) continue;
        const double x = omega * r / c;
        const Complex gi(-bessel_y0(x) / 4.0, -bessel_j0(x) / 4.0);
        const Complex diff = cmp.calibration * field(static_cast<Eigen::Index>(i)) - gi;
        acc += std::norm(diff);
        ++cmp.included_nodes;
    }
    cmp.rms = std::sqrt(acc / static_cast<double>(cmp.included_nodes));
    return cmp;
}

} // namespace hybridfd
