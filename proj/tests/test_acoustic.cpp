// Frequency-domain acoustic pipeline: source spectra against frozen
// literals, the discrete Dirac contract, Green's-function reference
// orientation, solve linearity, the f = 0 convention, time synthesis, and
// the calibrated RMS comparison.

#include <catch2/catch_amalgamated.hpp>

#include <hybridfd/acoustic.hpp>

#include <cmath>

using namespace hybridfd;

namespace {
constexpr double kPi = 3.14159265358979323846;
}

TEST_CASE("paper-style Ricker spectrum: frozen values and peak at fc") {
    // (2 f^2 / (sqrt(pi) fc^3)) exp(-f^2/fc^2), 40-digit reference.
    CHECK(ricker_spectrum_paper(25.0, 25.0) ==
          Catch::Approx(0.016604299896823788).epsilon(1e-14));
    CHECK(ricker_spectrum_paper(10.0, 25.0) ==
          Catch::Approx(0.0061538643125715698).epsilon(1e-14));
    CHECK(ricker_spectrum_paper(0.0, 25.0) == 0.0);
    // Peak at f = fc.
    const double peak = ricker_spectrum_paper(25.0, 25.0);
    CHECK(peak > ricker_spectrum_paper(24.0, 25.0));
    CHECK(peak > ricker_spectrum_paper(26.0, 25.0));
    CHECK_THROWS_AS(ricker_spectrum_paper(10.0, 0.0), validation_error);
    CHECK_THROWS_AS(ricker_spectrum_paper(-1.0, 25.0), validation_error);
}

TEST_CASE("time-shifted Ricker spectrum: frozen values, envelope, phase") {
    const Complex at_f0 = ricker_spectrum_amini(25.0, 25.0);
    CHECK(at_f0.real() == Catch::Approx(0.016604299896823788).epsilon(1e-12));
    CHECK(std::abs(at_f0.imag()) < 1e-15); // e^{-2 pi i} is real
    const Complex at_10 = ricker_spectrum_amini(10.0, 25.0);
    CHECK(at_10.real() == Catch::Approx(-0.0049785808099479034).epsilon(1e-12));
    CHECK(at_10.imag() == Catch::Approx(-0.0036171506875385269).epsilon(1e-12));
    // |A| peaks at f = f0 and the phase delay is one period of f0.
    CHECK(std::abs(ricker_spectrum_amini(25.0, 25.0)) >
          std::abs(ricker_spectrum_amini(20.0, 25.0)));
    CHECK(std::abs(ricker_spectrum_amini(25.0, 25.0)) >
          std::abs(ricker_spectrum_amini(30.0, 25.0)));
    CHECK_THROWS_AS(ricker_spectrum_amini(10.0, -5.0), validation_error);
}

TEST_CASE("discrete Dirac: snap rule, amplitude, and guards") {
    const NodeSet nodes = generate_cartesian(60, 60, Rect{0.0, 1.0, 0.0, 1.0});
    const double h = 1.0 / 59.0;

    const DiracSource on_node = dirac_source_vector(nodes, nodes.coords[61], h, h);
    CHECK(on_node.node == 61);
    CHECK(on_node.snap_distance == 0.0);
    // Amplitude 1/(hx hz)^2 = 59^4.
    CHECK(on_node.vector(61).real() == Catch::Approx(12117361.0).epsilon(1e-12));
    CHECK(on_node.vector.cwiseAbs().sum() ==
          Catch::Approx(12117361.0).epsilon(1e-12)); // single entry

    // (0.2, 0.8) is off-grid; it must snap to the nearest node within h/2.
    const DiracSource snapped = dirac_source_vector(nodes, Point{0.2, 0.8}, h, h);
    CHECK(snapped.snap_distance <= 0.5 * h * (1.0 + 1e-9));
    CHECK((nodes.coords[snapped.node] - Point{0.2, 0.8}).norm() ==
          Catch::Approx(snapped.snap_distance));

    // A request centered between nodes exceeds the snap allowance.
    const NodeSet coarse = generate_cartesian(5, 5, Rect{0.0, 1.0, 0.0, 1.0});
    CHECK_THROWS_AS(dirac_source_vector(coarse, Point{0.625, 0.625}, 0.25, 0.25),
                    validation_error);
    // Boundary and out-of-domain sources are rejected.
    CHECK_THROWS_AS(dirac_source_vector(coarse, Point{0.0, 0.5}, 0.25, 0.25), validation_error);
    CHECK_THROWS_AS(dirac_source_vector(coarse, Point{1.4, 0.5}, 0.25, 0.25), validation_error);
    CHECK_THROWS_AS(dirac_source_vector(coarse, Point{0.5, 0.5}, 0.0, 0.25), validation_error);
}

TEST_CASE("Green's reference is the conjugated outgoing Hankel kernel") {
    // Under e^{-i omega t}, G(r) = conj((i/4) H0^(1)(omega r / c)) =
    // (-Y0 - i J0)/4; frozen at omega r / c = 4.8.
    const Eigen::VectorXcd g =
        greens_reference(16.0, 1.0, Point{0.0, 0.0}, {Point{0.3, 0.0}});
    REQUIRE(g.size() == 1);
    CHECK(g(0).real() == Catch::Approx(0.068075948614162039).margin(5e-7));
    CHECK(g(0).imag() == Catch::Approx(0.060106331822795863).margin(5e-7));
    // Consistency with the Bessel layer at the same argument.
    CHECK(g(0).real() == Catch::Approx(-bessel_y0(4.8) / 4.0).margin(1e-15));
    CHECK(g(0).imag() == Catch::Approx(-bessel_j0(4.8) / 4.0).margin(1e-15));
}

TEST_CASE("acoustic rows: Helmholtz inside, Robin or Neumann on the edge") {
    const NodeSet nodes = generate_cartesian(8, 8, Rect{0.0, 1.0, 0.0, 1.0});
    const StencilMap stencils = nearest_neighbors(nodes, 10);
    const VelocityModel model = VelocityModel::constant(2.0);
    const double omega = 12.0;

    const AssemblyResult robin = acoustic_system(nodes, stencils, model, omega,
                                                 KernelSpec::hybrid(1.0, 1e-5), true);
    const AssemblyResult neumann = acoustic_system(nodes, stencils, model, omega,
                                                   KernelSpec::hybrid(1.0, 1e-5), false);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes.is_boundary(i)) {
            CHECK(robin.op.row_kind[i] == RowKind::robin);
            CHECK(neumann.op.row_kind[i] == RowKind::neumann);
        } else {
            CHECK(robin.op.row_kind[i] == RowKind::pde);
        }
    }
    // Robin rows carry an imaginary part (i omega / c); Neumann rows do not.
    Eigen::MatrixXcd dr(robin.op.matrix), dn(neumann.op.matrix);
    double robin_imag = 0.0, neumann_imag = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (!nodes.is_boundary(i)) continue;
        robin_imag += dr.row(static_cast<Eigen::Index>(i)).imag().cwiseAbs().sum();
        neumann_imag += dn.row(static_cast<Eigen::Index>(i)).imag().cwiseAbs().sum();
    }
    CHECK(robin_imag > 1.0);
    CHECK(neumann_imag == 0.0);
    CHECK_THROWS_AS(acoustic_system(nodes, stencils, model, -1.0,
                                    KernelSpec::hybrid(1.0, 1e-5)),
                    validation_error);
    CHECK_THROWS_AS(VelocityModel::constant(0.0), validation_error);
}

TEST_CASE("solved field is linear in the source spectrum") {
    const NodeSet nodes = generate_cartesian(21, 21, Rect{0.0, 1.0, 0.0, 1.0});
    const double h = 1.0 / 20.0; // odd grid: a node sits exactly at (0.5, 0.5)
    const StencilMap stencils = nearest_neighbors(nodes, 10);
    const VelocityModel model = VelocityModel::constant(1.0);
    const KernelSpec kernel = KernelSpec::hybrid(1.0, 1e-5);
    const double f = 3.0, omega = 2.0 * kPi * f;

    SourceSpec dirac;
    dirac.kind = SourceKind::dirac;
    dirac.location = Point{0.5, 0.5};
    dirac.hx = dirac.hz = h;
    SourceSpec ricker = dirac;
    ricker.kind = SourceKind::ricker_paper;
    ricker.fc = 5.0;

    const WaveField base = solve_frequency(nodes, stencils, model, omega, dirac, kernel);
    const WaveField scaled = solve_frequency(nodes, stencils, model, omega, ricker, kernel);
    const Complex amp = source_spectrum(ricker, omega);
    CHECK(std::abs(amp) > 0.0);
    CHECK((scaled.p - amp * base.p).norm() < 1e-10 * scaled.p.norm());
    CHECK(base.rel_residual < 1e-10);
}

TEST_CASE("frequency sweep conventions: ordering, f = 0, error context") {
    const NodeSet nodes = generate_cartesian(11, 11, Rect{0.0, 1.0, 0.0, 1.0});
    const StencilMap stencils = nearest_neighbors(nodes, 10);
    const VelocityModel model = VelocityModel::constant(1.0);
    const KernelSpec kernel = KernelSpec::hybrid(1.0, 1e-5);
    SourceSpec src;
    src.kind = SourceKind::ricker_paper;
    src.fc = 5.0;
    src.location = Point{0.5, 0.5};
    src.hx = src.hz = 0.1;

    const std::vector<WaveField> fields =
        frequency_sweep(nodes, stencils, model, {0.0, 2.0, 4.0}, src, kernel);
    REQUIRE(fields.size() == 3);
    CHECK(fields[0].p.norm() == 0.0); // f = 0 bin is exactly zero
    CHECK(fields[0].rel_residual == 0.0);
    CHECK(fields[1].p.norm() > 0.0);

    CHECK_THROWS_AS(frequency_sweep(nodes, stencils, model, {2.0, 2.0}, src, kernel),
                    validation_error);
    CHECK_THROWS_AS(frequency_sweep(nodes, stencils, model, {4.0, 2.0}, src, kernel),
                    validation_error);
    CHECK_THROWS_AS(frequency_sweep(nodes, stencils, model, {-1.0, 2.0}, src, kernel),
                    validation_error);
}

TEST_CASE("single-bin synthesis reproduces the inverse-transform formula") {
    // Two bins (f = 0 zeroed, one live bin at f1): the trace must equal
    // Re(p e^{+2 pi i f1 t}) * df * 2 sampled on the requested clock.
    const NodeSet nodes = generate_cartesian(3, 3, Rect{0.0, 1.0, 0.0, 1.0});
    const double f1 = 2.0;
    WaveField zero{0.0, Eigen::VectorXcd::Zero(9), 0.0};
    WaveField live{2.0 * kPi * f1, Eigen::VectorXcd::Zero(9), 0.0};
    const Complex p{0.3, -1.1};
    live.p(4) = p; // center node
    const double dt = 0.025, T = 0.5;
    const Seismogram seis =
        synthesize_time({zero, live}, {Point{0.5, 0.5}}, nodes, dt, T);
    REQUIRE(seis.receiver_nodes == std::vector<std::size_t>{4});
    REQUIRE(seis.times.size() == 21);
    CHECK_FALSE(seis.nyquist_warning); // f1 = 2 < 0.5/dt = 20
    for (std::size_t s = 0; s < seis.times.size(); ++s) {
        const double t = seis.times[s];
        const double expected =
            (p * std::exp(Complex(0.0, 2.0 * kPi * f1 * t))).real() * f1 * 2.0;
        CHECK(seis.traces(static_cast<Eigen::Index>(s), 0) ==
              Catch::Approx(expected).margin(1e-12));
    }
}

TEST_CASE("synthesis validation and the Nyquist flag") {
    const NodeSet nodes = generate_cartesian(3, 3, Rect{0.0, 1.0, 0.0, 1.0});
    WaveField a{0.0, Eigen::VectorXcd::Zero(9), 0.0};
    WaveField b{2.0 * kPi * 30.0, Eigen::VectorXcd::Ones(9), 0.0};
    // f_max = 30 > 0.5/dt = 20: flagged but not fatal.
    const Seismogram seis = synthesize_time({a, b}, {Point{0.0, 0.0}}, nodes, 0.025, 0.1);
    CHECK(seis.nyquist_warning);

    CHECK_THROWS_AS(synthesize_time({a}, {Point{0.0, 0.0}}, nodes, 0.025, 0.1),
                    validation_error);
    WaveField c{2.0 * kPi * 31.0, Eigen::VectorXcd::Zero(9), 0.0};
    WaveField d{2.0 * kPi * 45.0, Eigen::VectorXcd::Zero(9), 0.0};
    // Bins 0, 30, 31, 45 are not uniformly spaced.
    CHECK_THROWS_AS(synthesize_time({a, b, c, d}, {Point{0.0, 0.0}}, nodes, 0.025, 0.1),
                    validation_error);
    CHECK_THROWS_AS(synthesize_time({a, b}, {Point{0.0, 0.0}}, nodes, -0.1, 0.1),
                    validation_error);
}

TEST_CASE("calibrated RMS is zero against the reference itself") {
    const NodeSet nodes = generate_cartesian(30, 30, Rect{0.0, 1.0, 0.0, 1.0});
    const double omega = 16.0, c = 1.0;
    const Point source = nodes.coords[nodes.nearest_node(Point{0.2, 0.8})];
    Eigen::VectorXcd field(static_cast<Eigen::Index>(nodes.size()));
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double r = (nodes.coords[i] - source).norm();
        // Keep the singular node finite; it is excluded by the mask anyway.
        field(static_cast<Eigen::Index>(i)) =
            r == 0.0 ? Complex(1.0, 0.0)
                     : greens_reference(omega, c, source, {nodes.coords[i]})(0);
    }
    const GreensComparison cmp =
        greens_rms_error(nodes, field, omega, c, source, 2.0 / 29.0);
    CHECK(std::abs(cmp.calibration - Complex(1.0, 0.0)) < 1e-12);
    CHECK(cmp.rms < 1e-12);
    CHECK(cmp.included_nodes < nodes.size()); // the disk mask removed nodes
    CHECK(cmp.included_nodes > 800);
}

TEST_CASE("source spectrum dispatch") {
    SourceSpec s;
    s.kind = SourceKind::dirac;
    CHECK(source_spectrum(s, 7.0) == Complex(1.0, 0.0));
    s.kind = SourceKind::ricker_paper;
    s.fc = 25.0;
    const double f = 10.0;
    CHECK(source_spectrum(s, 2.0 * kPi * f).real() ==
          Catch::Approx(ricker_spectrum_paper(f, 25.0)).epsilon(1e-14));
    s.kind = SourceKind::ricker_amini;
    s.f0 = 25.0;
    const Complex a = source_spectrum(s, 2.0 * kPi * f);
    CHECK(a.real() == Catch::Approx(ricker_spectrum_amini(f, 25.0).real()).epsilon(1e-12));
}
