#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "acoustic.hpp"
#include "config.hpp"

namespace hybridfd {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Shared experiment plumbing
// ---------------------------------------------------------------------------

namespace detail {

inline std::chrono::steady_clock::time_point tick() { return std::chrono::steady_clock::now(); }

inline double median3(double a, double b, double c) {
    return std::max(std::min(a, b), std::min(std::max(a, b), c));
}

} // namespace detail

// Run-report builder plus output-directory handle. Every CSV goes through
// csv() so the manifest in report.json lists exactly the files written;
// report.json itself is written last, atomically.
class ExperimentIo {
public:
    ExperimentIo(std::filesystem::path out_dir, const Config& cfg) : out_dir_(std::move(out_dir)) {
        std::filesystem::create_directories(out_dir_);
        json echo = json::object();
        for (const auto& [key, value] : cfg.raw()) echo[key] = value;
        report_["config"] = std::move(echo);
        report_["phases"] = json::object();
        report_["metrics"] = json::object();
        report_["notes"] = json::array();
        report_["files"] = json::array();
    }

    CsvWriter csv(const std::string& name, const std::vector<std::string>& columns) {
        manifest_.push_back(name);
        return CsvWriter(out_dir_ / name, columns);
    }

    void register_file(const std::string& name) { manifest_.push_back(name); }

    std::filesystem::path file(const std::string& name) const { return out_dir_ / name; }
    const std::filesystem::path& dir() const { return out_dir_; }

    void phase(const std::string& name, double seconds) { report_["phases"][name] = seconds; }
    void add_phase(const std::string& name, double seconds) {
        double prev = report_["phases"].value(name, 0.0);
        report_["phases"][name] = prev + seconds;
    }
    json& metrics() { return report_["metrics"]; }
    void note(const std::string& text) { report_["notes"].push_back(text); }

    // Write report.json (temp-then-rename, like every other artifact).
    std::filesystem::path finish() {
        report_["files"] = manifest_;
        const std::filesystem::path final_path = out_dir_ / "report.json";
        const std::filesystem::path tmp_path = final_path.string() + ".tmp";
        {
            std::ofstream out(tmp_path);
            if (!out)
                throw validation_error("cannot open output file " + tmp_path.string());
            out << report_.dump(2) << '\n';
            if (!out)
                throw numerical_error("write failed for " + tmp_path.string());
        }
        std::filesystem::rename(tmp_path, final_path);
        return final_path;
    }

private:
    std::filesystem::path out_dir_;
    json report_;
    std::vector<std::string> manifest_;
};

// ---------------------------------------------------------------------------
// Config fragments shared by several experiments
// ---------------------------------------------------------------------------

inline KernelSpec parse_kernel(const Config& cfg, const std::string& prefix = "kernel.") {
    const std::string variant = cfg.get_string(prefix + "variant");
    if (variant == "gaussian") return KernelSpec::gaussian(cfg.get_double(prefix + "epsilon"));
    if (variant == "cubic") return KernelSpec::cubic();
    if (variant == "phs") return KernelSpec::phs(cfg.get_int(prefix + "m", 3));
    if (variant == "multiquadric")
        return KernelSpec::multiquadric(cfg.get_double(prefix + "epsilon"));
    if (variant == "inverse-multiquadric")
        return KernelSpec::inverse_multiquadric(cfg.get_double(prefix + "epsilon"));
    if (variant == "wendland") return KernelSpec::wendland(cfg.get_double(prefix + "epsilon"));
    if (variant == "hybrid") {
        const double eps = cfg.get_double(prefix + "epsilon");
        if (cfg.has(prefix + "alpha") || cfg.has(prefix + "beta"))
            return KernelSpec::hybrid_raw(eps, cfg.get_double(prefix + "alpha"),
                                          cfg.get_double(prefix + "beta"));
        return KernelSpec::hybrid(eps, cfg.get_double(prefix + "gamma"));
    }
    throw validation_error("unknown kernel variant '" + variant + "'");
}

inline Rect parse_domain(const Config& cfg) {
    Rect r{cfg.get_double("domain.x0"), cfg.get_double("domain.x1"), cfg.get_double("domain.z0"),
           cfg.get_double("domain.z1")};
    r.require_valid();
    return r;
}

struct NodeLayoutParams {
    std::string layout; // cartesian | halton | random
    int nx = 0, nz = 0; // cartesian
    int count = 0;      // halton / random
    bool ring = true;   // halton
    std::uint64_t seed = 0;
};

inline NodeLayoutParams parse_node_layout(const Config& cfg) {
    NodeLayoutParams p;
    p.layout = cfg.get_string("nodes.layout");
    if (p.layout == "cartesian") {
        p.nx = cfg.get_int("nodes.nx");
        p.nz = cfg.get_int("nodes.nz");
    } else if (p.layout == "halton") {
        p.count = cfg.get_int("nodes.count");
        p.ring = cfg.get_bool("nodes.ring", true);
    } else if (p.layout == "random") {
        p.count = cfg.get_int("nodes.count");
        p.seed = cfg.get_uint64("nodes.seed", 0);
    } else {
        throw validation_error("nodes.layout must be cartesian, halton, or random");
    }
    return p;
}

inline NodeSet make_nodes(const NodeLayoutParams& p, const Rect& domain) {
    if (p.layout == "cartesian") return generate_cartesian(p.nx, p.nz, domain);
    if (p.layout == "halton") return generate_halton(p.count, domain, p.ring);
    return generate_random(p.count, domain, p.seed);
}

// ---------------------------------------------------------------------------
// derive-test1: d/dx convergence across kernel settings (first numerical test)
// ---------------------------------------------------------------------------

struct DeriveTest1Params {
    Rect domain;
    std::string layout; // random | halton
    std::uint64_t seed = 0;
    std::vector<int> Ns;
    int stencil_n = 30;
    std::vector<DerivativeSetting> settings;
};

inline DeriveTest1Params parse_derive_test1(const Config& cfg) {
    DeriveTest1Params p;
    p.domain = parse_domain(cfg);
    p.layout = cfg.get_string("nodes.layout", "random");
    if (p.layout != "random" && p.layout != "halton")
        throw validation_error("derive-test1 supports nodes.layout random or halton");
    p.seed = cfg.get_uint64("nodes.seed", 0);
    p.Ns = cfg.get_int_list("Ns");
    for (std::size_t i = 1; i < p.Ns.size(); ++i)
        if (p.Ns[i] <= p.Ns[i - 1])
            throw validation_error("Ns must be strictly increasing");
    p.stencil_n = cfg.get_int("stencil.n", 30);
    const double eps = cfg.get_double("kernel.epsilon", 1.0);
    const double gamma = cfg.get_double("kernel.gamma", 1e-5);
    for (const std::string& name : cfg.get_string_list("settings")) {
        if (name == "ga")
            p.settings.push_back({name, KernelSpec::gaussian(eps), -1});
        else if (name == "ga+p4")
            p.settings.push_back({name, KernelSpec::gaussian(eps), 4});
        else if (name == "hybrid")
            p.settings.push_back({name, KernelSpec::hybrid(eps, gamma), -1});
        else if (name == "hybrid+p4")
            p.settings.push_back({name, KernelSpec::hybrid(eps, gamma), 4});
        else if (name == "phs3")
            p.settings.push_back({name, KernelSpec::phs(3), -1});
        else if (name == "phs3+p4")
            p.settings.push_back({name, KernelSpec::phs(3), 4});
        else
            throw validation_error("unknown derivative setting '" + name +
                                   "' (ga, ga+p4, hybrid, hybrid+p4, phs3, phs3+p4)");
    }
    return p;
}

inline void run_derive_test1(const DeriveTest1Params& p, ExperimentIo& io) {
    auto t0 = detail::tick();
    std::vector<NodeSet> node_sets;
    for (int N : p.Ns)
        node_sets.push_back(p.layout == "random" ? generate_random(N, p.domain, p.seed)
                                                 : generate_halton(N, p.domain, false));
    io.phase("node_gen", detail::seconds_since(t0));

    for (std::size_t s = 0; s < node_sets.size(); ++s) {
        const std::string name = "nodes_N" + std::to_string(p.Ns[s]) + ".csv";
        write_nodes_csv(node_sets[s], io.file(name));
        io.register_file(name);
    }

    t0 = detail::tick();
    const DerivativeStudyResult study = test1_derivative_study(p.settings, node_sets, p.stencil_n);
    io.phase("assembly", detail::seconds_since(t0));
    io.phase("solve", 0.0); // operator application only; no linear solve here

    t0 = detail::tick();
    CsvWriter conv = io.csv("convergence.csv", {"setting", "N", "h", "linf", "ill_conditioned_rows"});
    for (const auto& row : study.rows)
        conv.write_row_strings({row.setting, std::to_string(row.N), format_double(row.h),
                                format_double(row.linf), std::to_string(row.ill_conditioned_rows)});
    conv.close();

    CsvWriter slopes = io.csv("slopes.csv", {"setting", "slope"});
    for (const auto& [name, slope] : study.slopes) {
        slopes.write_row_strings({name, format_double(slope)});
        io.metrics()["slope." + name] = slope;
    }
    slopes.close();
    io.phase("post", detail::seconds_since(t0));
    io.note("errors measured as l-infinity of d/dx applied to sin(x)+cos(z) against cos(x)");
    io.note("local solves run tolerantly: ill-conditioned stencils are counted, not fatal");
}

// ---------------------------------------------------------------------------
// helmholtz-test2: one modified-Helmholtz solve with manufactured solution
// ---------------------------------------------------------------------------

struct HelmholtzTest2Params {
    double k = 9.0;
    NodeLayoutParams nodes;
    KernelSpec kernel = KernelSpec::hybrid(1.0, 1e-3);
    int stencil_n = 10;
    int poly_degree = -1;
};

inline HelmholtzTest2Params parse_helmholtz_test2(const Config& cfg) {
    HelmholtzTest2Params p;
    p.k = cfg.get_double("problem.k", 9.0);
    p.nodes = parse_node_layout(cfg);
    p.kernel = parse_kernel(cfg);
    p.stencil_n = cfg.get_int("stencil.n", 10);
    p.poly_degree = cfg.get_int("poly.degree", -1);
    return p;
}

inline void run_helmholtz_test2(const HelmholtzTest2Params& p, ExperimentIo& io) {
    BvpProblem problem = test2_problem(p.k);
    problem.kernel = p.kernel;
    problem.stencil_n = p.stencil_n;
    problem.poly_degree = p.poly_degree;

    auto t0 = detail::tick();
    const NodeSet nodes = make_nodes(p.nodes, problem.domain);
    io.phase("node_gen", detail::seconds_since(t0));
    write_nodes_csv(nodes, io.file("nodes.csv"));
    io.register_file("nodes.csv");

    const BvpSolution sol = solve_bvp(problem, nodes);
    io.phase("assembly", sol.assembly_seconds);
    io.phase("solve", sol.solve_seconds);

    t0 = detail::tick();
    CsvWriter out = io.csv("solution.csv", {"x", "z", "re", "im", "exact", "abs_err"});
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const Complex v = sol.values(static_cast<Eigen::Index>(i));
        const double exact = problem.exact(nodes.coords[i]);
        out.write_row({nodes.coords[i].x(), nodes.coords[i].y(), v.real(), v.imag(), exact,
                       std::abs(v.real() - exact)});
    }
    out.close();

    io.metrics()["linf"] = linf_error(sol.values, nodes, problem.exact);
    io.metrics()["rms"] = rms_error(sol.values, nodes, problem.exact);
    io.metrics()["rel_residual"] = sol.rel_residual;
    io.metrics()["residual_warning"] = sol.residual_warning;
    io.metrics()["N"] = nodes.size();
    io.metrics()["fill_distance"] = fill_distance(nodes);
    io.phase("post", detail::seconds_since(t0));
}

// ---------------------------------------------------------------------------
// eigen-spectra: eigenvalues of the Laplacian L^FD after Dirichlet elimination
// ---------------------------------------------------------------------------

struct EigenSpectraParams {
    Rect domain;
    NodeLayoutParams nodes;
    KernelSpec kernel = KernelSpec::hybrid(1.0, 1e-3);
    std::vector<int> n_list;
};

inline EigenSpectraParams parse_eigen_spectra(const Config& cfg) {
    EigenSpectraParams p;
    p.domain = parse_domain(cfg);
    p.nodes = parse_node_layout(cfg);
    p.kernel = parse_kernel(cfg);
    p.n_list = cfg.get_int_list("stencil.n_list");
    return p;
}

inline void run_eigen_spectra(const EigenSpectraParams& p, ExperimentIo& io) {
    auto t0 = detail::tick();
    const NodeSet nodes = make_nodes(p.nodes, p.domain);
    io.phase("node_gen", detail::seconds_since(t0));
    write_nodes_csv(nodes, io.file("nodes.csv"));
    io.register_file("nodes.csv");

    BoundaryMap dirichlet;
    for (int side : {side_gamma1, side_gamma2, side_gamma3, side_gamma4})
        dirichlet[side] = BoundaryCondition{RowKind::dirichlet, {}};

    for (int n : p.n_list) {
        const std::string tag = "n" + std::to_string(n);
        t0 = detail::tick();
        const StencilMap stencils = nearest_neighbors(nodes, n);
        const AssemblyResult assembled = assemble_global(nodes, stencils, p.kernel,
                                                         DiffOperatorSpec::laplacian(), dirichlet);
        io.add_phase("assembly", detail::seconds_since(t0));

        write_sparsity_csv(assembled.op, io.file("sparsity_" + tag + ".csv"));
        io.register_file("sparsity_" + tag + ".csv");

        t0 = detail::tick();
        const auto interior = eliminate_dirichlet(assembled.op);
        const Eigen::VectorXcd lambda = full_spectrum(interior);
        io.add_phase("solve", detail::seconds_since(t0));

        CsvWriter out = io.csv("spectrum_" + tag + ".csv", {"re", "im"});
        double max_re = -std::numeric_limits<double>::infinity(), max_abs = 0.0;
        for (Eigen::Index i = 0; i < lambda.size(); ++i) {
            out.write_row({lambda(i).real(), lambda(i).imag()});
            max_re = std::max(max_re, lambda(i).real());
            max_abs = std::max(max_abs, std::abs(lambda(i)));
        }
        out.close();
        io.metrics()["max_re." + tag] = max_re;
        io.metrics()["max_abs." + tag] = max_abs;
    }
    io.note("spectra are of the interior (Dirichlet-eliminated) Laplacian block");
}

// ---------------------------------------------------------------------------
// epsilon-gamma-map: error/conditioning surfaces over kernel parameters
// ---------------------------------------------------------------------------

struct EpsilonGammaParams {
    double k = 9.0;
    NodeLayoutParams nodes;
    int stencil_n = 10;
    std::vector<double> epsilons;
    std::vector<double> gammas;
};

inline EpsilonGammaParams parse_epsilon_gamma_map(const Config& cfg) {
    EpsilonGammaParams p;
    p.k = cfg.get_double("problem.k", 9.0);
    p.nodes = parse_node_layout(cfg);
    p.stencil_n = cfg.get_int("stencil.n", 10);
    p.epsilons = cfg.get_double_list("map.epsilons");
    p.gammas = cfg.get_double_list("map.gammas");
    for (double g : p.gammas)
        if (g < 0.0)
            throw validation_error("map.gammas must be nonnegative");
    for (double e : p.epsilons)
        if (e <= 0.0)
            throw validation_error("map.epsilons must be positive");
    return p;
}

inline void run_epsilon_gamma_map(const EpsilonGammaParams& p, ExperimentIo& io) {
    BvpProblem problem = test2_problem(p.k);
    problem.stencil_n = p.stencil_n;

    auto t0 = detail::tick();
    const NodeSet nodes = make_nodes(p.nodes, problem.domain);
    io.phase("node_gen", detail::seconds_since(t0));
    write_nodes_csv(nodes, io.file("nodes.csv"));
    io.register_file("nodes.csv");

    t0 = detail::tick();
    const EpsilonGammaMap map = epsilon_gamma_map(problem, nodes, p.epsilons, p.gammas);
    io.phase("solve", detail::seconds_since(t0));

    t0 = detail::tick();
    CsvWriter out = io.csv("error_map.csv", {"epsilon", "gamma", "linf", "max_local_condition"});
    int nan_cells = 0;
    for (std::size_t ie = 0; ie < p.epsilons.size(); ++ie) {
        for (std::size_t ig = 0; ig < p.gammas.size(); ++ig) {
            const double err = map.error(static_cast<Eigen::Index>(ie), static_cast<Eigen::Index>(ig));
            nan_cells += std::isnan(err);
            out.write_row({p.epsilons[ie], p.gammas[ig], err,
                           map.max_local_condition(static_cast<Eigen::Index>(ie),
                                                   static_cast<Eigen::Index>(ig))});
        }
    }
    out.close();
    io.metrics()["cells"] = p.epsilons.size() * p.gammas.size();
    io.metrics()["failed_cells"] = nan_cells;
    io.phase("post", detail::seconds_since(t0));
    io.note("failed solves are NaN cells, never aborts");
}

// ---------------------------------------------------------------------------
// converge: second-test l-infinity error over a grid-refinement sequence
// ---------------------------------------------------------------------------

struct ConvergeParams {
    double k = 9.0;
    KernelSpec kernel = KernelSpec::hybrid(0.9, 1e-3);
    int stencil_n = 10;
    int poly_degree = -1;
    std::vector<int> grids; // nx = nz per refinement step
};

inline ConvergeParams parse_converge(const Config& cfg) {
    ConvergeParams p;
    p.k = cfg.get_double("problem.k", 9.0);
    p.kernel = parse_kernel(cfg);
    p.stencil_n = cfg.get_int("stencil.n", 10);
    p.poly_degree = cfg.get_int("poly.degree", -1);
    p.grids = cfg.get_int_list("grids");
    for (std::size_t i = 0; i < p.grids.size(); ++i) {
        if (p.grids[i] < 2)
            throw validation_error("grids entries must be >= 2");
        if (i > 0 && p.grids[i] <= p.grids[i - 1])
            throw validation_error("grids must be strictly increasing");
    }
    return p;
}

inline void run_converge(const ConvergeParams& p, ExperimentIo& io) {
    BvpProblem problem = test2_problem(p.k);
    problem.kernel = p.kernel;
    problem.stencil_n = p.stencil_n;
    problem.poly_degree = p.poly_degree;

    CsvWriter out = io.csv("convergence.csv",
                           {"N", "h", "linf", "rel_residual", "assembly_s", "solve_s"});
    std::vector<double> hs, errs;
    for (int m : p.grids) {
        auto t0 = detail::tick();
        const NodeSet nodes = generate_cartesian(m, m, problem.domain);
        io.add_phase("node_gen", detail::seconds_since(t0));
        const BvpSolution sol = solve_bvp(problem, nodes);
        io.add_phase("assembly", sol.assembly_seconds);
        io.add_phase("solve", sol.solve_seconds);
        const double linf = linf_error(sol.values, nodes, problem.exact);
        const double h = fill_distance(nodes);
        out.write_row({static_cast<double>(nodes.size()), h, linf, sol.rel_residual,
                       sol.assembly_seconds, sol.solve_seconds});
        hs.push_back(h);
        errs.push_back(linf);
        io.metrics()["linf.N" + std::to_string(nodes.size())] = linf;
    }
    out.close();
    io.metrics()["slope"] = loglog_slope(hs, errs);
}

// ---------------------------------------------------------------------------
// timing: wall-clock phases for RBF-FD kernels and the 5-point FD comparator
// ---------------------------------------------------------------------------

struct TimingParams {
    double k = 9.0;
    double epsilon = 1.0;
    double gamma = 1e-3;
    std::vector<std::string> methods; // subset of {ga, hybrid, fd5}
    std::vector<int> grids;
    int stencil_n = 10;
    int poly_degree = -1;
    int repeats = 3;
};

inline TimingParams parse_timing(const Config& cfg) {
    TimingParams p;
    p.k = cfg.get_double("problem.k", 9.0);
    p.epsilon = cfg.get_double("kernel.epsilon", 1.0);
    p.gamma = cfg.get_double("kernel.gamma", 1e-3);
    p.methods = cfg.get_string_list("methods");
    for (const auto& m : p.methods)
        if (m != "ga" && m != "hybrid" && m != "fd5")
            throw validation_error("timing methods must be among ga, hybrid, fd5");
    p.grids = cfg.get_int_list("grids");
    for (std::size_t i = 0; i < p.grids.size(); ++i) {
        if (p.grids[i] < 3)
            throw validation_error("grids entries must be >= 3");
        if (i > 0 && p.grids[i] <= p.grids[i - 1])
            throw validation_error("grids must be ascending");
    }
    p.stencil_n = cfg.get_int("stencil.n", 10);
    p.poly_degree = cfg.get_int("poly.degree", -1);
    p.repeats = cfg.get_int("timing.repeats", 3);
    if (p.repeats != 3)
        throw validation_error("timing.repeats is fixed to 3 (median-of-3 protocol)");
    return p;
}

namespace detail {

struct TimedSolve {
    double assembly = 0.0, factorization = 0.0, solve = 0.0;
    double linf = 0.0;
};

// One full assemble-factorize-solve pass with per-phase wall times.
inline TimedSolve timed_solve_pass(const BvpProblem& problem, const NodeSet& nodes,
                                   const StencilMap& stencils, const Eigen::VectorXcd& rhs,
                                   bool fd5, int nx, int nz) {
    TimedSolve out;
    auto t0 = tick();
    const GlobalOperator op = fd5 ? assemble_fd5(nodes, nx, nz, problem.k, problem.sign)
                                  : assemble_bvp(problem, nodes, stencils).op;
    out.assembly = detail::seconds_since(t0);

    t0 = tick();
    Eigen::SparseMatrix<Complex> colmaj(op.matrix);
    Eigen::SparseLU<Eigen::SparseMatrix<Complex>> lu;
    lu.analyzePattern(colmaj);
    lu.factorize(colmaj);
    if (lu.info() != Eigen::Success)
        throw singular_error("sparse factorization failed in timing pass");
    out.factorization = detail::seconds_since(t0);

    t0 = tick();
    const Eigen::VectorXcd x = lu.solve(rhs);
    out.solve = detail::seconds_since(t0);

    out.linf = linf_error(x, nodes, problem.exact);
    return out;
}

} // namespace detail

inline void run_timing(const TimingParams& p, ExperimentIo& io) {
    CsvWriter out = io.csv("timing.csv", {"method", "N", "assembly_s", "factorization_s",
                                          "solve_s", "total_s", "linf"});
    std::map<std::string, double> total_at_largest;
    for (const std::string& method : p.methods) {
        BvpProblem problem = test2_problem(p.k);
        problem.stencil_n = p.stencil_n;
        problem.poly_degree = p.poly_degree;
        problem.kernel = method == "hybrid" ? KernelSpec::hybrid(p.epsilon, p.gamma)
                                            : KernelSpec::gaussian(p.epsilon);
        for (int m : p.grids) {
            auto t0 = detail::tick();
            const NodeSet nodes = generate_cartesian(m, m, problem.domain);
            const StencilMap stencils =
                method == "fd5" ? StencilMap{} : nearest_neighbors(nodes, p.stencil_n);
            io.add_phase("node_gen", detail::seconds_since(t0));
            const Eigen::VectorXcd rhs = bvp_rhs(problem, nodes);

            // Warm-up pass discarded, then median of three timed passes.
            std::vector<detail::TimedSolve> passes;
            for (int rep = 0; rep <= p.repeats; ++rep) {
                detail::TimedSolve pass =
                    detail::timed_solve_pass(problem, nodes, stencils, rhs, method == "fd5", m, m);
                if (rep > 0) passes.push_back(pass);
            }
            detail::TimedSolve med;
            med.assembly = detail::median3(passes[0].assembly, passes[1].assembly, passes[2].assembly);
            med.factorization = detail::median3(passes[0].factorization, passes[1].factorization,
                                                passes[2].factorization);
            med.solve = detail::median3(passes[0].solve, passes[1].solve, passes[2].solve);
            med.linf = passes.back().linf;
            const double total = med.assembly + med.factorization + med.solve;
            out.write_row_strings({method, std::to_string(nodes.size()),
                                   format_double(med.assembly), format_double(med.factorization),
                                   format_double(med.solve), format_double(total),
                                   format_double(med.linf)});
            if (m == p.grids.back()) total_at_largest[method] = total;
            io.add_phase("assembly", med.assembly);
            io.add_phase("factorization", med.factorization);
            io.add_phase("solve", med.solve);
        }
    }
    out.close();
    for (const auto& [method, total] : total_at_largest)
        io.metrics()["total_s." + method] = total;
    if (total_at_largest.count("ga") && total_at_largest.count("hybrid"))
        io.metrics()["hybrid_over_ga"] = total_at_largest["hybrid"] / total_at_largest["ga"];
    io.note("wall-clock, warm-up pass discarded, median of 3 repetitions per phase");
}

// ---------------------------------------------------------------------------
// acoustic-dirac: point-source Helmholtz vs the analytic Hankel reference
// ---------------------------------------------------------------------------

struct AcousticDiracParams {
    Rect domain;
    int nx = 60, nz = 60;
    double c = 1.0;
    double omega = 16.0;
    Point source{0.2, 0.8};
    KernelSpec kernel = KernelSpec::hybrid(1.0, 1e-5);
    int stencil_n = 10;
    double exclude_factor = 2.0; // RMS exclusion radius, in units of h
    bool compare_neumann = true;
};

inline AcousticDiracParams parse_acoustic_dirac(const Config& cfg) {
    AcousticDiracParams p;
    p.domain = parse_domain(cfg);
    p.nx = cfg.get_int("nodes.nx");
    p.nz = cfg.get_int("nodes.nz");
    p.c = cfg.get_double("velocity.c");
    p.omega = cfg.get_double("problem.omega");
    p.source = Point{cfg.get_double("source.x"), cfg.get_double("source.z")};
    p.kernel = parse_kernel(cfg);
    p.stencil_n = cfg.get_int("stencil.n", 10);
    p.exclude_factor = cfg.get_double("rms.exclude_factor", 2.0);
    p.compare_neumann = cfg.get_bool("compare.neumann", true);
    return p;
}

namespace detail {

// Field CSV with the calibrated analytic reference alongside (NaN at the
// singular source node).
inline void write_field_vs_greens(ExperimentIo& io, const std::string& name, const NodeSet& nodes,
                                  const Eigen::VectorXcd& field, double omega, double c,
                                  const Point& source, const Complex& calibration) {
    CsvWriter out = io.csv(name, {"x", "z", "re", "im", "greens_re", "greens_im"});
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double r = (nodes.coords[i] - source).norm();
        Complex g(std::nan(""), std::nan(""));
        if (r > 0.0) {
            const double x = omega * r / c;
            g = Complex(-bessel_y0(x) / 4.0, -bessel_j0(x) / 4.0);
        }
        const Complex v = calibration * field(static_cast<Eigen::Index>(i));
        out.write_row({nodes.coords[i].x(), nodes.coords[i].y(), v.real(), v.imag(), g.real(),
                       g.imag()});
    }
    out.close();
}

} // namespace detail

inline void run_acoustic_dirac(const AcousticDiracParams& p, ExperimentIo& io) {
    auto t0 = detail::tick();
    const NodeSet nodes = generate_cartesian(p.nx, p.nz, p.domain);
    const StencilMap stencils = nearest_neighbors(nodes, p.stencil_n);
    io.phase("node_gen", detail::seconds_since(t0));
    write_nodes_csv(nodes, io.file("nodes.csv"));
    io.register_file("nodes.csv");

    const double hx = p.domain.width() / (p.nx - 1);
    const double hz = p.domain.height() / (p.nz - 1);
    const VelocityModel model = VelocityModel::constant(p.c);
    const DiracSource dirac = dirac_source_vector(nodes, p.source, hx, hz);
    const Point snapped = nodes.coords[dirac.node];
    const double h = std::max(hx, hz);

    t0 = detail::tick();
    const AssemblyResult robin_sys = acoustic_system(nodes, stencils, model, p.omega, p.kernel);
    io.phase("assembly", detail::seconds_since(t0));
    t0 = detail::tick();
    const SparseSolveResult robin = sparse_direct_solve(robin_sys.op, dirac.vector);
    io.phase("solve", detail::seconds_since(t0));

    t0 = detail::tick();
    const GreensComparison robin_cmp =
        greens_rms_error(nodes, robin.x, p.omega, p.c, snapped, p.exclude_factor * h);
    detail::write_field_vs_greens(io, "field.csv", nodes, robin.x, p.omega, p.c, snapped,
                                  robin_cmp.calibration);

    io.metrics()["rms_robin"] = robin_cmp.rms;
    io.metrics()["rel_residual_robin"] = robin.rel_residual;
    io.metrics()["calibration_re"] = robin_cmp.calibration.real();
    io.metrics()["calibration_im"] = robin_cmp.calibration.imag();
    io.metrics()["reference_node"] = robin_cmp.reference_node;
    io.metrics()["included_nodes"] = robin_cmp.included_nodes;
    io.metrics()["source_node"] = dirac.node;
    io.metrics()["snap_distance"] = dirac.snap_distance;

    if (p.compare_neumann) {
        const AssemblyResult neumann_sys =
            acoustic_system(nodes, stencils, model, p.omega, p.kernel, /*absorbing=*/false);
        const SparseSolveResult neumann = sparse_direct_solve(neumann_sys.op, dirac.vector);
        const GreensComparison neumann_cmp =
            greens_rms_error(nodes, neumann.x, p.omega, p.c, snapped, p.exclude_factor * h);
        detail::write_field_vs_greens(io, "field_neumann.csv", nodes, neumann.x, p.omega, p.c,
                                      snapped, neumann_cmp.calibration);
        io.metrics()["rms_neumann"] = neumann_cmp.rms;
        io.metrics()["rel_residual_neumann"] = neumann.rel_residual;
        io.metrics()["neumann_over_robin"] = neumann_cmp.rms / robin_cmp.rms;
    }
    io.phase("post", detail::seconds_since(t0));
    io.note("one complex calibration constant fitted at the node nearest the domain center, then frozen");
    io.note("RMS excludes a disk of rms.exclude_factor*h around the source (analytic singularity)");
    io.note("Dirac normalization 1/(hx*hz)^2 kept as printed; calibration absorbs the convention");
}

// ---------------------------------------------------------------------------
// acoustic-freqs: monochromatic Ricker-weighted fields at listed frequencies
// ---------------------------------------------------------------------------

struct AcousticFreqsParams {
    Rect domain;
    int nx = 50, nz = 50;
    double c = 2000.0;
    Point source{200.0, 200.0};
    std::vector<double> freqs;
    std::string source_kind = "ricker-paper";
    double fc = 0.0; // 0: cutoff frequency follows the solved frequency
    double f0 = 25.0;
    KernelSpec kernel = KernelSpec::hybrid(1e-3, 1e-14);
    int stencil_n = 10;
};

inline AcousticFreqsParams parse_acoustic_freqs(const Config& cfg) {
    AcousticFreqsParams p;
    p.domain = parse_domain(cfg);
    p.nx = cfg.get_int("nodes.nx");
    p.nz = cfg.get_int("nodes.nz");
    p.c = cfg.get_double("velocity.c");
    p.source = Point{cfg.get_double("source.x"), cfg.get_double("source.z")};
    p.freqs = cfg.get_double_list("frequencies");
    for (double f : p.freqs)
        if (f <= 0.0)
            throw validation_error("frequencies must be positive");
    p.source_kind = cfg.get_string("source.kind", "ricker-paper");
    if (p.source_kind != "ricker-paper" && p.source_kind != "ricker-amini" &&
        p.source_kind != "dirac")
        throw validation_error("source.kind must be dirac, ricker-paper, or ricker-amini");
    p.fc = cfg.get_double("source.fc", 0.0);
    p.f0 = cfg.get_double("source.f0", 25.0);
    p.kernel = parse_kernel(cfg);
    p.stencil_n = cfg.get_int("stencil.n", 10);
    return p;
}

inline void run_acoustic_freqs(const AcousticFreqsParams& p, ExperimentIo& io) {
    auto t0 = detail::tick();
    const NodeSet nodes = generate_cartesian(p.nx, p.nz, p.domain);
    const StencilMap stencils = nearest_neighbors(nodes, p.stencil_n);
    io.phase("node_gen", detail::seconds_since(t0));
    write_nodes_csv(nodes, io.file("nodes.csv"));
    io.register_file("nodes.csv");

    const VelocityModel model = VelocityModel::constant(p.c);
    SourceSpec source;
    source.location = p.source;
    source.hx = p.domain.width() / (p.nx - 1);
    source.hz = p.domain.height() / (p.nz - 1);
    source.kind = p.source_kind == "dirac" ? SourceKind::dirac
                  : p.source_kind == "ricker-paper" ? SourceKind::ricker_paper
                                                    : SourceKind::ricker_amini;
    source.f0 = p.f0;

    bool all_finite = true;
    double worst_residual = 0.0;
    for (double f : p.freqs) {
        source.fc = p.fc > 0.0 ? p.fc : f; // field at the wavelet's own peak frequency
        t0 = detail::tick();
        const WaveField field =
            solve_frequency(nodes, stencils, model, 2.0 * M_PI * f, source, p.kernel);
        io.add_phase("solve", detail::seconds_since(t0));

        const std::string tag = format_double(f);
        CsvWriter out = io.csv("field_f" + tag + ".csv", {"x", "z", "re", "im"});
        double max_abs = 0.0;
        bool finite = true;
        for (std::size_t i = 0; i < nodes.size(); ++i) {
            const Complex v = field.p(static_cast<Eigen::Index>(i));
            finite = finite && std::isfinite(v.real()) && std::isfinite(v.imag());
            max_abs = std::max(max_abs, std::abs(v));
            out.write_row({nodes.coords[i].x(), nodes.coords[i].y(), v.real(), v.imag()});
        }
        out.close();
        all_finite = all_finite && finite;
        worst_residual = std::max(worst_residual, field.rel_residual);
        io.metrics()["rel_residual.f" + tag] = field.rel_residual;
        io.metrics()["max_abs.f" + tag] = max_abs;
        io.metrics()["finite.f" + tag] = finite;
    }
    io.metrics()["all_finite"] = all_finite;
    io.metrics()["worst_rel_residual"] = worst_residual;
    if (p.fc <= 0.0)
        io.note("Ricker cutoff frequency follows each solved frequency (fields at the spectral peak)");
    io.note("factorizations are not reused across frequencies: the operator depends on omega");
}

// ---------------------------------------------------------------------------
// acoustic-halton: the Dirac run on quasi-random nodes with a boundary ring
// ---------------------------------------------------------------------------

struct AcousticHaltonParams {
    Rect domain;
    int count = 3481;
    bool ring = true;
    double c = 1.0;
    double omega = 16.0;
    Point source{0.2, 0.8};
    KernelSpec kernel = KernelSpec::hybrid(1.0, 1e-5);
    int stencil_n = 10;
    double exclude_factor = 2.0;
};

inline AcousticHaltonParams parse_acoustic_halton(const Config& cfg) {
    AcousticHaltonParams p;
    p.domain = parse_domain(cfg);
    p.count = cfg.get_int("nodes.count");
    p.ring = cfg.get_bool("nodes.ring", true);
    p.c = cfg.get_double("velocity.c");
    p.omega = cfg.get_double("problem.omega");
    p.source = Point{cfg.get_double("source.x"), cfg.get_double("source.z")};
    p.kernel = parse_kernel(cfg);
    p.stencil_n = cfg.get_int("stencil.n", 10);
    p.exclude_factor = cfg.get_double("rms.exclude_factor", 2.0);
    return p;
}

inline void run_acoustic_halton(const AcousticHaltonParams& p, ExperimentIo& io) {
    auto t0 = detail::tick();
    const NodeSet nodes = generate_halton(p.count, p.domain, p.ring);
    const StencilMap stencils = nearest_neighbors(nodes, p.stencil_n);
    io.phase("node_gen", detail::seconds_since(t0));
    write_nodes_csv(nodes, io.file("nodes.csv"));
    io.register_file("nodes.csv");

    // Scattered layout: the mean spacing stands in for both grid spacings in
    // the Dirac normalization and the snap rule.
    const double h = fill_distance(nodes);
    const VelocityModel model = VelocityModel::constant(p.c);
    const DiracSource dirac = dirac_source_vector(nodes, p.source, h, h);
    const Point snapped = nodes.coords[dirac.node];

    t0 = detail::tick();
    const AssemblyResult system = acoustic_system(nodes, stencils, model, p.omega, p.kernel);
    io.phase("assembly", detail::seconds_since(t0));
    t0 = detail::tick();
    const SparseSolveResult solved = sparse_direct_solve(system.op, dirac.vector);
    io.phase("solve", detail::seconds_since(t0));

    t0 = detail::tick();
    const GreensComparison cmp =
        greens_rms_error(nodes, solved.x, p.omega, p.c, snapped, p.exclude_factor * h);
    detail::write_field_vs_greens(io, "field.csv", nodes, solved.x, p.omega, p.c, snapped,
                                  cmp.calibration);
    io.metrics()["rms"] = cmp.rms;
    io.metrics()["rel_residual"] = solved.rel_residual;
    io.metrics()["calibration_re"] = cmp.calibration.real();
    io.metrics()["calibration_im"] = cmp.calibration.imag();
    io.metrics()["source_node"] = dirac.node;
    io.metrics()["snap_distance"] = dirac.snap_distance;
    io.metrics()["fill_distance"] = h;
    io.phase("post", detail::seconds_since(t0));
    io.note("Dirac spacing for scattered nodes uses the fill distance for both hx and hz");
}

// ---------------------------------------------------------------------------
// acoustic-time: frequency sweep and inverse transform to seismogram traces
// ---------------------------------------------------------------------------

struct AcousticTimeParams {
    Rect domain;
    int nx = 32, nz = 32;
    double c = 2000.0;
    Point source{150.0, 10.0};
    double f0 = 25.0;
    double f_max = 80.0, df = 1.0;
    double dt = 0.0125, T = 1.0;
    std::vector<double> recv_x;
    double recv_z = 10.0;
    KernelSpec kernel = KernelSpec::hybrid(1e-3, 1e-14);
    int stencil_n = 10;
    double first_break_threshold = 0.05; // fraction of each trace's max |amplitude|
};

inline AcousticTimeParams parse_acoustic_time(const Config& cfg) {
    AcousticTimeParams p;
    p.domain = parse_domain(cfg);
    p.nx = cfg.get_int("nodes.nx");
    p.nz = cfg.get_int("nodes.nz");
    p.c = cfg.get_double("velocity.c");
    p.source = Point{cfg.get_double("source.x"), cfg.get_double("source.z")};
    p.f0 = cfg.get_double("source.f0", 25.0);
    p.f_max = cfg.get_double("sweep.f_max");
    p.df = cfg.get_double("sweep.df", 1.0);
    if (!(p.df > 0.0) || !(p.f_max > 0.0))
        throw validation_error("sweep.f_max and sweep.df must be positive");
    p.dt = cfg.get_double("time.dt");
    p.T = cfg.get_double("time.T");
    p.recv_x = cfg.get_double_list("receivers.x");
    p.recv_z = cfg.get_double("receivers.z");
    p.kernel = parse_kernel(cfg);
    p.stencil_n = cfg.get_int("stencil.n", 10);
    p.first_break_threshold = cfg.get_double("first_break.threshold", 0.05);
    return p;
}

inline void run_acoustic_time(const AcousticTimeParams& p, ExperimentIo& io) {
    auto t0 = detail::tick();
    const NodeSet nodes = generate_cartesian(p.nx, p.nz, p.domain);
    const StencilMap stencils = nearest_neighbors(nodes, p.stencil_n);
    io.phase("node_gen", detail::seconds_since(t0));
    write_nodes_csv(nodes, io.file("nodes.csv"));
    io.register_file("nodes.csv");

    const VelocityModel model = VelocityModel::constant(p.c);
    SourceSpec source;
    source.kind = SourceKind::ricker_amini;
    source.location = p.source;
    source.f0 = p.f0;
    source.hx = p.domain.width() / (p.nx - 1);
    source.hz = p.domain.height() / (p.nz - 1);

    std::vector<double> freqs;
    const int bins = static_cast<int>(std::llround(p.f_max / p.df));
    for (int b = 0; b <= bins; ++b) freqs.push_back(p.df * b);

    t0 = detail::tick();
    const std::vector<WaveField> fields =
        frequency_sweep(nodes, stencils, model, freqs, source, p.kernel);
    io.phase("solve", detail::seconds_since(t0));

    t0 = detail::tick();
    CsvWriter sweep = io.csv("sweep.csv", {"f", "rel_residual", "max_abs"});
    double worst_residual = 0.0;
    for (const WaveField& field : fields) {
        const double max_abs = field.p.size() ? field.p.cwiseAbs().maxCoeff() : 0.0;
        sweep.write_row({field.omega / (2.0 * M_PI), field.rel_residual, max_abs});
        worst_residual = std::max(worst_residual, field.rel_residual);
    }
    sweep.close();
    io.metrics()["worst_rel_residual"] = worst_residual;

    std::vector<Point> receivers;
    for (double x : p.recv_x) receivers.push_back({x, p.recv_z});
    const Seismogram seis = synthesize_time(fields, receivers, nodes, p.dt, p.T);
    io.metrics()["nyquist_warning"] = seis.nyquist_warning;
    if (seis.nyquist_warning)
        io.note("sweep extends beyond the 0.5/dt Nyquist limit; spectral content there must be negligible");

    CsvWriter traces = io.csv("seismogram.csv", {"t", "receiver_x", "value"});
    for (std::size_t rc = 0; rc < receivers.size(); ++rc)
        for (std::size_t s = 0; s < seis.times.size(); ++s)
            traces.write_row({seis.times[s], receivers[rc].x(),
                              seis.traces(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(rc))});
    traces.close();

    // First-break pick per trace: first sample whose magnitude reaches the
    // threshold fraction of that trace's peak magnitude.
    json breaks = json::array();
    for (std::size_t rc = 0; rc < receivers.size(); ++rc) {
        const auto col = seis.traces.col(static_cast<Eigen::Index>(rc));
        const double peak = col.cwiseAbs().maxCoeff();
        double t_break = std::nan("");
        if (peak > 0.0) {
            for (std::size_t s = 0; s < seis.times.size(); ++s) {
                if (std::abs(col(static_cast<Eigen::Index>(s))) >= p.first_break_threshold * peak) {
                    t_break = seis.times[s];
                    break;
                }
            }
        }
        breaks.push_back({{"x", receivers[rc].x()},
                          {"z", receivers[rc].y()},
                          {"node", seis.receiver_nodes[rc]},
                          {"first_break_s", t_break}});
    }
    io.metrics()["first_breaks"] = breaks;
    io.metrics()["first_break_threshold"] = p.first_break_threshold;
    io.phase("post", detail::seconds_since(t0));
    io.note("traces are the conjugate-symmetric inverse transform of the one-sided sweep");
}

// ---------------------------------------------------------------------------
// Dispatch
// ---------------------------------------------------------------------------

inline const std::vector<std::string>& experiment_kinds() {
    static const std::vector<std::string> kinds = {
        "derive-test1",  "helmholtz-test2", "eigen-spectra",  "epsilon-gamma-map",
        "converge",      "timing",          "acoustic-dirac", "acoustic-freqs",
        "acoustic-halton", "acoustic-time"};
    return kinds;
}

// Parse (and thereby validate) a config; if validate_only is false, run the
// experiment and return the path of the report written. Unknown keys are
// rejected in both modes.
inline std::filesystem::path run_experiment(const Config& cfg, bool validate_only) {
    const std::string kind = cfg.get_string("experiment");
    const std::filesystem::path out_dir = cfg.get_path("output_dir");

    const auto dispatch = [&](auto params, auto runner) -> std::filesystem::path {
        cfg.require_all_consumed();
        if (validate_only) return {};
        ExperimentIo io(out_dir, cfg);
        runner(params, io);
        return io.finish();
    };

    if (kind == "derive-test1") return dispatch(parse_derive_test1(cfg), run_derive_test1);
    if (kind == "helmholtz-test2") return dispatch(parse_helmholtz_test2(cfg), run_helmholtz_test2);
    if (kind == "eigen-spectra") return dispatch(parse_eigen_spectra(cfg), run_eigen_spectra);
    if (kind == "epsilon-gamma-map")
        return dispatch(parse_epsilon_gamma_map(cfg), run_epsilon_gamma_map);
    if (kind == "converge") return dispatch(parse_converge(cfg), run_converge);
    if (kind == "timing") return dispatch(parse_timing(cfg), run_timing);
    if (kind == "acoustic-dirac") return dispatch(parse_acoustic_dirac(cfg), run_acoustic_dirac);
    if (kind == "acoustic-freqs") return dispatch(parse_acoustic_freqs(cfg), run_acoustic_freqs);
    if (kind == "acoustic-halton") return dispatch(parse_acoustic_halton(cfg), run_acoustic_halton);
    if (kind == "acoustic-time") return dispatch(parse_acoustic_time(cfg), run_acoustic_time);

    std::string known;
    for (const auto& k : experiment_kinds()) known += " " + k;
    throw validation_error("unknown experiment '" + kind + "'; expected one of:" + known);
}

// ---------------------------------------------------------------------------
// Plot-script export: gnuplot sources next to the CSVs, never bitmaps
// ---------------------------------------------------------------------------

namespace detail {

inline void write_text_atomic(const std::filesystem::path& path, const std::string& text) {
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream out(tmp);
        if (!out)
            throw validation_error("cannot open output file " + tmp.string());
        out << text;
    }
    std::filesystem::rename(tmp, path);
}

inline std::string gp_header(const std::string& svg_name) {
    return "set datafile separator ','\n"
           "set key autotitle columnhead\n"
           "set terminal svg size 800,600\n"
           "set output '" + svg_name + "'\n";
}

} // namespace detail

// Emit one gnuplot script per recognized CSV artifact in a report directory.
// Returns the script paths written.
inline std::vector<std::filesystem::path> export_plots(const std::filesystem::path& report_dir) {
    const std::filesystem::path report_path = report_dir / "report.json";
    std::ifstream in(report_path);
    if (!in)
        throw validation_error("no report.json in " + report_dir.string());
    json report;
    try {
        in >> report;
    } catch (const nlohmann::json::exception& e) {
        throw validation_error("malformed report.json: " + std::string(e.what()));
    }

    std::vector<std::filesystem::path> written;
    const auto emit = [&](const std::string& csv, const std::string& body) {
        const std::string stem = std::filesystem::path(csv).stem().string();
        const std::filesystem::path gp = report_dir / (stem + ".gp");
        detail::write_text_atomic(gp, detail::gp_header(stem + ".svg") + body);
        written.push_back(gp);
    };

    for (const auto& item : report.value("files", json::array())) {
        const std::string name = item.get<std::string>();
        if (!std::filesystem::exists(report_dir / name))
            throw validation_error("manifest file missing: " + name);
        if (name.rfind("convergence", 0) == 0) {
            emit(name,
                 "set logscale xy\nset xlabel 'h'\nset ylabel 'l_inf error'\n"
                 "plot '" + name + "' using (column('h')):(column('linf')) with linespoints\n");
        } else if (name.rfind("spectrum_", 0) == 0) {
            emit(name, "set xlabel 'Re'\nset ylabel 'Im'\n"
                       "plot '" + name + "' using 1:2 with points pointtype 7 pointsize 0.4\n");
        } else if (name.rfind("sparsity", 0) == 0) {
            emit(name, "set xlabel 'col'\nset ylabel 'row'\nset yrange [*:*] reverse\n"
                       "plot '" + name + "' using 2:1 with dots\n");
        } else if (name.rfind("error_map", 0) == 0) {
            emit(name, "set logscale xy\nset logscale cb\nset xlabel 'gamma'\nset ylabel 'epsilon'\n"
                       "set view map\n"
                       "splot '" + name +
                           "' using (column('gamma')):(column('epsilon')):(column('linf')) with points "
                           "pointtype 5 pointsize 2 palette\n");
        } else if (name.rfind("field", 0) == 0) {
            emit(name, "set xlabel 'x'\nset ylabel 'z'\nset view map\n"
                       "splot '" + name + "' using 1:2:3 with points pointtype 5 pointsize 0.7 palette\n");
        } else if (name.rfind("seismogram", 0) == 0) {
            emit(name, "set xlabel 't (s)'\nset ylabel 'receiver x + scaled amplitude'\n"
                       "plot '" + name +
                           "' using (column('t')):(column('receiver_x')+40*column('value')) with dots\n");
        } else if (name.rfind("timing", 0) == 0) {
            emit(name, "set logscale xy\nset xlabel 'N'\nset ylabel 'seconds'\n"
                       "plot '" + name + "' using (column('N')):(column('total_s')) with linespoints\n");
        } else if (name.rfind("sweep", 0) == 0) {
            emit(name, "set xlabel 'f (Hz)'\nset ylabel 'max |p|'\n"
                       "plot '" + name + "' using (column('f')):(column('max_abs')) with linespoints\n");
        } else if (name.rfind("solution", 0) == 0) {
            emit(name, "set xlabel 'x'\nset ylabel 'z'\nset view map\n"
                       "splot '" + name +
                           "' using 1:2:(column('abs_err')) with points pointtype 5 pointsize 0.7 palette\n");
        } else if (name.rfind("nodes", 0) == 0) {
            emit(name, "set xlabel 'x'\nset ylabel 'z'\nset size ratio -1\n"
                       "plot '" + name + "' using 1:2 with points pointtype 7 pointsize 0.3\n");
        }
        // slopes.csv and other purely tabular artifacts have no plot.
    }
    return written;
}

} // namespace hybridfd
