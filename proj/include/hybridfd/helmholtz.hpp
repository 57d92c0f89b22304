#pragma once

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "sparse.hpp"

namespace hybridfd {

// One side of the boundary-value problem: condition kind, boundary data g,
// and the Robin identity coefficient where applicable.
struct SideCondition {
    RowKind kind = RowKind::dirichlet;
    std::function<double(const Point&)> data;
    Complex robin_coef{0.0, 0.0};
};

// Elliptic/Helmholtz boundary-value problem on a rectangle:
// (lap + sign*k^2) u = f inside, one condition per side.
struct BvpProblem {
    Rect domain;
    double k = 0.0;
    int sign = -1; // -1: modified Helmholtz (coercive), +1: acoustic convention
    std::function<double(const Point&)> forcing;
    std::map<int, SideCondition> sides;
    std::function<double(const Point&)> exact; // optional manufactured solution

    KernelSpec kernel = KernelSpec::hybrid(1.0, 1e-3);
    int stencil_n = 10;
    int poly_degree = -1;
};

struct BvpSolution {
    Eigen::VectorXcd values;
    double rel_residual = 0.0;
    bool residual_warning = false;
    double assembly_seconds = 0.0;
    double solve_seconds = 0.0;
};

namespace detail {
inline double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}
} // namespace detail

// Right-hand side of the collocation system: forcing samples on interior
// rows, boundary data on boundary rows (zero where a side gives no data).
inline Eigen::VectorXcd bvp_rhs(const BvpProblem& problem, const NodeSet& nodes) {
    Eigen::VectorXcd rhs(static_cast<Eigen::Index>(nodes.size()));
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (!nodes.is_boundary(i)) {
            rhs(static_cast<Eigen::Index>(i)) = problem.forcing(nodes.coords[i]);
        } else {
            const SideCondition& cond = problem.sides.at(nodes.side[i]);
            rhs(static_cast<Eigen::Index>(i)) = cond.data ? cond.data(nodes.coords[i]) : 0.0;
        }
    }
    return rhs;
}

// Collocation matrix for a BVP over a prebuilt stencil map (PDE row per
// interior node, BC row per boundary node).
inline AssemblyResult assemble_bvp(const BvpProblem& problem, const NodeSet& nodes,
                                   const StencilMap& stencils) {
    BoundaryMap bc;
    for (const auto& [side, cond] : problem.sides)
        bc[side] = BoundaryCondition{cond.kind, cond.robin_coef};
    AssemblyOptions options;
    options.poly_degree = problem.poly_degree;
    const DiffOperatorSpec interior = DiffOperatorSpec::helmholtz(problem.k, problem.sign);
    return assemble_global(nodes, stencils, problem.kernel, interior, bc, options);
}

// Assemble the square collocation system and solve it with the sparse
// direct path.
inline BvpSolution solve_bvp(const BvpProblem& problem, const NodeSet& nodes) {
    const auto t0 = std::chrono::steady_clock::now();
    const StencilMap stencils = nearest_neighbors(nodes, problem.stencil_n);
    AssemblyResult assembled = assemble_bvp(problem, nodes, stencils);
    const Eigen::VectorXcd rhs = bvp_rhs(problem, nodes);

    BvpSolution sol;
    sol.assembly_seconds = detail::seconds_since(t0);

    const auto t1 = std::chrono::steady_clock::now();
    SparseSolveResult solved = sparse_direct_solve(assembled.op, rhs);
    sol.solve_seconds = detail::seconds_since(t1);
    sol.values = std::move(solved.x);
    sol.rel_residual = solved.rel_residual;
    sol.residual_warning = solved.residual_warning;
    return sol;
}

// l-infinity error of the real part against a manufactured solution, taken
// over all nodes (the solution of a real system has exactly zero imaginary
// part, so the real part is the solution).
inline double linf_error(const Eigen::VectorXcd& values, const NodeSet& nodes,
                         const std::function<double(const Point&)>& exact) {
    double worst = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i)
        worst = std::max(worst,
                         std::abs(values(static_cast<Eigen::Index>(i)).real() - exact(nodes.coords[i])));
    return worst;
}

inline double rms_error(const Eigen::VectorXcd& values, const NodeSet& nodes,
                        const std::function<double(const Point&)>& exact) {
    double acc = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double d = values(static_cast<Eigen::Index>(i)).real() - exact(nodes.coords[i]);
        acc += d * d;
    }
    return std::sqrt(acc / static_cast<double>(nodes.size()));
}

// Least-squares slope of log(err) against log(h) over the whole data set
// (the paper's "log-log fit on the whole data").
inline double loglog_slope(const std::vector<double>& h, const std::vector<double>& err) {
    if (h.size() != err.size() || h.size() < 2)
        throw validation_error("loglog_slope needs matching vectors of length >= 2");
    const std::size_t m = h.size();
    double mx = 0.0, my = 0.0;
    std::vector<double> xs(m), ys(m);
    for (std::size_t i = 0; i < m; ++i) {
        xs[i] = std::log(h[i]);
        ys[i] = std::log(err[i]);
        mx += xs[i];
        my += ys[i];
    }
    mx /= static_cast<double>(m);
    my /= static_cast<double>(m);
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        num += (xs[i] - mx) * (ys[i] - my);
        den += (xs[i] - mx) * (xs[i] - mx);
    }
    return num / den;
}

// The paper's second numerical test: modified Helmholtz on [-1,1]^2 with
// exact solution u = sin(x^2 + z), Dirichlet data on Gamma1..3 and Neumann
// data du/dn = cos(x^2 + z) on Gamma4 (z = 1, where d/dn = d/dz). Kernel,
// stencil size, and augmentation stay at the caller's choice.
inline BvpProblem test2_problem(double k) {
    BvpProblem p;
    p.domain = Rect{-1.0, 1.0, -1.0, 1.0};
    p.k = k;
    p.sign = -1;
    p.exact = [](const Point& q) { return std::sin(q.x() * q.x() + q.y()); };
    p.forcing = [k](const Point& q) {
        const double s = q.x() * q.x() + q.y();
        return 2.0 * std::cos(s) - (4.0 * q.x() * q.x() + 1.0 + k * k) * std::sin(s);
    };
    auto dirichlet = SideCondition{RowKind::dirichlet,
                                   [](const Point& q) { return std::sin(q.x() * q.x() + q.y()); },
                                   {}};
    p.sides[side_gamma1] = dirichlet;
    p.sides[side_gamma2] = dirichlet;
    p.sides[side_gamma3] = dirichlet;
    p.sides[side_gamma4] = SideCondition{
        RowKind::neumann, [](const Point& q) { return std::cos(q.x() * q.x() + q.y()); }, {}};
    return p;
}

// One kernel configuration of the derivative-convergence study.
struct DerivativeSetting {
    std::string name;
    KernelSpec kernel;
    int poly_degree = -1; // -1: plain RBF weights
};

struct DerivativeStudyRow {
    std::string setting;
    int N = 0;
    double h = 0.0;
    double linf = 0.0;
    std::size_t ill_conditioned_rows = 0;
};

struct DerivativeStudyResult {
    std::vector<DerivativeStudyRow> rows;
    std::map<std::string, double> slopes; // per setting, over the whole data
};

// First numerical test: l-infinity error of the RBF-FD d/dx applied to
// sin(x) + cos(z), against cos(x), over a sequence of node sets. Stencil
// size is fixed (30 in the paper). Runs tolerantly: the flat-Gaussian
// breakdown is a result to record, not an error to stop on.
inline DerivativeStudyResult test1_derivative_study(
    const std::vector<DerivativeSetting>& settings, const std::vector<NodeSet>& node_sets,
    int stencil_n) {
    DerivativeStudyResult result;
    for (const auto& setting : settings) {
        std::vector<double> hs, errs;
        for (const NodeSet& nodes : node_sets) {
            const StencilMap stencils = nearest_neighbors(nodes, stencil_n);
            AssemblyOptions options;
            options.poly_degree = setting.poly_degree;
            options.tolerant = true;
            AssemblyResult assembled = assemble_rows(
                nodes, stencils, setting.kernel,
                [](std::size_t) { return RowSpec{RowKind::pde, false, DiffOperatorSpec::ddx()}; },
                options);
            Eigen::VectorXcd u(static_cast<Eigen::Index>(nodes.size()));
            for (std::size_t i = 0; i < nodes.size(); ++i)
                u(static_cast<Eigen::Index>(i)) =
                    std::sin(nodes.coords[i].x()) + std::cos(nodes.coords[i].y());
            const Eigen::VectorXcd du = assembled.op.matrix * u;
            const double linf = linf_error(du, nodes,
                                           [](const Point& q) { return std::cos(q.x()); });
            const double h = fill_distance(nodes);
            result.rows.push_back({setting.name, static_cast<int>(nodes.size()), h, linf,
                                   assembled.ill_conditioned_rows});
            hs.push_back(h);
            errs.push_back(linf);
        }
        result.slopes[setting.name] = loglog_slope(hs, errs);
    }
    return result;
}

struct EpsilonGammaMap {
    std::vector<double> epsilons;
    std::vector<double> gammas;
    // error(i,j) for epsilons[i], gammas[j]; NaN marks a failed solve.
    Eigen::MatrixXd error;
    Eigen::MatrixXd max_local_condition;
};

// Error and conditioning surfaces over a grid of hybrid-kernel parameters,
// for a fixed problem and node set. Failed cells become NaN, never aborts.
inline EpsilonGammaMap epsilon_gamma_map(const BvpProblem& problem_template,
                                         const NodeSet& nodes,
                                         const std::vector<double>& epsilons,
                                         const std::vector<double>& gammas) {
    EpsilonGammaMap map;
    map.epsilons = epsilons;
    map.gammas = gammas;
    const auto ne = static_cast<Eigen::Index>(epsilons.size());
    const auto ng = static_cast<Eigen::Index>(gammas.size());
    map.error.setConstant(ne, ng, std::nan(""));
    map.max_local_condition.setConstant(ne, ng, std::nan(""));

    const StencilMap stencils = nearest_neighbors(nodes, problem_template.stencil_n);
    for (Eigen::Index ie = 0; ie < ne; ++ie) {
        for (Eigen::Index ig = 0; ig < ng; ++ig) {
            BvpProblem problem = problem_template;
            const double gamma = gammas[static_cast<std::size_t>(ig)];
            const double eps = epsilons[static_cast<std::size_t>(ie)];
            problem.kernel = gamma == 0.0 ? KernelSpec::gaussian(eps)
                                          : KernelSpec::hybrid(eps, gamma);
            double worst_cond = 0.0;
            for (std::size_t i = 0; i < nodes.size(); ++i) {
                std::vector<Point> pts;
                pts.reserve(stencils[i].size());
                for (int j : stencils[i]) pts.push_back(nodes.coords[static_cast<std::size_t>(j)]);
                worst_cond = std::max(worst_cond, local_condition_number(problem.kernel, pts));
            }
            map.max_local_condition(ie, ig) = worst_cond;
            try {
                const BvpSolution sol = solve_bvp(problem, nodes);
                map.error(ie, ig) = linf_error(sol.values, nodes, problem.exact);
            } catch (const numerical_error&) {
                // NaN cell already in place.
            }
        }
    }
    return map;
}

// Classical second-order 5-point finite-difference discretization of the
// same modified-Helmholtz problem on a Cartesian grid; the timing study's
// comparator. Neumann rows use the second-order one-sided 3-point stencil.
inline GlobalOperator assemble_fd5(const NodeSet& nodes, int nx, int nz, double k, int sign) {
    const double hx = nodes.domain.width() / (nx - 1);
    const double hz = nodes.domain.height() / (nz - 1);
    std::vector<Eigen::Triplet<Complex>> t;
    GlobalOperator out;
    out.row_kind.resize(nodes.size());
    const auto id = [nx](int ix, int iz) { return iz * nx + ix; };
    for (int iz = 0; iz < nz; ++iz) {
        for (int ix = 0; ix < nx; ++ix) {
            const int i = id(ix, iz);
            const std::size_t iu = static_cast<std::size_t>(i);
            if (nodes.side[iu] == side_interior) {
                out.row_kind[iu] = RowKind::pde;
                t.emplace_back(i, i, Complex(-2.0 / (hx * hx) - 2.0 / (hz * hz) +
                                             static_cast<double>(sign) * k * k));
                t.emplace_back(i, id(ix - 1, iz), Complex(1.0 / (hx * hx)));
                t.emplace_back(i, id(ix + 1, iz), Complex(1.0 / (hx * hx)));
                t.emplace_back(i, id(ix, iz - 1), Complex(1.0 / (hz * hz)));
                t.emplace_back(i, id(ix, iz + 1), Complex(1.0 / (hz * hz)));
            } else if (nodes.side[iu] == side_gamma4) {
                // d/dz, one-sided second order from the top row downward.
                out.row_kind[iu] = RowKind::neumann;
                t.emplace_back(i, i, Complex(1.5 / hz));
                t.emplace_back(i, id(ix, iz - 1), Complex(-2.0 / hz));
                t.emplace_back(i, id(ix, iz - 2), Complex(0.5 / hz));
            } else {
                out.row_kind[iu] = RowKind::dirichlet;
                t.emplace_back(i, i, Complex(1.0));
            }
        }
    }
    out.matrix.resize(static_cast<Eigen::Index>(nodes.size()),
                      static_cast<Eigen::Index>(nodes.size()));
    out.matrix.setFromTriplets(t.begin(), t.end());
    out.matrix.makeCompressed();
    return out;
}

} // namespace hybridfd
