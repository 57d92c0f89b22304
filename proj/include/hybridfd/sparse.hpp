#pragma once

#include <filesystem>
#include <map>
#include <vector>

#include <Eigen/Sparse>
#include <Eigen/Eigenvalues>

#include "csv.hpp"
#include "neighbors.hpp"
#include "parallel.hpp"
#include "stencil.hpp"

namespace hybridfd {

enum class RowKind { pde, dirichlet, neumann, robin };

inline const char* row_kind_name(RowKind k) {
    switch (k) {
        case RowKind::pde: return "pde";
        case RowKind::dirichlet: return "dirichlet";
        case RowKind::neumann: return "neumann";
        case RowKind::robin: return "robin";
    }
    return "?";
}

// Assembled global operator: one row per node (PDE row for interior nodes,
// boundary-operator row otherwise). Compressed rows with strictly
// increasing column indices; Dirichlet rows hold a single diagonal 1.
struct GlobalOperator {
    Eigen::SparseMatrix<Complex, Eigen::RowMajor> matrix;
    std::vector<RowKind> row_kind;

    Eigen::Index rows() const { return matrix.rows(); }
};

// Per-side boundary condition kind; the Robin coefficient multiplies the
// identity part of the boundary operator (i*omega/c for absorbing rows).
struct BoundaryCondition {
    RowKind kind = RowKind::dirichlet; // dirichlet | neumann | robin
    Complex robin_coef{0.0, 0.0};
};

using BoundaryMap = std::map<int, BoundaryCondition>;

struct AssemblyOptions {
    int poly_degree = -1; // < 0: no augmentation
    // Accept ill-conditioned local solves (flat-kernel studies). The count
    // of flagged stencils is reported through ill_conditioned_rows.
    bool tolerant = false;
};

// Row recipe for one node, produced by the caller per node index.
struct RowSpec {
    RowKind kind = RowKind::pde;
    bool identity_row = false; // emit a lone diagonal 1 (Dirichlet closure)
    DiffOperatorSpec op;
};

struct AssemblyResult {
    GlobalOperator op;
    std::size_t ill_conditioned_rows = 0; // only populated when tolerant
};

// Generic row-wise assembly: computes local weights per node and scatters
// them onto the stencil's global indices (the incidence placement).
// Rows are gathered in node order, so the result does not depend on the
// parallel execution interleaving.
template <typename RowSpecFn>
AssemblyResult assemble_rows(const NodeSet& nodes, const StencilMap& stencils,
                             const KernelSpec& kernel, RowSpecFn&& row_spec,
                             const AssemblyOptions& options = {}) {
    const std::size_t N = nodes.size();
    if (stencils.size() != N)
        throw validation_error("stencil map does not match node set");

    std::vector<Eigen::VectorXcd> row_values(N);
    std::vector<RowKind> kinds(N);
    std::vector<char> flagged(N, 0);

    parallel_for(N, [&](std::size_t i) {
        const RowSpec spec = row_spec(i);
        kinds[i] = spec.kind;
        if (spec.identity_row) return; // single diagonal 1, no solve
        const auto& st = stencils[i];
        std::vector<Point> pts(st.size());
        for (std::size_t m = 0; m < st.size(); ++m)
            pts[m] = nodes.coords[static_cast<std::size_t>(st[m])];
        if (options.tolerant) {
            LocalSolveInfo info;
            row_values[i] = local_weights_tolerant(kernel, spec.op, options.poly_degree,
                                                   nodes.coords[i], pts, &info);
            flagged[i] = info.ill_conditioned ? 1 : 0;
        } else {
            try {
                row_values[i] = detail::solve_weights(kernel, spec.op, options.poly_degree,
                                                      nodes.coords[i], pts, false, nullptr);
            } catch (conditioning_error& e) {
                throw conditioning_error(
                    "node " + std::to_string(i) + ": " + e.what(), e.condition_estimate);
            }
        }
    });

    std::vector<Eigen::Triplet<Complex>> triplets;
    triplets.reserve(N * static_cast<std::size_t>(stencils.n));
    AssemblyResult result;
    for (std::size_t i = 0; i < N; ++i) {
        if (row_values[i].size() == 0) {
            triplets.emplace_back(static_cast<int>(i), static_cast<int>(i), Complex{1.0, 0.0});
            continue;
        }
        const auto& st = stencils[i];
        for (std::size_t m = 0; m < st.size(); ++m)
            triplets.emplace_back(static_cast<int>(i), st[m],
                                  row_values[i](static_cast<Eigen::Index>(m)));
        result.ill_conditioned_rows += flagged[i];
    }

    result.op.matrix.resize(static_cast<Eigen::Index>(N), static_cast<Eigen::Index>(N));
    result.op.matrix.setFromTriplets(triplets.begin(), triplets.end());
    result.op.matrix.makeCompressed();
    result.op.row_kind = std::move(kinds);
    return result;
}

// Standard assembly: one interior operator, per-side boundary conditions.
// Dirichlet rows are identity rows; Neumann/Robin rows are RBF-FD rows for
// the directional/Robin operator built with the node's own outward normal.
inline AssemblyResult assemble_global(const NodeSet& nodes, const StencilMap& stencils,
                                      const KernelSpec& kernel,
                                      const DiffOperatorSpec& interior_op,
                                      const BoundaryMap& boundary,
                                      const AssemblyOptions& options = {}) {
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes.is_boundary(i) && boundary.find(nodes.side[i]) == boundary.end())
            throw validation_error("no boundary condition for side " +
                                   std::to_string(nodes.side[i]));
    }
    return assemble_rows(
        nodes, stencils, kernel,
        [&](std::size_t i) -> RowSpec {
            if (!nodes.is_boundary(i)) return {RowKind::pde, false, interior_op};
            const BoundaryCondition& bc = boundary.at(nodes.side[i]);
            switch (bc.kind) {
                case RowKind::dirichlet:
                    return {RowKind::dirichlet, true, DiffOperatorSpec::identity()};
                case RowKind::neumann:
                    return {RowKind::neumann, false,
                            DiffOperatorSpec::directional(nodes.normal[i])};
                case RowKind::robin:
                    return {RowKind::robin, false,
                            DiffOperatorSpec::robin(nodes.normal[i], bc.robin_coef)};
                default:
                    throw validation_error("boundary condition kind must be dirichlet/neumann/robin");
            }
        },
        options);
}

struct SparseSolveResult {
    Eigen::VectorXcd x;
    double rel_residual = 0.0;
    bool residual_warning = false; // relative residual above 1e-6
};

// Sparse direct solve (LU with fill-reducing column ordering). The residual
// contract is the spec: relative residual <= 1e-8 for reasonably
// conditioned systems, warning metadata above 1e-6.
inline SparseSolveResult sparse_direct_solve(const GlobalOperator& A, const Eigen::VectorXcd& b) {
    if (A.matrix.rows() != A.matrix.cols())
        throw validation_error("sparse_direct_solve requires a square matrix");
    if (b.size() != A.matrix.rows())
        throw validation_error("sparse_direct_solve rhs size mismatch");
    Eigen::SparseMatrix<Complex> mat(A.matrix); // column-major copy for SparseLU
    Eigen::SparseLU<Eigen::SparseMatrix<Complex>> lu;
    lu.analyzePattern(mat);
    lu.factorize(mat);
    if (lu.info() != Eigen::Success)
        throw singular_error("sparse factorization failed: " + lu.lastErrorMessage());
    SparseSolveResult result;
    result.x = lu.solve(b);
    const double bnorm = b.norm();
    result.rel_residual = bnorm == 0.0 ? (A.matrix * result.x).norm()
                                       : (A.matrix * result.x - b).norm() / bnorm;
    result.residual_warning = result.rel_residual > 1e-6;
    return result;
}

// All eigenvalues of the densified operator. The paper's stability figures
// use N <= ~500, so a dense eigensolve is the honest implementation; the
// cap keeps accidental huge calls out.
inline Eigen::VectorXcd full_spectrum(const Eigen::SparseMatrix<Complex, Eigen::RowMajor>& A) {
    if (A.rows() != A.cols())
        throw validation_error("full_spectrum requires a square matrix");
    if (A.rows() > 3000)
        throw validation_error("full_spectrum cap exceeded (3000); sub-sample the operator");
    Eigen::MatrixXcd dense(A);
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(dense, /*computeEigenvectors=*/false);
    if (es.info() != Eigen::Success)
        throw numerical_error("eigenvalue iteration failed to converge");
    return es.eigenvalues();
}

inline Eigen::VectorXcd full_spectrum(const GlobalOperator& A) { return full_spectrum(A.matrix); }

// L^FD block after eliminating the Dirichlet closure: keeps the rows and
// columns of every non-Dirichlet node. Dropped columns multiply known
// boundary data, so the retained block is the operator whose spectrum
// governs stability.
inline Eigen::SparseMatrix<Complex, Eigen::RowMajor> eliminate_dirichlet(const GlobalOperator& A) {
    std::vector<int> keep(A.row_kind.size(), -1);
    int m = 0;
    for (std::size_t i = 0; i < A.row_kind.size(); ++i)
        if (A.row_kind[i] != RowKind::dirichlet) keep[i] = m++;
    std::vector<Eigen::Triplet<Complex>> t;
    for (int i = 0; i < A.matrix.outerSize(); ++i) {
        if (keep[static_cast<std::size_t>(i)] < 0) continue;
        for (Eigen::SparseMatrix<Complex, Eigen::RowMajor>::InnerIterator it(A.matrix, i); it;
             ++it) {
            const int kc = keep[static_cast<std::size_t>(it.col())];
            if (kc >= 0) t.emplace_back(keep[static_cast<std::size_t>(i)], kc, it.value());
        }
    }
    Eigen::SparseMatrix<Complex, Eigen::RowMajor> out(m, m);
    out.setFromTriplets(t.begin(), t.end());
    out.makeCompressed();
    return out;
}

// Coordinate-format export (row, col, re, im) for external inspection.
inline void write_matrix_coord_csv(const GlobalOperator& A, const std::filesystem::path& path) {
    CsvWriter csv(path, {"row", "col", "re", "im"});
    for (int i = 0; i < A.matrix.outerSize(); ++i)
        for (Eigen::SparseMatrix<Complex, Eigen::RowMajor>::InnerIterator it(A.matrix, i); it;
             ++it)
            csv.write_row_strings({std::to_string(it.row()), std::to_string(it.col()),
                                   format_double(it.value().real()),
                                   format_double(it.value().imag())});
    csv.close();
}

// Sparsity pattern only (the data behind spy plots).
inline void write_sparsity_csv(const GlobalOperator& A, const std::filesystem::path& path) {
    CsvWriter csv(path, {"row", "col"});
    for (int i = 0; i < A.matrix.outerSize(); ++i)
        for (Eigen::SparseMatrix<Complex, Eigen::RowMajor>::InnerIterator it(A.matrix, i); it;
             ++it)
            csv.write_row_strings({std::to_string(it.row()), std::to_string(it.col())});
    csv.close();
}

} // namespace hybridfd
