// Local RBF-FD weights: a frozen exact-arithmetic oracle for one pinned
// stencil, moment conditions of the augmented solve, the ill-conditioning
// guard vs the tolerant path, and the raw condition-number diagnostic.

#include <catch2/catch_amalgamated.hpp>

#include <hybridfd/neighbors.hpp>
#include <hybridfd/stencil.hpp>

#include <vector>

using namespace hybridfd;

namespace {
const std::vector<Point> pinned_stencil = {
    {0.2, 0.3}, {0.45, 0.31}, {0.19, 0.55}, {-0.05, 0.28},
    {0.21, 0.05}, {0.44, 0.54}, {-0.02, 0.05}};
const Point pinned_center{0.2, 0.3};
} // namespace

TEST_CASE("weights match a 50-digit dense recomputation (GA, ddx)") {
    // Frozen from an exact-arithmetic LU of K w = (d/dx phi)(center) with
    // phi = exp(-(2 r)^2) on the pinned 7-point stencil.
    const std::vector<double> expected = {
        0.027427055812224445, 2.4223462860912099, -0.18151570722541412,
        -2.4726958723915239, 0.12943556635488227, 0.053418039533622822,
        0.025415754043960447};
    const Eigen::VectorXcd w =
        local_weights(KernelSpec::gaussian(2.0), DiffOperatorSpec::ddx(), pinned_center,
                      pinned_stencil);
    REQUIRE(w.size() == 7);
    for (int j = 0; j < 7; ++j) {
        CHECK(w(j).real() == Catch::Approx(expected[static_cast<std::size_t>(j)]).epsilon(1e-11));
        CHECK(std::abs(w(j).imag()) < 1e-14);
    }
}

TEST_CASE("weights match a 50-digit dense recomputation (GA, laplacian)") {
    const std::vector<double> expected = {
        -78.953446184936705, 20.198420084763403, 20.592205115721378,
        20.600066477122182, 20.261067865793295, -0.1800589048487856,
        -0.7460657856319375};
    const Eigen::VectorXcd w =
        local_weights(KernelSpec::gaussian(2.0), DiffOperatorSpec::laplacian(), pinned_center,
                      pinned_stencil);
    for (int j = 0; j < 7; ++j)
        CHECK(w(j).real() == Catch::Approx(expected[static_cast<std::size_t>(j)]).epsilon(1e-11));
}

TEST_CASE("augmented weights satisfy the moment conditions exactly") {
    // Saddle-system solutions must reproduce (L p)(center) for every
    // monomial p up to the augmentation degree, whatever the kernel.
    const PolyBasisSpec poly{2, 2};
    const DiffOperatorSpec op = DiffOperatorSpec::laplacian();
    // Need n >= 2*(2+1)(2+2)/2 = 12 points.
    const NodeSet cloud = generate_random(14, Rect{0.0, 1.0, 0.0, 1.0}, 3);
    const Point center = cloud.coords[0];
    const Eigen::VectorXcd w = local_weights_augmented(KernelSpec::hybrid(1.0, 1e-3), op, poly,
                                                       center, cloud.coords);
    for (const auto& [a, b] : monomial_exponents(2)) {
        Complex acc{0.0, 0.0};
        for (std::size_t j = 0; j < cloud.coords.size(); ++j)
            acc += w(static_cast<Eigen::Index>(j)) * monomial_value(a, b, cloud.coords[j]);
        const Complex exact = monomial_operator(a, b, op, center);
        CHECK(std::abs(acc - exact) < 1e-11);
    }
}

TEST_CASE("augmentation requires n >= 2q") {
    const NodeSet cloud = generate_random(20, Rect{0.0, 1.0, 0.0, 1.0}, 5);
    // Degree 4 needs q = 15, so n >= 30; 20 points must be rejected.
    CHECK_THROWS_AS(local_weights_augmented(KernelSpec::hybrid(1.0, 1e-3),
                                            DiffOperatorSpec::ddx(), PolyBasisSpec{4, 2},
                                            cloud.coords[0], cloud.coords),
                    validation_error);
    // Degree 2 needs n >= 12; 20 points pass.
    CHECK_NOTHROW(local_weights_augmented(KernelSpec::hybrid(1.0, 1e-3),
                                          DiffOperatorSpec::ddx(), PolyBasisSpec{2, 2},
                                          cloud.coords[0], cloud.coords));
}

TEST_CASE("flat-kernel breakdown throws; the tolerant path reports instead") {
    // Nearly flat Gaussian on a unit-scale stencil: K is numerically the
    // all-ones matrix, far below the pivot threshold.
    const KernelSpec flat = KernelSpec::gaussian(1e-7);
    const DiffOperatorSpec op = DiffOperatorSpec::ddx();
    CHECK_THROWS_AS(local_weights(flat, op, pinned_center, pinned_stencil), conditioning_error);

    LocalSolveInfo info;
    const Eigen::VectorXcd w =
        local_weights_tolerant(flat, op, -1, pinned_center, pinned_stencil, &info);
    CHECK(info.ill_conditioned);
    CHECK(info.min_pivot < info.pivot_threshold);
    CHECK(w.allFinite());

    // A well-conditioned solve through the tolerant path is not flagged and
    // matches the strict path bit-for-bit.
    LocalSolveInfo ok_info;
    const Eigen::VectorXcd wt = local_weights_tolerant(KernelSpec::gaussian(2.0), op, -1,
                                                       pinned_center, pinned_stencil, &ok_info);
    const Eigen::VectorXcd ws =
        local_weights(KernelSpec::gaussian(2.0), op, pinned_center, pinned_stencil);
    CHECK_FALSE(ok_info.ill_conditioned);
    CHECK((wt - ws).norm() == 0.0);
}

TEST_CASE("weights are invariant under kernel scaling (raw alpha/beta form)") {
    const Eigen::VectorXcd w_norm =
        local_weights(KernelSpec::hybrid(2.0, 1e-3), DiffOperatorSpec::laplacian(),
                      pinned_center, pinned_stencil);
    const Eigen::VectorXcd w_raw =
        local_weights(KernelSpec::hybrid_raw(2.0, 5.0, 5e-3), DiffOperatorSpec::laplacian(),
                      pinned_center, pinned_stencil);
    CHECK((w_norm - w_raw).norm() / w_norm.norm() < 1e-12);
}

TEST_CASE("local condition number equals an explicit SVD of the raw matrix") {
    const KernelSpec k = KernelSpec::hybrid(0.5, 1e-3);
    const int n = static_cast<int>(pinned_stencil.size());
    Eigen::MatrixXd K(n, n);
    for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l)
            K(j, l) = eval_kernel(k, (pinned_stencil[static_cast<std::size_t>(j)] -
                                      pinned_stencil[static_cast<std::size_t>(l)])
                                         .norm());
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(K);
    const double expected =
        svd.singularValues()(0) / svd.singularValues()(svd.singularValues().size() - 1);
    CHECK(local_condition_number(k, pinned_stencil) ==
          Catch::Approx(expected).epsilon(1e-10));
    CHECK_THROWS_AS(local_condition_number(k, std::vector<Point>{}), validation_error);
}

TEST_CASE("operator-incapable kernels are rejected at the weight level") {
    CHECK_THROWS_AS(local_weights(KernelSpec::multiquadric(1.0), DiffOperatorSpec::laplacian(),
                                  pinned_center, pinned_stencil),
                    capability_error);
    CHECK_THROWS_AS(local_weights(KernelSpec::phs(4), DiffOperatorSpec::ddx(), pinned_center,
                                  pinned_stencil),
                    capability_error);
}

TEST_CASE("empty stencil is rejected") {
    CHECK_THROWS_AS(local_weights(KernelSpec::gaussian(1.0), DiffOperatorSpec::ddx(),
                                  pinned_center, std::vector<Point>{}),
                    validation_error);
}
