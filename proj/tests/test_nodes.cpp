// Node generators: counts, boundary labels, normals, ordering contracts,
// determinism, and the CSV round trip.

#include <catch2/catch_amalgamated.hpp>

#include <hybridfd/nodes.hpp>

#include <filesystem>

using namespace hybridfd;

TEST_CASE("cartesian grid counts, ordering, and labels") {
    const Rect rect{0.0, 3.0, 0.0, 2.0};
    const NodeSet nodes = generate_cartesian(4, 3, rect);
    REQUIRE(nodes.size() == 12);
    CHECK(nodes.boundary_count() == 10); // all but the inner 2
    CHECK(nodes.domain.x1 == 3.0);

    // z-major traversal: index = iz*nx + ix, x advances fastest.
    CHECK(nodes.coords[0].x() == 0.0);
    CHECK(nodes.coords[0].y() == 0.0);
    CHECK(nodes.coords[1].x() == Catch::Approx(1.0));
    CHECK(nodes.coords[1].y() == 0.0);
    CHECK(nodes.coords[4].x() == 0.0);
    CHECK(nodes.coords[4].y() == Catch::Approx(1.0));

    // Endpoints are exact, not accumulated.
    CHECK(nodes.coords[3].x() == 3.0);
    CHECK(nodes.coords[11].x() == 3.0);
    CHECK(nodes.coords[11].y() == 2.0);

    // Side labels: gamma1/2 are x-sides, gamma3/4 z-sides; corners follow
    // the x-side.
    CHECK(nodes.side[0] == side_gamma1);  // corner (0,0): x-side precedence
    CHECK(nodes.side[1] == side_gamma3);  // bottom edge
    CHECK(nodes.side[4] == side_gamma1);  // left edge
    CHECK(nodes.side[7] == side_gamma2);  // right edge
    CHECK(nodes.side[9] == side_gamma4);  // top edge
    CHECK(nodes.side[5] == side_interior);
    CHECK(nodes.side[6] == side_interior);
    CHECK_FALSE(nodes.is_boundary(5));
}

TEST_CASE("corner normals are the normalized sum of side normals") {
    const NodeSet nodes = generate_cartesian(3, 3, Rect{0.0, 1.0, 0.0, 1.0});
    const double s = std::sqrt(0.5);
    CHECK(nodes.normal[0].x() == Catch::Approx(-s));
    CHECK(nodes.normal[0].y() == Catch::Approx(-s));
    CHECK(nodes.normal[8].x() == Catch::Approx(s));
    CHECK(nodes.normal[8].y() == Catch::Approx(s));
    // Edge normals are axis-aligned; interior normals are zero.
    CHECK(nodes.normal[1].x() == 0.0);
    CHECK(nodes.normal[1].y() == -1.0);
    CHECK(nodes.normal[4].norm() == 0.0);
    CHECK_THROWS_AS(generate_cartesian(1, 3, Rect{0.0, 1.0, 0.0, 1.0}), validation_error);
}

TEST_CASE("halton sequence starts at index 1 with bases 2 and 3") {
    const NodeSet nodes = generate_halton(3, Rect{0.0, 1.0, 0.0, 1.0}, false);
    REQUIRE(nodes.size() == 3);
    CHECK(nodes.coords[0].x() == Catch::Approx(0.5).epsilon(1e-15));
    CHECK(nodes.coords[0].y() == Catch::Approx(1.0 / 3.0).epsilon(1e-15));
    CHECK(nodes.coords[1].x() == Catch::Approx(0.25).epsilon(1e-15));
    CHECK(nodes.coords[1].y() == Catch::Approx(2.0 / 3.0).epsilon(1e-15));
    CHECK(nodes.coords[2].x() == Catch::Approx(0.75).epsilon(1e-15));
    CHECK(nodes.coords[2].y() == Catch::Approx(1.0 / 9.0).epsilon(1e-15));
    CHECK(nodes.boundary_count() == 0);
}

TEST_CASE("halton ring insets the interior and labels the ring") {
    const Rect rect{-1.0, 1.0, -1.0, 1.0};
    const NodeSet nodes = generate_halton(100, rect, true);
    const double h = std::sqrt(4.0 / 100.0); // 0.2
    REQUIRE(nodes.size() > 100);
    for (std::size_t i = 0; i < 100; ++i) {
        CHECK_FALSE(nodes.is_boundary(i));
        CHECK(nodes.coords[i].x() >= -1.0 + h / 2.0 - 1e-12);
        CHECK(nodes.coords[i].x() <= 1.0 - h / 2.0 + 1e-12);
        CHECK(nodes.coords[i].y() >= -1.0 + h / 2.0 - 1e-12);
        CHECK(nodes.coords[i].y() <= 1.0 - h / 2.0 + 1e-12);
    }
    for (std::size_t i = 100; i < nodes.size(); ++i) {
        CHECK(nodes.is_boundary(i));
        const Point& p = nodes.coords[i];
        const bool on_edge = p.x() == -1.0 || p.x() == 1.0 || p.y() == -1.0 || p.y() == 1.0;
        CHECK(on_edge);
        CHECK(nodes.normal[i].norm() == Catch::Approx(1.0).epsilon(1e-12));
    }
}

TEST_CASE("random nodes are deterministic per seed and interior-only") {
    const Rect rect{0.0, 4.0, 0.0, 4.0};
    const NodeSet a = generate_random(50, rect, 7);
    const NodeSet b = generate_random(50, rect, 7);
    const NodeSet c = generate_random(50, rect, 8);
    REQUIRE(a.size() == 50);
    CHECK(a.boundary_count() == 0);
    bool identical = true, differs = false;
    for (std::size_t i = 0; i < 50; ++i) {
        identical = identical && a.coords[i] == b.coords[i];
        differs = differs || a.coords[i] != c.coords[i];
        CHECK(rect.contains(a.coords[i]));
    }
    CHECK(identical);
    CHECK(differs);
}

TEST_CASE("nearest node breaks ties toward the lower index") {
    const NodeSet nodes = generate_cartesian(3, 3, Rect{0.0, 2.0, 0.0, 2.0});
    // (1, 0.5) is equidistant from nodes 1 (1,0) and 4 (1,1).
    CHECK(nodes.nearest_node(Point{1.0, 0.5}) == 1);
    CHECK(nodes.nearest_node(Point{1.9, 1.9}) == 8);
}

TEST_CASE("fill distance is sqrt(area)/sqrt(N)") {
    const NodeSet nodes = generate_cartesian(10, 10, Rect{0.0, 2.0, 0.0, 2.0});
    CHECK(fill_distance(nodes) == Catch::Approx(std::sqrt(4.0) / 10.0).epsilon(1e-15));
}

TEST_CASE("node CSV round trip preserves coordinates, sides, and normals") {
    const auto path = std::filesystem::temp_directory_path() / "hybridfd_nodes_rt.csv";
    const NodeSet nodes = generate_cartesian(5, 4, Rect{0.0, 1.0, 0.0, 1.0});
    write_nodes_csv(nodes, path);
    const NodeSet back = read_nodes_csv(path, nodes.domain);
    REQUIRE(back.size() == nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        CHECK(back.coords[i] == nodes.coords[i]); // %.17g round trip is exact
        CHECK(back.side[i] == nodes.side[i]);
        CHECK(back.normal[i] == nodes.normal[i]);
    }
    std::filesystem::remove(path);
}
