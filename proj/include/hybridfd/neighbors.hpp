#pragma once

#include <algorithm>
#include <vector>

#include "nodes.hpp"

namespace hybridfd {

// Per-node list of the n nearest nodes (self included), nearest first.
struct StencilMap {
    std::vector<std::vector<int>> neighbors;
    int n = 0;

    std::size_t size() const { return neighbors.size(); }
    const std::vector<int>& operator[](std::size_t i) const { return neighbors[i]; }
};

// Brute-force n-nearest-neighbor map. Distance ties break toward the lower
// global index, which makes assembled operators bit-reproducible on regular
// grids where four-way ties are the norm. O(N^2 log n) is fine at the
// problem sizes here (N <= a few thousand) and doubles as its own oracle.
inline StencilMap nearest_neighbors(const NodeSet& nodes, int n) {
    const int N = static_cast<int>(nodes.size());
    if (n < 1 || n > N)
        throw validation_error("nearest_neighbors requires 1 <= n <= N");
    StencilMap map;
    map.n = n;
    map.neighbors.resize(nodes.size());
    std::vector<std::pair<double, int>> dist(static_cast<std::size_t>(N));
    for (int i = 0; i < N; ++i) {
        for (int j = 0; j < N; ++j)
            dist[static_cast<std::size_t>(j)] = {(nodes.coords[static_cast<std::size_t>(j)] -
                                                  nodes.coords[static_cast<std::size_t>(i)])
                                                     .squaredNorm(),
                                                 j};
        std::partial_sort(dist.begin(), dist.begin() + n, dist.end());
        auto& out = map.neighbors[static_cast<std::size_t>(i)];
        out.resize(static_cast<std::size_t>(n));
        for (int m = 0; m < n; ++m) out[static_cast<std::size_t>(m)] = dist[static_cast<std::size_t>(m)].second;
    }
    return map;
}

} // namespace hybridfd
