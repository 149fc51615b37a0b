#pragma once

// Shared graph fixtures. Named graphs load from the data directory; small
// parametric families are built inline.

#include <array>
#include <string>
#include <vector>

#include "specsym/graph.hpp"

inline specsym::Graph load_fixture(const std::string& name) {
    return specsym::Graph::load_file(std::string(SPECSYM_TEST_DATA) + "/" + name);
}

inline specsym::Graph petersen() { return load_fixture("petersen.edges"); }
inline specsym::Graph shrikhande() { return load_fixture("shrikhande.edges"); }
inline specsym::Graph cube_graph() { return load_fixture("cube.edges"); }

inline specsym::Graph complete_graph(int n) {
    std::vector<std::array<double, 3>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) edges.push_back({double(u), double(v), 1.0});
    return specsym::Graph::from_edges(n, edges);
}

inline specsym::Graph cycle_graph(int n) {
    std::vector<std::array<double, 3>> edges;
    for (int u = 0; u < n; ++u) edges.push_back({double(u), double((u + 1) % n), 1.0});
    return specsym::Graph::from_edges(n, edges);
}

inline specsym::Graph path_graph(int n) {
    std::vector<std::array<double, 3>> edges;
    for (int u = 0; u + 1 < n; ++u) edges.push_back({double(u), double(u + 1), 1.0});
    return specsym::Graph::from_edges(n, edges);
}

// Paper labels are 1-based; fixtures store 0-based vertices. Tests written
// against the worked examples translate at this boundary.
inline std::vector<int> from_paper(std::initializer_list<int> labels) {
    std::vector<int> out;
    for (int x : labels) out.push_back(x - 1);
    return out;
}
