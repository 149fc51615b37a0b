#include <doctest.h>

#include "fixtures.hpp"
#include "specsym/automorphism.hpp"
#include "specsym/oracle.hpp"

using namespace specsym;

namespace {

Permutation from_paper_map(std::initializer_list<std::pair<int, int>> pairs, int n) {
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i) img[i] = i;
    for (auto [a, b] : pairs) img[a - 1] = b - 1;
    return Permutation(img);
}

Permutation from_cycles(std::initializer_list<std::initializer_list<int>> cycles, int n) {
    std::vector<int> img(n);
    for (int i = 0; i < n; ++i) img[i] = i;
    for (const auto& c : cycles) {
        std::vector<int> cyc(c);
        for (size_t i = 0; i < cyc.size(); ++i) img[cyc[i] - 1] = cyc[(i + 1) % cyc.size()] - 1;
    }
    return Permutation(img);
}

} // namespace

TEST_CASE("verify_automorphism accepts the paper permutations verbatim") {
    Graph g = petersen();
    // sigma: 1 2 5 6 3 7 10 4 9 8 -> 7 2 9 10 1 3 4 6 8 5
    Permutation sigma = from_paper_map({{1, 7}, {2, 2}, {5, 9}, {6, 10}, {3, 1}, {7, 3}, {10, 4},
                                        {4, 6}, {9, 8}, {8, 5}},
                                       10);
    CHECK(verify_automorphism(g, sigma));
    CHECK(verify_automorphism(g, Permutation::identity(10)));

    Graph s = shrikhande();
    Permutation s12 =
        from_cycles({{1, 2}, {3, 4}, {5, 11}, {6, 10}, {7, 9}, {8, 12}, {13, 16}, {14, 15}}, 16);
    Permutation s18 = from_cycles({{1, 8, 10, 3, 5, 11}, {2, 4, 16}, {6, 9, 15, 7, 12, 13}}, 16);
    Permutation s19 = from_cycles({{1, 9, 14, 13, 11, 2}, {3, 10, 4, 15, 12, 16}, {5, 8, 7}}, 16);
    CHECK(verify_automorphism(s, s12));
    CHECK(verify_automorphism(s, s18));
    CHECK(verify_automorphism(s, s19));

    // A transposition that breaks adjacency is rejected.
    Permutation bad = from_cycles({{1, 3}}, 10);
    CHECK_FALSE(verify_automorphism(g, bad));
    CHECK_THROWS_AS(verify_automorphism(g, Permutation::identity(4)), DimensionError);
}

TEST_CASE("find_automorphism on the worked pair 1 -> 7") {
    Graph g = petersen();
    Analyzer an(g, 3);
    auto phi = an.find_automorphism(0, 6);
    REQUIRE(phi);
    CHECK((*phi)(0) == 6);
    CHECK(verify_automorphism(g, *phi));

    auto id = an.find_automorphism(4, 4);
    REQUIRE(id);
    CHECK(id->is_identity());

    auto phi2 = an.find_automorphism(0, 1);
    REQUIRE(phi2);
    CHECK((*phi2)(0) == 1);
    CHECK(verify_automorphism(g, *phi2));
}

TEST_CASE("find_automorphism fails across true orbits") {
    // Path on 4 vertices: ends and middles are different orbits.
    Graph g = path_graph(4);
    Analyzer an(g);
    CHECK_FALSE(an.find_automorphism(0, 1));
    auto flip = an.find_automorphism(0, 3);
    REQUIRE(flip);
    CHECK(verify_automorphism(g, *flip));
}

TEST_CASE("stabilizer orbits of the fixtures") {
    Graph g = petersen();
    Analyzer an(g, 3);
    StabilizerData sd = an.stabilizer_orbits(0);
    CHECK(sd.orbits == Partition(10, {from_paper({1}), from_paper({2, 5, 6}),
                                      from_paper({3, 4, 7, 8, 9, 10})}));
    for (const auto& c : sd.certificates) {
        CHECK(c(0) == 0);
        CHECK(verify_automorphism(g, c));
    }

    Graph k4 = complete_graph(4);
    Analyzer an4(k4);
    CHECK(an4.stabilizer_orbits(0).orbits == Partition(4, {{0}, {1, 2, 3}}));
}

TEST_CASE("stabilizer orbits of the Shrikhande graph at vertex 1") {
    Graph s = shrikhande();
    Analyzer an(s, 3);
    CHECK(an.stabilizer_orbits(0).orbits ==
          Partition(16, {from_paper({1}), from_paper({2, 4, 5, 6, 9, 10}), from_paper({3, 13, 15}),
                         from_paper({7, 8, 11, 12, 14, 16})}));
}

TEST_CASE("adequate sets carry the base across its orbit") {
    Graph g = petersen();
    Analyzer an(g, 3);
    std::vector<int> all(10);
    for (int i = 0; i < 10; ++i) all[i] = i;
    AdequateSet e = an.adequate_set(0, all);
    CHECK(e.carrier.size() == 10);
    CHECK(e.to(0).is_identity());
    for (int x = 0; x < 10; ++x) {
        CHECK(e.to(x)(0) == x);
        CHECK(verify_automorphism(g, e.to(x)));
    }

    // Singleton orbit.
    Graph p = path_graph(3);
    Analyzer anp(p);
    AdequateSet single = anp.adequate_set(1, {1});
    CHECK(single.to(1).is_identity());

    Graph s = shrikhande();
    Analyzer ans(s, 3);
    std::vector<int> all16(16);
    for (int i = 0; i < 16; ++i) all16[i] = i;
    AdequateSet e16 = ans.adequate_set(0, all16);
    CHECK(e16.carrier.size() == 16);
    for (int x = 0; x < 16; ++x) CHECK(e16.to(x)(0) == x);
}

TEST_CASE("generating sets reach the oracle group order") {
    Analyzer k3(complete_graph(3));
    CHECK(group_order(k3.generating_set(), 3) == 6);

    Analyzer c6(cycle_graph(6));
    CHECK(group_order(c6.generating_set(), 6) == 12);

    Analyzer pet(petersen(), 3);
    CHECK(group_order(pet.generating_set(), 10) == 120);
}

TEST_CASE("group order utility") {
    CHECK(group_order({}, 5) == 1);
    auto auts = enumerate_automorphisms(cube_graph());
    CHECK(group_order(auts, 8) == 48);
    CHECK(group_order({auts[5]}, 8) == enumerate_group({auts[5]}, 8).size());
}

TEST_CASE("shrikhande generating set reaches order 192") {
    Analyzer an(shrikhande(), 3);
    CHECK(group_order(an.generating_set(), 16) == 192);
}

TEST_CASE("conjugation law for stabilizer partitions") {
    Graph g = petersen();
    Analyzer an(g, 3);
    auto phi = an.find_automorphism(0, 6);
    REQUIRE(phi);
    Partition p0 = an.stabilizer_orbits(0).orbits;
    Partition p6 = an.stabilizer_orbits(6).orbits;
    std::vector<std::vector<int>> mapped;
    for (const auto& c : p0.cells()) mapped.push_back(phi->apply_set(c));
    CHECK(Partition(10, mapped) == p6);
}

TEST_CASE("find_automorphism agrees with the oracle on all pairs (n <= 8)") {
    for (const Graph& g : {cube_graph(), path_graph(5), cycle_graph(6),
                           Graph::from_edges(6, {{0, 1, 1}, {1, 2, 1}, {2, 0, 1}, {3, 4, 1}})}) {
        auto oracle = oracle_analyze(g);
        Analyzer an(g);
        for (int u = 0; u < g.n(); ++u)
            for (int v = u; v < g.n(); ++v) {
                bool same_orbit = oracle.orbits.cell_of(u) == oracle.orbits.cell_of(v);
                auto phi = an.find_automorphism(u, v);
                CHECK(static_cast<bool>(phi) == same_orbit);
                if (phi) CHECK(verify_automorphism(g, *phi));
            }
    }
}

TEST_CASE("isomorphism of relabeled graphs") {
    Graph g = petersen();
    std::vector<int> img{3, 7, 1, 9, 0, 5, 2, 8, 4, 6};
    Permutation pi(img);
    Eigen::MatrixXd b = pi.matrix() * g.adjacency() * pi.matrix().transpose();
    Graph h(b);
    auto out = find_isomorphism(g, h, 3);
    REQUIRE(out.isomorphic);
    CHECK(verify_isomorphism(g, h, *out.map));
}

TEST_CASE("non-isomorphic pairs are distinguished") {
    auto out = find_isomorphism(complete_graph(4), cycle_graph(4));
    CHECK_FALSE(out.isomorphic);
    CHECK(out.stage == "spectrum");

    // Cube vs the Moebius-Kantor-style circulant C8(1,4): both cubic on 8
    // vertices, different spectra resolved by the pipeline.
    Graph cube = cube_graph();
    std::vector<std::array<double, 3>> edges;
    for (int i = 0; i < 8; ++i) {
        edges.push_back({double(i), double((i + 1) % 8), 1.0});
        if (i < 4) edges.push_back({double(i), double(i + 4), 1.0});
    }
    Graph wagner = Graph::from_edges(8, edges);
    auto out2 = find_isomorphism(cube, wagner);
    CHECK_FALSE(out2.isomorphic);
}
