#include <doctest.h>

#include "fixtures.hpp"
#include "specsym/equitable.hpp"
#include "specsym/oracle.hpp"

using namespace specsym;

TEST_CASE("coarsest equitable refinement") {
    Graph g = petersen();
    Partition ep1(10, {from_paper({1}), from_paper({2, 5, 6}), from_paper({3, 4, 7, 8, 9, 10})});
    CHECK(coarsest_equitable(g, ep1) == ep1); // already equitable

    Graph c6 = cycle_graph(6);
    CHECK(coarsest_equitable(c6, Partition::single_cell(6)) == Partition::single_cell(6));

    Graph p3 = path_graph(3);
    Partition expected(3, {{0, 2}, {1}});
    CHECK(coarsest_equitable(p3, Partition::single_cell(3)) == expected);
}

TEST_CASE("coarsest equitable is idempotent and monotone") {
    Graph g = path_graph(5);
    Partition a = coarsest_equitable(g, Partition::single_cell(5));
    CHECK(coarsest_equitable(g, a) == a);
    CHECK(a.refines(Partition::single_cell(5)));
    // Refining the seed refines the output.
    Partition seed(5, {{0}, {1, 2, 3, 4}});
    Partition b = coarsest_equitable(g, seed);
    CHECK(b.refines(seed));
    CHECK((b.refines(a) || b == a));
}

TEST_CASE("projection partitions anchored at the worked vertices") {
    Graph g = petersen();
    Decomposition dec = eigendecompose(g);
    Partition ep1 = projection_partition(g, dec, 0); // paper vertex 1
    CHECK(ep1 == Partition(10, {from_paper({1}), from_paper({2, 5, 6}),
                                from_paper({3, 4, 7, 8, 9, 10})}));
    Partition ep7 = projection_partition(g, dec, 6); // paper vertex 7
    CHECK(ep7 == Partition(10, {from_paper({7}), from_paper({2, 9, 10}),
                                from_paper({1, 3, 4, 5, 6, 8})}));

    Graph k5 = complete_graph(5);
    Decomposition kdec = eigendecompose(k5);
    CHECK(projection_partition(k5, kdec, 2) == Partition(5, {{2}, {0, 1, 3, 4}}));
}

TEST_CASE("equitability certificate via eigenspace projections") {
    // A partition is equitable iff <e_x, Proj(R_j)> is cell-constant for all
    // eigenspaces and cells; cross-validate the refiner spectrally.
    for (const Graph& g : {petersen(), cycle_graph(6), path_graph(5)}) {
        Partition p = coarsest_equitable(g, Partition::single_cell(g.n()));
        Decomposition dec = eigendecompose(g);
        for (const auto& part : dec.parts()) {
            Eigen::MatrixXd proj = part.space.projector();
            for (int j = 0; j < p.cell_count(); ++j) {
                Eigen::VectorXd r = Eigen::VectorXd::Zero(g.n());
                for (int v : p.cell(j)) r(v) = 1.0;
                Eigen::VectorXd pr = proj * r;
                for (const auto& cell : p.cells())
                    for (int v : cell) CHECK(pr(v) == doctest::Approx(pr(cell.front())).epsilon(1e-7));
            }
        }
    }
}

TEST_CASE("cell type matching between the anchored partitions") {
    Graph g = petersen();
    Decomposition dec = eigendecompose(g);
    Partition ep1 = projection_partition(g, dec, 0);
    Partition ep7 = projection_partition(g, dec, 6);
    CellTypeMatch m = cells_in_same_type(dec, ep1, ep7);
    REQUIRE(m.matched);
    // {1}->{7}, {2,5,6}->{2,9,10}, {3,4,7,8,9,10}->{1,3,4,5,6,8}
    CHECK(ep7.cell(m.cell_map[ep1.find_cell(from_paper({1}))]) == from_paper({7}));
    CHECK(ep7.cell(m.cell_map[ep1.find_cell(from_paper({2, 5, 6}))]) == from_paper({2, 9, 10}));
    CHECK(ep7.cell(m.cell_map[ep1.find_cell(from_paper({3, 4, 7, 8, 9, 10}))]) ==
          from_paper({1, 3, 4, 5, 6, 8}));

    CellTypeMatch self = cells_in_same_type(dec, ep1, ep1);
    REQUIRE(self.matched);
    for (int i = 0; i < ep1.cell_count(); ++i) CHECK(self.cell_map[i] == i);

    Partition ep2 = projection_partition(g, dec, 1);
    CHECK(cells_in_same_type(dec, ep1, ep2).matched);
}

TEST_CASE("symmetry partition of the fixtures") {
    Graph g = petersen();
    CHECK(symmetry_partition(g, eigendecompose(g)) == Partition::single_cell(10));

    Graph s = shrikhande();
    CHECK(symmetry_partition(s, eigendecompose(s)) == Partition::single_cell(16));

    // K3 plus an isolated vertex separates by degree.
    Graph k3iso = Graph::from_edges(4, {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}});
    Partition p = symmetry_partition(k3iso, eigendecompose(k3iso));
    CHECK(p == Partition(4, {{0, 1, 2}, {3}}));
}

TEST_CASE("orbit partitions are fixed points of the refiner") {
    for (const Graph& g : {petersen(), cube_graph(), complete_graph(4), path_graph(4)}) {
        auto auts = enumerate_automorphisms(g);
        Partition orbits = orbit_partition_of(auts, g.n());
        CHECK(coarsest_equitable(g, orbits) == orbits);
    }
}

TEST_CASE("symmetry partition is coarser than or equal to the orbit partition") {
    for (const Graph& g : {petersen(), cube_graph(), cycle_graph(5), path_graph(5)}) {
        Partition sym = symmetry_partition(g, eigendecompose(g));
        Partition orbits = orbit_partition_of(enumerate_automorphisms(g), g.n());
        CHECK(orbits.refines(sym));
    }
}
