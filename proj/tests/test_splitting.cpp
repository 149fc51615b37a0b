#include <doctest.h>

#include "fixtures.hpp"
#include "specsym/oracle.hpp"
#include "specsym/splitting.hpp"

using namespace specsym;

namespace {

std::vector<int> dims_at(const Decomposition& dec, double lambda) {
    std::vector<int> out;
    for (const auto& p : dec.parts())
        if (std::abs(p.eigenvalue - lambda) < 1e-6) out.push_back(p.space.dim());
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace

TEST_CASE("fn1 on a vertex-transitive graph reports no strict refinement") {
    Graph g = petersen();
    Decomposition dec = eigendecompose(g);
    auto refined = fn1_refine_partition(g, dec, Partition::single_cell(10));
    REQUIRE(refined);
    CHECK(*refined == Partition::single_cell(10));
}

TEST_CASE("fn1 with one vertex fixed recovers the anchored partition") {
    Graph g = petersen();
    Decomposition dec = eigendecompose(g);
    Partition seed(10, {from_paper({1}), from_paper({2, 3, 4, 5, 6, 7, 8, 9, 10})});
    auto refined = fn1_refine_partition(g, dec, coarsest_equitable(g, seed));
    REQUIRE(refined);
    CHECK(*refined == Partition(10, {from_paper({1}), from_paper({2, 5, 6}),
                                     from_paper({3, 4, 7, 8, 9, 10})}));
}

TEST_CASE("fn2 splits the eigenspaces by the quotient lifts") {
    Graph g = petersen();
    Decomposition dec = eigendecompose(g);
    Partition ep1(10, {from_paper({1}), from_paper({2, 5, 6}), from_paper({3, 4, 7, 8, 9, 10})});
    Decomposition split = fn2_split_by_quotient(g, dec, ep1);
    CHECK(dims_at(split, -2.0) == std::vector<int>{1, 3});
    CHECK(dims_at(split, 1.0) == std::vector<int>{1, 4});
    CHECK(dims_at(split, 3.0) == std::vector<int>{1});
    CHECK_NOTHROW(split.check_invariants(g.adjacency(), Tolerances{}));

    // Single-cell partition of a regular graph: only the all-ones line lifts.
    Decomposition same = fn2_split_by_quotient(g, dec, Partition::single_cell(10));
    CHECK(same.part_count() == dec.part_count());

    Graph s = shrikhande();
    Decomposition sdec = eigendecompose(s);
    Partition sep1(16, {from_paper({1}), from_paper({2, 4, 5, 6, 9, 10}),
                        from_paper({3, 7, 8, 11, 12, 13, 14, 15, 16})});
    Decomposition ssplit = fn2_split_by_quotient(s, sdec, sep1);
    CHECK(dims_at(ssplit, 2.0) == std::vector<int>{1, 5});
}

TEST_CASE("fn3 splits parts by cell spans") {
    Graph g = petersen();
    Decomposition dec = eigendecompose(g);
    Partition ep1(10, {from_paper({1}), from_paper({2, 5, 6}), from_paper({3, 4, 7, 8, 9, 10})});
    Decomposition split = fn3_split_by_cells(g, fn2_split_by_quotient(g, dec, ep1), ep1);
    CHECK(dims_at(split, -2.0) == std::vector<int>{1, 1, 2});
    CHECK_NOTHROW(split.check_invariants(g.adjacency(), Tolerances{}));

    // A full-space part is unchanged by the whole vertex set.
    Decomposition same = fn3_split_by_cells(g, dec, Partition::single_cell(10));
    CHECK(same.part_count() == dec.part_count());

    Graph s = shrikhande();
    Decomposition sdec = eigendecompose(s);
    Partition pi1(16, {from_paper({1}), from_paper({2, 4, 5, 6, 9, 10}), from_paper({3, 13, 15}),
                       from_paper({7, 8, 11, 12, 14, 16})});
    Partition sep1(16, {from_paper({1}), from_paper({2, 4, 5, 6, 9, 10}),
                        from_paper({3, 7, 8, 11, 12, 13, 14, 15, 16})});
    Decomposition stage1 = fn3_split_by_cells(s, fn2_split_by_quotient(s, sdec, sep1), sep1);
    Decomposition stage2 = fn3_split_by_cells(s, fn2_split_by_quotient(s, stage1, pi1), pi1);
    // X_{2,1,2} (dim 4) splits as 2 + 2 over the cell {3,13,15}.
    CHECK(dims_at(stage2, 2.0) == std::vector<int>{1, 1, 2, 2});
}

TEST_CASE("algorithm 4 on the Petersen graph") {
    AnalysisReport rep = run_algorithm4(petersen(), 3);
    CHECK(rep.d == 1);
    CHECK(rep.terminal);
    const AnalysisPair& last = rep.pairs.back();
    CHECK(last.partition == Partition(10, {from_paper({1}), from_paper({2, 5, 6}),
                                           from_paper({3, 4, 7, 8, 9, 10})}));
    CHECK(dims_at(last.decomposition, -2.0) == std::vector<int>{1, 1, 2});
}

TEST_CASE("algorithm 4 on complete graphs terminates after one round") {
    AnalysisReport rep = run_algorithm4(complete_graph(6), 3);
    CHECK(rep.d <= 1);
    CHECK(rep.terminal);
}

TEST_CASE("algorithm 4 on the Shrikhande graph") {
    AnalysisReport rep = run_algorithm4(shrikhande(), 3);
    CHECK(rep.d == 1);
    CHECK(rep.pairs.back().partition ==
          Partition(16, {from_paper({1}), from_paper({2, 4, 5, 6, 9, 10}), from_paper({3, 13, 15}),
                         from_paper({7, 8, 11, 12, 14, 16})}));
}

TEST_CASE("pair sets are monotone along the predecessor order") {
    for (const Graph& g : {petersen(), shrikhande(), cube_graph(), cycle_graph(6)}) {
        AnalysisReport rep = run_algorithm4(g, 3);
        for (size_t i = 0; i + 1 < rep.pairs.size(); ++i) {
            CHECK(rep.pairs[i + 1].partition.refines(rep.pairs[i].partition));
            CHECK(pair_precedes(rep.pairs[i], rep.pairs[i + 1]));
        }
        Eigen::MatrixXd m = g.colored() ? g.spectral_matrix() : g.adjacency();
        for (const auto& pr : rep.pairs)
            CHECK_NOTHROW(pr.decomposition.check_invariants(m, Tolerances{}));
        CHECK(rep.d <= g.n());
    }
}

TEST_CASE("terminal partition matches the stabilizer orbits from the oracle") {
    Graph g = petersen();
    AnalysisReport rep = run_algorithm4(g, 3);
    REQUIRE(rep.fixed_vertices.size() == 1);
    auto oracle = oracle_analyze(g);
    CHECK(rep.pairs.back().partition == oracle.stabilizer_orbits[rep.fixed_vertices[0]]);
}

TEST_CASE("irrelevant cells") {
    // Two components with disjoint spectra: K3 against an isolated pair.
    Graph g = Graph::from_edges(5, {{0, 1, 1}, {0, 2, 1}, {1, 2, 1}, {3, 4, 1}});
    Decomposition dec = eigendecompose(g);
    Partition p = coarsest_equitable(g, Partition::single_cell(5));
    REQUIRE(p.cell_count() == 2);
    CHECK(irrelevant_cells(g, dec, p, 0, 1));

    Graph pet = petersen();
    AnalysisReport rep = run_algorithm4(pet, 3);
    const AnalysisPair& last = rep.pairs.back();
    int c1 = last.partition.find_cell(from_paper({2, 5, 6}));
    int c2 = last.partition.find_cell(from_paper({3, 4, 7, 8, 9, 10}));
    REQUIRE(c1 >= 0);
    REQUIRE(c2 >= 0);
    CHECK_FALSE(irrelevant_cells(pet, last.decomposition, last.partition, c1, c2));
}

TEST_CASE("irrelevant cells on the Shrikhande stabilizer partition (frozen)") {
    Graph s = shrikhande();
    AnalysisReport rep = run_algorithm4(s, 3);
    const AnalysisPair& last = rep.pairs.back();
    int c1 = last.partition.find_cell(from_paper({3, 13, 15}));
    int c2 = last.partition.find_cell(from_paper({7, 8, 11, 12, 14, 16}));
    REQUIRE(c1 >= 0);
    REQUIRE(c2 >= 0);
    // Computed from the projection partitions, then frozen: splitting
    // {3,13,15} does constrain the other cell.
    CHECK_FALSE(irrelevant_cells(s, last.decomposition, last.partition, c1, c2));
}

TEST_CASE("small cell analysis enumerates local symmetries") {
    Graph g = petersen();
    AnalysisReport rep = run_algorithm4(g, 3);
    auto orbits = small_cell_local_orbits(g, rep.pairs.back().decomposition, from_paper({2, 5, 6}));
    REQUIRE(orbits.size() == 1);
    CHECK(orbits[0] == from_paper({2, 5, 6}));
}
