#include <doctest.h>

#include <sstream>

#include "fixtures.hpp"
#include "specsym/graph.hpp"
#include "specsym/oracle.hpp"

using namespace specsym;

TEST_CASE("edge list loading") {
    Graph g = petersen();
    CHECK(g.n() == 10);
    for (int v = 0; v < 10; ++v) CHECK(g.adjacency().row(v).sum() == doctest::Approx(3.0));

    std::istringstream one("n=1\n");
    Graph single = Graph::load(one, GraphFormat::EdgeList);
    CHECK(single.n() == 1);
    CHECK(single.adjacency()(0, 0) == 0.0);

    Graph s = shrikhande();
    CHECK(s.n() == 16);
    for (int v = 0; v < 16; ++v) CHECK(s.adjacency().row(v).sum() == doctest::Approx(6.0));
}

TEST_CASE("malformed input") {
    std::istringstream bad("n=abc\n");
    CHECK_THROWS_AS(Graph::load(bad, GraphFormat::EdgeList), ParseError);
    std::istringstream bad2("n=3\n0\n");
    CHECK_THROWS_AS(Graph::load(bad2, GraphFormat::EdgeList), ParseError);
    std::istringstream asym(R"({"n":3,"edges":[[0,1,2.0],[1,0,3.0]]})");
    CHECK_THROWS_AS(Graph::load(asym, GraphFormat::WeightedJson), AsymmetryError);
}

TEST_CASE("json loading with colors") {
    std::istringstream in(R"({"n":3,"edges":[[0,1,0.5],[1,2,1.5]],"colors":[0,1,0]})");
    Graph g = Graph::load(in, GraphFormat::WeightedJson);
    CHECK(g.colored());
    CHECK(g.weight(0, 1) == 0.5);
    CHECK(g.weight(1, 0) == 0.5);
    CHECK(g.color(1) == 1);
}

TEST_CASE("serialization round-trips the adjacency matrix") {
    Graph g = Graph::from_edges(
        4, {{0, 1, 1.0 / 3.0}, {1, 2, 0.1}, {2, 3, 7.25}, {0, 0, 2.0}});
    std::istringstream back(g.serialize_edge_list());
    Graph h = Graph::load(back, GraphFormat::EdgeList);
    CHECK((g.adjacency() - h.adjacency()).cwiseAbs().maxCoeff() == 0.0);

    std::istringstream jback(g.serialize_json());
    Graph j = Graph::load(jback, GraphFormat::WeightedJson);
    CHECK((g.adjacency() - j.adjacency()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("quotient over the anchored partition of the Petersen graph") {
    Graph g = petersen();
    Partition ep1(10, {from_paper({1}), from_paper({2, 5, 6}), from_paper({3, 4, 7, 8, 9, 10})});
    REQUIRE(is_equitable(g, ep1));
    QuotientGraph q = quotient(g, ep1);
    CHECK(q.adjacency.rows() == 3);
    Eigen::VectorXcd ev = Eigen::EigenSolver<Eigen::MatrixXd>(q.adjacency).eigenvalues();
    std::vector<double> evs;
    for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(ev(i).imag()) < 1e-9);
        evs.push_back(ev(i).real());
    }
    std::sort(evs.begin(), evs.end());
    CHECK(evs[0] == doctest::Approx(-2.0));
    CHECK(evs[1] == doctest::Approx(1.0));
    CHECK(evs[2] == doctest::Approx(3.0));
}

TEST_CASE("single-cell quotient of a regular graph") {
    Graph g = complete_graph(5);
    QuotientGraph q = quotient(g, Partition::single_cell(5));
    CHECK(q.adjacency(0, 0) == doctest::Approx(4.0));
}

TEST_CASE("quotient over the Shrikhande four-cell partition") {
    Graph g = shrikhande();
    Partition p(16, {from_paper({1}), from_paper({2, 4, 5, 6, 9, 10}), from_paper({3, 13, 15}),
                     from_paper({7, 8, 11, 12, 14, 16})});
    REQUIRE(is_equitable(g, p));
    QuotientGraph q = quotient(g, p);
    Eigen::VectorXcd ev = Eigen::EigenSolver<Eigen::MatrixXd>(q.adjacency).eigenvalues();
    std::vector<double> evs;
    for (int i = 0; i < 4; ++i) evs.push_back(ev(i).real());
    std::sort(evs.begin(), evs.end());
    CHECK(evs[0] == doctest::Approx(-2.0));
    CHECK(evs[1] == doctest::Approx(-2.0));
    CHECK(evs[2] == doctest::Approx(2.0));
    CHECK(evs[3] == doctest::Approx(6.0));
}

TEST_CASE("non-equitable partitions are rejected") {
    Graph g = path_graph(4);
    CHECK_THROWS_AS(quotient(g, Partition::single_cell(4)), NotEquitableError);
}

TEST_CASE("A R = R B holds for every equitable partition used") {
    Graph g = petersen();
    Partition p(10, {from_paper({1}), from_paper({2, 5, 6}), from_paper({3, 4, 7, 8, 9, 10})});
    QuotientGraph q = quotient(g, p);
    Eigen::MatrixXd r = Eigen::MatrixXd::Zero(10, 3);
    for (int j = 0; j < 3; ++j)
        for (int v : p.cell(j)) r(v, j) = 1.0;
    double res = (g.adjacency() * r - r * q.adjacency).cwiseAbs().maxCoeff();
    CHECK(res <= 1e-7 * g.max_abs_entry());
}

TEST_CASE("orbit partitions of oracle subgroups are equitable") {
    for (const Graph& g : {petersen(), cube_graph(), cycle_graph(6), complete_graph(4)}) {
        auto auts = enumerate_automorphisms(g);
        // Whole group and a sampled cyclic subgroup.
        CHECK(is_equitable(g, orbit_partition_of(auts, g.n())));
        if (auts.size() > 2) {
            std::vector<Permutation> cyc{auts[auts.size() / 2]};
            CHECK_NOTHROW(quotient(g, orbit_partition_of(cyc, g.n())));
        }
    }
}
