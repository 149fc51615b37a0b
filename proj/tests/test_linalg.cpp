#include <doctest.h>

#include <random>

#include "fixtures.hpp"
#include "specsym/linalg.hpp"

using namespace specsym;

namespace {

const Subspace& part_for(const Decomposition& dec, double lambda) {
    for (const auto& p : dec.parts())
        if (std::abs(p.eigenvalue - lambda) < 1e-6) return p.space;
    REQUIRE(false);
    static Subspace dummy(Eigen::MatrixXd::Identity(1, 1));
    return dummy;
}

Eigen::VectorXd unit(int n, int i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    e(i) = 1.0;
    return e;
}

Graph random_graph(int n, std::mt19937& rng) {
    std::bernoulli_distribution coin(0.5);
    std::vector<std::array<double, 3>> edges;
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v)
            if (coin(rng)) edges.push_back({double(u), double(v), 1.0});
    return Graph::from_edges(n, edges);
}

} // namespace

TEST_CASE("eigendecomposition of the named fixtures") {
    Decomposition pd = eigendecompose(petersen());
    REQUIRE(pd.part_count() == 3);
    CHECK(pd.part(0).eigenvalue == doctest::Approx(3.0));
    CHECK(pd.part(0).space.dim() == 1);
    CHECK(pd.part(1).eigenvalue == doctest::Approx(1.0));
    CHECK(pd.part(1).space.dim() == 5);
    CHECK(pd.part(2).eigenvalue == doctest::Approx(-2.0));
    CHECK(pd.part(2).space.dim() == 4);

    Decomposition kd = eigendecompose(complete_graph(6));
    REQUIRE(kd.part_count() == 2);
    CHECK(kd.part(0).eigenvalue == doctest::Approx(5.0));
    CHECK(kd.part(0).space.dim() == 1);
    CHECK(kd.part(1).eigenvalue == doctest::Approx(-1.0));
    CHECK(kd.part(1).space.dim() == 5);
    // Top eigenspace of K_n is the all-ones line.
    Eigen::VectorXd ones = Eigen::VectorXd::Ones(6) / std::sqrt(6.0);
    CHECK((kd.part(0).space.project(ones) - ones).cwiseAbs().maxCoeff() < 1e-9);

    Decomposition sd = eigendecompose(shrikhande());
    REQUIRE(sd.part_count() == 3);
    CHECK(sd.part(0).eigenvalue == doctest::Approx(6.0));
    CHECK(sd.part(0).space.dim() == 1);
    CHECK(sd.part(1).eigenvalue == doctest::Approx(2.0));
    CHECK(sd.part(1).space.dim() == 6);
    CHECK(sd.part(2).eigenvalue == doctest::Approx(-2.0));
    CHECK(sd.part(2).space.dim() == 9);
}

TEST_CASE("projection values from the worked example") {
    Graph g = petersen();
    Decomposition dec = eigendecompose(g);
    const Subspace& vm2 = part_for(dec, -2.0);
    Eigen::VectorXd p = vm2.project(unit(10, 0)); // paper vertex 1
    CHECK(p(0) == doctest::Approx(0.4).epsilon(1e-5));
    CHECK(p(1) == doctest::Approx(-0.266667).epsilon(1e-4)); // neighbor
    CHECK(p(2) == doctest::Approx(0.0666667).epsilon(1e-4)); // non-neighbor

    // Projection is the identity on members.
    Eigen::VectorXd member = vm2.basis().col(1);
    CHECK((vm2.project(member) - member).cwiseAbs().maxCoeff() < 1e-10);

    Decomposition k4 = eigendecompose(complete_graph(4));
    Eigen::VectorXd u = k4.part(0).space.project(unit(4, 0));
    for (int i = 0; i < 4; ++i) CHECK(u(i) == doctest::Approx(0.25));
}

TEST_CASE("project is linear and idempotent") {
    std::mt19937 rng(7);
    std::normal_distribution<double> gauss;
    Decomposition dec = eigendecompose(petersen());
    const Subspace& s = part_for(dec, 1.0);
    for (int trial = 0; trial < 20; ++trial) {
        Eigen::VectorXd a(10), b(10);
        for (int i = 0; i < 10; ++i) {
            a(i) = gauss(rng);
            b(i) = gauss(rng);
        }
        double c = gauss(rng);
        CHECK((s.project(a + c * b) - (s.project(a) + c * s.project(b))).cwiseAbs().maxCoeff() <
              1e-10);
        CHECK((s.project(s.project(a)) - s.project(a)).cwiseAbs().maxCoeff() < 1e-10);
    }
    CHECK_THROWS_AS(s.project(Eigen::VectorXd::Zero(7)), DimensionError);
}

TEST_CASE("ominus of the worked splits") {
    Graph g = petersen();
    Decomposition dec = eigendecompose(g);
    const Subspace& vm2 = part_for(dec, -2.0);
    // X_{-2,1,0} anchored at paper vertex 1 is the line through Proj(e_1).
    Eigen::MatrixXd span = vm2.project(unit(10, 0));
    auto x0 = Subspace::from_span(span, 1e-6);
    REQUIRE(x0);
    auto x1 = ominus(vm2, *x0);
    REQUIRE(x1);
    CHECK(x1->dim() == 3);
    CHECK(ominus(vm2, vm2) == std::nullopt);
    // Complement is orthogonal to the removed line and contained in the outer.
    CHECK((x1->basis().transpose() * x0->basis()).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(vm2.contains(*x1, 1e-7));
}

TEST_CASE("ominus rejects non-contained inputs") {
    Decomposition dec = eigendecompose(petersen());
    CHECK_THROWS_AS(ominus(part_for(dec, -2.0), part_for(dec, 3.0)), NotContainedError);
}

TEST_CASE("shrikhande ominus chain reproduces the listed vector") {
    Graph g = shrikhande();
    Decomposition dec = eigendecompose(g);
    const Subspace& v2 = part_for(dec, 2.0);
    auto x0 = Subspace::from_span(v2.project(unit(16, 0)), 1e-6);
    REQUIRE(x0);
    auto x11 = ominus(v2, *x0);
    REQUIRE(x11);
    CHECK(x11->dim() == 5);
    auto x12 = span_of_projections(*x11, from_paper({2, 4, 5, 6, 9, 10}));
    REQUIRE(x12);
    CHECK(x12->dim() == 4);
    auto x13 = ominus(*x11, *x12);
    REQUIRE(x13);
    CHECK(x13->dim() == 1);
    // Paper vector up to sign (paper vertex order).
    Eigen::VectorXd expect(16);
    expect << 0, 0, 0, 0, 0, 0, -0.408248, 0.408248, 0, 0, 0.408248, -0.408248, 0, -0.408248, 0,
        0.408248;
    Eigen::VectorXd got = x13->basis().col(0);
    if (got(6) > 0) got = -got;
    CHECK((got - expect).cwiseAbs().maxCoeff() < 1e-5);
}

TEST_CASE("span_of_projections dims from the worked examples") {
    Graph g = petersen();
    Decomposition dec = eigendecompose(g);
    const Subspace& vm2 = part_for(dec, -2.0);
    auto x0 = Subspace::from_span(vm2.project(unit(10, 0)), 1e-6);
    auto x11 = ominus(vm2, *x0);
    auto x12 = span_of_projections(*x11, from_paper({2, 5, 6}));
    REQUIRE(x12);
    CHECK(x12->dim() == 2);

    Graph s = shrikhande();
    Decomposition sdec = eigendecompose(s);
    auto y0 = Subspace::from_span(part_for(sdec, 2.0).project(unit(16, 0)), 1e-6);
    auto y11 = ominus(part_for(sdec, 2.0), *y0);
    CHECK(span_of_projections(*y11, from_paper({2, 4, 5, 6, 9, 10}))->dim() == 4);
    CHECK(span_of_projections(*y11, from_paper({3, 7, 8, 11, 12, 13, 14, 15, 16}))->dim() == 5);
}

TEST_CASE("span over the whole vertex set recovers the subspace") {
    // Independent SVD oracle for the rank, on random graphs.
    std::mt19937 rng(11);
    std::vector<int> all{0, 1, 2, 3, 4, 5};
    for (int trial = 0; trial < 12; ++trial) {
        Graph g = random_graph(6, rng);
        Decomposition dec = eigendecompose(g);
        for (const auto& part : dec.parts()) {
            auto s = span_of_projections(part.space, all);
            REQUIRE(s);
            Eigen::JacobiSVD<Eigen::MatrixXd> svd(part.space.projector());
            int rank = 0;
            for (int i = 0; i < svd.singularValues().size(); ++i)
                if (svd.singularValues()(i) > 1e-6) ++rank;
            CHECK(s->dim() == rank);
            CHECK(s->same_space(part.space, 1e-7));
        }
    }
}

TEST_CASE("span_of_projections is invariant under vertex-order permutations") {
    Decomposition dec = eigendecompose(petersen());
    const Subspace& s = part_for(dec, -2.0);
    auto a = span_of_projections(s, {1, 4, 5});
    auto b = span_of_projections(s, {5, 1, 4});
    REQUIRE(a);
    REQUIRE(b);
    CHECK(a->same_space(*b, 1e-9));
}

TEST_CASE("decomposition invariants hold and are enforced") {
    Graph g = petersen();
    Decomposition dec = eigendecompose(g);
    CHECK_NOTHROW(dec.check_invariants(g.adjacency(), Tolerances{}));

    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(10, 10);
    for (const auto& p : dec.parts()) sum += p.space.projector();
    CHECK((sum - Eigen::MatrixXd::Identity(10, 10)).cwiseAbs().maxCoeff() <= 10 * 1e-7);

    for (const auto& p : dec.parts()) {
        double res =
            (g.adjacency() * p.space.basis() - p.eigenvalue * p.space.basis()).cwiseAbs().maxCoeff();
        CHECK(res <= 1e-8 * g.max_abs_entry() * 100);
    }
}
