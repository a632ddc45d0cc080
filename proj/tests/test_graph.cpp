#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "netdiff/graph.hpp"
#include "testutil.hpp"

using namespace netdiff;
using testutil::Rng;

namespace {

const char* kTwoNodes = R"({
  "nodes": [{"id": "a", "mu": 1.0}, {"id": "b", "mu": 1.0}],
  "edges": [{"a": "a", "b": "b", "w": 1.0}]
})";

std::string two_nodes_with_weight(double w) {
    return std::string(R"({"nodes":[{"id":"a","mu":1.0},{"id":"b","mu":1.0}],)") +
           R"("edges":[{"a":"a","b":"b","w":)" + std::to_string(w) + "}]}";
}

} // namespace

TEST_CASE("parse_graph accepts the minimal connected graph") {
    const Graph g = parse_graph(kTwoNodes);
    CHECK(g.size() == 2);
    CHECK(g.edges().size() == 1);
    CHECK(g.ids()[0] == "a");
    CHECK(g.ids()[1] == "b");
    CHECK(g.index_of("b") == 1);
    CHECK(g.index_of("zz") == -1);
    CHECK(g.total_measure() == doctest::Approx(2.0));
}

TEST_CASE("parse_graph rejects each invalid input with a distinct diagnostic") {
    CHECK_THROWS_WITH_AS(parse_graph(two_nodes_with_weight(0.0)),
                         doctest::Contains("non-positive weight"), ValidationError);
    CHECK_THROWS_WITH_AS(parse_graph(two_nodes_with_weight(-2.0)),
                         doctest::Contains("non-positive weight"), ValidationError);

    // 25 nodes, 24 of them isolated
    std::string big = R"({"nodes":[)";
    for (int i = 1; i <= 25; ++i)
        big += std::string(i > 1 ? "," : "") + R"({"id":"n)" + std::to_string(i) +
               R"(","mu":1.0})";
    big += R"(],"edges":[{"a":"n1","b":"n2","w":1.0}]})";
    CHECK_THROWS_WITH_AS(parse_graph(big), doctest::Contains("disconnected"), ValidationError);

    CHECK_THROWS_WITH_AS(
        parse_graph(R"({"nodes":[{"id":"a","mu":1.0}],"edges":[{"a":"a","b":"a","w":1.0}]})"),
        doctest::Contains("self-loop"), ValidationError);
    CHECK_THROWS_WITH_AS(
        parse_graph(R"({"nodes":[{"id":"a","mu":1.0},{"id":"b","mu":1.0}],
                        "edges":[{"a":"a","b":"b","w":1.0},{"a":"b","b":"a","w":2.0}]})"),
        doctest::Contains("duplicate edge"), ValidationError);
    CHECK_THROWS_WITH_AS(
        parse_graph(R"({"nodes":[{"id":"a","mu":0.0},{"id":"b","mu":1.0}],
                        "edges":[{"a":"a","b":"b","w":1.0}]})"),
        doctest::Contains("non-positive measure"), ValidationError);
    CHECK_THROWS_WITH_AS(
        parse_graph(R"({"nodes":[{"id":"a","mu":1.0},{"id":"a","mu":1.0}],"edges":[]})"),
        doctest::Contains("duplicate node id"), ValidationError);
    CHECK_THROWS_WITH_AS(
        parse_graph(R"({"nodes":[{"id":"a","mu":1.0}],"edges":[{"a":"a","b":"q","w":1.0}]})"),
        doctest::Contains("unknown node"), ValidationError);
    CHECK_THROWS_WITH_AS(parse_graph("not json at all"), doctest::Contains("malformed"),
                         ValidationError);
    CHECK_THROWS_AS(parse_graph(R"({"nodes":[]})"), ValidationError);
}

TEST_CASE("laplacian on small graphs") {
    const Graph p2 = testutil::path2();
    NodeField u(2);
    u << 0.0, 1.0;
    const NodeField lap = laplacian(p2, u);
    CHECK(lap[0] == doctest::Approx(1.0));
    CHECK(lap[1] == doctest::Approx(-1.0));

    const Graph tri = testutil::triangle({1.0, 2.0, 1.0});
    NodeField w(3);
    w << 1.0, 0.0, 2.0;
    const NodeField lt = laplacian(tri, w);
    CHECK(lt[0] == doctest::Approx(0.0));
    CHECK(lt[1] == doctest::Approx(1.5));
    CHECK(lt[2] == doctest::Approx(-3.0));

    CHECK_THROWS_AS(laplacian(p2, w), ValidationError);
}

TEST_CASE("constants are harmonic") {
    Rng rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const Graph g = testutil::random_connected_graph(rng, 2, 8);
        const NodeField c = NodeField::Constant(g.size(), rng.uniform(-3.0, 3.0));
        CHECK(laplacian(g, c).lpNorm<Eigen::Infinity>() == 0.0);
        CHECK(dirichlet_energy(g, c) == 0.0);
    }
}

TEST_CASE("integral examples") {
    NodeField f(2);
    f << 3.0, 4.0;
    CHECK(integral(testutil::path2(), f) == doctest::Approx(7.0));
    NodeField ones(2);
    ones << 1.0, 1.0;
    CHECK(integral(testutil::path2(2.0, 5.0), ones) == doctest::Approx(7.0));
    NodeField t(3);
    t << 1.0, 0.0, 2.0;
    CHECK(integral(testutil::triangle({1.0, 2.0, 1.0}), t) == doctest::Approx(3.0));
}

TEST_CASE("dirichlet energy examples") {
    NodeField u(2);
    u << 0.0, 1.0;
    CHECK(dirichlet_energy(testutil::path2(), u) == doctest::Approx(1.0));
    NodeField t(3);
    t << 1.0, 0.0, 2.0;
    CHECK(dirichlet_energy(testutil::triangle(), t) == doctest::Approx(6.0));
}

TEST_CASE("lp_norm examples") {
    // decay scenario data: 24 nodes at 0.001, one at 0.03, mu = 1
    std::vector<double> mu(25, 1.0);
    std::vector<std::tuple<int, int, double>> edges;
    for (int i = 1; i < 25; ++i) edges.emplace_back(0, i, 1.0);
    const Graph star = testutil::make_graph(25, mu, edges);
    NodeField u0 = NodeField::Constant(25, 0.001);
    u0[0] = 0.03;
    CHECK(std::abs(lp_norm(star, u0, 2.0) - 0.0304) < 1e-4);
    CHECK(lp_norm(star, u0, 2.0) == doctest::Approx(std::sqrt(9.24e-4)));

    CHECK(lp_norm(star, NodeField::Zero(25), 3.0) == 0.0);

    NodeField f(2);
    f << 3.0, 4.0;
    CHECK(lp_norm(testutil::path2(), f, 2.0) == doctest::Approx(5.0));

    CHECK_THROWS_AS(lp_norm(testutil::path2(), f, 0.5), ValidationError);
}

TEST_CASE("conservation and Green identity on random graphs and fields") {
    Rng rng(2024);
    for (int trial = 0; trial < 100; ++trial) {
        const Graph g = testutil::random_connected_graph(rng, 2, 10);
        const NodeField u = testutil::random_field(rng, g.size(), -5.0, 5.0);
        const NodeField lap = laplacian(g, u);

        double scale = 0.0;
        for (int i = 0; i < g.size(); ++i) scale += std::abs(g.mu()[i] * lap[i]);
        CHECK(std::abs(integral(g, lap)) <= 1e-12 * std::max(scale, 1.0));

        const double lhs = integral(g, (-lap.array() * u.array()).matrix().eval());
        const double rhs_energy = dirichlet_energy(g, u);
        CHECK(lhs == doctest::Approx(rhs_energy).epsilon(1e-12));
    }
}

TEST_CASE("laplacian is linear") {
    Rng rng(7);
    for (int trial = 0; trial < 50; ++trial) {
        const Graph g = testutil::random_connected_graph(rng, 2, 9);
        const NodeField u = testutil::random_field(rng, g.size(), -2.0, 2.0);
        const NodeField v = testutil::random_field(rng, g.size(), -2.0, 2.0);
        const double alpha = rng.uniform(-3.0, 3.0), beta = rng.uniform(-3.0, 3.0);
        const NodeField lhs = laplacian(g, (alpha * u + beta * v).eval());
        const NodeField rhs_lin = alpha * laplacian(g, u) + beta * laplacian(g, v);
        const double scale = lhs.lpNorm<Eigen::Infinity>() + rhs_lin.lpNorm<Eigen::Infinity>();
        CHECK((lhs - rhs_lin).lpNorm<Eigen::Infinity>() <= 1e-12 * std::max(scale, 1.0));
    }
}

TEST_CASE("normalized lp means are nondecreasing in q") {
    Rng rng(99);
    const double qs[] = {1.0, 1.5, 2.0, 3.0, 4.0, 6.0};
    for (int trial = 0; trial < 50; ++trial) {
        const Graph g = testutil::random_connected_graph(rng, 2, 8);
        const NodeField f = testutil::random_field(rng, g.size(), -4.0, 4.0);
        const double vol = g.total_measure();
        double prev = 0.0;
        for (double q : qs) {
            const double mean = lp_norm(g, f, q) / std::pow(vol, 1.0 / q);
            CHECK(mean >= prev * (1.0 - 1e-12));
            prev = mean;
        }
    }
}
