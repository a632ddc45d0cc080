#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "netdiff/spectral.hpp"
#include "testutil.hpp"

using namespace netdiff;
using testutil::Rng;

TEST_CASE("Rayleigh quotient examples") {
    Rng rng(5);
    const Graph g = testutil::random_connected_graph(rng, 3, 7);
    const NodeField a = NodeField::Constant(g.size(), 0.7);
    const NodeField c = NodeField::Constant(g.size(), 2.5);
    CHECK(rayleigh_quotient(g, a, c) == doctest::Approx(0.7));

    const Graph p2 = testutil::path2();
    NodeField ap(2), u(2);
    ap << 1.0, 0.0;
    u << 1.0, 1.0;
    CHECK(rayleigh_quotient(p2, ap, u) == doctest::Approx(0.5));

    const EigenPair pair = principal_eigenpair(p2, ap);
    CHECK(rayleigh_quotient(p2, ap, pair.phi) == doctest::Approx(pair.lambda_a));

    CHECK_THROWS_AS(rayleigh_quotient(p2, ap, NodeField::Zero(2)), ValidationError);
    NodeField neg(2);
    neg << -0.1, 1.0;
    CHECK_THROWS_AS(rayleigh_quotient(p2, neg, u), ValidationError);
}

TEST_CASE("Rayleigh quotient is scale invariant") {
    Rng rng(17);
    const Graph g = testutil::random_connected_graph(rng, 2, 8);
    const NodeField a = testutil::random_potential(rng, g.size());
    const NodeField u = testutil::random_field(rng, g.size(), -2.0, 2.0).array() + 2.5;
    const double base = rayleigh_quotient(g, a, u);
    for (double c : {-3.0, 0.25, 7.0})
        CHECK(rayleigh_quotient(g, a, (c * u).eval()) == doctest::Approx(base));
}

TEST_CASE("principal eigenpair on closed-form cases") {
    // constant potential: lambda = c, phi constant
    const Graph tri = testutil::triangle({1.0, 2.0, 0.5});
    const EigenPair cp = principal_eigenpair(tri, NodeField::Constant(3, 1.7));
    CHECK(cp.lambda_a == doctest::Approx(1.7).epsilon(1e-12));
    CHECK(cp.phi.maxCoeff() == doctest::Approx(cp.phi.minCoeff()).epsilon(1e-10));

    // P2 with a = (1,0): smallest root of lambda^2 - 3 lambda + 1
    const Graph p2 = testutil::path2();
    NodeField ap(2);
    ap << 1.0, 0.0;
    const EigenPair ep = principal_eigenpair(p2, ap);
    CHECK(ep.lambda_a == doctest::Approx((3.0 - std::sqrt(5.0)) / 2.0).epsilon(1e-12));

    // single node: diagonal operator
    const Graph one = testutil::single_node();
    const EigenPair sp = principal_eigenpair(one, NodeField::Constant(1, 2.0));
    CHECK(sp.lambda_a == doctest::Approx(2.0));
    CHECK(sp.phi[0] == doctest::Approx(1.0));
}

TEST_CASE("eigenpair invariants: normalization, residual, determinism") {
    Rng rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        const Graph g = testutil::random_connected_graph(rng, 2, 10);
        const NodeField a = testutil::random_potential(rng, g.size());
        const EigenPair pair = principal_eigenpair(g, a);
        CHECK(std::abs(integral(g, pair.phi.array().square().matrix().eval()) - 1.0) < 1e-10);
        CHECK(pair.residual <= 1e-10 * std::max(1.0, pair.lambda_a));
        const EigenPair again = principal_eigenpair(g, a);
        CHECK(pair.lambda_a == again.lambda_a);
        CHECK((pair.phi - again.phi).lpNorm<Eigen::Infinity>() == 0.0);
    }
}

TEST_CASE("a == 0 proceeds with a warning note") {
    const Graph p2 = testutil::path2();
    const EigenPair pair = principal_eigenpair(p2, NodeField::Zero(2));
    CHECK(!pair.note.empty());
    CHECK(std::abs(pair.lambda_a) < 1e-12);
    CHECK(pair.phi.minCoeff() > 0.0);
    NodeField neg(2);
    neg << -1.0, 0.0;
    CHECK_THROWS_AS(principal_eigenpair(p2, neg), ValidationError);
}

TEST_CASE("small-data threshold constants") {
    EigenPair flat;
    flat.lambda_a = 1.0;
    flat.phi = NodeField::Constant(4, 0.5);
    auto [delta, C] = small_data_threshold(flat, 2.0, 0.5);
    CHECK(delta == doctest::Approx(0.25));
    CHECK(C == doctest::Approx(2.0));

    EigenPair skew;
    skew.lambda_a = 1.0;
    skew.phi = NodeField(2);
    skew.phi << 1.0, 2.0;
    auto [d2, c2] = small_data_threshold(skew, 2.0, 0.5);
    CHECK(d2 == doctest::Approx(0.125));
    CHECK(c2 == doctest::Approx(4.0));

    // sigma -> lambda_a degenerates delta to 0
    auto [d3, c3] = small_data_threshold(flat, 2.0, 1.0 - 1e-12);
    CHECK(d3 < 1e-9);
    CHECK(c3 == doctest::Approx(2.0));

    CHECK_THROWS_AS(small_data_threshold(flat, 2.0, 1.5), ValidationError);
    CHECK_THROWS_AS(small_data_threshold(flat, 2.0, 0.0), ValidationError);
}

TEST_CASE("epsilon0 threshold formula") {
    std::vector<double> mu(25, 1.0);
    std::vector<std::tuple<int, int, double>> edges;
    for (int i = 1; i < 25; ++i) edges.emplace_back(0, i, 1.0);
    const Graph star = testutil::make_graph(25, mu, edges);
    CHECK(std::abs(l2_threshold_epsilon0(star, 1.9116, 2.0) - 0.0365) < 1e-3);
    CHECK(l2_threshold_epsilon0(star, 1.9116, 2.0) == doctest::Approx(1.9116 * 1.9116 / 100.0));

    const Graph one = testutil::single_node();
    CHECK(l2_threshold_epsilon0(one, 2.0, 3.0) == doctest::Approx(1.0));

    // smaller mu_min gives a smaller threshold
    const Graph tiny = testutil::path2(1e-6, 1.0);
    CHECK(l2_threshold_epsilon0(tiny, 1.0, 2.0) < l2_threshold_epsilon0(testutil::path2(), 1.0, 2.0));
}

TEST_CASE("Rayleigh minimality over random admissible directions") {
    Rng rng(123);
    int checks = 0;
    while (checks < 200) {
        const Graph g = testutil::random_connected_graph(rng, 2, 10);
        const NodeField a = testutil::random_potential(rng, g.size());
        const EigenPair pair = principal_eigenpair(g, a);
        for (int k = 0; k < 10 && checks < 200; ++k, ++checks) {
            const NodeField u = testutil::random_field(rng, g.size(), -1.0, 1.0);
            if (u.lpNorm<Eigen::Infinity>() == 0.0) continue;
            CHECK(rayleigh_quotient(g, a, u) >= pair.lambda_a - 1e-8);
        }
    }
}

TEST_CASE("Jacobi route matches the dense oracle and keeps phi positive") {
    Rng rng(4242);
    for (int trial = 0; trial < 50; ++trial) {
        const Graph g = testutil::random_connected_graph(rng, 1, 10);
        const NodeField a = testutil::random_potential(rng, g.size());
        Eigen::VectorXd phi_oracle;
        const double lam = testutil::oracle_lambda_min(g, a, &phi_oracle);
        const EigenPair pair = principal_eigenpair(g, a);
        CHECK(std::abs(pair.lambda_a - lam) <= 1e-8 * std::max(1.0, std::abs(lam)));
        CHECK(pair.phi.minCoeff() > 0.0);
    }
}

TEST_CASE("lambda_a is monotone in the potential") {
    Rng rng(777);
    for (int trial = 0; trial < 30; ++trial) {
        const Graph g = testutil::random_connected_graph(rng, 2, 9);
        const NodeField a = testutil::random_potential(rng, g.size());
        NodeField a2 = a;
        for (int i = 0; i < g.size(); ++i) a2[i] += rng.uniform(0.0, 1.5);
        const double l1 = principal_eigenpair(g, a).lambda_a;
        const double l2 = principal_eigenpair(g, a2).lambda_a;
        CHECK(l2 >= l1 - 1e-10);
    }
}
