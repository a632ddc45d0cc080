#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "netdiff/well.hpp"
#include "testutil.hpp"

using namespace netdiff;
using testutil::Rng;

namespace {

ProblemSpec one_node(double a, double p, double u0) {
    return {testutil::single_node(), NodeField::Constant(1, a), p, NodeField::Constant(1, u0),
            0.0};
}

ProblemSpec random_spec(Rng& rng, int nmax, double u_scale = 1.0) {
    Graph g = testutil::random_connected_graph(rng, 1, nmax);
    NodeField a = testutil::random_potential(rng, g.size());
    const double p = rng.uniform(1.5, 3.5);
    NodeField u0 = testutil::random_field(rng, g.size(), -u_scale, u_scale);
    return {std::move(g), std::move(a), p, std::move(u0), 0.0};
}

} // namespace

TEST_CASE("energy functional examples") {
    CHECK(energy_J(one_node(1.0, 3.0, 0.0), NodeField::Constant(1, 1.0)) == doctest::Approx(0.25));
    CHECK(energy_J(one_node(1.0, 3.0, 0.0), NodeField::Zero(1)) == 0.0);

    ProblemSpec ps{testutil::path2(), NodeField(2), 2.0, NodeField::Zero(2), 0.0};
    ps.a << 1.0, 0.0;
    NodeField u(2);
    u << 1.0, 1.0;
    CHECK(energy_J(ps, u) == doctest::Approx(-1.0 / 6.0));
}

TEST_CASE("Nehari functional examples") {
    CHECK(nehari_N(one_node(1.0, 3.0, 0.0), NodeField::Constant(1, 1.0)) == doctest::Approx(0.0));
    CHECK(nehari_N(one_node(1.0, 3.0, 0.0), NodeField::Zero(1)) == 0.0);
    CHECK(nehari_N(one_node(1.0, 3.0, 0.0), NodeField::Constant(1, 0.5)) ==
          doctest::Approx(0.1875));
}

TEST_CASE("norm_1a examples") {
    CHECK(norm_1a(one_node(4.0, 3.0, 0.0), NodeField::Zero(1)) == 0.0);
    CHECK(norm_1a(one_node(4.0, 3.0, 0.0), NodeField::Constant(1, 1.0)) == doctest::Approx(2.0));
    ProblemSpec ps{testutil::path2(), NodeField(2), 2.0, NodeField::Zero(2), 0.0};
    ps.a << 1.0, 0.0;
    NodeField u(2);
    u << 0.0, 1.0;
    CHECK(norm_1a(ps, u) == doctest::Approx(1.0));
}

TEST_CASE("nehari_scale closed form and fixed point") {
    CHECK(nehari_scale(one_node(4.0, 3.0, 0.0), NodeField::Constant(1, 1.0)) ==
          doctest::Approx(2.0));
    CHECK(nehari_scale(one_node(1.0, 2.0, 0.0), NodeField::Constant(1, 2.0)) ==
          doctest::Approx(0.5));
    CHECK_THROWS_AS(nehari_scale(one_node(1.0, 2.0, 0.0), NodeField::Zero(1)), ValidationError);

    Rng rng(12);
    for (int trial = 0; trial < 25; ++trial) {
        const ProblemSpec ps = random_spec(rng, 6);
        NodeField u = testutil::random_field(rng, ps.graph.size(), -1.5, 1.5);
        if (u.lpNorm<Eigen::Infinity>() < 1e-6) continue;
        const double s = nehari_scale(ps, u);
        const NodeField su = s * u;
        CHECK(std::abs(nehari_N(ps, su)) <=
              1e-10 * std::max(1.0, norm_1a(ps, su) * norm_1a(ps, su)));
        // rescaling an on-manifold point is the identity
        CHECK(nehari_scale(ps, su) == doctest::Approx(1.0).epsilon(1e-10));
    }
}

TEST_CASE("Lambda on single nodes has a closed form") {
    CHECK(lambda_constant(one_node(1.0, 3.0, 0.0)).value == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(lambda_constant(one_node(4.0, 2.5, 0.0)).value == doctest::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("Lambda matches the angular grid oracle on P2") {
    ProblemSpec ps{testutil::path2(), NodeField::Constant(2, 1.0), 3.0, NodeField::Zero(2), 0.0};
    const LambdaResult lr = lambda_constant(ps);
    const double oracle = testutil::grid_lambda(ps);
    CHECK(std::abs(lr.value - oracle) <= 1e-6 * std::max(1.0, oracle));
    // the reported minimizer attains the reported value
    CHECK(testutil::quotient_direct(ps, lr.minimizer) ==
          doctest::Approx(lr.value).epsilon(1e-12));
}

TEST_CASE("well depth: closed forms and the formula chain") {
    CHECK(well_depth(one_node(1.0, 3.0, 0.0)) == doctest::Approx(0.25).epsilon(1e-8));
    CHECK(well_depth(one_node(4.0, 3.0, 0.0)) == doctest::Approx(4.0).epsilon(1e-8));

    // r equals J at the Nehari point for the single-node instance
    const ProblemSpec ps = one_node(1.0, 3.0, 0.0);
    CHECK(well_depth(ps) == doctest::Approx(energy_J(ps, NodeField::Constant(1, 1.0))));
}

TEST_CASE("depth_shift lower bound") {
    CHECK(depth_shift(0.25, 3.0, 0.4) == doctest::Approx(0.15));
    CHECK(depth_shift(0.25, 3.0, 1e-14) == doctest::Approx(0.25));
    CHECK(depth_shift(0.25, 3.0, 4.0 * 0.25) == doctest::Approx(0.0));
    CHECK_THROWS_AS(depth_shift(0.25, 3.0, 0.0), ValidationError);
}

TEST_CASE("classification of initial data") {
    ProblemSpec zero = one_node(1.0, 3.0, 0.0);
    CHECK(classify(zero).classification == WellClass::InWell);

    const WellReport in = classify(one_node(1.0, 3.0, 0.5));
    CHECK(in.classification == WellClass::InWell);
    CHECK(in.J0 == doctest::Approx(0.109375));
    CHECK(in.N0 == doctest::Approx(0.1875));
    CHECK(in.depth_r == doctest::Approx(0.25).epsilon(1e-8));

    const WellReport ext = classify(one_node(1.0, 3.0, 2.0));
    CHECK(ext.classification == WellClass::Exterior);
    CHECK(ext.J0 == doctest::Approx(-2.0));
    CHECK(ext.N0 == doctest::Approx(-12.0));

    // N(u0) = 0 with u0 != 0 sits on the boundary
    CHECK(classify(one_node(1.0, 3.0, 1.0)).classification == WellClass::Indeterminate);

    ProblemSpec bad = one_node(0.0, 3.0, 0.5);
    CHECK_THROWS_AS(classify(bad), ValidationError);
}

TEST_CASE("scaling law for N") {
    Rng rng(88);
    for (int trial = 0; trial < 40; ++trial) {
        const ProblemSpec ps = random_spec(rng, 6);
        const NodeField u = testutil::random_field(rng, ps.graph.size(), -2.0, 2.0);
        const double s = rng.uniform(0.1, 3.0);
        const double a2 = norm_1a(ps, u) * norm_1a(ps, u);
        const double pp = (ps.graph.mu().array() * u.array().abs().pow(ps.p + 1.0)).sum();
        const double expected = s * s * a2 - std::pow(s, ps.p + 1.0) * pp;
        const double actual = nehari_N(ps, (s * u).eval());
        CHECK(std::abs(actual - expected) <=
              1e-12 * std::max({1.0, std::abs(expected), s * s * a2}));
    }
}

TEST_CASE("J on the Nehari set dominates the depth") {
    Rng rng(404);
    for (int trial = 0; trial < 20; ++trial) {
        const ProblemSpec ps = random_spec(rng, 5);
        const double r = well_depth(ps);
        for (int k = 0; k < 5; ++k) {
            NodeField u = testutil::random_field(rng, ps.graph.size(), -2.0, 2.0);
            if (u.lpNorm<Eigen::Infinity>() < 1e-6) continue;
            const double s = nehari_scale(ps, u);
            CHECK(energy_J(ps, (s * u).eval()) >= r - 1e-8 * std::max(1.0, r));
        }
    }
}

TEST_CASE("Lambda attainment identities") {
    Rng rng(505);
    for (int trial = 0; trial < 15; ++trial) {
        const ProblemSpec ps = random_spec(rng, 5);
        const LambdaResult lr = lambda_constant(ps);
        CHECK(testutil::quotient_direct(ps, lr.minimizer) ==
              doctest::Approx(lr.value).epsilon(1e-12));
        const double r = (ps.p - 1.0) / (2.0 * (ps.p + 1.0)) *
                         std::pow(lr.value, (ps.p + 1.0) / (ps.p - 1.0));
        const double s = nehari_scale(ps, lr.minimizer);
        const double J_at = energy_J(ps, (s * lr.minimizer).eval());
        CHECK(std::abs(J_at - r) <= 1e-9 * std::max(1.0, r));
    }
}

TEST_CASE("norm bounds locate the well") {
    Rng rng(606);
    int inward_checks = 0;
    while (inward_checks < 30) {
        ProblemSpec ps = random_spec(rng, 5);
        const double r = well_depth(ps);
        NodeField dir = testutil::random_field(rng, ps.graph.size(), -1.0, 1.0);
        if (norm_1a(ps, dir) < 1e-9) continue;

        // inside the ||.||_{1,a} ball of radius sqrt(2r) => InWell
        ps.u0 = dir * (rng.uniform(0.05, 0.98) * std::sqrt(2.0 * r) / norm_1a(ps, dir));
        const WellReport rep = classify(ps);
        CHECK(rep.classification == WellClass::InWell);
        // and every InWell datum obeys the outer norm bound
        CHECK(rep.norm_1a < std::sqrt(2.0 * (ps.p + 1.0) * r / (ps.p - 1.0)) + 1e-9);
        ++inward_checks;
    }
}

TEST_CASE("well depth matches the tiny-graph grid oracle") {
    Rng rng(321);
    for (int trial = 0; trial < 10; ++trial) {
        Graph g = testutil::random_connected_graph(rng, 1, 3);
        NodeField a = testutil::random_potential(rng, g.size());
        const double p = rng.uniform(1.6, 3.4);
        ProblemSpec ps{std::move(g), std::move(a), p, NodeField::Zero(0), 0.0};
        ps.u0 = NodeField::Zero(ps.graph.size());
        const double mine = well_depth(ps);
        const double oracle = testutil::grid_depth(ps);
        CHECK(std::abs(mine - oracle) <= 1e-4 * std::max(1.0, oracle));
    }
}
