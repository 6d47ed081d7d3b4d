#include <doctest.h>

#include <cmath>
#include <limits>

#include "fixtures.hpp"
#include "hubnet/core.hpp"
#include "oracle.hpp"

using namespace hubnet;
using namespace hubnet::testing;

TEST_CASE("likelihood and objective agree with the brute-force oracle") {
    const double etas[] = {1.3, 2.0, 3.7};
    for (std::uint64_t seed = 1; seed <= 200; ++seed) {
        RandomCase c = random_case(seed);
        CAPTURE(seed);

        double want = oracle_objective(c.data, c.params, 1.0);
        CHECK(hm_log_likelihood(c.data, c.params) ==
              doctest::Approx(want).epsilon(1e-12));

        for (double eta : etas) {
            CAPTURE(eta);
            CHECK(pchm_objective(c.data, c.params, eta) ==
                  doctest::Approx(oracle_objective(c.data, c.params, eta))
                      .epsilon(1e-12));
        }
    }
}

TEST_CASE("responsibilities agree with the brute-force oracle") {
    const double etas[] = {1.0, 1.7};
    for (std::uint64_t seed = 1; seed <= 50; ++seed) {
        RandomCase c = random_case(seed);
        CAPTURE(seed);
        for (double eta : etas) {
            Posterior post = e_step(c.data, c.params, eta);
            for (std::size_t t = 0; t < c.data.num_groups(); ++t) {
                auto want = oracle_responsibilities(c.data, c.params, eta, t);
                for (std::size_t i = 0; i < c.data.num_nodes(); ++i)
                    CHECK(post.resp(t, i) ==
                          doctest::Approx(want[i]).epsilon(1e-12));
            }
        }
    }
}

TEST_CASE("responsibility rows are normalized and member-supported") {
    const double etas[] = {1.0, 1.1, 2.0, 5.0};
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        RandomCase c = random_case(seed);
        for (double eta : etas) {
            Posterior post = e_step(c.data, c.params, eta);
            for (std::size_t t = 0; t < c.data.num_groups(); ++t) {
                double sum = 0.0;
                for (std::size_t i = 0; i < c.data.num_nodes(); ++i) {
                    double r = post.resp(t, i);
                    CHECK(r >= 0.0);
                    if (!c.data.contains(t, i)) CHECK(r == 0.0);
                    sum += r;
                }
                CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
            }
        }
    }
}

TEST_CASE("unsharpened objective is exactly the log-likelihood") {
    GroupedData data = toy_groups();
    HubParams p = planted_params();
    CHECK(pchm_objective(data, p, 1.0) == hm_log_likelihood(data, p));

    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        RandomCase c = random_case(seed);
        CHECK(pchm_objective(c.data, c.params, 1.0) ==
              hm_log_likelihood(c.data, c.params));
    }
}

TEST_CASE("hand-computed two-node responsibilities") {
    GroupedData data(1, 2, {1, 1});
    HubParams p;
    p.mixing = {0.6, 0.4};
    p.adjacency = Matrix(2, 2, 0.5);
    p.adjacency(0, 0) = 1.0;
    p.adjacency(1, 1) = 1.0;

    Posterior post = e_step(data, p, 1.0);
    CHECK(post.resp(0, 0) == doctest::Approx(0.6).epsilon(1e-14));
    CHECK(post.resp(0, 1) == doctest::Approx(0.4).epsilon(1e-14));

    // squaring the weights shifts the posterior to (9/13, 4/13)
    Posterior sharp = e_step(data, p, 2.0);
    CHECK(sharp.resp(0, 0) == doctest::Approx(9.0 / 13.0).epsilon(1e-14));
    CHECK(sharp.resp(0, 1) == doctest::Approx(4.0 / 13.0).epsilon(1e-14));
}

TEST_CASE("a group no convener can produce is degenerate") {
    // only node 2 is present, but all weight sits on node 1
    GroupedData data(1, 2, {0, 1});
    HubParams p;
    p.mixing = {1.0, 0.0};
    p.adjacency = Matrix(2, 2, 0.0);
    p.adjacency(0, 0) = 1.0;

    CHECK(hm_log_likelihood(data, p) ==
          -std::numeric_limits<double>::infinity());
    CHECK(pchm_objective(data, p, 2.0) ==
          -std::numeric_limits<double>::infinity());
    CHECK_THROWS_AS(e_step(data, p, 1.0), degenerate_mass_error);
    try {
        e_step(data, p, 1.0);
    } catch (const degenerate_mass_error& e) {
        CHECK(e.group == 0);
    }
}

TEST_CASE("mixing update is the responsibility column mean") {
    GroupedData data(2, 2, {1, 1, 1, 0});
    HubParams p;
    p.mixing = {0.5, 0.5};
    p.adjacency = Matrix(2, 2, 0.5);
    p.adjacency(0, 0) = 1.0;
    p.adjacency(1, 1) = 1.0;

    Posterior post = e_step(data, p, 1.0);
    auto mix = m_step_mixing(post);
    REQUIRE(mix.size() == 2);
    CHECK(mix[0] + mix[1] == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t i = 0; i < 2; ++i) {
        double want = (post.resp(0, i) + post.resp(1, i)) / 2.0;
        CHECK(mix[i] == doctest::Approx(want).epsilon(1e-14));
    }
}

TEST_CASE("adjacency update restores structure") {
    for (std::uint64_t seed = 1; seed <= 25; ++seed) {
        RandomCase c = random_case(seed);
        Posterior post = e_step(c.data, c.params, 1.4);
        Matrix a = m_step_adjacency(c.data, post);
        const std::size_t n = c.data.num_nodes();

        // symmetric, inside [0,1], and unit diagonal wherever mass lands
        std::vector<double> mass(n, 0.0);
        for (std::size_t t = 0; t < c.data.num_groups(); ++t)
            for (std::size_t i = 0; i < n; ++i) mass[i] += post.resp(t, i);
        for (std::size_t i = 0; i < n; ++i) {
            if (mass[i] > 0.0) CHECK(a(i, i) == 1.0);
            for (std::size_t j = 0; j < n; ++j) {
                CHECK(a(i, j) == a(j, i));
                CHECK(a(i, j) >= 0.0);
                CHECK(a(i, j) <= 1.0);
            }
        }
    }
}

TEST_CASE("links between mass-free nodes fall to zero") {
    // one observed group {v1, v2}; v3 never carries responsibility
    GroupedData data(1, 3, {1, 1, 0});
    HubParams p;
    p.mixing = {1.0, 0.0, 0.0};
    p.adjacency = Matrix(3, 3, 0.5);
    for (std::size_t i = 0; i < 3; ++i) p.adjacency(i, i) = 1.0;

    Posterior post = e_step(data, p, 1.0);
    Matrix a = m_step_adjacency(data, post);
    CHECK(a(0, 0) == 1.0);
    CHECK(a(0, 1) == 1.0);   // always co-observed with all mass on v1
    CHECK(a(1, 2) == 0.0);   // no responsibility touches this pair
    CHECK(a(2, 2) == 0.0);
}
