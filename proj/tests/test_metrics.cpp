#include <doctest.h>

#include <cmath>

#include "fixtures.hpp"
#include "hubnet/metrics.hpp"

using namespace hubnet;
using namespace hubnet::testing;

namespace {

HubParams four_node(const std::vector<double>& mixing,
                    std::initializer_list<double> upper) {
    HubParams p;
    p.mixing = mixing;
    p.adjacency = Matrix(4, 4, 0.0);
    auto it = upper.begin();
    for (std::size_t i = 0; i < 4; ++i) {
        p.adjacency(i, i) = p.mixing[i] > 0 ? 1.0 : 0.0;
        for (std::size_t j = i + 1; j < 4; ++j) {
            p.adjacency(i, j) = *it;
            p.adjacency(j, i) = *it;
            ++it;
        }
    }
    return p;
}

}  // namespace

TEST_CASE("adjacency error averages the upper triangle") {
    HubParams truth;
    truth.mixing = {0.5, 0.5, 0.0};
    truth.adjacency = Matrix(3, 3, 0.0);
    truth.adjacency(0, 0) = truth.adjacency(1, 1) = 1.0;
    truth.adjacency(0, 1) = truth.adjacency(1, 0) = 0.5;
    truth.adjacency(0, 2) = truth.adjacency(2, 0) = 0.2;

    HubParams est = truth;
    est.adjacency(0, 1) = est.adjacency(1, 0) = 0.4;
    est.adjacency(1, 2) = est.adjacency(2, 1) = 0.3;

    CHECK(mae_adjacency(est, truth) ==
          doctest::Approx((0.1 + 0.3 + 0.0) / 3.0).epsilon(1e-12));
    CHECK(mae_adjacency(truth, truth) == 0.0);
}

TEST_CASE("mixing error averages over all nodes") {
    HubParams truth = four_node({0.5, 0.5, 0, 0}, {0.5, 0, 0, 0, 0, 0});
    HubParams est = four_node({0.6, 0.4, 0, 0}, {0.5, 0, 0, 0, 0, 0});
    CHECK(mae_mixing(est, truth) == doctest::Approx(0.05).epsilon(1e-12));
    CHECK(mae_mixing(truth, truth) == 0.0);
}

TEST_CASE("reporting conventions zero out dead weights and dead links") {
    // the estimate carries a vanishing weight on node 3 and junk between
    // the two dead nodes; both must vanish before comparison
    HubParams truth = four_node({0.5, 0.5, 0, 0}, {0.5, 0, 0, 0, 0, 0});
    HubParams est = truth;
    est.mixing = {0.5, 0.5, 1e-9, 0};
    est.adjacency(2, 3) = est.adjacency(3, 2) = 0.9;

    CHECK(mae_mixing(est, truth) == 0.0);
    CHECK(mae_adjacency(est, truth) == 0.0);

    // a live endpoint keeps its link error visible
    HubParams est2 = truth;
    est2.adjacency(1, 3) = est2.adjacency(3, 1) = 0.9;
    CHECK(mae_adjacency(est2, truth) == doctest::Approx(0.9 / 6.0).epsilon(1e-12));
}

TEST_CASE("metric inputs must agree on the node count") {
    HubParams small;
    small.mixing = {1.0, 0.0};
    small.adjacency = Matrix(2, 2, 0.0);
    small.adjacency(0, 0) = 1.0;
    HubParams big = four_node({0.5, 0.5, 0, 0}, {0.5, 0, 0, 0, 0, 0});
    CHECK_THROWS_AS(mae_adjacency(small, big), validation_error);
    CHECK_THROWS_AS(mae_mixing(big, small), validation_error);
}

TEST_CASE("design names round-trip") {
    for (SimDesign d : {SimDesign::iid, SimDesign::time_varying,
                        SimDesign::two_leader})
        CHECK(design_from_string(to_string(d)) == d);
    CHECK_THROWS_AS(design_from_string("bogus"), validation_error);
}

TEST_CASE("single-replicate aggregates echo the replicate") {
    SimSpec spec;
    spec.n_nodes = 10;
    spec.n_leaders = 3;
    FitConfig cfg;
    cfg.n_starts = 5;
    cfg.seed = 3;
    cfg.threads = 1;

    SimResult res = run_replicates(SimDesign::iid, spec, {40}, 1,
                                   {1.0, 2.0, 3.0}, cfg);
    REQUIRE(res.replicates.size() == 2);  // one HM row, one PCHM row
    CHECK(res.n_failed == 0);

    for (const auto& row : res.aggregate) {
        CHECK(row.stdev == 0.0);
        CHECK(row.n_failed == 0);
        const auto& rep =
            row.method == "HM" ? res.replicates[0] : res.replicates[1];
        if (row.metric == "mae_A") CHECK(row.mean == *rep.mae_A);
        if (row.metric == "mae_rho") CHECK(row.mean == *rep.mae_rho);
        if (row.metric == "est_n_o")
            CHECK(row.mean == static_cast<double>(rep.n_leaders));
        if (row.metric == "est_d")
            CHECK(row.mean == static_cast<double>(rep.n_params));
        if (row.metric == "selected_eta") CHECK(row.mean == *rep.eta);
    }
}

TEST_CASE("replicate reports stay internally consistent") {
    SimSpec spec;
    spec.n_nodes = 12;
    spec.n_leaders = 3;
    FitConfig cfg;
    cfg.n_starts = 4;
    cfg.seed = 9;
    cfg.threads = 1;

    SimResult res = run_replicates(SimDesign::iid, spec, {60}, 2,
                                   {1.0, 1.5, 2.0}, cfg);
    REQUIRE(res.replicates.size() == 4);
    for (const auto& rep : res.replicates) {
        CHECK(rep.n_params == count_params(12, rep.n_leaders));
        CHECK(rep.mae_A.has_value());
        CHECK(*rep.mae_A >= 0.0);
        CHECK(*rep.mae_rho >= 0.0);
        CHECK(rep.runtime_seconds >= 0.0);
        if (rep.method == "PCHM") {
            REQUIRE(rep.eta.has_value());
            CHECK(*rep.eta >= 1.0);
        } else {
            CHECK_FALSE(rep.eta.has_value());
        }
    }

    // the harness is a pure function of its configuration
    SimResult res2 = run_replicates(SimDesign::iid, spec, {60}, 2,
                                    {1.0, 1.5, 2.0}, cfg);
    REQUIRE(res2.aggregate.size() == res.aggregate.size());
    for (std::size_t k = 0; k < res.aggregate.size(); ++k) {
        CHECK(res2.aggregate[k].mean == res.aggregate[k].mean);
        CHECK(res2.aggregate[k].stdev == res.aggregate[k].stdev);
    }
}

TEST_CASE("designs without a comparable truth omit the error metrics") {
    SimSpec spec;
    spec.n_nodes = 10;
    spec.n_leaders = 3;
    spec.intercept = -1.0;
    FitConfig cfg;
    cfg.n_starts = 3;
    cfg.seed = 12;
    cfg.threads = 1;

    SimResult res = run_replicates(SimDesign::two_leader, spec, {50}, 1,
                                   {1.0, 2.0}, cfg);
    for (const auto& rep : res.replicates) {
        CHECK_FALSE(rep.mae_A.has_value());
        CHECK_FALSE(rep.mae_rho.has_value());
    }
    for (const auto& row : res.aggregate) {
        CHECK(row.metric != "mae_A");
        CHECK(row.metric != "mae_rho");
    }
}

TEST_CASE("harness validates its inputs") {
    SimSpec spec;
    FitConfig cfg;
    CHECK_THROWS_AS(run_replicates(SimDesign::iid, spec, {}, 1, {}, cfg),
                    validation_error);
    CHECK_THROWS_AS(run_replicates(SimDesign::iid, spec, {10}, 0, {}, cfg),
                    validation_error);
    CHECK_THROWS_AS(run_replicates(SimDesign::iid, spec, {0}, 1, {}, cfg),
                    validation_error);
}
