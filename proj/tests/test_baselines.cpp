#include <doctest.h>

#include "fixtures.hpp"
#include "hubnet/baselines.hpp"

using namespace hubnet;
using namespace hubnet::testing;

TEST_CASE("co-occurrence matrix matches the dinner-party hand table") {
    GroupedData data = parties_groups();
    Matrix o = co_occurrence(data);
    REQUIRE(o.rows() == 6);

    // joint appearance counts over T=3, worked out by hand
    const double third = 1.0 / 3.0;
    const double want[6][6] = {
        {2 * third, 0,         1 * third, 1 * third, 2 * third, 1 * third},
        {0,         1 * third, 1 * third, 0,         1 * third, 1 * third},
        {1 * third, 1 * third, 2 * third, 1 * third, 2 * third, 1 * third},
        {1 * third, 0,         1 * third, 1 * third, 1 * third, 0},
        {2 * third, 1 * third, 2 * third, 1 * third, 3 * third, 2 * third},
        {1 * third, 1 * third, 1 * third, 0,         2 * third, 2 * third},
    };
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j)
            CHECK(o(i, j) == doctest::Approx(want[i][j]).epsilon(1e-12));
}

TEST_CASE("half-weight index matches the dinner-party hand table") {
    GroupedData data = parties_groups();
    Matrix h = half_weight_index(data);
    REQUIRE(h.rows() == 6);

    const double want[6][6] = {
        {1.0,     0,       0.5,     2.0 / 3, 0.8,     0.5},
        {0,       1.0,     2.0 / 3, 0,       0.5,     2.0 / 3},
        {0.5,     2.0 / 3, 1.0,     2.0 / 3, 0.8,     0.5},
        {2.0 / 3, 0,       2.0 / 3, 1.0,     0.5,     0},
        {0.8,     0.5,     0.8,     0.5,     1.0,     0.8},
        {0.5,     2.0 / 3, 0.5,     0,       0.8,     1.0},
    };
    for (std::size_t i = 0; i < 6; ++i)
        for (std::size_t j = 0; j < 6; ++j)
            CHECK(h(i, j) == doctest::Approx(want[i][j]).epsilon(1e-12));

    // the classic spot values: Ross-Sarah
    CHECK(co_occurrence(data)(4, 5) == doctest::Approx(2.0 / 3).epsilon(1e-12));
    CHECK(h(4, 5) == doctest::Approx(0.8).epsilon(1e-12));
}

TEST_CASE("nodes that never appear score zero everywhere") {
    GroupedData data(2, 3, {1, 1, 0, 1, 0, 0});
    Matrix o = co_occurrence(data);
    Matrix h = half_weight_index(data);
    for (std::size_t j = 0; j < 3; ++j) {
        CHECK(o(2, j) == 0.0);
        CHECK(o(j, 2) == 0.0);
        CHECK(h(2, j) == 0.0);
        CHECK(h(j, 2) == 0.0);
    }
    CHECK(h(0, 0) == 1.0);
    CHECK(h(1, 1) == 1.0);
    CHECK(o(0, 0) == 1.0);
    CHECK(o(1, 1) == doctest::Approx(0.5).epsilon(1e-12));
}
