#pragma once

#include <cmath>
#include <cstdint>
#include <utility>
#include <vector>

#include "hubnet/types.hpp"

namespace hubnet {

// Ground-truth generator for the independent-groups design: the first
// n_leaders nodes share the mixing weight uniformly, and each potential
// link from a leader is present with probability link_density, its
// strength drawn Beta(alpha, beta).
struct SparseBetaSpec {
    std::size_t n_nodes = 50;
    std::size_t n_leaders = 8;
    double link_density = 0.5;
    double alpha = 1.0;
    double beta = 3.0;
    std::uint64_t seed = 0;

    void validate() const;
};

HubParams gen_hub_params(const SparseBetaSpec& spec);

// n_groups independent draws from the model: pick a convener by the mixing
// weights, then include every other node by its adjacency probability.
GroupedData gen_groups(const HubParams& params, std::size_t n_groups,
                       std::uint64_t seed);

// Markov design: group composition persists between draws. With
// probability fresh_prob a draw starts a new segment (an independent draw
// through `logits`); otherwise current members stay with the boosted
// odds and outsiders join with the damped odds.
struct TimeVaryingSpec {
    Matrix logits;           // leader-row membership log-odds at a fresh draw
    double fresh_prob = 0.2;
    double stay_offset = 1.0;   // added to a member's log-odds next draw
    double join_offset = -1.0;  // added to an outsider's log-odds next draw
    std::size_t n_groups = 100;
    std::uint64_t seed = 0;

    void validate() const;
};

GroupedData gen_time_varying(const TimeVaryingSpec& spec);

// Same draw plus the per-group fresh-segment flags, for diagnostics.
struct TimeVaryingDraw {
    GroupedData data;
    std::vector<std::uint8_t> fresh;
};
TimeVaryingDraw gen_time_varying_trace(const TimeVaryingSpec& spec);

// Two-convener design: each group is convened by two distinct leaders
// drawn uniformly without replacement, and node k joins with probability
// logistic(attraction to one leader + attraction to the other + intercept).
// Both conveners are always in the group.
struct TwoLeaderSpec {
    Matrix attraction;  // n_leaders x n_nodes, non-negative pulls
    double intercept = -3.5;
    std::size_t n_groups = 1000;
    std::uint64_t seed = 0;

    void validate() const;
};

GroupedData gen_two_leader(const TwoLeaderSpec& spec);

// Same draw plus the convener pair of every group, for diagnostics.
struct TwoLeaderDraw {
    GroupedData data;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> leaders;
};
TwoLeaderDraw gen_two_leader_trace(const TwoLeaderSpec& spec);

inline double logistic(double x) { return 1.0 / (1.0 + std::exp(-x)); }

// Log-odds of each adjacency entry after clamping into [0.01, 0.99], the
// usual way to seed TimeVaryingSpec::logits from generated parameters.
Matrix membership_logits(const Matrix& probabilities,
                         std::size_t n_leaders);

}  // namespace hubnet
