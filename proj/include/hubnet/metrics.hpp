#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hubnet/estimate.hpp"
#include "hubnet/types.hpp"

namespace hubnet {

// Mean absolute error between estimated and true adjacency over the upper
// triangle (diagonal excluded). Before comparing, both sides are pushed to
// the same convention: mixing weights below 1e-6 count as zero and links
// between two zero-weight nodes are zeroed.
double mae_adjacency(const HubParams& estimate, const HubParams& truth);

// Mean absolute error between estimated and true mixing weights, averaged
// over all nodes, under the same zeroing convention.
double mae_mixing(const HubParams& estimate, const HubParams& truth);

enum class SimDesign { iid, time_varying, two_leader };

std::string to_string(SimDesign design);
SimDesign design_from_string(const std::string& name);  // validation_error

// Ground-truth configuration shared by the simulation designs; fields
// irrelevant to a design are ignored.
struct SimSpec {
    std::size_t n_nodes = 50;
    std::size_t n_leaders = 8;
    double link_density = 0.5;
    double alpha = 1.0;
    double beta = 3.0;
    double fresh_prob = 0.2;    // time_varying
    double stay_offset = 1.0;   // time_varying
    double join_offset = -1.0;  // time_varying
    double intercept = -3.5;    // two_leader
};

// One fitted method on one simulated data set.
struct SimReplicateReport {
    SimDesign design = SimDesign::iid;
    std::size_t n_groups = 0;
    std::size_t replicate = 0;
    std::string method;  // "HM" or "PCHM"
    std::optional<double> mae_A;    // absent when no comparable truth exists
    std::optional<double> mae_rho;
    std::size_t n_leaders = 0;
    std::size_t n_params = 0;
    std::optional<double> eta;  // PCHM only: the selected exponent
    double runtime_seconds = 0.0;
    std::uint64_t seed = 0;
};

struct SimAggregateRow {
    SimDesign design = SimDesign::iid;
    std::size_t n_groups = 0;
    std::string method;
    std::string metric;
    double mean = 0.0;
    double stdev = 0.0;
    std::size_t n_failed = 0;
};

struct SimResult {
    std::vector<SimReplicateReport> replicates;
    std::vector<SimAggregateRow> aggregate;
    std::size_t n_failed = 0;
};

// Full study: for every group count in `n_groups_list` runs `n_replicates`
// independent draws, fits both methods (the sharpened one by BIC over
// `eta_grid`), and aggregates mean/stdev per metric. Replicate seeds derive
// from (cfg.seed, design, n_groups, replicate), so any subset reproduces
// the full run's numbers. Failed replicates are counted and excluded.
SimResult run_replicates(SimDesign design, const SimSpec& spec,
                         const std::vector<std::size_t>& n_groups_list,
                         std::size_t n_replicates,
                         const std::vector<double>& eta_grid,
                         const FitConfig& cfg);

}  // namespace hubnet
