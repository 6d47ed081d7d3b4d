#pragma once

#include <cstdint>
#include <vector>

#include "hubnet/core.hpp"
#include "hubnet/types.hpp"

namespace hubnet {

struct FitConfig {
    std::size_t n_starts = 20;     // random restarts for the unsharpened fit
    std::size_t max_iter = 5000;   // hard cap on EM cycles per run
    double rel_tol = 1e-6;         // relative log-likelihood change to stop
    double zero_threshold = 1e-6;  // mixing weights below this snap to zero
    std::uint64_t seed = 0;
    unsigned threads = 0;          // worker cap, 0 = hardware concurrency

    void validate() const;  // throws validation_error
};

struct FitResult {
    HubParams params;
    double log_lik = 0.0;    // plain log-likelihood at the estimate
    double objective = 0.0;  // sharpened objective at `eta`
    double eta = 1.0;        // sharpening exponent this fit was run at
    double bic = 0.0;
    std::size_t n_leaders = 0;  // positive-weight nodes in the estimate
    std::size_t n_params = 0;   // free parameters counted for the BIC
    std::size_t iterations = 0;
    bool converged = false;
    std::uint64_t seed = 0;
    std::vector<double> ll_trace;  // log-likelihood after each EM cycle
};

// Free-parameter count for an n-node model in which only n_o nodes keep
// positive weight: the adjacency block among those nodes, their links to
// the remaining nodes, and the simplex weights.
std::size_t count_params(std::size_t n_nodes, std::size_t n_leaders);

// Schwarz criterion: -2 * log_lik + ln(n_groups) * n_params.
double bic(double log_lik, std::size_t n_groups, std::size_t n_params);

// Maximum-likelihood fit (eta 1) over n_starts random initializations,
// keeping the best final log-likelihood. Throws fit_error when every start
// collapses to zero-mass likelihood.
FitResult fit_hm(const GroupedData& data, const FitConfig& cfg);

// Sharpened fit at a fixed eta, warm-started from `start` (typically the
// unsharpened estimate). Deterministic: no randomness is consumed.
FitResult fit_pchm(const GroupedData& data, double eta,
                   const HubParams& start, const FitConfig& cfg);

// One grid point of the eta search.
struct EtaPathEntry {
    double eta = 1.0;
    FitResult fit;
    bool failed = false;  // the fit threw; bic/log_lik are sentinels
};

// Full search path plus the index of the chosen entry.
struct EtaPath {
    std::vector<EtaPathEntry> entries;
    std::size_t selected_index = 0;

    const FitResult& selected() const { return entries[selected_index].fit; }
};

// Fits every eta in `grid` (ascending, all >= 1) from a shared unsharpened
// fit and picks the entry with the smallest BIC, preferring converged
// entries and breaking ties toward the smaller eta.
EtaPath select_eta(const GroupedData& data, const std::vector<double>& grid,
                   const FitConfig& cfg);
EtaPath select_eta(const GroupedData& data, const std::vector<double>& grid,
                   const FitConfig& cfg, const FitResult& base_fit);

}  // namespace hubnet
