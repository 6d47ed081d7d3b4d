#include "hubnet/estimate.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "hubnet/baselines.hpp"
#include "hubnet/parallel.hpp"
#include "hubnet/rng.hpp"

namespace hubnet {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

struct EmRun {
    HubParams params;
    double log_lik = kNegInf;
    double objective = kNegInf;
    std::size_t iterations = 0;
    bool converged = false;
    std::vector<double> trace;
};

// Alternate responsibility and parameter updates until the plain
// log-likelihood moves by less than rel_tol in relative terms (the same
// stop rule whatever the sharpening exponent) or the iteration cap hits.
EmRun run_em(const GroupedData& data, HubParams params, double eta,
             const FitConfig& cfg) {
    EmRun run;
    Posterior post;
    StepEval ev = e_step_eval(data, params, eta, post);
    run.trace.push_back(ev.log_lik);
    double prev = ev.log_lik;
    for (std::size_t iter = 1; iter <= cfg.max_iter; ++iter) {
        params.adjacency = m_step_adjacency(data, post);
        params.mixing = m_step_mixing(post);
        ev = e_step_eval(data, params, eta, post);
        run.trace.push_back(ev.log_lik);
        run.iterations = iter;
        if (std::abs(ev.log_lik - prev) <=
            cfg.rel_tol * std::max(1.0, std::abs(prev))) {
            run.converged = true;
            break;
        }
        prev = ev.log_lik;
    }
    run.params = std::move(params);
    run.log_lik = ev.log_lik;
    run.objective = ev.objective;
    return run;
}

// Zero out links whose both endpoints carry no mixing weight (their
// diagonal included); everything else is left alone.
void zero_dead_links(HubParams& p) {
    const std::size_t n = p.num_nodes();
    for (std::size_t i = 0; i < n; ++i) {
        if (p.mixing[i] > 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (p.mixing[j] > 0.0) continue;
            p.adjacency(i, j) = 0.0;
        }
    }
}

// Snap near-dead mixing weights to exact zero, re-normalize, and let one
// clean-up EM cycle re-balance the survivors. If the snap makes some group
// impossible, the raw estimate is kept instead.
FitResult finalize(const GroupedData& data, EmRun run, double eta,
                   const FitConfig& cfg) {
    HubParams p = run.params;
    bool snapped = false;
    double kept = 0.0;
    for (double& w : p.mixing) {
        if (w > 0.0 && w < cfg.zero_threshold) {
            w = 0.0;
            snapped = true;
        }
        kept += w;
    }
    if (snapped && kept > 0.0) {
        for (double& w : p.mixing) w /= kept;
        try {
            Posterior post = e_step(data, p, eta);
            p.adjacency = m_step_adjacency(data, post);
            p.mixing = m_step_mixing(post);
        } catch (const degenerate_mass_error&) {
            p = run.params;
        }
    }
    zero_dead_links(p);

    FitResult res;
    res.log_lik = hm_log_likelihood(data, p);
    res.objective = eta == 1.0 ? res.log_lik : pchm_objective(data, p, eta);
    res.params = std::move(p);
    res.eta = eta;
    res.n_leaders = res.params.leader_count();
    res.n_params = count_params(data.num_nodes(), res.n_leaders);
    res.bic = bic(res.log_lik, data.num_groups(), res.n_params);
    res.iterations = run.iterations;
    res.converged = run.converged;
    res.seed = cfg.seed;
    res.ll_trace = std::move(run.trace);
    res.ll_trace.push_back(res.log_lik);
    return res;
}

// Random initialization: mixing from a flat simplex draw restricted to
// nodes that appear at all, adjacency from the half-weight index squeezed
// away from the {0, 1} boundary and jittered so restarts explore different
// basins.
HubParams random_start(const GroupedData& data, const Matrix& hwi,
                       std::mt19937_64& gen) {
    const std::size_t n = data.num_nodes();
    HubParams p;
    p.mixing.resize(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double draw = exponential_draw(gen);
        p.mixing[i] = data.appearances(i) > 0 ? draw : 0.0;
        total += p.mixing[i];
    }
    for (double& w : p.mixing) w /= total;

    p.adjacency = Matrix(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) p.adjacency(i, i) = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            double a = std::clamp(hwi(i, j), 0.05, 0.95);
            a += 0.2 * uniform01(gen) - 0.1;
            a = std::clamp(a, 0.05, 0.95);
            p.adjacency(i, j) = a;
            p.adjacency(j, i) = a;
        }
    }
    zero_dead_links(p);
    return p;
}

}  // namespace

void FitConfig::validate() const {
    if (n_starts == 0)
        throw validation_error("at least one start is required");
    if (max_iter == 0 || max_iter > 5000)
        throw validation_error("max_iter must lie in [1, 5000]");
    if (!(rel_tol > 0.0) || rel_tol >= 1.0)
        throw validation_error("rel_tol must lie in (0, 1)");
    if (!(zero_threshold >= 0.0) || zero_threshold >= 1.0)
        throw validation_error("zero_threshold must lie in [0, 1)");
}

std::size_t count_params(std::size_t n_nodes, std::size_t n_leaders) {
    if (n_leaders < 1 || n_leaders > n_nodes)
        throw validation_error("leader count must lie in [1, n]");
    return n_leaders * (n_leaders - 1) / 2 +
           n_leaders * (n_nodes - n_leaders) + (n_leaders - 1);
}

double bic(double log_lik, std::size_t n_groups, std::size_t n_params) {
    if (n_groups == 0)
        throw validation_error("BIC needs at least one observation");
    return -2.0 * log_lik +
           std::log(static_cast<double>(n_groups)) *
               static_cast<double>(n_params);
}

FitResult fit_hm(const GroupedData& data, const FitConfig& cfg) {
    cfg.validate();
    const Matrix hwi = half_weight_index(data);

    // Independent seeded restarts; the winner is the run with the highest
    // log-likelihood, ties keeping the lowest start index so the result is
    // reproducible whatever the thread count.
    struct Outcome {
        bool ok = false;
        EmRun run;
    };
    std::vector<Outcome> outcomes(cfg.n_starts);
    parallel_for(outcomes.size(), cfg.threads, [&](std::size_t s) {
        try {
            auto gen = make_stream(cfg.seed, "hm-start", s);
            HubParams start = random_start(data, hwi, gen);
            outcomes[s] = Outcome{true, run_em(data, std::move(start), 1.0, cfg)};
        } catch (const fit_error&) {
            // dead start; the remaining restarts still count
        }
    });

    Outcome* best = nullptr;
    for (auto& o : outcomes) {
        if (!o.ok || !std::isfinite(o.run.log_lik)) continue;
        if (!best || o.run.log_lik > best->run.log_lik) best = &o;
    }
    if (!best)
        throw fit_error("all " + std::to_string(outcomes.size()) +
                        " starts collapsed to zero likelihood");
    return finalize(data, std::move(best->run), 1.0, cfg);
}

FitResult fit_pchm(const GroupedData& data, double eta, const HubParams& start,
                   const FitConfig& cfg) {
    cfg.validate();
    if (!(eta >= 1.0))
        throw validation_error("sharpening exponent must be >= 1");
    start.validate();
    return finalize(data, run_em(data, start, eta, cfg), eta, cfg);
}

EtaPath select_eta(const GroupedData& data, const std::vector<double>& grid,
                   const FitConfig& cfg) {
    return select_eta(data, grid, cfg, fit_hm(data, cfg));
}

EtaPath select_eta(const GroupedData& data, const std::vector<double>& grid,
                   const FitConfig& cfg, const FitResult& base_fit) {
    if (grid.empty()) throw validation_error("eta grid is empty");
    for (std::size_t k = 0; k < grid.size(); ++k) {
        if (!(grid[k] >= 1.0))
            throw validation_error("eta grid values must be >= 1");
        if (k > 0 && !(grid[k] > grid[k - 1]))
            throw validation_error("eta grid must be strictly increasing");
    }

    // The grid is walked sequentially; the restarts inside each fit are
    // what parallelize.
    EtaPath path;
    path.entries.resize(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) {
        auto& entry = path.entries[k];
        entry.eta = grid[k];
        try {
            entry.fit = fit_pchm(data, grid[k], base_fit.params, cfg);
        } catch (const fit_error&) {
            entry.failed = true;
            entry.fit.eta = grid[k];
            entry.fit.log_lik = kNegInf;
            entry.fit.objective = kNegInf;
            entry.fit.bic = std::numeric_limits<double>::infinity();
            entry.fit.seed = cfg.seed;
        }
    }

    // Prefer converged entries; fall back to unconverged ones only when
    // nothing converged. Ties in BIC go to the smaller eta.
    auto pick = [&](bool require_converged) {
        std::size_t best = path.entries.size();
        for (std::size_t k = 0; k < path.entries.size(); ++k) {
            const auto& e = path.entries[k];
            if (e.failed) continue;
            if (require_converged && !e.fit.converged) continue;
            if (best == path.entries.size() || e.fit.bic < path.entries[best].fit.bic)
                best = k;
        }
        return best;
    };
    std::size_t chosen = pick(true);
    if (chosen == path.entries.size()) chosen = pick(false);
    if (chosen == path.entries.size())
        throw fit_error("every eta in the grid failed to fit");
    path.selected_index = chosen;
    return path;
}

}  // namespace hubnet
