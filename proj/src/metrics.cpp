#include "hubnet/metrics.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>

#include "hubnet/datagen.hpp"
#include "hubnet/parallel.hpp"
#include "hubnet/rng.hpp"

namespace hubnet {

namespace {

// Weights below this count as "not a leader" in every reported comparison,
// independent of the fitting threshold.
constexpr double kZeroCutoff = 1e-6;

// Push a parameter set to the reporting convention: near-zero weights snap
// to zero and links between two zeroed nodes vanish.
HubParams reporting_form(const HubParams& params) {
    HubParams out = params;
    for (double& w : out.mixing)
        if (w < kZeroCutoff) w = 0.0;
    const std::size_t n = out.num_nodes();
    for (std::size_t i = 0; i < n; ++i) {
        if (out.mixing[i] > 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (out.mixing[j] > 0.0) continue;
            out.adjacency(i, j) = 0.0;
        }
    }
    return out;
}

void check_same_size(const HubParams& a, const HubParams& b) {
    if (a.num_nodes() != b.num_nodes())
        throw validation_error("parameter sets cover different node counts");
}

double now_seconds() {
    using clock = std::chrono::steady_clock;
    return std::chrono::duration<double>(clock::now().time_since_epoch())
        .count();
}

struct Stats {
    double mean = 0.0;
    double stdev = 0.0;
};

// Mean and sample standard deviation, summed over sorted values so the
// result is identical for any permutation of the inputs.
Stats robust_stats(std::vector<double> values) {
    Stats s;
    if (values.empty()) return s;
    std::sort(values.begin(), values.end());
    double total = 0.0;
    for (double v : values) total += v;
    s.mean = total / static_cast<double>(values.size());
    if (values.size() > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - s.mean) * (v - s.mean);
        s.stdev = std::sqrt(ss / static_cast<double>(values.size() - 1));
    }
    return s;
}

std::vector<double> default_eta_grid() {
    std::vector<double> grid;
    for (int k = 0; k <= 28; ++k) grid.push_back(1.0 + 0.5 * k);
    return grid;
}

struct ReplicateOutcome {
    bool ok = false;
    SimReplicateReport hm;
    SimReplicateReport pchm;
};

ReplicateOutcome run_one(SimDesign design, const SimSpec& spec,
                         std::size_t n_groups, std::size_t replicate,
                         const std::vector<double>& grid, const FitConfig& cfg) {
    std::uint64_t rep_seed =
        derive_seed(cfg.seed,
                    "replicate:" + to_string(design) + ":" +
                        std::to_string(n_groups),
                    replicate);

    HubParams truth;
    bool has_truth = true;
    GroupedData data = [&] {
        switch (design) {
        case SimDesign::iid: {
            SparseBetaSpec sb{spec.n_nodes,       spec.n_leaders,
                              spec.link_density,  spec.alpha,
                              spec.beta,          derive_seed(rep_seed, "params")};
            truth = gen_hub_params(sb);
            return gen_groups(truth, n_groups, derive_seed(rep_seed, "data"));
        }
        case SimDesign::time_varying: {
            SparseBetaSpec sb{spec.n_nodes,       spec.n_leaders,
                              spec.link_density,  spec.alpha,
                              spec.beta,          derive_seed(rep_seed, "params")};
            truth = gen_hub_params(sb);
            TimeVaryingSpec tv;
            tv.logits = membership_logits(truth.adjacency, spec.n_leaders);
            tv.fresh_prob = spec.fresh_prob;
            tv.stay_offset = spec.stay_offset;
            tv.join_offset = spec.join_offset;
            tv.n_groups = n_groups;
            tv.seed = derive_seed(rep_seed, "data");
            return gen_time_varying(tv);
        }
        case SimDesign::two_leader:
        default: {
            has_truth = false;  // no single-leader truth to compare against
            auto gen = make_stream(derive_seed(rep_seed, "params"), "attraction");
            Matrix h(spec.n_leaders, spec.n_nodes);
            for (std::size_t i = 0; i < spec.n_leaders; ++i)
                for (std::size_t j = 0; j < spec.n_nodes; ++j)
                    h(i, j) = uniform01(gen);
            TwoLeaderSpec tl;
            tl.attraction = std::move(h);
            tl.intercept = spec.intercept;
            tl.n_groups = n_groups;
            tl.seed = derive_seed(rep_seed, "data");
            return gen_two_leader(tl);
        }
        }
    }();

    FitConfig rep_cfg = cfg;
    rep_cfg.seed = derive_seed(rep_seed, "fit");
    rep_cfg.threads = 1;  // replicates already run in parallel

    ReplicateOutcome out;
    auto fill = [&](SimReplicateReport& r, const std::string& method) {
        r.design = design;
        r.n_groups = n_groups;
        r.replicate = replicate;
        r.method = method;
        r.seed = rep_seed;
    };
    fill(out.hm, "HM");
    fill(out.pchm, "PCHM");

    double t0 = now_seconds();
    FitResult hm = fit_hm(data, rep_cfg);
    double t1 = now_seconds();
    EtaPath path = select_eta(data, grid, rep_cfg, hm);
    double t2 = now_seconds();
    const FitResult& pchm = path.selected();

    out.hm.n_leaders = hm.n_leaders;
    out.hm.n_params = hm.n_params;
    out.hm.runtime_seconds = t1 - t0;
    out.pchm.n_leaders = pchm.n_leaders;
    out.pchm.n_params = pchm.n_params;
    out.pchm.eta = pchm.eta;
    out.pchm.runtime_seconds = t2 - t1;
    if (has_truth) {
        out.hm.mae_A = mae_adjacency(hm.params, truth);
        out.hm.mae_rho = mae_mixing(hm.params, truth);
        out.pchm.mae_A = mae_adjacency(pchm.params, truth);
        out.pchm.mae_rho = mae_mixing(pchm.params, truth);
    }
    out.ok = true;
    return out;
}

}  // namespace

double mae_adjacency(const HubParams& estimate, const HubParams& truth) {
    check_same_size(estimate, truth);
    HubParams est = reporting_form(estimate);
    HubParams ref = reporting_form(truth);
    const std::size_t n = est.num_nodes();
    if (n < 2) throw validation_error("need at least two nodes for pair error");
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            total += std::abs(est.adjacency(i, j) - ref.adjacency(i, j));
    return total / (static_cast<double>(n) * static_cast<double>(n - 1) / 2.0);
}

double mae_mixing(const HubParams& estimate, const HubParams& truth) {
    check_same_size(estimate, truth);
    HubParams est = reporting_form(estimate);
    HubParams ref = reporting_form(truth);
    const std::size_t n = est.num_nodes();
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        total += std::abs(est.mixing[i] - ref.mixing[i]);
    return total / static_cast<double>(n);
}

std::string to_string(SimDesign design) {
    switch (design) {
    case SimDesign::iid: return "iid";
    case SimDesign::time_varying: return "time_varying";
    case SimDesign::two_leader: return "two_leader";
    }
    return "unknown";
}

SimDesign design_from_string(const std::string& name) {
    if (name == "iid") return SimDesign::iid;
    if (name == "time_varying") return SimDesign::time_varying;
    if (name == "two_leader") return SimDesign::two_leader;
    throw validation_error("unknown design '" + name +
                           "'; expected iid, time_varying, or two_leader");
}

SimResult run_replicates(SimDesign design, const SimSpec& spec,
                         const std::vector<std::size_t>& n_groups_list,
                         std::size_t n_replicates,
                         const std::vector<double>& eta_grid,
                         const FitConfig& cfg) {
    if (n_replicates < 1)
        throw validation_error("at least one replicate is required");
    if (n_groups_list.empty())
        throw validation_error("at least one group count is required");
    for (std::size_t T : n_groups_list)
        if (T == 0) throw validation_error("group counts must be positive");
    cfg.validate();
    const std::vector<double> grid =
        eta_grid.empty() ? default_eta_grid() : eta_grid;

    const std::size_t n_cells = n_groups_list.size() * n_replicates;
    std::vector<ReplicateOutcome> outcomes(n_cells);
    parallel_for(n_cells, cfg.threads, [&](std::size_t idx) {
        std::size_t ti = idx / n_replicates;
        std::size_t r = idx % n_replicates;
        try {
            outcomes[idx] =
                run_one(design, spec, n_groups_list[ti], r, grid, cfg);
        } catch (const std::exception&) {
            // failed replicate: excluded from aggregates, counted below
        }
    });

    SimResult result;
    for (std::size_t ti = 0; ti < n_groups_list.size(); ++ti) {
        const std::size_t n_groups = n_groups_list[ti];
        std::size_t failed = 0;
        for (std::size_t r = 0; r < n_replicates; ++r) {
            const auto& o = outcomes[ti * n_replicates + r];
            if (!o.ok) {
                ++failed;
                continue;
            }
            result.replicates.push_back(o.hm);
            result.replicates.push_back(o.pchm);
        }
        result.n_failed += failed;

        for (const std::string& method : {std::string("HM"), std::string("PCHM")}) {
            const char* metric_names[] = {"mae_A", "mae_rho", "est_n_o",
                                          "est_d", "selected_eta"};
            for (const char* metric : metric_names) {
                std::vector<double> values;
                for (const auto& rep : result.replicates) {
                    if (rep.n_groups != n_groups || rep.method != method)
                        continue;
                    std::string m(metric);
                    if (m == "mae_A" && rep.mae_A) values.push_back(*rep.mae_A);
                    if (m == "mae_rho" && rep.mae_rho)
                        values.push_back(*rep.mae_rho);
                    if (m == "est_n_o")
                        values.push_back(static_cast<double>(rep.n_leaders));
                    if (m == "est_d")
                        values.push_back(static_cast<double>(rep.n_params));
                    if (m == "selected_eta" && rep.eta)
                        values.push_back(*rep.eta);
                }
                if (values.empty()) continue;
                Stats s = robust_stats(std::move(values));
                result.aggregate.push_back(SimAggregateRow{
                    design, n_groups, method, metric, s.mean, s.stdev, failed});
            }
        }
    }
    return result;
}

}  // namespace hubnet
