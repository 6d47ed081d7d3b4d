#include "hubnet/datagen.hpp"

#include <string>

#include "hubnet/rng.hpp"

namespace hubnet {

namespace {

// Cumulative-walk draw over nonnegative weights. Shared by every generator
// so designs fed from the same stream position pick the same index.
std::size_t pick_weighted(std::mt19937_64& gen,
                          const std::vector<double>& weights) {
    double u = uniform01(gen);
    double cum = 0.0;
    std::size_t last = weights.size();
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (weights[i] <= 0.0) continue;
        cum += weights[i];
        last = i;
        if (u < cum) return i;
    }
    if (last == weights.size())
        throw validation_error("no positive weight to draw from");
    return last;  // u landed in the rounding gap above the last weight
}

}  // namespace

void SparseBetaSpec::validate() const {
    if (n_nodes < 2) throw validation_error("at least two nodes are required");
    if (n_leaders < 1 || n_leaders > n_nodes)
        throw validation_error("leader count must lie in [1, n]");
    if (!(link_density >= 0.0 && link_density <= 1.0))
        throw validation_error("link density must lie in [0, 1]");
    if (!(alpha > 0.0) || !(beta > 0.0))
        throw validation_error("Beta shape parameters must be positive");
}

HubParams gen_hub_params(const SparseBetaSpec& spec) {
    spec.validate();
    auto gen = make_stream(spec.seed, "hub-params");
    HubParams params;
    params.mixing.assign(spec.n_nodes, 0.0);
    for (std::size_t i = 0; i < spec.n_leaders; ++i)
        params.mixing[i] = 1.0 / static_cast<double>(spec.n_leaders);

    params.adjacency = Matrix(spec.n_nodes, spec.n_nodes, 0.0);
    for (std::size_t i = 0; i < spec.n_leaders; ++i)
        params.adjacency(i, i) = 1.0;
    // Only pairs touching a leader can carry a link; each one is present
    // with the link density and then weighted by a Beta draw.
    for (std::size_t i = 0; i < spec.n_leaders; ++i) {
        for (std::size_t j = i + 1; j < spec.n_nodes; ++j) {
            double a = 0.0;
            if (uniform01(gen) < spec.link_density)
                a = beta_draw(gen, spec.alpha, spec.beta);
            params.adjacency(i, j) = a;
            params.adjacency(j, i) = a;
        }
    }
    return params;
}

GroupedData gen_groups(const HubParams& params, std::size_t n_groups,
                       std::uint64_t seed) {
    params.validate();
    if (n_groups == 0)
        throw validation_error("at least one group is required");
    const std::size_t n = params.num_nodes();
    std::vector<std::uint8_t> cells(n_groups * n, 0);
    for (std::size_t t = 0; t < n_groups; ++t) {
        auto gen = make_stream(seed, "group", t);
        std::size_t center = pick_weighted(gen, params.mixing);
        const double* probs = params.adjacency.row_data(center);
        std::uint8_t* row = cells.data() + t * n;
        for (std::size_t j = 0; j < n; ++j) {
            if (j == center)
                row[j] = 1;
            else
                row[j] = uniform01(gen) < probs[j] ? 1 : 0;
        }
    }
    return GroupedData(n_groups, n, std::move(cells));
}

void TimeVaryingSpec::validate() const {
    if (logits.rows() < 1 || logits.cols() < 2)
        throw validation_error("logit matrix must be n_leaders x n with n >= 2");
    if (logits.rows() > logits.cols())
        throw validation_error("more leader rows than nodes");
    if (!(fresh_prob > 0.0 && fresh_prob <= 1.0))
        throw validation_error("segment probability must lie in (0, 1]");
    if (n_groups == 0)
        throw validation_error("at least one group is required");
}

TimeVaryingDraw gen_time_varying_trace(const TimeVaryingSpec& spec) {
    spec.validate();
    const std::size_t n_leaders = spec.logits.rows();
    const std::size_t n = spec.logits.cols();
    const std::size_t n_groups = spec.n_groups;

    std::vector<double> leader_weights(
        n_leaders, 1.0 / static_cast<double>(n_leaders));
    Matrix fresh_probs(n_leaders, n);
    for (std::size_t i = 0; i < n_leaders; ++i)
        for (std::size_t j = 0; j < n; ++j)
            fresh_probs(i, j) = logistic(spec.logits(i, j));

    std::vector<std::uint8_t> cells(n_groups * n, 0);
    std::vector<std::uint8_t> fresh_flags(n_groups, 0);
    std::vector<std::uint8_t> prev(n, 0);
    std::size_t leader = 0;

    for (std::size_t t = 0; t < n_groups; ++t) {
        // The segment decision consumes its own stream so the group-content
        // stream stays aligned with gen_groups draw for draw.
        bool fresh = t == 0;
        if (!fresh) {
            auto seg = make_stream(spec.seed, "segment", t);
            fresh = uniform01(seg) < spec.fresh_prob;
        }
        auto gen = make_stream(spec.seed, "group", t);
        std::uint8_t* row = cells.data() + t * n;
        if (fresh) {
            fresh_flags[t] = 1;
            leader = pick_weighted(gen, leader_weights);
            const double* probs = fresh_probs.row_data(leader);
            for (std::size_t j = 0; j < n; ++j) {
                if (j == leader)
                    row[j] = 1;
                else
                    row[j] = uniform01(gen) < probs[j] ? 1 : 0;
            }
        } else {
            for (std::size_t j = 0; j < n; ++j) {
                if (j == leader) {
                    row[j] = 1;
                    continue;
                }
                double shift = prev[j] ? spec.stay_offset : spec.join_offset;
                double p = logistic(spec.logits(leader, j) + shift);
                row[j] = uniform01(gen) < p ? 1 : 0;
            }
        }
        prev.assign(row, row + n);
    }
    return TimeVaryingDraw{GroupedData(n_groups, n, std::move(cells)),
                           std::move(fresh_flags)};
}

GroupedData gen_time_varying(const TimeVaryingSpec& spec) {
    return gen_time_varying_trace(spec).data;
}

void TwoLeaderSpec::validate() const {
    if (attraction.rows() < 2)
        throw validation_error("the two-leader design needs at least two leaders");
    if (attraction.cols() < attraction.rows())
        throw validation_error("more leader rows than nodes");
    for (std::size_t i = 0; i < attraction.rows(); ++i)
        for (std::size_t j = 0; j < attraction.cols(); ++j)
            if (!(attraction(i, j) >= 0.0))
                throw validation_error("attraction entries must be non-negative");
    if (n_groups == 0)
        throw validation_error("at least one group is required");
}

TwoLeaderDraw gen_two_leader_trace(const TwoLeaderSpec& spec) {
    spec.validate();
    const std::size_t n_leaders = spec.attraction.rows();
    const std::size_t n = spec.attraction.cols();
    const std::size_t n_groups = spec.n_groups;

    std::vector<std::uint8_t> cells(n_groups * n, 0);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> leaders;
    leaders.reserve(n_groups);

    for (std::size_t t = 0; t < n_groups; ++t) {
        auto gen = make_stream(spec.seed, "group", t);
        auto draw_index = [&](std::size_t count) {
            auto idx = static_cast<std::size_t>(uniform01(gen) *
                                                static_cast<double>(count));
            return idx < count ? idx : count - 1;
        };
        std::size_t first = draw_index(n_leaders);
        std::size_t second = draw_index(n_leaders - 1);
        if (second >= first) ++second;

        std::uint8_t* row = cells.data() + t * n;
        row[first] = 1;
        row[second] = 1;
        for (std::size_t k = 0; k < n; ++k) {
            if (k == first || k == second) continue;
            double p = logistic(spec.attraction(first, k) +
                                spec.attraction(second, k) + spec.intercept);
            row[k] = uniform01(gen) < p ? 1 : 0;
        }
        leaders.emplace_back(static_cast<std::uint32_t>(first),
                             static_cast<std::uint32_t>(second));
    }
    return TwoLeaderDraw{GroupedData(n_groups, n, std::move(cells)),
                         std::move(leaders)};
}

GroupedData gen_two_leader(const TwoLeaderSpec& spec) {
    return gen_two_leader_trace(spec).data;
}

Matrix membership_logits(const Matrix& probabilities, std::size_t n_leaders) {
    if (n_leaders > probabilities.rows())
        throw validation_error("leader count exceeds the matrix rows");
    Matrix logits(n_leaders, probabilities.cols());
    for (std::size_t i = 0; i < n_leaders; ++i) {
        for (std::size_t j = 0; j < probabilities.cols(); ++j) {
            double p = probabilities(i, j);
            if (p < 0.01) p = 0.01;
            if (p > 0.99) p = 0.99;
            logits(i, j) = std::log(p / (1.0 - p));
        }
    }
    return logits;
}

}  // namespace hubnet
