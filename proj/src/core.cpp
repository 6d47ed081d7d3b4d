#include "hubnet/core.hpp"

#include <cmath>
#include <limits>
#include <string>
#include <vector>

namespace hubnet {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Per-parameter lookup tables that turn the Bernoulli product for one group
// into a sum over that group's members only:
//
//   log P(row | convener i) = base[i] + sum_{j in members} delta(i, j)
//
// where base[i] collects log(1 - A_ij) over every j with A_ij < 1 and
// delta(i, j) swaps the j-th factor from "absent" to "present". Entries
// with A_ij == 1 are exact: they contribute nothing when j is present and
// veto the convener when j is absent (the `sure` lists).
struct Tables {
    std::vector<double> log_mixing;
    std::vector<double> base;
    Matrix delta;
    std::vector<std::vector<std::uint32_t>> sure;
};

Tables build_tables(const HubParams& params) {
    const std::size_t n = params.num_nodes();
    Tables tb;
    tb.log_mixing.resize(n);
    tb.base.assign(n, 0.0);
    tb.delta = Matrix(n, n, 0.0);
    tb.sure.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        tb.log_mixing[i] =
            params.mixing[i] > 0.0 ? std::log(params.mixing[i]) : kNegInf;
        for (std::size_t j = 0; j < n; ++j) {
            double a = params.adjacency(i, j);
            if (a == 1.0) {
                tb.sure[i].push_back(static_cast<std::uint32_t>(j));
            } else {
                double log_absent = std::log1p(-a);
                tb.base[i] += log_absent;
                tb.delta(i, j) = std::log(a) - log_absent;  // -inf when a == 0
            }
        }
    }
    return tb;
}

void check_dims(const GroupedData& data, const HubParams& params, double eta) {
    if (params.num_nodes() != data.num_nodes())
        throw validation_error("parameters cover " +
                               std::to_string(params.num_nodes()) +
                               " nodes but the data has " +
                               std::to_string(data.num_nodes()));
    if (!(eta >= 1.0))
        throw validation_error("sharpening exponent must be >= 1");
}

struct EvalTotals {
    double log_lik = 0.0;
    double objective = 0.0;
};

// Single pass over the groups. With `post` set, fills responsibilities and
// throws on the first zero-mass group; without it, zero-mass groups just
// drive both totals to -infinity.
EvalTotals evaluate(const GroupedData& data, const HubParams& params,
                    double eta, Posterior* post) {
    check_dims(data, params, eta);
    const std::size_t n_groups = data.num_groups();
    const std::size_t n = data.num_nodes();
    const Tables tb = build_tables(params);

    if (post) post->resp = Matrix(n_groups, n, 0.0);

    EvalTotals totals;
    std::vector<std::uint32_t> cand;
    std::vector<double> logp;   // log P(row | convener)
    std::vector<double> w_eta;  // eta * log mixing + logp
    cand.reserve(n);
    logp.reserve(n);
    w_eta.reserve(n);

    for (std::size_t t = 0; t < n_groups; ++t) {
        const auto& members = data.members(t);
        cand.clear();
        logp.clear();
        for (std::uint32_t i : members) {
            if (tb.log_mixing[i] == kNegInf) continue;
            double rest = tb.base[i];
            const double* drow = tb.delta.row_data(i);
            for (std::uint32_t j : members) rest += drow[j];
            if (rest != kNegInf) {
                for (std::uint32_t j : tb.sure[i]) {
                    if (!data.contains(t, j)) {
                        rest = kNegInf;
                        break;
                    }
                }
            }
            cand.push_back(i);
            logp.push_back(rest);
        }

        w_eta.clear();
        double max_eta = kNegInf;
        double max_one = kNegInf;
        for (std::size_t k = 0; k < cand.size(); ++k) {
            double w = eta * tb.log_mixing[cand[k]] + logp[k];
            w_eta.push_back(w);
            if (w > max_eta) max_eta = w;
            double w1 = tb.log_mixing[cand[k]] + logp[k];
            if (w1 > max_one) max_one = w1;
        }

        if (max_eta == kNegInf) {
            if (post)
                throw degenerate_mass_error(
                    t, "group " + std::to_string(t + 1) +
                           " has zero probability under the current parameters");
            totals.log_lik = kNegInf;
            totals.objective = kNegInf;
            continue;
        }

        double sum_eta = 0.0;
        for (double w : w_eta) sum_eta += std::exp(w - max_eta);
        totals.objective += max_eta + std::log(sum_eta);

        double sum_one = 0.0;
        for (std::size_t k = 0; k < cand.size(); ++k)
            sum_one += std::exp(tb.log_mixing[cand[k]] + logp[k] - max_one);
        totals.log_lik += max_one + std::log(sum_one);

        if (post) {
            double* row = post->resp.row_data(t);
            for (std::size_t k = 0; k < cand.size(); ++k)
                row[cand[k]] = std::exp(w_eta[k] - max_eta) / sum_eta;
        }
    }
    return totals;
}

}  // namespace

double pchm_objective(const GroupedData& data, const HubParams& params,
                      double eta) {
    return evaluate(data, params, eta, nullptr).objective;
}

double hm_log_likelihood(const GroupedData& data, const HubParams& params) {
    return pchm_objective(data, params, 1.0);
}

Posterior e_step(const GroupedData& data, const HubParams& params, double eta) {
    Posterior post;
    evaluate(data, params, eta, &post);
    return post;
}

StepEval e_step_eval(const GroupedData& data, const HubParams& params,
                     double eta, Posterior& post) {
    EvalTotals totals = evaluate(data, params, eta, &post);
    return StepEval{totals.log_lik, totals.objective};
}

std::vector<double> m_step_mixing(const Posterior& post) {
    const std::size_t n_groups = post.resp.rows();
    const std::size_t n = post.resp.cols();
    if (n_groups == 0) throw validation_error("empty posterior");
    std::vector<double> mixing(n, 0.0);
    for (std::size_t t = 0; t < n_groups; ++t) {
        const double* row = post.resp.row_data(t);
        for (std::size_t i = 0; i < n; ++i) mixing[i] += row[i];
    }
    for (double& w : mixing) w /= static_cast<double>(n_groups);
    return mixing;
}

Matrix m_step_adjacency(const GroupedData& data, const Posterior& post) {
    const std::size_t n_groups = data.num_groups();
    const std::size_t n = data.num_nodes();
    if (post.resp.rows() != n_groups || post.resp.cols() != n)
        throw validation_error("posterior dimensions do not match the data");

    // weighted(i, j) = total responsibility of i in groups containing j;
    // mass[i] is the same total over all of i's groups.
    Matrix weighted(n, n, 0.0);
    std::vector<double> mass(n, 0.0);
    for (std::size_t t = 0; t < n_groups; ++t) {
        const auto& members = data.members(t);
        const double* row = post.resp.row_data(t);
        for (std::uint32_t i : members) {
            double r = row[i];
            if (r == 0.0) continue;
            mass[i] += r;
            double* wrow = weighted.row_data(i);
            for (std::uint32_t j : members) wrow[j] += r;
        }
    }

    Matrix adjacency(n, n, 0.0);
    for (std::size_t x = 0; x < n; ++x) {
        for (std::size_t y = x; y < n; ++y) {
            double denom = mass[x] + mass[y];
            double value = 0.0;
            if (denom > 0.0) {
                value = (weighted(x, y) + weighted(y, x)) / denom;
                if (value > 1.0) value = 1.0;
                if (value < 0.0) value = 0.0;
            }
            adjacency(x, y) = value;
            adjacency(y, x) = value;
        }
    }
    return adjacency;
}

}  // namespace hubnet
