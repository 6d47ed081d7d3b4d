#pragma once

#include "hubnet/types.hpp"

namespace hubnet {

// Log-likelihood of the grouped observations under the mixture: each group
// is explained by one latent convener, weighted by `mixing` and by the
// Bernoulli product of that convener's adjacency row over the group's
// membership pattern. Everything runs in the log domain; a group that no
// positive-weight convener can produce makes the result -infinity.
double hm_log_likelihood(const GroupedData& data, const HubParams& params);

// Same mixture mass but with each mixing weight raised to `eta` (>= 1),
// the objective the sharpened estimator climbs. eta == 1 is bit-for-bit
// hm_log_likelihood.
double pchm_objective(const GroupedData& data, const HubParams& params,
                      double eta);

// Posterior convener responsibilities at the given sharpening exponent.
// Throws degenerate_mass_error naming the first group whose total mass
// under `params` is exactly zero.
Posterior e_step(const GroupedData& data, const HubParams& params, double eta);

// Mixing update: column means of the responsibilities.
std::vector<double> m_step_mixing(const Posterior& post);

// Adjacency update: symmetrized responsibility-weighted co-membership
// rates. Pairs with no responsibility mass at all get probability zero;
// the diagonal of every node carrying mass is exactly one.
Matrix m_step_adjacency(const GroupedData& data, const Posterior& post);

// One fused evaluation used by the fitting loops: fills `post` with the
// responsibilities at `eta` and reports both the plain log-likelihood and
// the sharpened objective of the same parameters.
struct StepEval {
    double log_lik;
    double objective;
};
StepEval e_step_eval(const GroupedData& data, const HubParams& params,
                     double eta, Posterior& post);

}  // namespace hubnet
