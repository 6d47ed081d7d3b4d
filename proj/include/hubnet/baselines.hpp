#pragma once

#include "hubnet/types.hpp"

namespace hubnet {

// Fraction of groups containing both nodes: G'G / T. Diagonal is each
// node's appearance rate.
Matrix co_occurrence(const GroupedData& data);

// Half-weight association index: joint appearances divided by the average
// of the two marginal appearance counts. Pairs never seen together score 0,
// as do pairs of never-seen nodes; the diagonal is 1 for any node that
// appears at all.
Matrix half_weight_index(const GroupedData& data);

}  // namespace hubnet
