#include "hubnet/types.hpp"

#include <cmath>
#include <string>

namespace hubnet {

GroupedData::GroupedData(std::size_t n_groups, std::size_t n_nodes,
                         std::vector<std::uint8_t> cells,
                         std::vector<std::string> labels)
    : n_groups_(n_groups), n_nodes_(n_nodes), cells_(std::move(cells)),
      labels_(std::move(labels)) {
    if (n_groups_ == 0)
        throw validation_error("no groups: at least one observation row is required");
    if (n_nodes_ < 2)
        throw validation_error("at least two nodes are required, got " +
                               std::to_string(n_nodes_));
    if (cells_.size() != n_groups_ * n_nodes_)
        throw validation_error("cell buffer size does not match the stated dimensions");
    if (!labels_.empty() && labels_.size() != n_nodes_)
        throw validation_error("label count " + std::to_string(labels_.size()) +
                               " does not match " + std::to_string(n_nodes_) +
                               " columns");

    members_.resize(n_groups_);
    appearances_.assign(n_nodes_, 0);
    for (std::size_t t = 0; t < n_groups_; ++t) {
        auto& row = members_[t];
        for (std::size_t i = 0; i < n_nodes_; ++i) {
            std::uint8_t cell = cells_[t * n_nodes_ + i];
            if (cell > 1)
                throw validation_error("non-binary cell at row " +
                                       std::to_string(t + 1) + ", column " +
                                       std::to_string(i + 1));
            if (cell) {
                row.push_back(static_cast<std::uint32_t>(i));
                ++appearances_[i];
            }
        }
        if (row.empty())
            throw validation_error("group " + std::to_string(t + 1) +
                                   " is empty; every group needs at least one member");
    }
}

std::size_t HubParams::leader_count() const {
    std::size_t count = 0;
    for (double w : mixing)
        if (w > 0.0) ++count;
    return count;
}

void HubParams::validate() const {
    const std::size_t n = mixing.size();
    if (n == 0) throw validation_error("empty mixing vector");
    if (adjacency.rows() != n || adjacency.cols() != n)
        throw validation_error("adjacency must be " + std::to_string(n) + "x" +
                               std::to_string(n));

    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!(mixing[i] >= 0.0) || mixing[i] > 1.0)
            throw validation_error("mixing weight " + std::to_string(i + 1) +
                                   " is outside [0, 1]");
        total += mixing[i];
    }
    if (std::abs(total - 1.0) > 1e-9)
        throw validation_error("mixing weights sum to " + std::to_string(total) +
                               ", expected 1");

    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double a = adjacency(i, j);
            if (!(a >= 0.0 && a <= 1.0))
                throw validation_error("adjacency entry (" + std::to_string(i + 1) +
                                       ", " + std::to_string(j + 1) +
                                       ") is outside [0, 1]");
            if (adjacency(j, i) != a)
                throw validation_error("adjacency is not symmetric at (" +
                                       std::to_string(i + 1) + ", " +
                                       std::to_string(j + 1) + ")");
        }
        if (mixing[i] > 0.0 && adjacency(i, i) != 1.0)
            throw validation_error("diagonal entry " + std::to_string(i + 1) +
                                   " must be 1 for a positive-weight node");
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (mixing[i] > 0.0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (mixing[j] > 0.0) continue;
            if (adjacency(i, j) != 0.0)
                throw validation_error(
                    "link (" + std::to_string(i + 1) + ", " + std::to_string(j + 1) +
                    ") between two zero-weight nodes must be 0");
        }
    }
}

}  // namespace hubnet
