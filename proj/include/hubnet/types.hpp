#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hubnet {

// Dense row-major matrix of doubles. Node counts stay in the tens for this
// problem, so a flat vector is all the linear algebra we need.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double value = 0.0)
        : rows_(rows), cols_(cols), cells_(rows * cols, value) {}

    double& operator()(std::size_t r, std::size_t c) { return cells_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return cells_[r * cols_ + c]; }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    double* row_data(std::size_t r) { return cells_.data() + r * cols_; }
    const double* row_data(std::size_t r) const { return cells_.data() + r * cols_; }

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> cells_;
};

// Bad user-supplied data or configuration (CLI exit code 2).
struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Estimation could not produce a usable result (CLI exit code 3).
struct fit_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// File could not be read or written (CLI exit code 4).
struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// A group whose probability mass is exactly zero under the current
// parameters; `group` is the offending row index.
struct degenerate_mass_error : fit_error {
    degenerate_mass_error(std::size_t group_index, const std::string& what)
        : fit_error(what), group(group_index) {}
    std::size_t group;
};

// Immutable T x n binary membership table: one row per observed group, one
// column per node. Validates on construction and precomputes the member
// list of every row, which is what the estimation loops iterate over.
class GroupedData {
public:
    GroupedData(std::size_t n_groups, std::size_t n_nodes,
                std::vector<std::uint8_t> cells,
                std::vector<std::string> labels = {});

    std::size_t num_groups() const { return n_groups_; }
    std::size_t num_nodes() const { return n_nodes_; }

    bool contains(std::size_t group, std::size_t node) const {
        return cells_[group * n_nodes_ + node] != 0;
    }
    const std::vector<std::uint32_t>& members(std::size_t group) const {
        return members_[group];
    }
    // Number of groups node appears in.
    std::size_t appearances(std::size_t node) const { return appearances_[node]; }

    // Column labels; empty when the source had no header.
    const std::vector<std::string>& labels() const { return labels_; }

    bool operator==(const GroupedData& other) const {
        return n_groups_ == other.n_groups_ && n_nodes_ == other.n_nodes_ &&
               cells_ == other.cells_ && labels_ == other.labels_;
    }

private:
    std::size_t n_groups_ = 0;
    std::size_t n_nodes_ = 0;
    std::vector<std::uint8_t> cells_;
    std::vector<std::string> labels_;
    std::vector<std::vector<std::uint32_t>> members_;
    std::vector<std::size_t> appearances_;
};

// Model parameters: `mixing` is the probability that each node is the one
// convening a group (a simplex over nodes), `adjacency` the symmetric matrix
// of membership probabilities given the convener.
struct HubParams {
    std::vector<double> mixing;
    Matrix adjacency;

    std::size_t num_nodes() const { return mixing.size(); }
    // Nodes with strictly positive mixing weight.
    std::size_t leader_count() const;
    // Throws validation_error unless all structural invariants hold:
    // simplex mixing, adjacency symmetric in [0,1] with unit diagonal for
    // every positive-weight node, and zero rows/columns for pairs of
    // zero-weight nodes.
    void validate() const;
};

// Posterior assignment weights: resp(t, i) is the probability that node i
// convened group t. Rows sum to one; non-members get exactly zero.
struct Posterior {
    Matrix resp;
};

}  // namespace hubnet
