#include "hubnet/baselines.hpp"

namespace hubnet {

Matrix co_occurrence(const GroupedData& data) {
    const std::size_t n = data.num_nodes();
    const double n_groups = static_cast<double>(data.num_groups());
    Matrix counts(n, n, 0.0);
    for (std::size_t t = 0; t < data.num_groups(); ++t) {
        const auto& members = data.members(t);
        for (std::uint32_t i : members) {
            double* row = counts.row_data(i);
            for (std::uint32_t j : members) row[j] += 1.0;
        }
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) counts(i, j) /= n_groups;
    return counts;
}

Matrix half_weight_index(const GroupedData& data) {
    const std::size_t n = data.num_nodes();
    Matrix joint(n, n, 0.0);
    for (std::size_t t = 0; t < data.num_groups(); ++t) {
        const auto& members = data.members(t);
        for (std::uint32_t i : members) {
            double* row = joint.row_data(i);
            for (std::uint32_t j : members) row[j] += 1.0;
        }
    }
    Matrix index(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            double denom = static_cast<double>(data.appearances(i)) +
                           static_cast<double>(data.appearances(j));
            index(i, j) = denom > 0.0 ? 2.0 * joint(i, j) / denom : 0.0;
        }
    }
    return index;
}

}  // namespace hubnet
