#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hubnet/types.hpp"

namespace hubnet::testing {

// The bundled 20-group, 7-node toy observation set (same content as
// data/sample_groups.csv). Column sums: 18, 18, 11, 17, 6, 9, 4.
inline GroupedData toy_groups() {
    const char* rows[] = {
        "1000000",
        "1001000",
        "1100001",
        "1101000",
        "0111100",
        "0111100",
        "1101001",
        "1101001",
        "1101001",
        "1101010",
        "1111000",
        "1101110",
        "1110110",
        "1111010",
        "1111010",
        "1111010",
        "1111010",
        "1111010",
        "1111100",
        "1111110",
    };
    std::vector<std::uint8_t> cells;
    cells.reserve(20 * 7);
    for (const char* row : rows)
        for (const char* c = row; *c; ++c) cells.push_back(*c == '1');
    return GroupedData(20, 7, std::move(cells));
}

// The three-dinner-parties teaching example behind the baseline matrices.
inline GroupedData parties_groups() {
    std::vector<std::string> labels = {"Allison", "Drew",  "Eliot",
                                       "Keith",   "Ross",  "Sarah"};
    std::vector<std::uint8_t> cells = {
        1, 0, 0, 0, 1, 1,
        0, 1, 1, 0, 1, 1,
        1, 0, 1, 1, 1, 0,
    };
    return GroupedData(3, 6, std::move(cells), std::move(labels));
}

// Reference ground truth behind the toy data: seven nodes, conveners v1
// and v2 at weight 0.5 each, everything else silent.
inline HubParams planted_params() {
    HubParams p;
    p.mixing = {0.5, 0.5, 0, 0, 0, 0, 0};
    p.adjacency = Matrix(7, 7, 0.0);
    const double row1[] = {1.0000, 0.7854, 0.0000, 0.9063, 0.0000, 0.0000, 0.7452};
    const double row2[] = {0.7854, 1.0000, 0.8324, 0.8817, 0.5885, 0.8594, 0.0000};
    for (std::size_t j = 0; j < 7; ++j) {
        p.adjacency(0, j) = row1[j];
        p.adjacency(j, 0) = row1[j];
        p.adjacency(1, j) = row2[j];
        p.adjacency(j, 1) = row2[j];
    }
    return p;
}

inline std::string data_path(const std::string& name) {
    return std::string(HUBNET_DATA_DIR) + "/" + name;
}

}  // namespace hubnet::testing
