#pragma once

#include <iosfwd>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "hubnet/estimate.hpp"
#include "hubnet/metrics.hpp"
#include "hubnet/types.hpp"

namespace hubnet {

// --- grouped observation files -------------------------------------------
//
// The on-disk format is a delimited 0/1 matrix, one group per row, one node
// per column, comma- or whitespace-separated, with an optional first line
// of column labels. Anything unreadable throws io_error; readable files
// with bad content throw validation_error naming the offending cell.

GroupedData ingest(const std::string& path);
GroupedData parse_grouped(std::istream& in, const std::string& origin);
void write_grouped(const GroupedData& data, const std::string& path);

// --- numeric CSV artifacts ------------------------------------------------
//
// All numbers are written with fixed six-decimal precision.

std::string format_fixed6(double value);

struct LabeledMatrix {
    std::vector<std::string> labels;
    Matrix values;
};

// Square matrix CSV with a label header row and a leading label column.
void write_matrix_csv(const std::string& path,
                      const std::vector<std::string>& labels,
                      const Matrix& values);
LabeledMatrix read_matrix_csv(const std::string& path);

// Two-column node,weight file (callers pass rows already ordered).
void write_mixing_csv(const std::string& path,
                      const std::vector<std::pair<std::string, double>>& rows);
std::vector<std::pair<std::string, double>> read_mixing_csv(
    const std::string& path);

void write_eta_path_csv(const std::string& path, const EtaPath& path_result);
void write_replicates_csv(const std::string& path,
                          const std::vector<SimReplicateReport>& rows);
void write_aggregate_csv(const std::string& path,
                         const std::vector<SimAggregateRow>& rows);

// --- grayscale grid plots --------------------------------------------------
//
// Probability 1 paints black, 0 white. The PGM is one pixel per cell for
// loss-free inspection; the SVG draws the same grid with node labels.

std::string render_pgm(const Matrix& values);
std::string render_svg(const Matrix& values,
                       const std::vector<std::string>& labels);
// Writes prefix.pgm and prefix.svg; validates entries lie in [0, 1].
void write_plots(const Matrix& values, const std::vector<std::string>& labels,
                 const std::string& prefix);

// Indices sorted by descending weight, ties kept in original order.
std::vector<std::size_t> descending_order(const std::vector<double>& weights);
Matrix reorder_symmetric(const Matrix& values,
                         const std::vector<std::size_t>& order);
std::vector<std::string> apply_order(const std::vector<std::string>& labels,
                                     const std::vector<std::size_t>& order);

// --- run manifests ----------------------------------------------------------

// Key-value record of one CLI run: tool version, inputs, every
// hyperparameter, seed, and output paths. Rerunning the same command must
// reproduce this file byte for byte.
struct RunManifest {
    std::vector<std::pair<std::string, std::string>> entries;

    void add(const std::string& key, const std::string& value);
    void add(const std::string& key, const char* value) {
        add(key, std::string(value));
    }
    template <typename T>
        requires std::is_arithmetic_v<T>
    void add(const std::string& key, T value) {
        if constexpr (std::is_floating_point_v<T>)
            add(key, format_compact(static_cast<double>(value)));
        else
            add(key, std::to_string(value));
    }

    static std::string format_compact(double value);  // shortest exact-ish form
};

void write_manifest(const RunManifest& manifest, const std::string& out_dir);

// --- small helpers -----------------------------------------------------------

std::vector<std::string> default_labels(std::size_t n);
void ensure_dir(const std::string& path);       // io_error on failure
void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace hubnet
