#include "hubnet/io.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <istream>
#include <sstream>

namespace hubnet {

namespace {

std::string trim(const std::string& text) {
    std::size_t a = text.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = text.find_last_not_of(" \t\r");
    return text.substr(a, b - a + 1);
}

std::vector<std::string> split_comma(const std::string& line) {
    std::vector<std::string> out;
    std::string::size_type start = 0;
    for (;;) {
        auto pos = line.find(',', start);
        if (pos == std::string::npos) {
            out.push_back(trim(line.substr(start)));
            return out;
        }
        out.push_back(trim(line.substr(start, pos - start)));
        start = pos + 1;
    }
}

std::vector<std::string> split_whitespace(const std::string& line) {
    std::vector<std::string> out;
    std::istringstream stream(line);
    std::string token;
    while (stream >> token) out.push_back(token);
    return out;
}

double parse_double(const std::string& token, const std::string& context) {
    errno = 0;
    char* end = nullptr;
    double value = std::strtod(token.c_str(), &end);
    if (end == token.c_str() || *end != '\0')
        throw validation_error("not a number: '" + token + "' in " + context);
    return value;
}

std::string xml_escape(const std::string& text) {
    std::string out;
    out.reserve(text.size());
    for (char c : text) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

int gray_level(double value) {
    return static_cast<int>(std::lround((1.0 - value) * 255.0));
}

void check_plot_matrix(const Matrix& values) {
    if (values.rows() != values.cols() || values.rows() == 0)
        throw validation_error("plot input must be a non-empty square matrix");
    for (std::size_t i = 0; i < values.rows(); ++i)
        for (std::size_t j = 0; j < values.cols(); ++j)
            if (!(values(i, j) >= 0.0 && values(i, j) <= 1.0))
                throw validation_error("plot values must lie in [0, 1]");
}

}  // namespace

GroupedData parse_grouped(std::istream& in, const std::string& origin) {
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (!line.empty()) lines.push_back(line);
    }
    if (lines.empty())
        throw validation_error("no rows in " + origin);

    const bool comma = lines.front().find(',') != std::string::npos;
    auto tokenize = [&](const std::string& text) {
        return comma ? split_comma(text) : split_whitespace(text);
    };

    auto is_cell = [](const std::string& tok) {
        return tok == "0" || tok == "1";
    };

    std::vector<std::string> labels;
    std::size_t first_data = 0;
    {
        auto head = tokenize(lines.front());
        bool header = std::any_of(head.begin(), head.end(),
                                  [&](const std::string& t) { return !is_cell(t); });
        if (header) {
            labels = head;
            first_data = 1;
        }
    }
    if (first_data >= lines.size())
        throw validation_error("no observation rows in " + origin);

    std::size_t n_nodes = 0;
    std::vector<std::uint8_t> cells;
    std::size_t row_number = 0;
    for (std::size_t li = first_data; li < lines.size(); ++li) {
        ++row_number;
        auto tokens = tokenize(lines[li]);
        if (n_nodes == 0) {
            n_nodes = tokens.size();
            cells.reserve((lines.size() - first_data) * n_nodes);
        }
        if (tokens.size() != n_nodes)
            throw validation_error("row " + std::to_string(row_number) + " has " +
                                   std::to_string(tokens.size()) +
                                   " fields, expected " + std::to_string(n_nodes) +
                                   " in " + origin);
        for (std::size_t c = 0; c < tokens.size(); ++c) {
            if (!is_cell(tokens[c]))
                throw validation_error("non-binary value '" + tokens[c] +
                                       "' at row " + std::to_string(row_number) +
                                       ", column " + std::to_string(c + 1) +
                                       " in " + origin);
            cells.push_back(tokens[c] == "1" ? 1 : 0);
        }
    }
    return GroupedData(row_number, n_nodes, std::move(cells), std::move(labels));
}

GroupedData ingest(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path);
    return parse_grouped(in, path);
}

void write_grouped(const GroupedData& data, const std::string& path) {
    std::ostringstream out;
    if (!data.labels().empty()) {
        for (std::size_t i = 0; i < data.labels().size(); ++i) {
            if (i) out << ',';
            out << data.labels()[i];
        }
        out << '\n';
    }
    for (std::size_t t = 0; t < data.num_groups(); ++t) {
        for (std::size_t i = 0; i < data.num_nodes(); ++i) {
            if (i) out << ',';
            out << (data.contains(t, i) ? '1' : '0');
        }
        out << '\n';
    }
    write_file(path, out.str());
}

std::string format_fixed6(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%.6f", value);
    return buffer;
}

void write_matrix_csv(const std::string& path,
                      const std::vector<std::string>& labels,
                      const Matrix& values) {
    if (labels.size() != values.rows() || values.rows() != values.cols())
        throw validation_error("matrix CSV needs one label per row/column");
    std::ostringstream out;
    out << "node";
    for (const auto& l : labels) out << ',' << l;
    out << '\n';
    for (std::size_t i = 0; i < values.rows(); ++i) {
        out << labels[i];
        for (std::size_t j = 0; j < values.cols(); ++j)
            out << ',' << format_fixed6(values(i, j));
        out << '\n';
    }
    write_file(path, out.str());
}

LabeledMatrix read_matrix_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path);
    std::vector<std::vector<std::string>> rows;
    std::string line;
    while (std::getline(in, line)) {
        line = trim(line);
        if (!line.empty()) rows.push_back(split_comma(line));
    }
    if (rows.size() < 2)
        throw validation_error("matrix CSV " + path + " has no data rows");
    const std::size_t n = rows.front().size() - 1;
    if (n == 0 || rows.size() - 1 != n)
        throw validation_error("matrix CSV " + path + " is not square");
    LabeledMatrix lm;
    lm.labels.assign(rows.front().begin() + 1, rows.front().end());
    lm.values = Matrix(n, n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const auto& row = rows[i + 1];
        if (row.size() != n + 1)
            throw validation_error("matrix CSV " + path + " row " +
                                   std::to_string(i + 1) + " has " +
                                   std::to_string(row.size()) + " fields");
        for (std::size_t j = 0; j < n; ++j)
            lm.values(i, j) = parse_double(row[j + 1], path);
    }
    return lm;
}

void write_mixing_csv(const std::string& path,
                      const std::vector<std::pair<std::string, double>>& rows) {
    std::ostringstream out;
    out << "node,rho\n";
    for (const auto& [label, value] : rows)
        out << label << ',' << format_fixed6(value) << '\n';
    write_file(path, out.str());
}

std::vector<std::pair<std::string, double>> read_mixing_csv(
    const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("cannot open " + path);
    std::vector<std::pair<std::string, double>> rows;
    std::string line;
    bool first = true;
    while (std::getline(in, line)) {
        line = trim(line);
        if (line.empty()) continue;
        if (first) {
            first = false;  // header
            continue;
        }
        auto tokens = split_comma(line);
        if (tokens.size() != 2)
            throw validation_error("weight CSV " + path +
                                   " rows need two fields");
        rows.emplace_back(tokens[0], parse_double(tokens[1], path));
    }
    if (rows.empty())
        throw validation_error("weight CSV " + path + " has no data rows");
    return rows;
}

void write_eta_path_csv(const std::string& path, const EtaPath& path_result) {
    std::ostringstream out;
    out << "eta,log_lik,bic,n_o,d,converged\n";
    for (const auto& entry : path_result.entries) {
        out << format_fixed6(entry.eta) << ','
            << format_fixed6(entry.fit.log_lik) << ','
            << format_fixed6(entry.fit.bic) << ',' << entry.fit.n_leaders << ','
            << entry.fit.n_params << ',' << (entry.fit.converged ? 1 : 0)
            << '\n';
    }
    write_file(path, out.str());
}

void write_replicates_csv(const std::string& path,
                          const std::vector<SimReplicateReport>& rows) {
    std::ostringstream out;
    out << "design,T,replicate,method,mae_A,mae_rho,est_n_o,est_d,"
           "selected_eta,runtime_seconds,seed\n";
    for (const auto& r : rows) {
        out << to_string(r.design) << ',' << r.n_groups << ',' << r.replicate
            << ',' << r.method << ',';
        if (r.mae_A) out << format_fixed6(*r.mae_A);
        out << ',';
        if (r.mae_rho) out << format_fixed6(*r.mae_rho);
        out << ',' << r.n_leaders << ',' << r.n_params << ',';
        if (r.eta) out << format_fixed6(*r.eta);
        out << ',' << format_fixed6(r.runtime_seconds) << ',' << r.seed << '\n';
    }
    write_file(path, out.str());
}

void write_aggregate_csv(const std::string& path,
                         const std::vector<SimAggregateRow>& rows) {
    std::ostringstream out;
    out << "design,T,method,metric,mean,stdev,n_failed\n";
    for (const auto& r : rows) {
        out << to_string(r.design) << ',' << r.n_groups << ',' << r.method
            << ',' << r.metric << ',' << format_fixed6(r.mean) << ','
            << format_fixed6(r.stdev) << ',' << r.n_failed << '\n';
    }
    write_file(path, out.str());
}

std::string render_pgm(const Matrix& values) {
    check_plot_matrix(values);
    std::ostringstream out;
    out << "P2\n" << values.cols() << ' ' << values.rows() << "\n255\n";
    for (std::size_t i = 0; i < values.rows(); ++i) {
        for (std::size_t j = 0; j < values.cols(); ++j) {
            if (j) out << ' ';
            out << gray_level(values(i, j));
        }
        out << '\n';
    }
    return out.str();
}

std::string render_svg(const Matrix& values,
                       const std::vector<std::string>& labels) {
    check_plot_matrix(values);
    const std::size_t n = values.rows();
    if (labels.size() != n)
        throw validation_error("plot needs one label per node");

    std::size_t max_len = 1;
    for (const auto& l : labels) max_len = std::max(max_len, l.size());
    const int cell = 24;
    const int margin = 16 + 8 * static_cast<int>(max_len);
    const int side = cell * static_cast<int>(n);
    const int width = margin + side + 12;
    const int height = margin + side + 12;

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\" viewBox=\"0 0 " << width << ' '
        << height << "\">\n";
    out << "<rect width=\"" << width << "\" height=\"" << height
        << "\" fill=\"#ffffff\"/>\n";
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            int g = gray_level(values(i, j));
            out << "<rect x=\"" << margin + static_cast<int>(j) * cell
                << "\" y=\"" << margin + static_cast<int>(i) * cell
                << "\" width=\"" << cell << "\" height=\"" << cell
                << "\" fill=\"rgb(" << g << ',' << g << ',' << g
                << ")\" shape-rendering=\"crispEdges\"/>\n";
        }
    }
    out << "<rect x=\"" << margin << "\" y=\"" << margin << "\" width=\""
        << side << "\" height=\"" << side
        << "\" fill=\"none\" stroke=\"#000000\"/>\n";
    for (std::size_t i = 0; i < n; ++i) {
        int y = margin + static_cast<int>(i) * cell + cell / 2 + 4;
        out << "<text x=\"" << margin - 6 << "\" y=\"" << y
            << "\" text-anchor=\"end\" font-family=\"monospace\" "
               "font-size=\"13\">"
            << xml_escape(labels[i]) << "</text>\n";
        int x = margin + static_cast<int>(i) * cell + cell / 2 + 4;
        out << "<text x=\"" << x << "\" y=\"" << margin - 6
            << "\" text-anchor=\"start\" font-family=\"monospace\" "
               "font-size=\"13\" transform=\"rotate(-90 "
            << x << ' ' << margin - 6 << ")\">" << xml_escape(labels[i])
            << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

void write_plots(const Matrix& values, const std::vector<std::string>& labels,
                 const std::string& prefix) {
    write_file(prefix + ".pgm", render_pgm(values));
    write_file(prefix + ".svg", render_svg(values, labels));
}

std::vector<std::size_t> descending_order(const std::vector<double>& weights) {
    std::vector<std::size_t> order(weights.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) {
                         return weights[a] > weights[b];
                     });
    return order;
}

Matrix reorder_symmetric(const Matrix& values,
                         const std::vector<std::size_t>& order) {
    if (values.rows() != values.cols() || order.size() != values.rows())
        throw validation_error("reorder needs a square matrix and a full order");
    Matrix out(values.rows(), values.cols());
    for (std::size_t i = 0; i < order.size(); ++i)
        for (std::size_t j = 0; j < order.size(); ++j)
            out(i, j) = values(order[i], order[j]);
    return out;
}

std::vector<std::string> apply_order(const std::vector<std::string>& labels,
                                     const std::vector<std::size_t>& order) {
    std::vector<std::string> out;
    out.reserve(order.size());
    for (std::size_t idx : order) out.push_back(labels.at(idx));
    return out;
}

void RunManifest::add(const std::string& key, const std::string& value) {
    entries.emplace_back(key, value);
}

std::string RunManifest::format_compact(double value) {
    char buffer[64];
    std::snprintf(buffer, sizeof buffer, "%g", value);
    return buffer;
}

void write_manifest(const RunManifest& manifest, const std::string& out_dir) {
    std::ostringstream out;
    for (const auto& [key, value] : manifest.entries)
        out << key << '=' << value << '\n';
    write_file(out_dir + "/run_manifest.txt", out.str());
}

std::vector<std::string> default_labels(std::size_t n) {
    std::vector<std::string> labels;
    labels.reserve(n);
    for (std::size_t i = 1; i <= n; ++i) labels.push_back("v" + std::to_string(i));
    return labels;
}

void ensure_dir(const std::string& path) {
    std::error_code ec;
    std::filesystem::create_directories(path, ec);
    if (ec) throw io_error("cannot create directory " + path + ": " + ec.message());
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw io_error("cannot write " + path);
    out << content;
    if (!out) throw io_error("write failed for " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw io_error("cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace hubnet
