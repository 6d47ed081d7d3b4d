#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hubnet/estimate.hpp"
#include "hubnet/metrics.hpp"

namespace hubnet {

// Exit codes shared by every subcommand.
inline constexpr int kExitOk = 0;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitFit = 3;
inline constexpr int kExitIo = 4;

// "start:step:end" -> inclusive ascending grid; throws validation_error.
std::vector<double> parse_eta_grid(const std::string& text);

struct FitArgs {
    std::string input;
    std::string out_dir = ".";
    std::vector<double> eta_grid;     // empty = default 1.0:0.5:15.0
    std::optional<double> fixed_eta;  // skip the search, fit this eta only
    FitConfig cfg{.n_starts = 100};
};

struct SimulateArgs {
    SimDesign design = SimDesign::iid;
    SimSpec spec;
    std::vector<std::size_t> n_groups_list;  // empty = {100, 200, 500}
    std::size_t n_replicates = 20;
    std::vector<double> eta_grid;  // empty = default 1.0:0.5:15.0
    std::string out_dir = ".";
    FitConfig cfg;
};

struct BaselineArgs {
    std::string input;
    std::string out_dir = ".";
    bool plot = false;
};

struct PlotArgs {
    std::string matrix_path;
    std::string mixing_path;  // empty = keep original node order
    std::string out_dir = ".";
    std::string name = "matrix";
};

struct GenerateArgs {
    SimDesign design = SimDesign::iid;
    SimSpec spec;
    std::size_t n_groups = 100;
    std::uint64_t seed = 0;
    std::string out_dir = ".";
};

// Subcommand bodies. Each writes its artifacts plus one run_manifest.txt
// into out_dir and throws (validation_error / fit_error / io_error) on
// failure; run_cli maps those to exit codes.
void cmd_fit(const FitArgs& args);
void cmd_simulate(const SimulateArgs& args);
void cmd_baseline(const BaselineArgs& args);
void cmd_plot(const PlotArgs& args);
void cmd_generate(const GenerateArgs& args);

int run_cli(int argc, const char* const* argv);

}  // namespace hubnet
