#include "hubnet/cli.hpp"

#include <cmath>
#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "hubnet/baselines.hpp"
#include "hubnet/datagen.hpp"
#include "hubnet/io.hpp"
#include "hubnet/rng.hpp"
#include "hubnet/version.hpp"

namespace hubnet {

namespace {

constexpr const char* kDefaultGrid = "1.0:0.5:15.0";

double parse_strict_double(const std::string& token, const char* what) {
    errno = 0;
    char* end = nullptr;
    double value = std::strtod(token.c_str(), &end);
    if (end == token.c_str() || *end != '\0' || !std::isfinite(value))
        throw validation_error(std::string("bad ") + what + ": '" + token + "'");
    return value;
}

std::string grid_text(const std::vector<double>& grid) {
    std::string out;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        if (i) out += ',';
        out += RunManifest::format_compact(grid[i]);
    }
    return out;
}

void echo_cfg(RunManifest& m, const FitConfig& cfg) {
    m.add("starts", cfg.n_starts);
    m.add("max_iter", cfg.max_iter);
    m.add("rel_tol", cfg.rel_tol);
    m.add("threshold", cfg.zero_threshold);
    m.add("seed", cfg.seed);
    m.add("threads", static_cast<std::size_t>(cfg.threads));
}

void echo_design(RunManifest& m, SimDesign design, const SimSpec& spec) {
    m.add("design", to_string(design));
    m.add("n", spec.n_nodes);
    m.add("n_o", spec.n_leaders);
    switch (design) {
    case SimDesign::iid:
        m.add("p", spec.link_density);
        m.add("alpha", spec.alpha);
        m.add("beta", spec.beta);
        break;
    case SimDesign::time_varying:
        m.add("p", spec.link_density);
        m.add("alpha", spec.alpha);
        m.add("beta", spec.beta);
        m.add("q", spec.fresh_prob);
        m.add("gamma_b", spec.stay_offset);
        m.add("gamma_c", spec.join_offset);
        break;
    case SimDesign::two_leader:
        m.add("c", spec.intercept);
        break;
    }
}

std::vector<std::string> node_labels(const GroupedData& data) {
    return data.labels().empty() ? default_labels(data.num_nodes())
                                 : data.labels();
}

void add_fit_flags(CLI::App* cmd, FitConfig& cfg) {
    cmd->add_option("--starts", cfg.n_starts, "random EM restarts")
        ->capture_default_str();
    cmd->add_option("--seed", cfg.seed, "master RNG seed")
        ->capture_default_str();
    cmd->add_option("--max-iter", cfg.max_iter, "EM iteration cap (<= 5000)")
        ->capture_default_str();
    cmd->add_option("--rel-tol", cfg.rel_tol,
                    "relative log-likelihood change to stop")
        ->capture_default_str();
    cmd->add_option("--threshold", cfg.zero_threshold,
                    "mixing weights below this snap to zero")
        ->capture_default_str();
    cmd->add_option("--threads", cfg.threads,
                    "worker threads (0 = hardware concurrency)")
        ->capture_default_str();
}

}  // namespace

std::vector<double> parse_eta_grid(const std::string& text) {
    auto first = text.find(':');
    auto second = first == std::string::npos ? std::string::npos
                                             : text.find(':', first + 1);
    if (first == std::string::npos || second == std::string::npos ||
        text.find(':', second + 1) != std::string::npos)
        throw validation_error("eta grid must be start:step:end, got '" + text +
                               "'");
    double start = parse_strict_double(text.substr(0, first), "grid start");
    double step =
        parse_strict_double(text.substr(first + 1, second - first - 1), "grid step");
    double end = parse_strict_double(text.substr(second + 1), "grid end");
    if (!(start >= 1.0))
        throw validation_error("eta grid must start at 1 or above");
    if (!(step > 0.0)) throw validation_error("eta grid step must be positive");
    if (end < start - 1e-12)
        throw validation_error("eta grid end lies below its start");

    auto count =
        static_cast<std::size_t>(std::floor((end - start) / step + 1e-9)) + 1;
    std::vector<double> grid;
    grid.reserve(count);
    for (std::size_t k = 0; k < count; ++k)
        grid.push_back(start + static_cast<double>(k) * step);
    return grid;
}

void cmd_fit(const FitArgs& args) {
    GroupedData data = ingest(args.input);
    const auto labels = node_labels(data);

    std::vector<double> grid;
    if (args.fixed_eta) {
        if (!(*args.fixed_eta >= 1.0))
            throw validation_error("--eta must be >= 1");
        grid = {*args.fixed_eta};
    } else {
        grid = args.eta_grid.empty() ? parse_eta_grid(kDefaultGrid)
                                     : args.eta_grid;
    }

    ensure_dir(args.out_dir);
    EtaPath path = select_eta(data, grid, args.cfg);
    const FitResult& best = path.selected();

    auto order = descending_order(best.params.mixing);
    std::vector<std::pair<std::string, double>> rho_rows;
    for (std::size_t idx : order)
        rho_rows.emplace_back(labels[idx], best.params.mixing[idx]);
    write_mixing_csv(args.out_dir + "/rho.csv", rho_rows);
    write_matrix_csv(args.out_dir + "/A.csv", labels, best.params.adjacency);
    write_matrix_csv(args.out_dir + "/A_sorted.csv", apply_order(labels, order),
                     reorder_symmetric(best.params.adjacency, order));
    write_eta_path_csv(args.out_dir + "/eta_path.csv", path);

    RunManifest m;
    m.add("command", "fit");
    m.add("version", std::string("hubnet ") + kVersion);
    m.add("input", args.input);
    m.add("out_dir", args.out_dir);
    m.add("eta_grid", grid_text(grid));
    echo_cfg(m, args.cfg);
    m.add("outputs", "rho.csv,A.csv,A_sorted.csv,eta_path.csv");
    write_manifest(m, args.out_dir);

    std::cout << "selected eta=" << format_fixed6(best.eta)
              << " n_o=" << best.n_leaders
              << " log_lik=" << format_fixed6(best.log_lik)
              << " bic=" << format_fixed6(best.bic) << '\n'
              << "artifacts written to " << args.out_dir << '\n';
}

void cmd_simulate(const SimulateArgs& args) {
    const std::vector<std::size_t> t_list =
        args.n_groups_list.empty() ? std::vector<std::size_t>{100, 200, 500}
                                   : args.n_groups_list;
    const std::vector<double> grid =
        args.eta_grid.empty() ? parse_eta_grid(kDefaultGrid) : args.eta_grid;

    ensure_dir(args.out_dir);
    SimResult res = run_replicates(args.design, args.spec, t_list,
                                   args.n_replicates, grid, args.cfg);
    write_replicates_csv(args.out_dir + "/replicates.csv", res.replicates);
    write_aggregate_csv(args.out_dir + "/aggregate.csv", res.aggregate);

    RunManifest m;
    m.add("command", "simulate");
    m.add("version", std::string("hubnet ") + kVersion);
    m.add("out_dir", args.out_dir);
    echo_design(m, args.design, args.spec);
    {
        std::string ts;
        for (std::size_t i = 0; i < t_list.size(); ++i) {
            if (i) ts += ',';
            ts += std::to_string(t_list[i]);
        }
        m.add("T_list", ts);
    }
    m.add("R", args.n_replicates);
    m.add("eta_grid", grid_text(grid));
    echo_cfg(m, args.cfg);
    m.add("outputs", "replicates.csv,aggregate.csv");
    write_manifest(m, args.out_dir);

    for (const auto& row : res.aggregate)
        std::cout << to_string(row.design) << " T=" << row.n_groups << ' '
                  << row.method << ' ' << row.metric
                  << " mean=" << format_fixed6(row.mean)
                  << " stdev=" << format_fixed6(row.stdev)
                  << " n_failed=" << row.n_failed << '\n';
    std::cout << "artifacts written to " << args.out_dir << '\n';
}

void cmd_baseline(const BaselineArgs& args) {
    GroupedData data = ingest(args.input);
    const auto labels = node_labels(data);

    ensure_dir(args.out_dir);
    Matrix occurrence = co_occurrence(data);
    Matrix half_weight = half_weight_index(data);
    write_matrix_csv(args.out_dir + "/cooccurrence.csv", labels, occurrence);
    write_matrix_csv(args.out_dir + "/half_weight.csv", labels, half_weight);
    if (args.plot) {
        write_plots(occurrence, labels, args.out_dir + "/cooccurrence");
        write_plots(half_weight, labels, args.out_dir + "/half_weight");
    }

    RunManifest m;
    m.add("command", "baseline");
    m.add("version", std::string("hubnet ") + kVersion);
    m.add("input", args.input);
    m.add("out_dir", args.out_dir);
    m.add("plot", args.plot ? "1" : "0");
    m.add("outputs", args.plot
                         ? "cooccurrence.csv,half_weight.csv,cooccurrence.pgm,"
                           "cooccurrence.svg,half_weight.pgm,half_weight.svg"
                         : "cooccurrence.csv,half_weight.csv");
    write_manifest(m, args.out_dir);
    std::cout << "artifacts written to " << args.out_dir << '\n';
}

void cmd_plot(const PlotArgs& args) {
    LabeledMatrix lm = read_matrix_csv(args.matrix_path);

    std::vector<std::size_t> order(lm.labels.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    if (!args.mixing_path.empty()) {
        auto rows = read_mixing_csv(args.mixing_path);
        std::vector<double> weights(lm.labels.size());
        for (std::size_t i = 0; i < lm.labels.size(); ++i) {
            bool found = false;
            for (const auto& [label, value] : rows) {
                if (label == lm.labels[i]) {
                    weights[i] = value;
                    found = true;
                    break;
                }
            }
            if (!found)
                throw validation_error("node '" + lm.labels[i] +
                                       "' missing from " + args.mixing_path);
        }
        order = descending_order(weights);
    }

    ensure_dir(args.out_dir);
    write_plots(reorder_symmetric(lm.values, order),
                apply_order(lm.labels, order),
                args.out_dir + "/" + args.name);

    RunManifest m;
    m.add("command", "plot");
    m.add("version", std::string("hubnet ") + kVersion);
    m.add("matrix", args.matrix_path);
    if (!args.mixing_path.empty()) m.add("rho", args.mixing_path);
    m.add("out_dir", args.out_dir);
    m.add("name", args.name);
    m.add("outputs", args.name + ".pgm," + args.name + ".svg");
    write_manifest(m, args.out_dir);
    std::cout << "artifacts written to " << args.out_dir << '\n';
}

void cmd_generate(const GenerateArgs& args) {
    ensure_dir(args.out_dir);

    RunManifest m;
    m.add("command", "generate");
    m.add("version", std::string("hubnet ") + kVersion);
    m.add("out_dir", args.out_dir);
    echo_design(m, args.design, args.spec);
    m.add("T", args.n_groups);
    m.add("seed", args.seed);

    switch (args.design) {
    case SimDesign::iid: {
        SparseBetaSpec sb{args.spec.n_nodes,      args.spec.n_leaders,
                          args.spec.link_density, args.spec.alpha,
                          args.spec.beta,         derive_seed(args.seed, "params")};
        HubParams truth = gen_hub_params(sb);
        GroupedData data =
            gen_groups(truth, args.n_groups, derive_seed(args.seed, "data"));
        write_grouped(data, args.out_dir + "/groups.csv");
        auto labels = default_labels(args.spec.n_nodes);
        std::vector<std::pair<std::string, double>> rho_rows;
        for (std::size_t i = 0; i < truth.mixing.size(); ++i)
            rho_rows.emplace_back(labels[i], truth.mixing[i]);
        write_mixing_csv(args.out_dir + "/rho_true.csv", rho_rows);
        write_matrix_csv(args.out_dir + "/A_true.csv", labels, truth.adjacency);
        m.add("outputs", "groups.csv,rho_true.csv,A_true.csv");
        break;
    }
    case SimDesign::time_varying: {
        SparseBetaSpec sb{args.spec.n_nodes,      args.spec.n_leaders,
                          args.spec.link_density, args.spec.alpha,
                          args.spec.beta,         derive_seed(args.seed, "params")};
        HubParams truth = gen_hub_params(sb);
        TimeVaryingSpec tv;
        tv.logits = membership_logits(truth.adjacency, args.spec.n_leaders);
        tv.fresh_prob = args.spec.fresh_prob;
        tv.stay_offset = args.spec.stay_offset;
        tv.join_offset = args.spec.join_offset;
        tv.n_groups = args.n_groups;
        tv.seed = derive_seed(args.seed, "data");
        write_grouped(gen_time_varying(tv), args.out_dir + "/groups.csv");
        m.add("outputs", "groups.csv");
        break;
    }
    case SimDesign::two_leader: {
        auto gen = make_stream(derive_seed(args.seed, "params"), "attraction");
        Matrix h(args.spec.n_leaders, args.spec.n_nodes);
        for (std::size_t i = 0; i < args.spec.n_leaders; ++i)
            for (std::size_t j = 0; j < args.spec.n_nodes; ++j)
                h(i, j) = uniform01(gen);
        TwoLeaderSpec tl;
        tl.attraction = std::move(h);
        tl.intercept = args.spec.intercept;
        tl.n_groups = args.n_groups;
        tl.seed = derive_seed(args.seed, "data");
        write_grouped(gen_two_leader(tl), args.out_dir + "/groups.csv");
        m.add("outputs", "groups.csv");
        break;
    }
    }
    write_manifest(m, args.out_dir);
    std::cout << "artifacts written to " << args.out_dir << '\n';
}

int run_cli(int argc, const char* const* argv) {
    CLI::App app{"estimates a latent social network from grouped 0/1 observations"};
    app.require_subcommand(1);
    app.set_version_flag("--version", std::string("hubnet ") + kVersion);

    FitArgs fit_args;
    std::string fit_grid;
    double fit_eta = 1.0;
    auto* fit = app.add_subcommand(
        "fit", "fit the sharpened model with BIC-selected exponent");
    fit->add_option("--input", fit_args.input, "grouped 0/1 matrix file")
        ->required();
    fit->add_option("--out-dir", fit_args.out_dir, "artifact directory")
        ->capture_default_str();
    auto* grid_opt = fit->add_option(
        "--eta-grid", fit_grid, "exponent sweep start:step:end (default 1.0:0.5:15.0)");
    auto* eta_opt = fit->add_option(
        "--eta", fit_eta, "fit one fixed exponent instead of sweeping");
    eta_opt->excludes(grid_opt);
    add_fit_flags(fit, fit_args.cfg);
    fit->callback([&] {
        if (!fit_grid.empty()) fit_args.eta_grid = parse_eta_grid(fit_grid);
        if (eta_opt->count()) fit_args.fixed_eta = fit_eta;
        cmd_fit(fit_args);
    });

    SimulateArgs sim_args;
    std::string sim_design;
    std::string sim_grid;
    auto* sim = app.add_subcommand(
        "simulate", "replicate study with the built-in generators");
    sim->add_option("design", sim_design, "iid | time_varying | two_leader")
        ->required();
    sim->add_option("--n", sim_args.spec.n_nodes, "nodes")
        ->capture_default_str();
    sim->add_option("--n-o", sim_args.spec.n_leaders, "true leaders")
        ->capture_default_str();
    sim->add_option("--p", sim_args.spec.link_density, "link density")
        ->capture_default_str();
    sim->add_option("--alpha", sim_args.spec.alpha, "Beta shape alpha")
        ->capture_default_str();
    sim->add_option("--beta", sim_args.spec.beta, "Beta shape beta")
        ->capture_default_str();
    sim->add_option("--q", sim_args.spec.fresh_prob,
                    "new-segment probability (time_varying)")
        ->capture_default_str();
    sim->add_option("--gamma-b", sim_args.spec.stay_offset,
                    "member log-odds offset (time_varying)")
        ->capture_default_str();
    sim->add_option("--gamma-c", sim_args.spec.join_offset,
                    "outsider log-odds offset (time_varying)")
        ->capture_default_str();
    sim->add_option("--c", sim_args.spec.intercept,
                    "join intercept (two_leader)")
        ->capture_default_str();
    sim->add_option("--T", sim_args.n_groups_list,
                    "group counts to simulate (repeatable; default 100 200 500)");
    sim->add_option("--R", sim_args.n_replicates, "replicates per group count")
        ->capture_default_str();
    sim->add_option("--eta-grid", sim_grid,
                    "exponent sweep start:step:end (default 1.0:0.5:15.0)");
    sim->add_option("--out-dir", sim_args.out_dir, "artifact directory")
        ->capture_default_str();
    add_fit_flags(sim, sim_args.cfg);
    sim->callback([&] {
        sim_args.design = design_from_string(sim_design);
        if (!sim_grid.empty()) sim_args.eta_grid = parse_eta_grid(sim_grid);
        cmd_simulate(sim_args);
    });

    BaselineArgs base_args;
    auto* base = app.add_subcommand(
        "baseline", "co-occurrence and half-weight association matrices");
    base->add_option("--input", base_args.input, "grouped 0/1 matrix file")
        ->required();
    base->add_option("--out-dir", base_args.out_dir, "artifact directory")
        ->capture_default_str();
    base->add_flag("--plot", base_args.plot, "emit grayscale plots too");
    base->callback([&] { cmd_baseline(base_args); });

    PlotArgs plot_args;
    auto* plot = app.add_subcommand(
        "plot", "grayscale grid plot of a probability matrix CSV");
    plot->add_option("--matrix", plot_args.matrix_path, "matrix CSV to plot")
        ->required();
    plot->add_option("--rho", plot_args.mixing_path,
                     "weight CSV; orders nodes by descending weight");
    plot->add_option("--out-dir", plot_args.out_dir, "artifact directory")
        ->capture_default_str();
    plot->add_option("--name", plot_args.name, "output basename")
        ->capture_default_str();
    plot->callback([&] { cmd_plot(plot_args); });

    GenerateArgs gen_args;
    std::string gen_design;
    auto* gen = app.add_subcommand(
        "generate", "write one synthetic dataset (and its truth when defined)");
    gen->add_option("design", gen_design, "iid | time_varying | two_leader")
        ->required();
    gen->add_option("--n", gen_args.spec.n_nodes, "nodes")->capture_default_str();
    gen->add_option("--n-o", gen_args.spec.n_leaders, "true leaders")
        ->capture_default_str();
    gen->add_option("--p", gen_args.spec.link_density, "link density")
        ->capture_default_str();
    gen->add_option("--alpha", gen_args.spec.alpha, "Beta shape alpha")
        ->capture_default_str();
    gen->add_option("--beta", gen_args.spec.beta, "Beta shape beta")
        ->capture_default_str();
    gen->add_option("--q", gen_args.spec.fresh_prob,
                    "new-segment probability (time_varying)")
        ->capture_default_str();
    gen->add_option("--gamma-b", gen_args.spec.stay_offset,
                    "member log-odds offset (time_varying)")
        ->capture_default_str();
    gen->add_option("--gamma-c", gen_args.spec.join_offset,
                    "outsider log-odds offset (time_varying)")
        ->capture_default_str();
    gen->add_option("--c", gen_args.spec.intercept, "join intercept (two_leader)")
        ->capture_default_str();
    gen->add_option("--T", gen_args.n_groups, "groups to draw")
        ->capture_default_str();
    gen->add_option("--seed", gen_args.seed, "RNG seed")->capture_default_str();
    gen->add_option("--out-dir", gen_args.out_dir, "artifact directory")
        ->capture_default_str();
    gen->callback([&] {
        gen_args.design = design_from_string(gen_design);
        cmd_generate(gen_args);
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitValidation;
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitValidation;
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitIo;
    } catch (const fit_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitFit;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return kExitOk;
}

}  // namespace hubnet
