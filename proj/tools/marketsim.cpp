#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "marketsim/analysis.hpp"
#include "marketsim/experiments.hpp"
#include "marketsim/market.hpp"
#include "marketsim/network.hpp"
#include "marketsim/output.hpp"

namespace {

using namespace marketsim;

std::vector<double> parse_double_list(const std::string& csv) {
    std::vector<double> out;
    std::istringstream ss(csv);
    std::string part;
    while (std::getline(ss, part, ',')) out.push_back(std::stod(part));
    return out;
}

std::vector<std::uint64_t> parse_seed_list(const std::string& csv) {
    std::vector<std::uint64_t> out;
    std::istringstream ss(csv);
    std::string part;
    while (std::getline(ss, part, ',')) out.push_back(std::stoull(part));
    return out;
}

std::vector<Profile> parse_profile_list(const std::string& csv) {
    std::vector<Profile> out;
    std::istringstream ss(csv);
    std::string part;
    while (std::getline(ss, part, ',')) {
        if (part == "all") {
            out = {Profile::Imitator, Profile::AntiImitator, Profile::RandomTrader};
            return out;
        }
        out.push_back(profile_from_string(part));
    }
    return out;
}

SimulationConfig load_config(const std::string& config_path,
                             const std::vector<std::string>& overrides) {
    SimulationConfig cfg;
    if (!config_path.empty()) cfg = parse_config_file(config_path);
    for (const std::string& ov : overrides) {
        std::size_t eq = ov.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("override must be key=value: " + ov);
        apply_override(cfg, ov.substr(0, eq), ov.substr(eq + 1));
    }
    return cfg;
}

std::vector<double> read_index_csv(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open " + path);
    std::vector<double> series;
    std::string line;
    while (std::getline(f, line)) {
        if (line.empty() || line.rfind("step", 0) == 0) continue;
        std::size_t comma = line.find(',');
        series.push_back(std::stod(comma == std::string::npos ? line : line.substr(comma + 1)));
    }
    return series;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Agent-based stock market simulator on a scale-free trust network"};
    app.require_subcommand(1);

    std::string config_path, out_dir, net_out, index_path, svg_out;
    std::vector<std::string> overrides;
    std::uint64_t seed = 0;
    bool seed_set = false;
    bool with_returns = false, with_svg = false;
    int n = 3969, m = 8, k_swap = 300, threads = 0;
    double isolated = 0.0;
    std::string p_list = "0.01,0.05,0.3,0.5,0.7,0.95,0.99";
    std::string hub_list = "all", seed_list;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "configuration file (key = value lines)");
        cmd->add_option("--set", overrides, "config override key=value (repeatable)");
        cmd->add_option("--out", out_dir, "output directory (default: $MARKETSIM_OUT or .)");
        cmd->add_option("--threads", threads, "worker threads (default: hardware)");
    };

    auto* gen = app.add_subcommand("gen-net", "generate a trust network edge list");
    gen->add_option("--n", n, "node count")->required();
    gen->add_option("--m", m, "links per new node");
    gen->add_option("--isolated-fraction", isolated, "fraction of nodes left isolated");
    gen->add_option("--seed", seed, "random seed")->required();
    gen->add_option("--edge-file", net_out, "output edge list path")->required();

    auto* runc = app.add_subcommand("run", "run one simulation");
    add_common(runc);
    auto* run_seed = runc->add_option("--seed", seed, "random seed (required for replication)");
    runc->add_flag("--returns", with_returns, "also write returns.csv (memory heavy)");
    runc->add_flag("--svg", with_svg, "also write SVG charts");

    auto* sweep = app.add_subcommand("sweep", "probability / hub-profile sweep");
    add_common(sweep);
    sweep->add_option("--p", p_list, "comma list of follow probabilities");
    sweep->add_option("--hub-profiles", hub_list, "comma list of hub profiles, or 'all'");
    sweep->add_option("--seeds", seed_list, "comma list of seeds")->required();

    auto* hubx = app.add_subcommand("hub-experiment", "hub swap vs least-connected swap");
    add_common(hubx);
    hubx->add_option("--k", k_swap, "number of least-connected agents to rotate");
    hubx->add_option("--seeds", seed_list, "comma list of seeds")->required();

    auto* analyze = app.add_subcommand("analyze", "Hurst estimate for an index series");
    analyze->add_option("index_csv", index_path, "index.csv from a run")->required();

    auto* plot = app.add_subcommand("plot", "SVG line chart of an index series");
    plot->add_option("index_csv", index_path, "index.csv from a run")->required();
    plot->add_option("--svg-out", svg_out, "output SVG path")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed()) {
            Rng rng = Rng::substream(seed, 0);
            TrustNetwork net = generate_ba(n, m, rng, isolated);
            save_network(net, net_out);
            DegreeDistribution dist = degree_distribution(net);
            std::cout << "nodes=" << net.n << " edges=" << net.edge_count()
                      << " hub_degree=" << net.degrees[static_cast<std::size_t>(hub(net))]
                      << " gamma=" << format_number(dist.fitted_exponent)
                      << " r2=" << format_number(dist.fit_r2) << "\n";
        } else if (runc->parsed()) {
            SimulationConfig cfg = load_config(config_path, overrides);
            if (run_seed->count() > 0) {
                cfg.seed = seed;
                seed_set = true;
            }
            if (!seed_set && config_path.empty())
                throw std::invalid_argument("run: --seed (or a config with seed) is required");
            cfg.record_returns = cfg.record_returns || with_returns;
            cfg.record_wealth_history = cfg.record_wealth_history || with_returns;
            cfg.validate();
            SimulationOutput out = run(cfg);
            std::string dir = resolve_output_dir(out_dir);
            write_index_csv(out, dir + "/index.csv");
            write_agents_csv(out, dir + "/agents.csv");
            write_summary_json(out, dir + "/summary.json");
            write_analysis_json(out, dir + "/analysis.json");
            if (with_returns) write_returns_csv(out, dir + "/returns.csv");
            if (with_svg) {
                write_line_svg(out.index_series, "index", dir + "/index.svg");
                for (int p = 0; p < kProfileCount; ++p) {
                    const auto& r = out.returns_by_profile[p];
                    if (r.size() < 100) continue;
                    std::string name = to_string(static_cast<Profile>(p));
                    write_histogram_svg(return_histogram(r), "returns: " + name,
                                        dir + "/returns_" + name + ".svg");
                }
            }
            std::cout << "wrote " << dir << "/summary.json\n";
        } else if (sweep->parsed()) {
            SimulationConfig cfg = load_config(config_path, overrides);
            auto ps = parse_double_list(p_list);
            auto hubs = parse_profile_list(hub_list);
            auto seeds = parse_seed_list(seed_list);
            auto points = run_sweep(cfg, ps, hubs, seeds, threads);
            std::string dir = resolve_output_dir(out_dir);
            write_sweep_csv(points, dir + "/sweep.csv");
            std::cout << "wrote " << dir << "/sweep.csv (" << points.size() << " points)\n";
            for (const auto& pt : points)
                if (pt.failed)
                    std::cerr << "point seed=" << pt.seed << " p=" << pt.p
                              << " failed: " << pt.error << "\n";
        } else if (hubx->parsed()) {
            SimulationConfig cfg = load_config(config_path, overrides);
            auto seeds = parse_seed_list(seed_list);
            auto results = run_hub_vs_periphery(cfg, k_swap, seeds, threads);
            std::string dir = resolve_output_dir(out_dir);
            write_hub_experiment_csv(results, dir + "/hub_experiment.csv");
            std::cout << "wrote " << dir << "/hub_experiment.csv\n";
        } else if (analyze->parsed()) {
            HurstEstimate h = hurst_rs(read_index_csv(index_path));
            std::cout << "H = " << format_number(h.h) << " +- " << format_number(h.stderr_)
                      << " (windows " << h.window_min << ".." << h.window_max << ")\n";
        } else if (plot->parsed()) {
            write_line_svg(read_index_csv(index_path), "index", svg_out);
            std::cout << "wrote " << svg_out << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
