#include "marketsim/output.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include <json.hpp>

namespace marketsim {

namespace {

using nlohmann::json;

std::ofstream open_out(const std::string& path) {
    std::ofstream f(path);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    return f;
}

// round to 6 significant digits so json output matches the csv precision
double round6(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return std::atof(buf);
}

json config_json(const SimulationConfig& cfg) {
    json j;
    j["n_agents"] = cfg.n_agents;
    j["ba_m"] = cfg.ba_m;
    j["isolated_fraction"] = round6(cfg.isolated_fraction);
    j["steps"] = cfg.steps;
    j["warmup"] = cfg.warmup;
    j["case_id"] = cfg.case_id;
    j["follow_probability"] = round6(cfg.follow_probability);
    j["algorithm"] = cfg.algorithm == Algorithm::Compare ? "compare" : "combined-index";
    j["random_uniform_term"] = cfg.random_uniform_term;
    j["index_k"] = round6(cfg.index_k);
    j["init_cash"] = round6(cfg.init_cash);
    j["init_shares"] = cfg.init_shares;
    j["seed"] = cfg.seed;
    j["hub_profile_override"] =
        cfg.hub_profile_override ? json(to_string(*cfg.hub_profile_override)) : json(nullptr);
    j["profile_mix"] = {round6(cfg.profile_mix[0]), round6(cfg.profile_mix[1]),
                        round6(cfg.profile_mix[2])};
    j["record_returns"] = cfg.record_returns;
    j["record_wealth_history"] = cfg.record_wealth_history;
    return j;
}

json stats_json(const std::map<Profile, ProfileStats>& stats) {
    json j;
    for (const auto& [p, s] : stats)
        j[to_string(p)] = {{"mean", round6(s.mean)}, {"sd", round6(s.sd)}, {"count", s.count}};
    return j;
}

} // namespace

std::string format_number(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

void write_index_csv(const SimulationOutput& out, const std::string& path) {
    auto f = open_out(path);
    f << "step,index\n";
    for (std::size_t t = 0; t < out.index_series.size(); ++t)
        f << t << "," << format_number(out.index_series[t]) << "\n";
}

void write_agents_csv(const SimulationOutput& out, const std::string& path) {
    auto f = open_out(path);
    f << "id,profile,degree,cash,shares,wealth\n";
    for (const Agent& a : out.agents)
        f << a.id << "," << to_string(a.profile) << ","
          << out.degrees[static_cast<std::size_t>(a.id)] << "," << format_number(a.cash)
          << "," << a.shares << "," << format_number(a.wealth) << "\n";
}

void write_returns_csv(const SimulationOutput& out, const std::string& path) {
    if (out.wealth_history.empty())
        throw std::runtime_error(
            "write_returns_csv: run with record_wealth_history enabled");
    auto f = open_out(path);
    f << "step,agent_id,profile,r\n";
    const std::size_t warmup = static_cast<std::size_t>(out.config.warmup);
    for (std::size_t t = warmup + 1; t < out.index_series.size(); ++t) {
        for (const Agent& a : out.agents) {
            const auto& w = out.wealth_history[static_cast<std::size_t>(a.id)];
            if (w[t - 1] <= 0.0) continue;
            double r = (w[t] - w[t - 1]) / w[t - 1];
            f << t << "," << a.id << "," << to_string(a.profile) << ","
              << format_number(r) << "\n";
        }
    }
}

void write_summary_json(const SimulationOutput& out, const std::string& path) {
    json j;
    j["config"] = config_json(out.config);
    j["seed"] = out.config.seed;
    j["network_checksum"] = out.network_checksum;
    j["wealth_by_profile"] = stats_json(profile_wealth_stats(out.agents));
    j["final_index"] = round6(out.index_series.back());
    j["totals"] = {{"executed_buys", out.totals.executed_buys},
                   {"executed_sells", out.totals.executed_sells},
                   {"holds", out.totals.holds},
                   {"forced_holds", out.totals.forced_holds}};
    j["unmatched_patterns"] = out.unmatched_patterns;
    j["invariant_violations"] = out.invariant_violations;
    if (out.config.record_returns) {
        json ret;
        for (int p = 0; p < kProfileCount; ++p) {
            const auto& r = out.returns_by_profile[p];
            if (r.empty()) continue;
            double mean = 0.0;
            for (float v : r) mean += v;
            mean /= static_cast<double>(r.size());
            double ss = 0.0;
            for (float v : r) ss += (v - mean) * (v - mean);
            double sd = r.size() > 1 ? std::sqrt(ss / (r.size() - 1)) : 0.0;
            ret[to_string(static_cast<Profile>(p))] = {
                {"mean", round6(mean)}, {"sd", round6(sd)}, {"count", r.size()}};
        }
        j["returns_by_profile"] = ret;
    }
    open_out(path) << j.dump(2) << "\n";
}

void write_analysis_json(const SimulationOutput& out, const std::string& path) {
    json j;
    j["seed"] = out.config.seed;
    if (out.index_series.size() >= 256) {
        HurstEstimate h = hurst_rs(out.index_series);
        j["hurst"] = {{"h", round6(h.h)},
                      {"stderr", round6(h.stderr_)},
                      {"window_min", h.window_min},
                      {"window_max", h.window_max},
                      {"piecewise_residual_gain", round6(h.piecewise_residual_gain)}};
    }
    j["wealth_by_profile"] = stats_json(profile_wealth_stats(out.agents));
    if (out.config.record_returns) {
        json hists;
        for (int p = 0; p < kProfileCount; ++p) {
            const auto& r = out.returns_by_profile[p];
            if (r.size() < 100) continue;
            HistogramSummary hist = return_histogram(r);
            hists[to_string(static_cast<Profile>(p))] = {
                {"mean", round6(hist.mean)},
                {"sd", round6(hist.sd)},
                {"gaussian_r2", round6(hist.gaussian_r2)},
                {"bins", hist.counts.size()},
                {"interdecile_range", round6(interdecile_range(r))}};
        }
        j["return_histograms"] = hists;
    }
    open_out(path) << j.dump(2) << "\n";
}

void write_sweep_csv(const std::vector<SweepPoint>& points, const std::string& path) {
    auto f = open_out(path);
    f << "seed,p,case_id,hub_profile,network_checksum,"
         "mean_imitator,mean_anti_imitator,mean_random,hub_wealth,hurst,error\n";
    for (const SweepPoint& pt : points) {
        f << pt.seed << "," << format_number(pt.p) << "," << pt.case_id << ","
          << (pt.hub_profile ? to_string(*pt.hub_profile) : "none") << ","
          << pt.network_checksum << ",";
        auto mean_of = [&](Profile p) {
            auto it = pt.wealth.find(p);
            return it != pt.wealth.end() ? format_number(it->second.mean) : std::string("");
        };
        f << mean_of(Profile::Imitator) << "," << mean_of(Profile::AntiImitator) << ","
          << mean_of(Profile::RandomTrader) << "," << format_number(pt.hub_wealth) << ","
          << format_number(pt.hurst) << "," << (pt.failed ? pt.error : "") << "\n";
    }
}

void write_hub_experiment_csv(const std::vector<HubPeripheryResult>& results,
                              const std::string& path) {
    auto f = open_out(path);
    f << "seed,hub_distance,periphery_distance\n";
    for (const auto& r : results)
        f << r.seed << "," << format_number(r.hub_distance) << ","
          << format_number(r.periphery_distance) << "\n";
}

void write_line_svg(const std::vector<double>& series, const std::string& title,
                    const std::string& path) {
    if (series.empty()) throw std::invalid_argument("write_line_svg: empty series");
    const int w = 900, h = 450, pad = 50;
    double lo = series[0], hi = series[0];
    for (double v : series) {
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    if (hi == lo) hi = lo + 1.0;
    auto f = open_out(path);
    f << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='" << h
      << "'>\n<rect width='100%' height='100%' fill='white'/>\n"
      << "<text x='" << w / 2 << "' y='20' text-anchor='middle' font-size='14'>"
      << title << "</text>\n<polyline fill='none' stroke='steelblue' points='";
    for (std::size_t i = 0; i < series.size(); ++i) {
        double x = pad + (w - 2.0 * pad) * i / (series.size() - 1 ? series.size() - 1 : 1);
        double y = h - pad - (h - 2.0 * pad) * (series[i] - lo) / (hi - lo);
        f << format_number(x) << "," << format_number(y) << " ";
    }
    f << "'/>\n<text x='10' y='" << h - pad << "' font-size='11'>" << format_number(lo)
      << "</text>\n<text x='10' y='" << pad << "' font-size='11'>" << format_number(hi)
      << "</text>\n</svg>\n";
}

void write_histogram_svg(const HistogramSummary& hist, const std::string& title,
                         const std::string& path) {
    const int w = 900, h = 450, pad = 50;
    int max_count = 1;
    for (int c : hist.counts) max_count = std::max(max_count, c);
    auto f = open_out(path);
    f << "<svg xmlns='http://www.w3.org/2000/svg' width='" << w << "' height='" << h
      << "'>\n<rect width='100%' height='100%' fill='white'/>\n"
      << "<text x='" << w / 2 << "' y='20' text-anchor='middle' font-size='14'>"
      << title << "</text>\n";
    double bw = (w - 2.0 * pad) / hist.counts.size();
    for (std::size_t b = 0; b < hist.counts.size(); ++b) {
        double bh = (h - 2.0 * pad) * hist.counts[b] / max_count;
        f << "<rect x='" << format_number(pad + b * bw) << "' y='"
          << format_number(h - pad - bh) << "' width='" << format_number(bw * 0.9)
          << "' height='" << format_number(bh) << "' fill='darkorange'/>\n";
    }
    f << "<text x='" << pad << "' y='" << h - pad / 2 << "' font-size='11'>"
      << format_number(hist.edges.front()) << "</text>\n<text x='" << w - pad
      << "' y='" << h - pad / 2 << "' text-anchor='end' font-size='11'>"
      << format_number(hist.edges.back()) << "</text>\n</svg>\n";
}

std::string resolve_output_dir(const std::string& flag_value) {
    std::string dir = flag_value;
    if (dir.empty()) {
        const char* env = std::getenv("MARKETSIM_OUT");
        dir = env ? env : ".";
    }
    std::filesystem::create_directories(dir);
    return dir;
}

} // namespace marketsim
