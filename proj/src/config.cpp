#include "marketsim/config.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace marketsim {

void SimulationConfig::validate() const {
    std::string bad;
    auto flag = [&](const char* key) {
        if (!bad.empty()) bad += ", ";
        bad += key;
    };
    if (n_agents <= ba_m) flag("n_agents (must exceed ba_m)");
    if (ba_m < 1) flag("ba_m");
    if (isolated_fraction < 0.0 || isolated_fraction >= 1.0) flag("isolated_fraction");
    if (warmup < 11) flag("warmup (must be >= 11)");
    if (steps != 0 && steps <= warmup) flag("steps (must be 0 or exceed warmup)");
    if (case_id < 1 || case_id > 4) flag("case_id");
    if (follow_probability < 0.0 || follow_probability > 1.0) flag("follow_probability");
    if (index_k < 0.0) flag("index_k");
    if (init_cash < 0.0) flag("init_cash");
    if (init_shares < 0) flag("init_shares");
    double mix_sum = profile_mix[0] + profile_mix[1] + profile_mix[2];
    if (profile_mix[0] < 0 || profile_mix[1] < 0 || profile_mix[2] < 0 ||
        std::abs(mix_sum - 1.0) > 1e-9)
        flag("profile_mix (must be non-negative and sum to 1)");
    if (!bad.empty())
        throw std::invalid_argument("invalid configuration: " + bad);
}

Algorithm algorithm_from_string(const std::string& s) {
    if (s == "compare") return Algorithm::Compare;
    if (s == "combined-index" || s == "combined_index") return Algorithm::CombinedIndex;
    throw std::invalid_argument("unknown algorithm: " + s);
}

Profile profile_from_string(const std::string& s) {
    if (s == "imitator") return Profile::Imitator;
    if (s == "anti-imitator" || s == "anti_imitator") return Profile::AntiImitator;
    if (s == "random" || s == "random-trader") return Profile::RandomTrader;
    throw std::invalid_argument("unknown profile: " + s);
}

namespace {

bool parse_bool(const std::string& v) {
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    throw std::invalid_argument("expected boolean, got: " + v);
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    std::size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

} // namespace

void apply_override(SimulationConfig& cfg, const std::string& key, const std::string& value) {
    if (key == "n_agents") cfg.n_agents = std::stoi(value);
    else if (key == "ba_m") cfg.ba_m = std::stoi(value);
    else if (key == "isolated_fraction") cfg.isolated_fraction = std::stod(value);
    else if (key == "steps") cfg.steps = std::stoi(value);
    else if (key == "warmup") cfg.warmup = std::stoi(value);
    else if (key == "case_id") cfg.case_id = std::stoi(value);
    else if (key == "follow_probability") cfg.follow_probability = std::stod(value);
    else if (key == "algorithm") cfg.algorithm = algorithm_from_string(value);
    else if (key == "random_uniform_term") cfg.random_uniform_term = parse_bool(value);
    else if (key == "index_k") cfg.index_k = std::stod(value);
    else if (key == "init_cash") cfg.init_cash = std::stod(value);
    else if (key == "init_shares") cfg.init_shares = std::stoi(value);
    else if (key == "seed") cfg.seed = std::stoull(value);
    else if (key == "hub_profile_override") cfg.hub_profile_override = profile_from_string(value);
    else if (key == "profile_mix") {
        std::istringstream ss(value);
        std::string part;
        for (int i = 0; i < 3; ++i) {
            if (!std::getline(ss, part, ','))
                throw std::invalid_argument("profile_mix needs three comma-separated values");
            cfg.profile_mix[i] = std::stod(trim(part));
        }
    }
    else if (key == "record_returns") cfg.record_returns = parse_bool(value);
    else if (key == "record_wealth_history") cfg.record_wealth_history = parse_bool(value);
    else throw std::invalid_argument("unknown configuration key: " + key);
}

SimulationConfig parse_config(std::istream& in) {
    SimulationConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        std::string s = trim(line);
        if (s.empty() || s[0] == '#') continue;
        std::size_t eq = s.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("config line " + std::to_string(lineno) +
                                        ": expected key = value");
        apply_override(cfg, trim(s.substr(0, eq)), trim(s.substr(eq + 1)));
    }
    return cfg;
}

SimulationConfig parse_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open config file: " + path);
    return parse_config(f);
}

} // namespace marketsim
