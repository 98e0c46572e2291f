#ifndef MARKETSIM_CONFIG_HPP
#define MARKETSIM_CONFIG_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

#include "marketsim/decision.hpp"

namespace marketsim {

// Full description of one simulation run.
struct SimulationConfig {
    int n_agents = 3969;
    int ba_m = 8;
    double isolated_fraction = 0.0;
    int steps = 10000;   // post-warm-up steps
    int warmup = 100;
    int case_id = 1;
    double follow_probability = 0.5;
    Algorithm algorithm = Algorithm::Compare;
    bool random_uniform_term = true;
    double index_k = 0.1;
    double init_cash = 10000.0;
    int init_shares = 100;
    std::uint64_t seed = 0;
    std::optional<Profile> hub_profile_override;
    std::array<double, 3> profile_mix{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0};
    bool record_returns = false;
    bool record_wealth_history = false;

    // Throws std::invalid_argument listing every offending key.
    void validate() const;

    DecisionConfig decision() const {
        return {follow_probability, case_id, algorithm, random_uniform_term};
    }
};

// Flat "key = value" file, '#' comments. Unknown keys are hard errors.
SimulationConfig parse_config(std::istream& in);
SimulationConfig parse_config_file(const std::string& path);

// Applies one "key=value" override on top of an existing config.
void apply_override(SimulationConfig& cfg, const std::string& key, const std::string& value);

Algorithm algorithm_from_string(const std::string& s);
Profile profile_from_string(const std::string& s);

} // namespace marketsim

#endif
