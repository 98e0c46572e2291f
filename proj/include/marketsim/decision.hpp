#ifndef MARKETSIM_DECISION_HPP
#define MARKETSIM_DECISION_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "marketsim/network.hpp"
#include "marketsim/rng.hpp"
#include "marketsim/signal.hpp"

namespace marketsim {

enum class Profile : int { Imitator = 0, AntiImitator = 1, RandomTrader = 2 };
constexpr int kProfileCount = 3;

constexpr const char* to_string(Profile p) {
    switch (p) {
        case Profile::Imitator: return "imitator";
        case Profile::AntiImitator: return "anti-imitator";
        default: return "random";
    }
}

struct NeighborhoodTally {
    int buy = 0;
    int hold = 0;
    int sell = 0;
    int degree() const { return buy + hold + sell; }
};

enum class Algorithm { Compare, CombinedIndex };

struct DecisionConfig {
    double follow_probability = 0.5;  // p: chance of engaging the trend channel
    int case_id = 1;
    Algorithm algorithm = Algorithm::Compare;
    // combined-index neighborhood term for random traders: uniform draw in
    // [-1,1] when true, zero when false
    bool random_uniform_term = true;
};

// Neighborhood strategy filtered through the psychological profile.
// Degree-0 agents keep their previous state (stubborn).
Action strategy1(Profile profile, const NeighborhoodTally& tally, Action prev_state, Rng& rng);

// Comparison combination of the neighborhood decision d1 with the trend
// decision d2. With probability 1-p every profile falls back to d1; with
// probability p imitators and random traders take d2, anti-imitators apply
// the enumerated opposition mapping to (d1, d2).
Action combine_compare(Profile profile, Action d1, Action d2, double p, Rng& rng);

// Single-index combination: neighborhood weight (buy-sell)/degree plus trend
// weight p_buy-p_sell, thresholded at +-1, probabilistic in between.
// Degree-0 agents contribute a zero neighborhood term.
Action combine_index(Profile profile, const NeighborhoodTally& tally,
                     const ActionProbs& probs, Rng& rng, bool random_uniform_term = true);

// Synchronous step: every tally reads prev_states, outputs one action per
// agent. During warm-up (t <= warmup) only the neighborhood strategy runs.
// unmatched_patterns, when given, counts trend patterns that fell back to
// the no-trend row.
std::vector<Action> decide_all(const TrustNetwork& net,
                               std::span<const Profile> profiles,
                               std::span<const Action> prev_states,
                               std::span<const double> index_history,
                               std::size_t t, std::size_t warmup,
                               const DecisionConfig& cfg,
                               const ProbabilityTable& table,
                               std::span<Rng> agent_rngs,
                               long long* unmatched_patterns = nullptr);

} // namespace marketsim

#endif
