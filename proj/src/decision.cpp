#include "marketsim/decision.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace marketsim {

namespace {

Action pick_uniform(std::initializer_list<Action> options, Rng& rng) {
    const Action* begin = options.begin();
    return begin[rng.uniform_int(options.size())];
}

// majority (or minority) action with uniform tie-breaking
Action extreme_count(const NeighborhoodTally& tally, bool want_max, Rng& rng) {
    const std::array<std::pair<Action, int>, 3> counts{{
        {Action::Buy, tally.buy},
        {Action::Hold, tally.hold},
        {Action::Sell, tally.sell},
    }};
    int best = counts[0].second;
    for (const auto& [a, c] : counts)
        if (want_max ? c > best : c < best) best = c;
    std::array<Action, 3> tied;
    int n_tied = 0;
    for (const auto& [a, c] : counts)
        if (c == best) tied[n_tied++] = a;
    return n_tied == 1 ? tied[0] : tied[rng.uniform_int(n_tied)];
}

Action anti_mom(Action d1, Action d2, Rng& rng) {
    if (d1 == d2) {
        switch (d1) {
            case Action::Buy: return Action::Sell;
            case Action::Sell: return Action::Buy;
            case Action::Hold: return pick_uniform({Action::Buy, Action::Sell}, rng);
        }
    }
    if (d1 == Action::Buy && d2 == Action::Sell) return Action::Buy;
    if (d1 == Action::Sell && d2 == Action::Buy) return Action::Sell;
    if (d2 == Action::Hold) return pick_uniform({Action::Buy, Action::Sell}, rng);
    if (d1 == Action::Hold && d2 == Action::Buy)
        return pick_uniform({Action::Hold, Action::Sell}, rng);
    // (Hold, Sell)
    return pick_uniform({Action::Hold, Action::Buy}, rng);
}

} // namespace

Action strategy1(Profile profile, const NeighborhoodTally& tally, Action prev_state, Rng& rng) {
    if (tally.degree() == 0) return prev_state;  // stubborn
    switch (profile) {
        case Profile::Imitator: return extreme_count(tally, true, rng);
        case Profile::AntiImitator: return extreme_count(tally, false, rng);
        case Profile::RandomTrader:
            return pick_uniform({Action::Buy, Action::Hold, Action::Sell}, rng);
    }
    throw std::logic_error("strategy1: bad profile");
}

Action combine_compare(Profile profile, Action d1, Action d2, double p, Rng& rng) {
    if (p < 0.0 || p > 1.0)
        throw std::invalid_argument("combine_compare: p must be in [0,1]");
    switch (profile) {
        case Profile::AntiImitator:
            return rng.bernoulli(p) ? anti_mom(d1, d2, rng) : d1;
        case Profile::RandomTrader:
            // an already-random decision is not altered by the trend channel
            return d1;
        case Profile::Imitator:
            if (d1 == d2) return d1;
            return rng.bernoulli(p) ? d2 : d1;
    }
    throw std::logic_error("combine_compare: bad profile");
}

Action combine_index(Profile profile, const NeighborhoodTally& tally,
                     const ActionProbs& probs, Rng& rng, bool random_uniform_term) {
    int degree = tally.degree();
    double w2 = probs.buy - probs.sell;
    double s;
    switch (profile) {
        case Profile::Imitator:
        case Profile::AntiImitator: {
            double w1 = degree > 0 ? static_cast<double>(tally.buy - tally.sell) / degree : 0.0;
            s = w1 + w2;
            if (profile == Profile::AntiImitator) s = -s;
            break;
        }
        case Profile::RandomTrader: {
            double u = (degree > 0 && random_uniform_term) ? rng.uniform_sym() : 0.0;
            s = u + w2;
            break;
        }
        default:
            throw std::logic_error("combine_index: bad profile");
    }
    if (s > 1.0) return Action::Buy;
    if (s < -1.0) return Action::Sell;
    if (s == 0.0) return Action::Hold;
    if (rng.bernoulli(std::abs(s)))
        return s > 0.0 ? Action::Buy : Action::Sell;
    return Action::Hold;
}

std::vector<Action> decide_all(const TrustNetwork& net,
                               std::span<const Profile> profiles,
                               std::span<const Action> prev_states,
                               std::span<const double> index_history,
                               std::size_t t, std::size_t warmup,
                               const DecisionConfig& cfg,
                               const ProbabilityTable& table,
                               std::span<Rng> agent_rngs,
                               long long* unmatched_patterns) {
    const std::size_t n = static_cast<std::size_t>(net.n);
    if (profiles.size() != n || prev_states.size() != n || agent_rngs.size() != n)
        throw std::invalid_argument("decide_all: size mismatch");

    const bool use_trend = t > warmup;
    ActionProbs probs{};
    if (use_trend) {
        MomentumTriple mom = compute_momentum(index_history, t);
        TrendRow row = classify_trend(mom);
        if (!row.matched && unmatched_patterns) ++*unmatched_patterns;
        probs = lookup_probs(table, row.label);
    }

    std::vector<Action> actions(n);
    for (std::size_t i = 0; i < n; ++i) {
        Rng& rng = agent_rngs[i];
        NeighborhoodTally tally;
        for (int j : net.adjacency[i]) {
            switch (prev_states[static_cast<std::size_t>(j)]) {
                case Action::Buy: ++tally.buy; break;
                case Action::Hold: ++tally.hold; break;
                case Action::Sell: ++tally.sell; break;
            }
        }
        if (use_trend && cfg.algorithm == Algorithm::CombinedIndex) {
            actions[i] = combine_index(profiles[i], tally, probs, rng, cfg.random_uniform_term);
            continue;
        }
        Action d1 = strategy1(profiles[i], tally, prev_states[i], rng);
        if (!use_trend) {
            actions[i] = d1;
        } else {
            Action d2 = sample_decision(probs, rng);
            actions[i] = combine_compare(profiles[i], d1, d2, cfg.follow_probability, rng);
        }
    }
    return actions;
}

} // namespace marketsim
