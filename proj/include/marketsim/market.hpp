#ifndef MARKETSIM_MARKET_HPP
#define MARKETSIM_MARKET_HPP

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "marketsim/config.hpp"
#include "marketsim/decision.hpp"
#include "marketsim/network.hpp"

namespace marketsim {

struct Agent {
    int id = 0;
    Profile profile = Profile::RandomTrader;
    Action state = Action::Hold;
    double cash = 0.0;
    int shares = 0;
    double wealth = 0.0;  // cash + shares * index, refreshed every step
};

struct MarketState {
    std::vector<double> history{100.0};
    double index() const { return history.back(); }
    std::size_t t() const { return history.size() - 1; }
};

struct ExecutionReport {
    long long executed_buys = 0;
    long long executed_sells = 0;
    long long holds = 0;
    long long forced_holds = 0;
};

// Unit trades against the market maker: a buy needs cash >= index, a sell
// needs one share; constraint violations become forced holds.
ExecutionReport execute(std::vector<Agent>& agents, std::span<const Action> actions,
                        double index);

// index' = index * (1 + clamp(k * net / n, -0.5, +0.5))
double update_index(double index, long long net, int n, double k);

struct SimulationOutput {
    SimulationConfig config;
    std::vector<double> index_series;
    std::vector<Agent> agents;   // final states
    std::vector<int> degrees;
    std::uint64_t network_checksum = 0;
    ExecutionReport totals;
    long long unmatched_patterns = 0;
    long long invariant_violations = 0;
    // post-warm-up per-agent per-step wealth returns, pooled by profile
    // (filled only when config.record_returns)
    std::array<std::vector<float>, kProfileCount> returns_by_profile;
    // per-agent wealth series (filled only when config.record_wealth_history)
    std::vector<std::vector<double>> wealth_history;
};

struct World {
    SimulationConfig cfg;
    TrustNetwork net;
    std::vector<Agent> agents;
    std::vector<Profile> profiles;
    MarketState market;
};

// Builds the network, assigns profiles (equal thirds by default, shuffled)
// and uniform random initial states, and sets the endowments. Deterministic
// in cfg.seed.
World prepare(const SimulationConfig& cfg);

// Advances the world one step: decide -> execute -> update index -> account.
// Returns this step's report; accumulates diagnostics into `out` when given.
ExecutionReport step(World& world, std::span<Rng> agent_rngs, SimulationOutput* out = nullptr);

// Runs warm-up plus main phase on a prepared world.
SimulationOutput simulate(World world);

// prepare + simulate.
SimulationOutput run(const SimulationConfig& cfg);

} // namespace marketsim

#endif
