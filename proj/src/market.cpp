#include "marketsim/market.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace marketsim {

namespace {

// substream ids; agents use streams [16, 16 + n)
constexpr std::uint64_t kNetworkStream = 0;
constexpr std::uint64_t kAssignStream = 1;
constexpr std::uint64_t kMarketStream = 2;
constexpr std::uint64_t kAgentStreamBase = 16;

} // namespace

ExecutionReport execute(std::vector<Agent>& agents, std::span<const Action> actions,
                        double index) {
    if (actions.size() != agents.size())
        throw std::invalid_argument("execute: one action per agent required");
    ExecutionReport report;
    for (std::size_t i = 0; i < agents.size(); ++i) {
        Agent& a = agents[i];
        switch (actions[i]) {
            case Action::Buy:
                if (a.cash >= index) {
                    a.cash -= index;
                    ++a.shares;
                    a.state = Action::Buy;
                    ++report.executed_buys;
                } else {
                    a.state = Action::Hold;
                    ++report.forced_holds;
                }
                break;
            case Action::Sell:
                if (a.shares >= 1) {
                    a.cash += index;
                    --a.shares;
                    a.state = Action::Sell;
                    ++report.executed_sells;
                } else {
                    a.state = Action::Hold;
                    ++report.forced_holds;
                }
                break;
            case Action::Hold:
                a.state = Action::Hold;
                ++report.holds;
                break;
        }
    }
    return report;
}

double update_index(double index, long long net, int n, double k) {
    if (index <= 0.0) throw std::invalid_argument("update_index: index must be positive");
    double rel = k * static_cast<double>(net) / static_cast<double>(n);
    rel = std::clamp(rel, -0.5, 0.5);
    return index * (1.0 + rel);
}

World prepare(const SimulationConfig& cfg) {
    cfg.validate();
    World world;
    world.cfg = cfg;

    Rng net_rng = Rng::substream(cfg.seed, kNetworkStream);
    world.net = generate_ba(cfg.n_agents, cfg.ba_m, net_rng, cfg.isolated_fraction);

    // profile counts per mix, remainders to the earliest profiles
    const int n = cfg.n_agents;
    std::array<int, kProfileCount> counts{};
    int assigned = 0;
    for (int p = 0; p < kProfileCount; ++p) {
        counts[p] = static_cast<int>(cfg.profile_mix[p] * n);
        assigned += counts[p];
    }
    for (int p = 0; assigned < n; p = (p + 1) % kProfileCount) {
        ++counts[p];
        ++assigned;
    }

    world.profiles.reserve(n);
    for (int p = 0; p < kProfileCount; ++p)
        world.profiles.insert(world.profiles.end(), counts[p], static_cast<Profile>(p));

    Rng assign_rng = Rng::substream(cfg.seed, kAssignStream);
    for (int i = n - 1; i > 0; --i)
        std::swap(world.profiles[i], world.profiles[assign_rng.uniform_int(i + 1)]);

    if (cfg.hub_profile_override)
        world.profiles[static_cast<std::size_t>(hub(world.net))] = *cfg.hub_profile_override;

    world.agents.resize(n);
    constexpr Action kActions[3] = {Action::Buy, Action::Hold, Action::Sell};
    for (int i = 0; i < n; ++i) {
        Agent& a = world.agents[i];
        a.id = i;
        a.profile = world.profiles[i];
        a.state = kActions[assign_rng.uniform_int(3)];
        a.cash = cfg.init_cash;
        a.shares = cfg.init_shares;
        a.wealth = a.cash + a.shares * world.market.index();
    }
    return world;
}

ExecutionReport step(World& world, std::span<Rng> agent_rngs, SimulationOutput* out) {
    const std::size_t n = world.agents.size();
    std::vector<Action> prev(n);
    for (std::size_t i = 0; i < n; ++i) prev[i] = world.agents[i].state;

    std::vector<Action> actions = decide_all(
        world.net, world.profiles, prev, world.market.history,
        world.market.t() + 1, static_cast<std::size_t>(world.cfg.warmup),
        world.cfg.decision(), case_table(world.cfg.case_id), agent_rngs,
        out ? &out->unmatched_patterns : nullptr);

    ExecutionReport report = execute(world.agents, actions, world.market.index());
    long long net = report.executed_buys - report.executed_sells;
    world.market.history.push_back(
        update_index(world.market.index(), net, world.cfg.n_agents, world.cfg.index_k));

    double index = world.market.index();
    for (Agent& a : world.agents) a.wealth = a.cash + a.shares * index;
    return report;
}

SimulationOutput simulate(World world) {
    const SimulationConfig& cfg = world.cfg;
    const std::size_t n = world.agents.size();

    std::vector<Rng> agent_rngs;
    agent_rngs.reserve(n);
    for (std::size_t i = 0; i < n; ++i)
        agent_rngs.push_back(Rng::substream(cfg.seed, kAgentStreamBase + i));
    // market substream reserved for market-level stochastic extensions;
    // constructed so agent streams stay stable if it gains draws
    Rng market_rng = Rng::substream(cfg.seed, kMarketStream);
    (void)market_rng;

    SimulationOutput out;
    out.config = cfg;
    out.network_checksum = world.net.checksum();
    out.degrees = world.net.degrees;

    long long total_shares_prev = 0;
    for (const Agent& a : world.agents) total_shares_prev += a.shares;

    if (cfg.record_wealth_history) {
        out.wealth_history.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            out.wealth_history[i].push_back(world.agents[i].wealth);
    }
    if (cfg.record_returns)
        for (auto& v : out.returns_by_profile)
            v.reserve(static_cast<std::size_t>(cfg.steps) * n / kProfileCount + n);

    std::vector<double> wealth_prev(n);
    // steps == 0 is the degenerate "initial state only" run
    const int total_steps = cfg.steps == 0 ? 0 : cfg.warmup + cfg.steps;
    for (int t = 1; t <= total_steps; ++t) {
        for (std::size_t i = 0; i < n; ++i) wealth_prev[i] = world.agents[i].wealth;

        ExecutionReport report = step(world, agent_rngs, &out);
        out.totals.executed_buys += report.executed_buys;
        out.totals.executed_sells += report.executed_sells;
        out.totals.holds += report.holds;
        out.totals.forced_holds += report.forced_holds;

        // mechanical invariants, checked every step
        long long counted = report.executed_buys + report.executed_sells +
                            report.holds + report.forced_holds;
        if (counted != static_cast<long long>(n)) ++out.invariant_violations;
        if (world.market.index() <= 0.0) ++out.invariant_violations;
        long long total_shares = 0;
        double index = world.market.index();
        for (const Agent& a : world.agents) {
            total_shares += a.shares;
            if (a.cash < 0.0 || a.shares < 0) ++out.invariant_violations;
            if (std::abs(a.wealth - (a.cash + a.shares * index)) >
                1e-9 * std::max(1.0, std::abs(a.wealth)))
                ++out.invariant_violations;
        }
        if (total_shares - total_shares_prev !=
            report.executed_buys - report.executed_sells)
            ++out.invariant_violations;
        total_shares_prev = total_shares;

        if (cfg.record_returns && t > cfg.warmup) {
            for (std::size_t i = 0; i < n; ++i) {
                if (wealth_prev[i] <= 0.0) continue;
                double r = (world.agents[i].wealth - wealth_prev[i]) / wealth_prev[i];
                out.returns_by_profile[static_cast<int>(world.profiles[i])].push_back(
                    static_cast<float>(r));
            }
        }
        if (cfg.record_wealth_history)
            for (std::size_t i = 0; i < n; ++i)
                out.wealth_history[i].push_back(world.agents[i].wealth);
    }

    out.index_series = std::move(world.market.history);
    out.agents = std::move(world.agents);
    return out;
}

SimulationOutput run(const SimulationConfig& cfg) {
    return simulate(prepare(cfg));
}

} // namespace marketsim
