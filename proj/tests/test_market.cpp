#include <doctest.h>

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "marketsim/market.hpp"

using namespace marketsim;

namespace {

Agent make_agent(double cash, int shares) {
    Agent a;
    a.cash = cash;
    a.shares = shares;
    return a;
}

SimulationConfig small_config() {
    SimulationConfig cfg;
    cfg.n_agents = 150;
    cfg.ba_m = 3;
    cfg.steps = 400;
    cfg.warmup = 50;
    cfg.follow_probability = 0.7;
    cfg.seed = 5;
    return cfg;
}

} // namespace

TEST_CASE("execute applies budget and inventory constraints") {
    SUBCASE("buy without cash becomes a forced hold") {
        std::vector<Agent> agents{make_agent(50, 0)};
        std::vector<Action> actions{Action::Buy};
        ExecutionReport rep = execute(agents, actions, 100.0);
        CHECK(rep.forced_holds == 1);
        CHECK(agents[0].cash == 50);
        CHECK(agents[0].shares == 0);
        CHECK(agents[0].state == Action::Hold);
    }
    SUBCASE("sell without shares becomes a forced hold") {
        std::vector<Agent> agents{make_agent(1000, 0)};
        std::vector<Action> actions{Action::Sell};
        ExecutionReport rep = execute(agents, actions, 100.0);
        CHECK(rep.forced_holds == 1);
        CHECK(agents[0].shares == 0);
    }
    SUBCASE("successful trades move one share at the index price") {
        std::vector<Agent> agents{make_agent(10000, 100), make_agent(10000, 100)};
        std::vector<Action> actions{Action::Sell, Action::Buy};
        ExecutionReport rep = execute(agents, actions, 100.0);
        CHECK(rep.executed_sells == 1);
        CHECK(rep.executed_buys == 1);
        CHECK(agents[0].cash == 10100);
        CHECK(agents[0].shares == 99);
        CHECK(agents[1].cash == 9900);
        CHECK(agents[1].shares == 101);
    }
    SUBCASE("report counts partition the agents") {
        std::vector<Agent> agents{make_agent(10, 0), make_agent(500, 2), make_agent(0, 0)};
        std::vector<Action> actions{Action::Buy, Action::Sell, Action::Hold};
        ExecutionReport rep = execute(agents, actions, 100.0);
        CHECK(rep.executed_buys + rep.executed_sells + rep.holds + rep.forced_holds == 3);
    }
}

TEST_CASE("update_index") {
    CHECK(update_index(100.0, 0, 100, 0.1) == 100.0);
    CHECK(update_index(100.0, 100, 100, 0.1) == doctest::Approx(110.0));
    SUBCASE("sign follows the net balance") {
        for (long long net : {-40LL, -3LL, 5LL, 90LL}) {
            double next = update_index(100.0, net, 100, 0.2);
            CHECK(std::signbit(next - 100.0) == std::signbit(static_cast<double>(net)));
        }
    }
    SUBCASE("clamp keeps the index positive") {
        double idx = update_index(100.0, -1000, 100, 1.0);
        CHECK(idx == doctest::Approx(50.0));
        CHECK(update_index(idx, -1000, 100, 5.0) > 0.0);
    }
}

TEST_CASE("prepare assigns thirds and endowments") {
    SimulationConfig cfg = small_config();
    World world = prepare(cfg);
    REQUIRE(static_cast<int>(world.agents.size()) == cfg.n_agents);

    std::array<int, 3> counts{};
    for (const Agent& a : world.agents) ++counts[static_cast<int>(a.profile)];
    for (int c : counts) CHECK(c == 50);

    // remainder goes one to each of the first profiles
    cfg.n_agents = 151;
    World w2 = prepare(cfg);
    std::array<int, 3> c2{};
    for (const Agent& a : w2.agents) ++c2[static_cast<int>(a.profile)];
    CHECK(c2[0] + c2[1] + c2[2] == 151);
    for (int c : c2) {
        CHECK(c >= 50);
        CHECK(c <= 51);
    }

    for (const Agent& a : world.agents) {
        CHECK(a.cash == cfg.init_cash);
        CHECK(a.shares == cfg.init_shares);
        CHECK(a.wealth == doctest::Approx(20000.0));
    }
    CHECK(world.market.index() == 100.0);
}

TEST_CASE("prepare honors the hub profile override") {
    SimulationConfig cfg = small_config();
    cfg.hub_profile_override = Profile::AntiImitator;
    World world = prepare(cfg);
    CHECK(world.profiles[static_cast<std::size_t>(hub(world.net))] == Profile::AntiImitator);
}

TEST_CASE("simulate keeps the mechanical invariants") {
    SimulationConfig cfg = small_config();
    cfg.record_wealth_history = true;
    SimulationOutput out = run(cfg);
    CHECK(out.invariant_violations == 0);
    CHECK(static_cast<int>(out.index_series.size()) == cfg.warmup + cfg.steps + 1);
    CHECK(out.index_series.front() == 100.0);
    for (double v : out.index_series) CHECK(v > 0.0);
    for (const Agent& a : out.agents) {
        CHECK(a.cash >= 0.0);
        CHECK(a.shares >= 0);
        CHECK(a.wealth ==
              doctest::Approx(a.cash + a.shares * out.index_series.back()).epsilon(1e-12));
    }
}

TEST_CASE("k=0 freezes the index and all wealth") {
    SimulationConfig cfg = small_config();
    cfg.index_k = 0.0;
    SimulationOutput out = run(cfg);
    for (double v : out.index_series) CHECK(v == 100.0);
    // cash/shares trade at a constant price, so wealth never moves
    for (const Agent& a : out.agents) CHECK(a.wealth == doctest::Approx(20000.0));
}

TEST_CASE("steps=0 returns only the initial state") {
    SimulationConfig cfg = small_config();
    cfg.steps = 0;
    SimulationOutput out = run(cfg);
    CHECK(out.index_series.size() == 1);
    CHECK(out.totals.executed_buys == 0);
    for (const Agent& a : out.agents) CHECK(a.wealth == doctest::Approx(20000.0));
}

TEST_CASE("same seed reproduces the run bit for bit") {
    SimulationConfig cfg = small_config();
    cfg.record_returns = true;
    SimulationOutput a = run(cfg);
    SimulationOutput b = run(cfg);
    CHECK(a.index_series == b.index_series);
    CHECK(a.network_checksum == b.network_checksum);
    for (int p = 0; p < kProfileCount; ++p)
        CHECK(a.returns_by_profile[p] == b.returns_by_profile[p]);
}

TEST_CASE("returns are recorded post warm-up only") {
    SimulationConfig cfg = small_config();
    cfg.record_returns = true;
    SimulationOutput out = run(cfg);
    std::size_t total = 0;
    for (const auto& v : out.returns_by_profile) total += v.size();
    CHECK(total == static_cast<std::size_t>(cfg.steps) * cfg.n_agents);
}

TEST_CASE("invalid config reports the offending keys") {
    SimulationConfig cfg;
    cfg.n_agents = 5;
    cfg.ba_m = 8;
    cfg.follow_probability = 1.5;
    try {
        cfg.validate();
        FAIL("expected validation error");
    } catch (const std::invalid_argument& e) {
        std::string msg = e.what();
        CHECK(msg.find("n_agents") != std::string::npos);
        CHECK(msg.find("follow_probability") != std::string::npos);
    }
}
