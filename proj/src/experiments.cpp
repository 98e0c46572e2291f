#include "marketsim/experiments.hpp"

#include <atomic>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

namespace marketsim {

namespace {

// runs tasks[0..count) on a small worker pool
void parallel_for(std::size_t count, int threads, const std::function<void(std::size_t)>& task) {
    if (threads <= 0)
        threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    threads = static_cast<int>(std::min<std::size_t>(threads, count));
    if (threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) task(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int w = 0; w < threads; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1))
                task(i);
        });
    for (auto& th : pool) th.join();
}

void set_profile(World& world, int node, Profile profile) {
    world.profiles[static_cast<std::size_t>(node)] = profile;
    world.agents[static_cast<std::size_t>(node)].profile = profile;
}

} // namespace

Profile rotate_profile(Profile p) {
    switch (p) {
        case Profile::Imitator: return Profile::AntiImitator;
        case Profile::AntiImitator: return Profile::RandomTrader;
        default: return Profile::Imitator;
    }
}

std::vector<SimulationOutput> run_many(std::span<const SimulationConfig> configs, int threads) {
    std::vector<SimulationOutput> outputs(configs.size());
    parallel_for(configs.size(), threads,
                 [&](std::size_t i) { outputs[i] = run(configs[i]); });
    return outputs;
}

std::vector<SweepPoint> run_sweep(const SimulationConfig& base,
                                  std::span<const double> ps,
                                  std::span<const Profile> hub_profiles,
                                  std::span<const std::uint64_t> seeds,
                                  int threads) {
    base.validate();
    struct Task {
        std::uint64_t seed;
        double p;
        std::optional<Profile> hub_profile;
    };
    std::vector<Task> tasks;
    for (std::uint64_t seed : seeds)
        for (double p : ps) {
            if (hub_profiles.empty()) tasks.push_back({seed, p, std::nullopt});
            for (Profile hp : hub_profiles) tasks.push_back({seed, p, hp});
        }

    std::vector<SweepPoint> points(tasks.size());
    parallel_for(tasks.size(), threads, [&](std::size_t i) {
        const Task& task = tasks[i];
        SweepPoint& pt = points[i];
        pt.seed = task.seed;
        pt.p = task.p;
        pt.case_id = base.case_id;
        pt.hub_profile = task.hub_profile;
        try {
            SimulationConfig cfg = base;
            cfg.seed = task.seed;
            cfg.follow_probability = task.p;
            World world = prepare(cfg);
            int hub_id = hub(world.net);
            if (task.hub_profile) set_profile(world, hub_id, *task.hub_profile);
            world.cfg.follow_probability = task.p;
            SimulationOutput out = simulate(std::move(world));
            pt.network_checksum = out.network_checksum;
            pt.wealth = profile_wealth_stats(out.agents);
            pt.hub_wealth = out.agents[static_cast<std::size_t>(hub_id)].wealth;
            if (out.index_series.size() >= 256)
                pt.hurst = hurst_rs(out.index_series).h;
        } catch (const std::exception& e) {
            pt.failed = true;
            pt.error = e.what();
        }
    });
    return points;
}

std::vector<HubPeripheryResult> run_hub_vs_periphery(const SimulationConfig& base,
                                                     int k,
                                                     std::span<const std::uint64_t> seeds,
                                                     int threads) {
    base.validate();
    std::vector<HubPeripheryResult> results(seeds.size());
    parallel_for(seeds.size(), threads, [&](std::size_t si) {
        SimulationConfig cfg = base;
        cfg.seed = seeds[si];
        World world = prepare(cfg);
        const std::vector<int> periphery = least_connected(world.net, k);
        const int hub_id = hub(world.net);

        World periph_world = world;
        for (int node : periphery)
            set_profile(periph_world, node, rotate_profile(periph_world.profiles[node]));

        World hub_world = world;
        set_profile(hub_world, hub_id, rotate_profile(hub_world.profiles[hub_id]));

        auto baseline = profile_wealth_stats(simulate(std::move(world)).agents);
        auto periph = profile_wealth_stats(simulate(std::move(periph_world)).agents);
        auto hubbed = profile_wealth_stats(simulate(std::move(hub_world)).agents);

        auto distance = [&](const std::map<Profile, ProfileStats>& variant) {
            double sum = 0.0;
            int n = 0;
            for (const auto& [p, s] : baseline) {
                auto it = variant.find(p);
                if (it == variant.end()) continue;
                sum += std::abs(it->second.mean - s.mean);
                ++n;
            }
            return n > 0 ? sum / n : 0.0;
        };

        HubPeripheryResult& r = results[si];
        r.seed = seeds[si];
        r.baseline = baseline;
        r.periphery_distance = distance(periph);
        r.hub_distance = distance(hubbed);
    });
    return results;
}

} // namespace marketsim
