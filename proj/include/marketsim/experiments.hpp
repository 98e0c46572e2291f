#ifndef MARKETSIM_EXPERIMENTS_HPP
#define MARKETSIM_EXPERIMENTS_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "marketsim/analysis.hpp"
#include "marketsim/market.hpp"

namespace marketsim {

struct SweepPoint {
    std::uint64_t seed = 0;
    double p = 0.0;
    int case_id = 0;
    std::optional<Profile> hub_profile;
    std::uint64_t network_checksum = 0;
    std::map<Profile, ProfileStats> wealth;
    double hub_wealth = 0.0;
    double hurst = 0.0;
    bool failed = false;
    std::string error;
};

// One run per (seed, p, hub profile). All grid points of a seed share the
// identical network realization and profile assignment; only the hub's
// profile differs.
std::vector<SweepPoint> run_sweep(const SimulationConfig& base,
                                  std::span<const double> ps,
                                  std::span<const Profile> hub_profiles,
                                  std::span<const std::uint64_t> seeds,
                                  int threads = 0);

struct HubPeripheryResult {
    std::uint64_t seed = 0;
    std::map<Profile, ProfileStats> baseline;
    // mean absolute per-profile-mean wealth difference vs baseline
    double hub_distance = 0.0;
    double periphery_distance = 0.0;
};

// Per seed: baseline run, a run with the k least-connected agents' profiles
// rotated, and a run with the hub's profile rotated, all on identical
// network copies.
std::vector<HubPeripheryResult> run_hub_vs_periphery(const SimulationConfig& base,
                                                     int k,
                                                     std::span<const std::uint64_t> seeds,
                                                     int threads = 0);

Profile rotate_profile(Profile p);

// Runs several configs concurrently; results in input order.
std::vector<SimulationOutput> run_many(std::span<const SimulationConfig> configs,
                                       int threads = 0);

} // namespace marketsim

#endif
