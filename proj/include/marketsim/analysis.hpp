#ifndef MARKETSIM_ANALYSIS_HPP
#define MARKETSIM_ANALYSIS_HPP

#include <map>
#include <span>
#include <vector>

#include "marketsim/market.hpp"

namespace marketsim {

struct HurstEstimate {
    double h = 0.0;
    double stderr_ = 0.0;
    int window_min = 0;
    int window_max = 0;
    // residual gain of a two-piece fit over the single slope, reported as a
    // diagnostic for series showing two scaling regimes
    double piecewise_residual_gain = 0.0;
};

// Rescaled-range estimate on log-returns of the series. Window ladder is
// powers of 2 from 16 to length/4; R/S averaged over disjoint windows;
// slope corrected with the Anis-Lloyd small-sample expectation.
// Requires series length >= 256.
HurstEstimate hurst_rs(std::span<const double> series);

struct ProfileStats {
    double mean = 0.0;
    double sd = 0.0;
    int count = 0;
};

// Final-wealth aggregates by profile; empty classes are simply absent.
std::map<Profile, ProfileStats> profile_wealth_stats(const std::vector<Agent>& agents);

struct HistogramSummary {
    std::vector<double> edges;  // counts.size() + 1
    std::vector<int> counts;
    double mean = 0.0;
    double sd = 0.0;
    double gaussian_r2 = 0.0;
    double fit_amplitude = 0.0;
    double fit_mean = 0.0;
    double fit_sd = 0.0;
};

// Fixed-width bins (Sturges rule), Gaussian fitted to bin counts by least
// squares over amplitude, mean, and width. Requires >= 100 samples.
HistogramSummary return_histogram(std::span<const float> returns);

// Difference between the 90th and 10th percentiles.
double interdecile_range(std::span<const float> values);

} // namespace marketsim

#endif
