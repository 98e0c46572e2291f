// Full-scale acceptance suite: one PASS/FAIL line per criterion, exit code =
// number of failures. Runs the default configuration (3969 agents, m=8,
// k=0.1, 10000 post-warm-up steps) over 10 seeds per scenario; under ten
// minutes on an unloaded core. Progress goes to stderr, the verdict table to stdout.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <map>
#include <string>
#include <vector>

#include "marketsim/analysis.hpp"
#include "marketsim/experiments.hpp"
#include "marketsim/market.hpp"
#include "marketsim/network.hpp"
#include "marketsim/rng.hpp"
#include "marketsim/signal.hpp"

using namespace marketsim;

namespace {

constexpr int kSeeds = 10;
constexpr int kI = static_cast<int>(Profile::Imitator);
constexpr int kA = static_cast<int>(Profile::AntiImitator);
constexpr int kR = static_cast<int>(Profile::RandomTrader);

std::string fmt(const char* f, ...) {
    char buf[512];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

struct Verdict {
    bool pass = false;
    std::string detail;
};
std::array<Verdict, 12> verdicts;  // 1-based

void progress(const std::string& msg) {
    std::fprintf(stderr, "[acceptance] %s\n", msg.c_str());
    std::fflush(stderr);
}

SimulationConfig scenario(int case_id, double p, std::uint64_t seed,
                          Algorithm alg = Algorithm::Compare,
                          bool returns = false) {
    SimulationConfig cfg;
    cfg.case_id = case_id;
    cfg.follow_probability = p;
    cfg.seed = seed;
    cfg.algorithm = alg;
    cfg.record_returns = returns;
    return cfg;
}

// fixed-bin quantile accumulator for pooled interdecile ranges
struct QuantileAcc {
    static constexpr int kBins = 1 << 20;
    static constexpr double kLo = -0.6, kHi = 0.6;
    std::vector<std::int64_t> counts = std::vector<std::int64_t>(kBins, 0);
    std::int64_t total = 0;

    void add(std::span<const float> xs) {
        for (float x : xs) {
            int b = static_cast<int>((x - kLo) / (kHi - kLo) * kBins);
            ++counts[std::clamp(b, 0, kBins - 1)];
        }
        total += static_cast<std::int64_t>(xs.size());
    }
    double quantile(double q) const {
        std::int64_t target = static_cast<std::int64_t>(q * total), cum = 0;
        for (int b = 0; b < kBins; ++b) {
            cum += counts[b];
            if (cum >= target)
                return kLo + (b + 0.5) * (kHi - kLo) / kBins;
        }
        return kHi;
    }
    double interdecile() const { return quantile(0.9) - quantile(0.1); }
};

struct ReturnStats {
    double mean = 0.0, sd = 0.0;
    std::size_t n = 0;
};

ReturnStats return_stats(std::span<const float> xs) {
    ReturnStats s;
    s.n = xs.size();
    if (s.n == 0) return s;
    double sum = 0.0;
    for (float x : xs) sum += x;
    s.mean = sum / s.n;
    double ss = 0.0;
    for (float x : xs) ss += (x - s.mean) * (x - s.mean);
    s.sd = s.n > 1 ? std::sqrt(ss / (s.n - 1)) : 0.0;
    return s;
}

struct RunSummary {
    std::array<double, 3> wealth_mean{};
    std::array<ReturnStats, 3> ret;
    double hurst = 0.0;
    long long violations = 0;
};

// per-step cross-sectional returns all share the same index move, so the
// step count is the effective sample size for the symmetry bound
bool random_symmetric(const ReturnStats& s, int steps) {
    return std::abs(s.mean) < 2.0 * s.sd / std::sqrt(static_cast<double>(steps));
}

// ---- criterion 1: probability-table fidelity against a frozen copy --------

// reference table: 18 rows x (buy, hold, sell) for Cases 1 and 3
constexpr double kFrozenCase1[18][3] = {
    {0.8, 0.1, 0.1}, {1.0, 0.0, 0.0}, {0.8, 0.1, 0.1}, {1.0, 0.0, 0.0},
    {0.6, 0.2, 0.2}, {0.6, 0.2, 0.2}, {0.6, 0.2, 0.2}, {0.1, 0.1, 0.8},
    {1.0, 0.0, 0.0}, {0.2, 0.2, 0.6}, {1.0, 0.0, 0.0}, {0.2, 0.2, 0.6},
    {0.0, 0.0, 1.0}, {0.1, 0.1, 0.8}, {0.2, 0.2, 0.6}, {0.0, 0.0, 1.0},
    {0.0, 0.0, 1.0}, {0.0, 0.0, 1.0}};
constexpr double kFrozenCase3[18][3] = {
    {0.6, 0.3, 0.1}, {0.7, 0.3, 0.0}, {0.6, 0.3, 0.1}, {0.7, 0.3, 0.0},
    {0.4, 0.4, 0.2}, {0.4, 0.4, 0.2}, {0.4, 0.4, 0.2}, {0.1, 0.3, 0.6},
    {0.7, 0.3, 0.0}, {0.2, 0.4, 0.4}, {0.7, 0.3, 0.0}, {0.2, 0.4, 0.4},
    {0.0, 0.3, 0.7}, {0.1, 0.3, 0.6}, {0.2, 0.4, 0.4}, {0.0, 0.3, 0.7},
    {0.0, 0.3, 0.7}, {0.0, 0.3, 0.7}};

void check_tables() {
    const ProbabilityTable& c1 = case_table(1);
    const ProbabilityTable& c2 = case_table(2);
    const ProbabilityTable& c3 = case_table(3);
    bool ok = true;
    std::array<double, 3> s1{}, s3{};
    for (int r = 0; r < kTrendRowCount; ++r) {
        ok &= c1.rows[r].buy == kFrozenCase1[r][0] &&
              c1.rows[r].hold == kFrozenCase1[r][1] &&
              c1.rows[r].sell == kFrozenCase1[r][2];
        ok &= c3.rows[r].buy == kFrozenCase3[r][0] &&
              c3.rows[r].hold == kFrozenCase3[r][1] &&
              c3.rows[r].sell == kFrozenCase3[r][2];
        ok &= c2.rows[r].buy == c1.rows[r].sell &&
              c2.rows[r].hold == c1.rows[r].hold &&
              c2.rows[r].sell == c1.rows[r].buy;
        ok &= std::abs(c1.rows[r].buy + c1.rows[r].hold + c1.rows[r].sell - 1.0) <= 1e-9;
        ok &= std::abs(c2.rows[r].buy + c2.rows[r].hold + c2.rows[r].sell - 1.0) <= 1e-9;
        ok &= std::abs(c3.rows[r].buy + c3.rows[r].hold + c3.rows[r].sell - 1.0) <= 1e-9;
        s1[0] += c1.rows[r].buy;
        s1[1] += c1.rows[r].hold;
        s1[2] += c1.rows[r].sell;
        s3[0] += c3.rows[r].buy;
        s3[1] += c3.rows[r].hold;
        s3[2] += c3.rows[r].sell;
    }
    ok &= std::abs(s1[0] - 8.2) < 1e-9 && std::abs(s1[1] - 1.6) < 1e-9 &&
          std::abs(s1[2] - 8.2) < 1e-9;
    ok &= std::abs(s3[0] - 6.0) < 1e-9 && std::abs(s3[1] - 6.0) < 1e-9 &&
          std::abs(s3[2] - 6.0) < 1e-9;
    verdicts[1] = {ok, fmt("column sums case-1 (%.1f %.1f %.1f), case-3 (%.1f %.1f %.1f)",
                           s1[0], s1[1], s1[2], s3[0], s3[1], s3[2])};
}

// ---- criterion 8: network law ---------------------------------------------

void check_network() {
    int gamma_ok = 0, edges_ok = 0, hub_ok = 0;
    double gamma_lo = 0.0, gamma_hi = -10.0;
    for (std::uint64_t seed = 0; seed < kSeeds; ++seed) {
        Rng rng = Rng::substream(seed, 0);
        TrustNetwork net = generate_ba(3969, 8, rng);
        DegreeDistribution dd = degree_distribution(net);
        gamma_lo = std::min(gamma_lo, dd.fitted_exponent);
        gamma_hi = std::max(gamma_hi, dd.fitted_exponent);
        if (dd.fitted_exponent >= -3.5 && dd.fitted_exponent <= -2.0) ++gamma_ok;
        // m(n-m) plus at most the seed-clique surplus of m(m+1)/2 edges
        long long expect = 8LL * (3969 - 8);
        if (std::llabs(static_cast<long long>(net.edge_count()) - expect) <= 36)
            ++edges_ok;
        std::vector<int> deg = net.degrees;
        std::nth_element(deg.begin(), deg.begin() + deg.size() / 2, deg.end());
        int median = deg[deg.size() / 2];
        int maxdeg = *std::max_element(net.degrees.begin(), net.degrees.end());
        if (maxdeg >= 10 * median) ++hub_ok;
    }
    bool ok = gamma_ok == kSeeds && edges_ok == kSeeds && hub_ok == kSeeds;
    verdicts[8] = {ok, fmt("gamma in [%.2f, %.2f] (%d/10 in window), edges %d/10, hub/median %d/10",
                           gamma_lo, gamma_hi, gamma_ok, edges_ok, hub_ok)};
}

// ---- criterion 11: unit oracles -------------------------------------------

bool oracle_momentum() {
    std::vector<double> lin;
    for (int i = 0; i < 30; ++i) lin.push_back(7.0 + 2.5 * i);
    MomentumTriple m = compute_momentum(lin, 25);
    if (std::abs(m.m1 - 2.5) > 1e-12 || std::abs(m.m5 - 10.0) > 1e-12 ||
        std::abs(m.m10 - 12.5) > 1e-12)
        return false;
    std::vector<double> flat(20, 42.0);
    m = compute_momentum(flat, 15);
    return m.m1 == 0.0 && m.m5 == 0.0 && m.m10 == 0.0;
}

bool oracle_trend() {
    const double grid[] = {-2.0, -1.0, -0.5, 0.0, 0.5, 1.0, 2.0};
    for (double m1 : grid)
        for (double m5 : grid)
            for (double m10 : grid) {
                TrendRow row = classify_trend({m1, m5, m10});
                if (!row.matched) return false;  // every real triple has a row
                std::array<bool, 5> expect{m1 > m5, m5 > m10, m1 > 0, m5 > 0,
                                           m10 > 0};
                if (row.pattern != expect) return false;
            }
    return true;
}

bool oracle_anti_mapping() {
    Rng rng(424242);
    const Action acts[] = {Action::Buy, Action::Hold, Action::Sell};
    for (Action d1 : acts)
        for (Action d2 : acts) {
            std::map<Action, int> counts;
            const int n = 30000;
            for (int i = 0; i < n; ++i)
                ++counts[combine_compare(Profile::AntiImitator, d1, d2, 1.0, rng)];
            auto is = [&](Action a, double f) {
                // binomial 3-sigma band
                double sd = std::sqrt(f * (1 - f) * n);
                return std::abs(counts[a] - f * n) <= 3.0 * std::max(sd, 1.0);
            };
            bool ok;
            if (d1 == d2 && d1 == Action::Buy) ok = is(Action::Sell, 1.0);
            else if (d1 == d2 && d1 == Action::Sell) ok = is(Action::Buy, 1.0);
            else if (d1 == d2) ok = is(Action::Buy, 0.5) && is(Action::Sell, 0.5);
            else if (d1 == Action::Buy && d2 == Action::Sell) ok = is(Action::Buy, 1.0);
            else if (d1 == Action::Sell && d2 == Action::Buy) ok = is(Action::Sell, 1.0);
            else if (d2 == Action::Hold)
                ok = is(Action::Buy, 0.5) && is(Action::Sell, 0.5);
            else if (d1 == Action::Hold && d2 == Action::Buy)
                ok = is(Action::Hold, 0.5) && is(Action::Sell, 0.5);
            else  // (Hold, Sell)
                ok = is(Action::Hold, 0.5) && is(Action::Buy, 0.5);
            if (!ok) return false;
        }
    return true;
}

bool oracle_combined_index() {
    Rng rng(99);
    // |s| >= 1 acts deterministically
    NeighborhoodTally all_buy{8, 0, 0};
    ActionProbs up{0.8, 0.1, 0.1};
    for (int i = 0; i < 100; ++i) {
        if (combine_index(Profile::Imitator, all_buy, up, rng) != Action::Buy)
            return false;
        if (combine_index(Profile::AntiImitator, all_buy, up, rng) != Action::Sell)
            return false;
    }
    // sub-threshold acts with probability |s|
    NeighborhoodTally mixed{5, 1, 2};  // w1 = 3/8
    ActionProbs mild{0.4, 0.4, 0.2};   // w2 = 0.2, s = 0.575
    const int n = 100000;
    int buys = 0;
    for (int i = 0; i < n; ++i) {
        Action a = combine_index(Profile::Imitator, mixed, mild, rng);
        if (a == Action::Sell) return false;
        buys += a == Action::Buy;
    }
    double s = 3.0 / 8.0 + 0.2;
    return std::abs(buys - s * n) <= 3.0 * std::sqrt(s * (1 - s) * n);
}

void check_unit_oracles() {
    bool mom = oracle_momentum(), trend = oracle_trend(),
         anti = oracle_anti_mapping(), ci = oracle_combined_index();
    verdicts[11] = {mom && trend && anti && ci,
                    fmt("momentum %s, trend rows %s, anti mapping %s, combined index %s",
                        mom ? "ok" : "BAD", trend ? "ok" : "BAD",
                        anti ? "ok" : "BAD", ci ? "ok" : "BAD")};
}

// ---- criterion 7 calibration ----------------------------------------------

bool hurst_calibration() {
    for (std::uint64_t seed = 100; seed < 105; ++seed) {
        Rng rng(seed);
        std::vector<double> series{100.0};
        for (int i = 0; i < (1 << 14); ++i)
            series.push_back(series.back() * std::exp(0.01 * rng.normal()));
        double h = hurst_rs(series).h;
        if (h < 0.45 || h > 0.55) return false;
    }
    return true;
}

} // namespace

int main() {
    std::vector<std::uint64_t> seeds;
    for (std::uint64_t s = 0; s < kSeeds; ++s) seeds.push_back(s);

    check_tables();
    check_network();
    check_unit_oracles();

    long long total_violations = 0;

    // --- scenario A: case-1, p=0.99, compare (criteria 2, 5, 10) ---
    std::array<RunSummary, kSeeds> a_runs;
    std::vector<float> pooled_random;
    QuantileAcc idr_compare;
    std::vector<double> a0_index;
    std::vector<Agent> a0_agents;
    for (int s = 0; s < kSeeds; ++s) {
        progress(fmt("case-1 p=0.99 seed %d", s));
        SimulationOutput out = run(scenario(1, 0.99, s, Algorithm::Compare, true));
        RunSummary& r = a_runs[s];
        for (int p = 0; p < 3; ++p) r.ret[p] = return_stats(out.returns_by_profile[p]);
        auto ws = profile_wealth_stats(out.agents);
        for (auto& [p, st] : ws) r.wealth_mean[static_cast<int>(p)] = st.mean;
        r.violations = out.invariant_violations;
        total_violations += out.invariant_violations;
        for (const auto& v : out.returns_by_profile) idr_compare.add(v);
        pooled_random.insert(pooled_random.end(), out.returns_by_profile[kR].begin(),
                             out.returns_by_profile[kR].end());
        if (s == 0) {
            a0_index = out.index_series;
            a0_agents = out.agents;
        }
    }

    int order_ok = 0, ratio_ok = 0, sign_ok = 0;
    for (const RunSummary& r : a_runs) {
        if (r.wealth_mean[kA] > r.wealth_mean[kR] &&
            r.wealth_mean[kR] > r.wealth_mean[kI])
            ++order_ok;
        if (r.wealth_mean[kA] >= 1.2 * r.wealth_mean[kR] &&
            r.wealth_mean[kI] <= 0.8 * r.wealth_mean[kR])
            ++ratio_ok;
        if (r.ret[kA].mean > 0.0 && r.ret[kI].mean < 0.0 &&
            random_symmetric(r.ret[kR], 10000))
            ++sign_ok;
    }
    verdicts[2] = {order_ok >= 9 && ratio_ok >= 8,
                   fmt("ordering %d/10 (need 9), ratios %d/10 (need 8); "
                       "means anti=%.0f random=%.0f imitator=%.0f (seed 0)",
                       order_ok, ratio_ok, a_runs[0].wealth_mean[kA],
                       a_runs[0].wealth_mean[kR], a_runs[0].wealth_mean[kI])};

    progress("pooled random-trader histogram");
    HistogramSummary rh = return_histogram(pooled_random);
    pooled_random.clear();
    pooled_random.shrink_to_fit();
    verdicts[5] = {sign_ok >= 8 && rh.gaussian_r2 >= 0.9,
                   fmt("sign pattern %d/10 (need 8), pooled random gaussian R2=%.3f (need 0.9)",
                       sign_ok, rh.gaussian_r2)};

    // --- scenario B: case-1, p=0.01 (criterion 3) ---
    int weak_ok = 0;
    double worst_spread = 0.0, worst_dev = 0.0;
    for (int s = 0; s < kSeeds; ++s) {
        progress(fmt("case-1 p=0.01 seed %d", s));
        SimulationOutput out = run(scenario(1, 0.01, s));
        total_violations += out.invariant_violations;
        auto ws = profile_wealth_stats(out.agents);
        std::array<double, 3> m{};
        for (auto& [p, st] : ws) m[static_cast<int>(p)] = st.mean;
        double lo = *std::min_element(m.begin(), m.end());
        double hi = *std::max_element(m.begin(), m.end());
        double spread = (hi - lo) / lo;
        double dev = std::max(std::abs(hi - 20000.0), std::abs(lo - 20000.0)) / 20000.0;
        worst_spread = std::max(worst_spread, spread);
        worst_dev = std::max(worst_dev, dev);
        if (spread <= 0.05 && dev <= 0.10) ++weak_ok;
    }
    verdicts[3] = {weak_ok == kSeeds,
                   fmt("%d/10 seeds; worst spread %.1f%% (cap 5%%), worst deviation %.1f%% (cap 10%%)",
                       weak_ok, 100 * worst_spread, 100 * worst_dev)};

    // --- scenario C: case-2, p=0.99 (criteria 4, 7) ---
    int invert_ok = 0, hurst_ok = 0;
    double h_lo = 1.0, h_hi = 0.0;
    for (int s = 0; s < kSeeds; ++s) {
        progress(fmt("case-2 p=0.99 seed %d", s));
        SimulationOutput out = run(scenario(2, 0.99, s));
        total_violations += out.invariant_violations;
        auto ws = profile_wealth_stats(out.agents);
        std::array<double, 3> m{};
        for (auto& [p, st] : ws) m[static_cast<int>(p)] = st.mean;
        double gap1 = a_runs[s].wealth_mean[kI] - a_runs[s].wealth_mean[kA];
        double gap2 = m[kI] - m[kA];
        if (gap1 * gap2 < 0.0) ++invert_ok;
        double h = hurst_rs(out.index_series).h;
        h_lo = std::min(h_lo, h);
        h_hi = std::max(h_hi, h);
        if (h >= 0.35 && h <= 0.52) ++hurst_ok;
    }
    verdicts[4] = {invert_ok >= 8, fmt("wealth gap reversed in %d/10 seeds (need 8)", invert_ok)};
    bool calib = hurst_calibration();
    verdicts[7] = {hurst_ok == kSeeds && calib,
                   fmt("H in [%.3f, %.3f], %d/10 inside [0.35, 0.52]; white-noise calibration %s",
                       h_lo, h_hi, hurst_ok, calib ? "ok" : "BAD")};

    // --- scenario D: case-1, p=0.99, combined-index (criterion 6) ---
    int ci_sign_ok = 0;
    QuantileAcc idr_combined;
    for (int s = 0; s < kSeeds; ++s) {
        progress(fmt("combined-index seed %d", s));
        SimulationOutput out = run(scenario(1, 0.99, s, Algorithm::CombinedIndex, true));
        total_violations += out.invariant_violations;
        std::array<ReturnStats, 3> ret;
        for (int p = 0; p < 3; ++p) ret[p] = return_stats(out.returns_by_profile[p]);
        for (const auto& v : out.returns_by_profile) idr_combined.add(v);
        if (ret[kA].mean > 0.0 && ret[kI].mean < 0.0 &&
            random_symmetric(ret[kR], 10000))
            ++ci_sign_ok;
    }
    double idr_c = idr_compare.interdecile(), idr_x = idr_combined.interdecile();
    verdicts[6] = {ci_sign_ok >= 8 && idr_x > idr_c,
                   fmt("sign pattern %d/10 (need 8); interdecile %.2e vs %.2e under compare",
                       ci_sign_ok, idr_x, idr_c)};

    // --- scenario E: hub vs periphery (criterion 9) ---
    progress("hub vs periphery (30 runs)");
    auto hub_res = run_hub_vs_periphery(scenario(1, 0.99, 0), 300, seeds, 1);
    int hub_ok = 0;
    double mean_hub = 0.0, mean_periph = 0.0;
    for (const auto& r : hub_res) {
        if (r.hub_distance > r.periphery_distance) ++hub_ok;
        mean_hub += r.hub_distance / kSeeds;
        mean_periph += r.periphery_distance / kSeeds;
    }
    verdicts[9] = {hub_ok >= 8,
                   fmt("hub > periphery in %d/10 seeds (need 8); mean distances %.0f vs %.0f",
                       hub_ok, mean_hub, mean_periph)};

    // --- criterion 10: invariants and bit-exact reproducibility ---
    progress("reproducibility re-run");
    SimulationOutput rep = run(scenario(1, 0.99, 0, Algorithm::Compare, true));
    total_violations += rep.invariant_violations;
    bool identical = rep.index_series == a0_index && rep.agents.size() == a0_agents.size();
    if (identical)
        for (std::size_t i = 0; i < rep.agents.size(); ++i)
            identical &= rep.agents[i].cash == a0_agents[i].cash &&
                         rep.agents[i].shares == a0_agents[i].shares &&
                         rep.agents[i].state == a0_agents[i].state;
    verdicts[10] = {total_violations == 0 && identical,
                    fmt("%lld invariant violations across all runs; re-run %s",
                        total_violations, identical ? "bit-identical" : "DIVERGED")};

    static const char* names[12] = {
        "", "table fidelity", "strong-coupling wealth asymmetry",
        "weak-coupling symmetry", "case-2 inversion", "return asymmetry",
        "alternative-algorithm robustness", "anti-persistence", "network law",
        "hub dominance", "mechanical invariants", "unit oracles"};
    int failures = 0;
    for (int c = 1; c <= 11; ++c) {
        std::printf("criterion %2d (%s): %s — %s\n", c, names[c],
                    verdicts[c].pass ? "PASS" : "FAIL", verdicts[c].detail.c_str());
        failures += !verdicts[c].pass;
    }
    std::printf("%d/11 criteria passed\n", 11 - failures);
    return failures;
}
