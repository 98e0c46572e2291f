#ifndef MARKETSIM_SIGNAL_HPP
#define MARKETSIM_SIGNAL_HPP

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>

#include "marketsim/rng.hpp"

namespace marketsim {

enum class Action : int { Sell = -1, Hold = 0, Buy = +1 };

constexpr const char* to_string(Action a) {
    switch (a) {
        case Action::Buy: return "buy";
        case Action::Hold: return "hold";
        default: return "sell";
    }
}

// The three windowed index differences feeding the trend tables.
struct MomentumTriple {
    double m1 = 0.0;   // I(t-1) - I(t-2)
    double m5 = 0.0;   // I(t-2) - I(t-6)
    double m10 = 0.0;  // I(t-6) - I(t-11)
};

// Trend-table row labels, in table order.
enum class TrendLabel : int {
    A, B, C, D, E, F, G, H, I, J, K, L, M, N, O, P, Q, R
};
constexpr int kTrendRowCount = 18;

char trend_label_char(TrendLabel label);
TrendLabel trend_label_from_char(char c);

struct TrendRow {
    TrendLabel label;
    // predicates (m1>m5, m5>m10, m1>0, m5>0, m10>0), strict, equality false
    std::array<bool, 5> pattern;
    // false when the predicate pattern is not one of the 18 listed rows and
    // the classifier fell back to the no-trend row P
    bool matched = true;
};

struct ActionProbs {
    double buy = 0.0;
    double hold = 0.0;
    double sell = 0.0;
};

struct ProbabilityTable {
    int case_id = 0;
    std::array<ActionProbs, kTrendRowCount> rows;

    const ActionProbs& row(TrendLabel label) const {
        return rows[static_cast<int>(label)];
    }
};

// series[i] is the index at time i; requires t >= 11 so that all of
// I(t-1) .. I(t-11) exist.
MomentumTriple compute_momentum(std::span<const double> series, std::size_t t);

// Total: every triple maps to a row; the 14 patterns absent from the table
// fall back to row P with matched=false.
TrendRow classify_trend(const MomentumTriple& mom);

const ActionProbs& lookup_probs(const ProbabilityTable& table, TrendLabel label);

// Built-in tables reproducing the published cases. case_id in 1..4;
// Case-4 is Case-3 with buy/sell columns swapped.
const ProbabilityTable& case_table(int case_id);

ProbabilityTable derive_case4(const ProbabilityTable& case3);

// One uniform draw partitioned in (buy, hold, sell) order.
// Throws if the probabilities do not sum to 1 within 1e-9.
Action sample_decision(const ActionProbs& probs, Rng& rng);

// One row per line: "<label> <p_buy> <p_hold> <p_sell>". All 18 rows required.
ProbabilityTable load_probability_table(std::istream& in, int case_id);
ProbabilityTable load_probability_table(const std::string& path, int case_id);

} // namespace marketsim

#endif
