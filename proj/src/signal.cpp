#include "marketsim/signal.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace marketsim {

char trend_label_char(TrendLabel label) {
    return static_cast<char>('A' + static_cast<int>(label));
}

TrendLabel trend_label_from_char(char c) {
    if (c < 'A' || c >= 'A' + kTrendRowCount)
        throw std::invalid_argument(std::string("unknown trend row label: ") + c);
    return static_cast<TrendLabel>(c - 'A');
}

MomentumTriple compute_momentum(std::span<const double> series, std::size_t t) {
    if (t < 11 || t > series.size())
        throw std::runtime_error("compute_momentum: history too short (need I(t-1)..I(t-11))");
    MomentumTriple mom;
    mom.m1 = series[t - 1] - series[t - 2];
    mom.m5 = series[t - 2] - series[t - 6];
    mom.m10 = series[t - 6] - series[t - 11];
    return mom;
}

namespace {

// row patterns as 5-bit codes, bit order (m1>m5, m5>m10, m1>0, m5>0, m10>0)
// from msb to lsb
constexpr int kPatternCode[kTrendRowCount] = {
    0b00111,  // A
    0b11111,  // B
    0b01111,  // C
    0b10111,  // D
    0b01110,  // E
    0b10101,  // F
    0b11110,  // G
    0b11000,  // H
    0b11100,  // I
    0b01010,  // J
    0b10100,  // K
    0b00001,  // L
    0b01011,  // M
    0b10000,  // N
    0b10001,  // O
    0b00000,  // P
    0b00011,  // Q
    0b01000,  // R
};

struct PatternIndex {
    std::array<int, 32> row_of;  // -1 for patterns not in the table
    PatternIndex() {
        row_of.fill(-1);
        for (int r = 0; r < kTrendRowCount; ++r) row_of[kPatternCode[r]] = r;
    }
};

const PatternIndex& pattern_index() {
    static const PatternIndex idx;
    return idx;
}

constexpr double kCase1[kTrendRowCount][3] = {
    {0.8, 0.1, 0.1},  // A
    {1.0, 0.0, 0.0},  // B
    {0.8, 0.1, 0.1},  // C
    {1.0, 0.0, 0.0},  // D
    {0.6, 0.2, 0.2},  // E
    {0.6, 0.2, 0.2},  // F
    {0.6, 0.2, 0.2},  // G
    {0.1, 0.1, 0.8},  // H
    {1.0, 0.0, 0.0},  // I
    {0.2, 0.2, 0.6},  // J
    {1.0, 0.0, 0.0},  // K
    {0.2, 0.2, 0.6},  // L
    {0.0, 0.0, 1.0},  // M
    {0.1, 0.1, 0.8},  // N
    {0.2, 0.2, 0.6},  // O
    {0.0, 0.0, 1.0},  // P
    {0.0, 0.0, 1.0},  // Q
    {0.0, 0.0, 1.0},  // R
};

constexpr double kCase3[kTrendRowCount][3] = {
    {0.6, 0.3, 0.1},  // A
    {0.7, 0.3, 0.0},  // B
    {0.6, 0.3, 0.1},  // C
    {0.7, 0.3, 0.0},  // D
    {0.4, 0.4, 0.2},  // E
    {0.4, 0.4, 0.2},  // F
    {0.4, 0.4, 0.2},  // G
    {0.1, 0.3, 0.6},  // H
    {0.7, 0.3, 0.0},  // I
    {0.2, 0.4, 0.4},  // J
    {0.7, 0.3, 0.0},  // K
    {0.2, 0.4, 0.4},  // L
    {0.0, 0.3, 0.7},  // M
    {0.1, 0.3, 0.6},  // N
    {0.2, 0.4, 0.4},  // O
    {0.0, 0.3, 0.7},  // P
    {0.0, 0.3, 0.7},  // Q
    {0.0, 0.3, 0.7},  // R
};

ProbabilityTable from_array(const double (&data)[kTrendRowCount][3], int case_id) {
    ProbabilityTable t;
    t.case_id = case_id;
    for (int r = 0; r < kTrendRowCount; ++r)
        t.rows[r] = {data[r][0], data[r][1], data[r][2]};
    return t;
}

ProbabilityTable swap_buy_sell(const ProbabilityTable& src, int case_id) {
    ProbabilityTable t;
    t.case_id = case_id;
    for (int r = 0; r < kTrendRowCount; ++r)
        t.rows[r] = {src.rows[r].sell, src.rows[r].hold, src.rows[r].buy};
    return t;
}

} // namespace

TrendRow classify_trend(const MomentumTriple& mom) {
    TrendRow row;
    row.pattern = {mom.m1 > mom.m5, mom.m5 > mom.m10,
                   mom.m1 > 0.0, mom.m5 > 0.0, mom.m10 > 0.0};
    int code = 0;
    for (bool b : row.pattern) code = (code << 1) | (b ? 1 : 0);
    int r = pattern_index().row_of[code];
    if (r < 0) {
        row.label = TrendLabel::P;
        row.matched = false;
    } else {
        row.label = static_cast<TrendLabel>(r);
        row.matched = true;
    }
    return row;
}

const ActionProbs& lookup_probs(const ProbabilityTable& table, TrendLabel label) {
    int idx = static_cast<int>(label);
    if (idx < 0 || idx >= kTrendRowCount)
        throw std::invalid_argument("lookup_probs: unknown row");
    return table.rows[idx];
}

ProbabilityTable derive_case4(const ProbabilityTable& case3) {
    if (case3.case_id != 3)
        throw std::invalid_argument("derive_case4: input must be the Case-3 table");
    return swap_buy_sell(case3, 4);
}

const ProbabilityTable& case_table(int case_id) {
    static const ProbabilityTable c1 = from_array(kCase1, 1);
    static const ProbabilityTable c2 = swap_buy_sell(c1, 2);
    static const ProbabilityTable c3 = from_array(kCase3, 3);
    static const ProbabilityTable c4 = derive_case4(c3);
    switch (case_id) {
        case 1: return c1;
        case 2: return c2;
        case 3: return c3;
        case 4: return c4;
    }
    throw std::invalid_argument("case_table: case_id must be in 1..4");
}

Action sample_decision(const ActionProbs& probs, Rng& rng) {
    double sum = probs.buy + probs.hold + probs.sell;
    if (std::abs(sum - 1.0) > 1e-9 || probs.buy < 0 || probs.hold < 0 || probs.sell < 0)
        throw std::invalid_argument("sample_decision: probabilities must be non-negative and sum to 1");
    double u = rng.uniform();
    if (u < probs.buy) return Action::Buy;
    if (u < probs.buy + probs.hold) return Action::Hold;
    return Action::Sell;
}

ProbabilityTable load_probability_table(std::istream& in, int case_id) {
    ProbabilityTable t;
    t.case_id = case_id;
    std::array<bool, kTrendRowCount> seen{};
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        std::string label;
        ActionProbs p;
        if (!(ss >> label >> p.buy >> p.hold >> p.sell) || label.size() != 1)
            throw std::runtime_error("load_probability_table: bad row: " + line);
        int idx = static_cast<int>(trend_label_from_char(label[0]));
        if (seen[idx])
            throw std::runtime_error("load_probability_table: duplicate row " + label);
        seen[idx] = true;
        t.rows[idx] = p;
    }
    for (int r = 0; r < kTrendRowCount; ++r)
        if (!seen[r])
            throw std::runtime_error(std::string("load_probability_table: missing row ") +
                                     trend_label_char(static_cast<TrendLabel>(r)));
    return t;
}

ProbabilityTable load_probability_table(const std::string& path, int case_id) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("load_probability_table: cannot open " + path);
    return load_probability_table(f, case_id);
}

} // namespace marketsim
