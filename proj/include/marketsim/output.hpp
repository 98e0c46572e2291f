#ifndef MARKETSIM_OUTPUT_HPP
#define MARKETSIM_OUTPUT_HPP

#include <string>
#include <vector>

#include "marketsim/analysis.hpp"
#include "marketsim/experiments.hpp"
#include "marketsim/market.hpp"

namespace marketsim {

// Numbers in all emitted files carry 6 significant digits.
std::string format_number(double v);

void write_index_csv(const SimulationOutput& out, const std::string& path);
void write_agents_csv(const SimulationOutput& out, const std::string& path);
void write_returns_csv(const SimulationOutput& out, const std::string& path);
void write_summary_json(const SimulationOutput& out, const std::string& path);
void write_analysis_json(const SimulationOutput& out, const std::string& path);
void write_sweep_csv(const std::vector<SweepPoint>& points, const std::string& path);
void write_hub_experiment_csv(const std::vector<HubPeripheryResult>& results,
                              const std::string& path);

// static charts
void write_line_svg(const std::vector<double>& series, const std::string& title,
                    const std::string& path);
void write_histogram_svg(const HistogramSummary& hist, const std::string& title,
                         const std::string& path);

// resolves the output directory: explicit flag wins, then the
// MARKETSIM_OUT environment variable, then "." ; creates it if missing
std::string resolve_output_dir(const std::string& flag_value);

} // namespace marketsim

#endif
