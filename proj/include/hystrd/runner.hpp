#pragma once

#include "hystrd/config.hpp"
#include "hystrd/coupled.hpp"
#include "hystrd/io.hpp"
#include "hystrd/mode.hpp"

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace hystrd {

PopulationModel population_model(const RunConfig& config);
PopulationRunSpec population_spec(const RunConfig& config);
ModeModel mode_model(const RunConfig& config);
ModeRunSpec mode_spec(const RunConfig& config);

struct RunSummary {
    std::string experiment;
    std::string config_hash;
    double wall_time_s = 0.0;
    std::string final_digest;
    std::optional<Classification> classification;
    std::vector<ConvergenceRow> norm_table;
    std::string curves_json;  ///< boundary curves of the play, echoed for plotting
};

struct RunResult {
    RunSummary summary;
    CsvTable timeseries;
    std::optional<CsvTable> snapshots;    ///< long form t,x,y
    std::optional<CsvTable> convergence;  ///< eps,dt,s_error_lq,u_error_sup_l2,projection_gap_sup
};

/// Runs the configured experiment. Throws DivergenceError / DegeneratePopulation on
/// numerical failure.
RunResult execute(const RunConfig& config);

std::string summary_json(const RunSummary& summary);

/// Writes timeseries.csv, summary.json and, when present, snapshots.csv and convergence.csv.
void write_outputs(const RunResult& result, const std::filesystem::path& dir);

/// Human-readable rendering of a summary.json document.
std::string report_text(const std::string& summary_json_text);

/// Mode-model records as CSV rows: t,Ty,R,reaction,dTy_dt,max_abs_y,I_index,mu_0..mu_K,a_0..a_K.
CsvTable mode_table(const std::vector<ModeRecord>& records);

} // namespace hystrd
