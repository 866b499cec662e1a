#include "hystrd/runner.hpp"

#include "hystrd/errors.hpp"
#include "json_codec.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace hystrd {

using detail::json;

PopulationModel population_model(const RunConfig& config) {
    PopulationModel model;
    model.grid = build_grid(config.n_cells);
    model.D = resolved_diffusion(config);
    model.consume = config.consume;
    model.supply = config.supply;
    return model;
}

PopulationRunSpec population_spec(const RunConfig& config) {
    PopulationRunSpec spec;
    spec.u_in = initial_field(config);
    spec.S_in = config.initial.S_in;
    spec.eps = config.eps;
    spec.dt = config.dt;
    spec.horizon = config.horizon;
    spec.stride = config.stride;
    return spec;
}

ModeModel mode_model(const RunConfig& config) {
    ModeModel model;
    model.D = resolved_diffusion(config);
    model.m = config.mode.m;
    model.weights = config.mode.weights;
    model.bounds = PlayBounds{config.mode.upper, config.mode.lower};
    model.R0 = config.initial.R0;
    model.y0 = initial_field(config);
    model.mirrored = config.mode.mirrored;
    model.stepper = config.mode.stepper;
    model.eps_reg = config.mode.eps_reg;
    return model;
}

ModeRunSpec mode_spec(const RunConfig& config) {
    ModeRunSpec spec;
    spec.dt = config.dt;
    spec.horizon = config.horizon;
    spec.stride = config.stride;
    spec.tracked_modes = config.mode.tracked_modes;
    spec.snapshot_times = config.mode.snapshot_times;
    return spec;
}

CsvTable mode_table(const std::vector<ModeRecord>& records) {
    CsvTable table;
    table.columns = {"t", "Ty", "R", "reaction", "dTy_dt", "max_abs_y", "I_index"};
    const std::size_t K1 = records.empty() ? 0 : records.front().mu.size();
    for (std::size_t k = 0; k < K1; ++k) {
        table.columns.push_back("mu_" + std::to_string(k));
    }
    for (std::size_t k = 0; k < K1; ++k) {
        table.columns.push_back("a_" + std::to_string(k));
    }
    for (const auto& r : records) {
        std::vector<double> row{r.t, r.Ty, r.R, r.reaction, r.dTy_dt, r.max_abs_y,
                                r.index == kIndexMinusInfinity ? -INFINITY : static_cast<double>(r.index)};
        row.insert(row.end(), r.mu.begin(), r.mu.end());
        row.insert(row.end(), r.coeffs.begin(), r.coeffs.end());
        table.rows.push_back(std::move(row));
    }
    return table;
}

namespace {

CsvTable as_table(TimeSeries ts) { return CsvTable{std::move(ts.columns), std::move(ts.rows)}; }

json bounds_json(const PlayBounds& b) {
    return {{"upper", detail::curve_to_json(b.upper)}, {"lower", detail::curve_to_json(b.lower)}};
}

json opt(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

} // namespace

RunResult execute(const RunConfig& config) {
    validate(config);
    const auto start = std::chrono::steady_clock::now();
    RunResult result;
    RunSummary& s = result.summary;
    s.experiment = to_string(config.kind);
    s.config_hash = hex64(fnv1a64(serialise(config)));

    switch (config.kind) {
    case ExperimentKind::EpsSystem:
    case ExperimentKind::LimitSystem:
    case ExperimentKind::Convergence: {
        const PopulationModel model = population_model(config);
        const PopulationRunSpec spec = population_spec(config);
        TimeSeries ts = config.kind == ExperimentKind::EpsSystem ? run_eps_system(model, spec)
                                                                  : run_limit_system(model, spec);
        s.curves_json = bounds_json(limit_bounds(config.consume)).dump();
        std::uint64_t digest = fnv1a64(std::span<const double>(ts.rows.back()));
        if (config.kind == ExperimentKind::Convergence) {
            s.norm_table = convergence_study(model, spec, config.convergence.eps_list, config.convergence.q,
                                             config.convergence.dt_factor);
            CsvTable norms;
            norms.columns = {"eps", "dt", "s_error_lq", "u_error_sup_l2", "projection_gap_sup"};
            for (const auto& r : s.norm_table) {
                norms.rows.push_back({r.eps, r.dt, r.s_error_lq, r.u_error_sup_l2, r.projection_gap_sup});
                digest = fnv1a64(std::span<const double>(norms.rows.back()), digest);
            }
            result.convergence = std::move(norms);
        }
        s.final_digest = hex64(digest);
        result.timeseries = as_table(std::move(ts));
        break;
    }
    case ExperimentKind::ModeDichotomy: {
        const ModeModel model = mode_model(config);
        const Grid1D grid = build_grid(config.n_cells);
        const ModeRun run = run_mode(model, grid, mode_spec(config));
        s.classification = classify_run(run.records, model, config.mode.tol_contact);
        s.curves_json = bounds_json(model.bounds).dump();
        s.final_digest = hex64(fnv1a64(std::span<const double>(run.final_y)));
        result.timeseries = mode_table(run.records);
        CsvTable snaps;
        snaps.columns = {"t", "x", "y"};
        for (const auto& snap : run.snapshots) {
            for (std::size_t j = 0; j < snap.y.size(); ++j) {
                snaps.rows.push_back({snap.t, grid.cell_centers[j], snap.y[j]});
            }
        }
        result.snapshots = std::move(snaps);
        break;
    }
    }
    s.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    return result;
}

std::string summary_json(const RunSummary& s) {
    json j;
    j["experiment"] = s.experiment;
    j["config_hash"] = s.config_hash;
    j["wall_time_s"] = s.wall_time_s;
    j["final_digest"] = s.final_digest;
    j["curves"] = s.curves_json.empty() ? json(nullptr) : json::parse(s.curves_json);
    if (s.classification) {
        const Classification& c = *s.classification;
        j["classification"] = {{"verdict", to_string(c.verdict)}, {"t_plus", opt(c.t_plus)}, {"t_m", opt(c.t_m)},
                               {"t_0", opt(c.t_0)}, {"t_minus", opt(c.t_minus)}};
    } else {
        j["classification"] = nullptr;
    }
    if (!s.norm_table.empty()) {
        json rows = json::array();
        for (const auto& r : s.norm_table) {
            rows.push_back({{"eps", r.eps}, {"dt", r.dt}, {"s_error_lq", r.s_error_lq},
                            {"u_error_sup_l2", r.u_error_sup_l2}, {"projection_gap_sup", r.projection_gap_sup}});
        }
        j["norm_table"] = rows;
    } else {
        j["norm_table"] = nullptr;
    }
    return j.dump(2) + "\n";
}

namespace {

void write_table(const CsvTable& t, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw Error("cannot open " + path.string() + " for writing");
    }
    write_csv(out, t.columns, t.rows);
}

} // namespace

void write_outputs(const RunResult& result, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    write_table(result.timeseries, dir / "timeseries.csv");
    if (result.snapshots) {
        write_table(*result.snapshots, dir / "snapshots.csv");
    }
    if (result.convergence) {
        write_table(*result.convergence, dir / "convergence.csv");
    }
    std::ofstream out(dir / "summary.json", std::ios::binary);
    if (!out) {
        throw Error("cannot open " + (dir / "summary.json").string() + " for writing");
    }
    out << summary_json(result.summary);
}

std::string report_text(const std::string& text) {
    const json j = json::parse(text);
    std::ostringstream os;
    os << "experiment    " << j.value("experiment", "?") << "\n";
    os << "config hash   " << j.value("config_hash", "?") << "\n";
    os << "final digest  " << j.value("final_digest", "?") << "\n";
    os << "wall time     " << j.value("wall_time_s", 0.0) << " s\n";
    auto show = [&](const json& v) { return v.is_null() ? std::string("-") : format_double(v.get<double>()); };
    if (j.contains("classification") && !j["classification"].is_null()) {
        const json& c = j["classification"];
        os << "verdict       " << c.value("verdict", "?") << "\n";
        os << "t_plus        " << show(c["t_plus"]) << "\n";
        os << "t_m           " << show(c["t_m"]) << "\n";
        os << "t_0           " << show(c["t_0"]) << "\n";
        os << "t_minus       " << show(c["t_minus"]) << "\n";
    }
    if (j.contains("norm_table") && j["norm_table"].is_array()) {
        os << "eps           dt            ||S_eps - S||_Lq   sup ||u_eps - u||_L2\n";
        for (const auto& r : j["norm_table"]) {
            char line[160];
            std::snprintf(line, sizeof line, "%-13.6g %-13.6g %-18.6e %.6e\n", r["eps"].get<double>(),
                          r["dt"].get<double>(), r["s_error_lq"].get<double>(), r["u_error_sup_l2"].get<double>());
            os << line;
        }
    }
    return os.str();
}

} // namespace hystrd
