#pragma once

#include "hystrd/consume.hpp"
#include "hystrd/curve.hpp"
#include "hystrd/mode.hpp"
#include "hystrd/supply.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace hystrd {

enum class ExperimentKind { EpsSystem, LimitSystem, Convergence, ModeDichotomy };

std::string to_string(ExperimentKind kind);

enum class Normalisation { L2, Max, None };

struct InitialBlock {
    std::vector<std::pair<std::size_t, double>> modes{{0, 1.0}};
    Normalisation normalisation = Normalisation::L2;
    double S_in = 0.0;
    double R0 = 0.0;

    bool operator==(const InitialBlock&) const = default;
};

struct ConvergenceBlock {
    std::vector<double> eps_list{1e-1, 3e-2, 1e-2};
    double q = 2.0;
    double dt_factor = 0.05;

    bool operator==(const ConvergenceBlock&) const = default;
};

struct ModeBlock {
    std::size_t m = 1;
    std::vector<double> weights{0.1, 0.4};
    CurveSpec upper = SignedPower{1.2, 0.5, 0.1};
    CurveSpec lower = SignedPower{1.2, 0.5, -0.1};
    bool mirrored = false;
    PlayStepper stepper = PlayStepper::Regularized;
    double eps_reg = 1e-4;
    std::size_t tracked_modes = 12;
    double tol_contact = 5e-3;
    std::vector<double> snapshot_times;

    bool operator==(const ModeBlock&) const = default;
};

/// Fully deterministic description of one experiment.
struct RunConfig {
    ExperimentKind kind = ExperimentKind::EpsSystem;
    std::size_t n_cells = 99;
    double dt = 7.5e-5;
    double horizon = 1.0;
    std::size_t stride = 100;
    std::optional<double> diffusion = 0.1;  ///< empty: 1 / lambda_1
    ConsumeParams consume;
    SupplySpec supply;
    InitialBlock initial;
    double eps = 1e-2;
    ConvergenceBlock convergence;
    ModeBlock mode;

    bool operator==(const RunConfig&) const = default;
};

/// Parses a JSON document, applies `overrides` ("a.b.c=value", value read as JSON when
/// it parses, as a string otherwise) and validates. Throws ConfigError with the key path.
RunConfig parse_config(const std::string& text, const std::vector<std::string>& overrides = {});

/// Canonical JSON text (sorted keys, every field written).
std::string serialise(const RunConfig& config);

/// Throws ConfigError naming the first offending key.
void validate(const RunConfig& config);

/// Diffusion coefficient actually used (resolves the 1/lambda_1 default).
double resolved_diffusion(const RunConfig& config);

/// Initial field on the configured grid after normalisation.
std::vector<double> initial_field(const RunConfig& config);

/// Names of the bundled presets and their JSON text.
const std::vector<std::string>& preset_names();
std::string preset_text(const std::string& name);

} // namespace hystrd
