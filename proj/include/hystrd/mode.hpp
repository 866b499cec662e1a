#pragma once

#include "hystrd/grid.hpp"
#include "hystrd/play.hpp"

#include <climits>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace hystrd {

enum class PlayStepper { Exact, Regularized };

/// dy/dt - D y'' = R y with R a play of the functional T y = sum_i k_i <y, phi_i>, i = m..M.
/// In the mirrored variant the weights are all flipped and the reaction is -R.
struct ModeModel {
    double D = 0.0;
    std::size_t m = 1;
    std::vector<double> weights;  ///< k_m .. k_M
    PlayBounds bounds;
    double R0 = 0.0;
    std::vector<double> y0;
    bool mirrored = false;
    PlayStepper stepper = PlayStepper::Regularized;
    double eps_reg = 1e-4;

    std::size_t M() const noexcept { return m + weights.size() - 1; }
};

/// Checks 1 <= m < M and the weight signs (k_m, k_M > 0, interior >= 0; flipped when mirrored).
void validate(const ModeModel& model);

/// T y with the unweighted inner product against unit eigenvectors.
double apply_T(const ModeModel& model, std::span<const double> y, const SpectralBasis& basis);

struct ModeState {
    double t = 0.0;
    std::vector<double> y;
    PlayState play;
};

/// R(0) = min(upper(Ty0), max(lower(Ty0), R0)), applied literally even if the band is inverted.
ModeState init_mode(const ModeModel& model, const SpectralBasis& basis);

/// w+ = T y, play stepped to w+, y+ = (I - dt D Lap)^{-1} (y + dt r y) with r = R+ (or -R+ mirrored).
ModeState step_mode(ModeState state, const ModeModel& model, double dt, const Grid1D& grid,
                     const SpectralBasis& basis, std::vector<double>& scratch);

inline constexpr int kIndexMinusInfinity = INT_MIN;

/// min{k <= K : R - D lambda_k <= 0} if R - D lambda_0 >= 0, kIndexMinusInfinity if
/// R - D lambda_0 < 0, and K + 1 if no tracked mode qualifies. Needs K+1 eigenvalues.
int monotonicity_index(double R, double D, std::span<const double> eigenvalues, std::size_t K);

std::string format_index(int index);

struct ModeRecord {
    double t = 0.0;
    double Ty = 0.0;
    double R = 0.0;          ///< play output
    double reaction = 0.0;   ///< coefficient multiplying y (R, or -R when mirrored)
    double dTy_dt = 0.0;
    double max_abs_y = 0.0;
    int index = 0;
    std::vector<double> mu;      ///< reaction - D lambda_k, k = 0..K
    std::vector<double> coeffs;  ///< <y, phi_k>, k = 0..K
};

struct Snapshot {
    double t = 0.0;
    std::vector<double> y;
};

struct ModeRunSpec {
    double dt = 7.5e-5;
    double horizon = 6.0;
    std::size_t stride = 100;
    std::size_t tracked_modes = 12;  ///< K: modes 0..K are recorded
    std::vector<double> snapshot_times;
};

struct ModeRun {
    std::vector<ModeRecord> records;
    std::vector<Snapshot> snapshots;
    std::vector<double> final_y;
    double w_min = 0.0;  ///< visited play-input range
    double w_max = 0.0;
};

/// Integrates the mode model and records diagnostics; dTy/dt by centred differences
/// over the records (one-sided at the ends).
ModeRun run_mode(const ModeModel& model, const Grid1D& grid, const ModeRunSpec& spec);

enum class DichotomyCase { CaseI_homogenisation, CaseII_growup, Undecided };

std::string to_string(DichotomyCase c);

struct Classification {
    DichotomyCase verdict = DichotomyCase::Undecided;
    std::optional<double> t_plus;   ///< first contact with the upper curve
    std::optional<double> t_m;      ///< first time the index drops to <= m
    std::optional<double> t_0;      ///< first sign change of dTy/dt after t_plus
    std::optional<double> t_minus;  ///< first contact with the lower curve after t_0
};

Classification classify_run(const std::vector<ModeRecord>& records, const ModeModel& model,
                            double tol_contact = 5e-3);

} // namespace hystrd
