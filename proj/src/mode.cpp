#include "hystrd/mode.hpp"

#include "hystrd/errors.hpp"

#include <algorithm>
#include <cmath>

namespace hystrd {

void validate(const ModeModel& model) {
    if (model.m < 1) {
        throw InvalidArgument("mode model: m must be >= 1");
    }
    if (model.weights.size() < 2) {
        throw InvalidArgument("mode model: need weights k_m..k_M with m < M");
    }
    if (!(model.D >= 0.0) || !std::isfinite(model.D)) {
        throw InvalidArgument("mode model: D must be finite and non-negative");
    }
    const double sign = model.mirrored ? -1.0 : 1.0;
    if (!(sign * model.weights.front() > 0.0) || !(sign * model.weights.back() > 0.0)) {
        throw InvalidArgument(model.mirrored ? "mirrored mode model: k_m and k_M must be negative"
                                             : "mode model: k_m and k_M must be positive");
    }
    for (std::size_t i = 1; i + 1 < model.weights.size(); ++i) {
        if (!(sign * model.weights[i] >= 0.0)) {
            throw InvalidArgument("mode model: interior weights have the wrong sign");
        }
    }
    if (model.stepper == PlayStepper::Regularized && !(model.eps_reg > 0.0)) {
        throw InvalidArgument("mode model: eps_reg must be positive");
    }
}

double apply_T(const ModeModel& model, std::span<const double> y, const SpectralBasis& basis) {
    if (basis.size() <= model.M()) {
        throw IndexError("apply_T: basis does not cover mode " + std::to_string(model.M()));
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < model.weights.size(); ++i) {
        sum += model.weights[i] * mode_coefficient(basis, y, model.m + i);
    }
    return sum;
}

ModeState init_mode(const ModeModel& model, const SpectralBasis& basis) {
    validate(model);
    ModeState state;
    state.y = model.y0;
    state.play = init_play_unchecked(model.bounds, model.R0, apply_T(model, state.y, basis));
    return state;
}

ModeState step_mode(ModeState state, const ModeModel& model, double dt, const Grid1D& grid,
                     const SpectralBasis& basis, std::vector<double>& scratch) {
    const double w = apply_T(model, state.y, basis);
    if (!std::isfinite(w)) {
        throw DivergenceError("Ty", state.t);
    }
    state.play = model.stepper == PlayStepper::Exact
                     ? exact_play_step(std::move(state.play), w)
                     : regularized_play_step(std::move(state.play), w, model.eps_reg, dt);
    if (!std::isfinite(state.play.R)) {
        throw DivergenceError("R", state.t);
    }
    const double reaction = model.mirrored ? -state.play.R : state.play.R;
    const double factor = 1.0 + dt * reaction;
    for (double& v : state.y) {
        v *= factor;
    }
    implicit_diffusion_solve(grid, model.D, dt, state.y, scratch);
    state.t += dt;
    return state;
}

int monotonicity_index(double R, double D, std::span<const double> eigenvalues, std::size_t K) {
    if (eigenvalues.size() < K + 1) {
        throw IndexError("monotonicity_index: need eigenvalues 0..K");
    }
    if (R - D * eigenvalues[0] < 0.0) {
        return kIndexMinusInfinity;
    }
    for (std::size_t k = 0; k <= K; ++k) {
        if (R - D * eigenvalues[k] <= 0.0) {
            return static_cast<int>(k);
        }
    }
    return static_cast<int>(K) + 1;
}

std::string format_index(int index) {
    return index == kIndexMinusInfinity ? std::string("-inf") : std::to_string(index);
}

std::string to_string(DichotomyCase c) {
    switch (c) {
    case DichotomyCase::CaseI_homogenisation:
        return "CaseI_homogenisation";
    case DichotomyCase::CaseII_growup:
        return "CaseII_growup";
    case DichotomyCase::Undecided:
        break;
    }
    return "Undecided";
}

ModeRun run_mode(const ModeModel& model, const Grid1D& grid, const ModeRunSpec& spec) {
    if (!(spec.dt > 0.0) || !(spec.horizon >= 0.0) || spec.stride == 0) {
        throw InvalidArgument("run_mode: need dt > 0, horizon >= 0, stride > 0");
    }
    if (model.y0.size() != grid.n_cells) {
        throw DimensionError("run_mode: y0 length does not match the grid");
    }
    const std::size_t K = std::max(spec.tracked_modes, model.M());
    if (K + 1 > grid.n_cells) {
        throw InvalidArgument("run_mode: tracked modes exceed the grid resolution");
    }
    const SpectralBasis basis = eigenpairs(grid, K + 1);
    const std::size_t n_steps = static_cast<std::size_t>(std::ceil(spec.horizon / spec.dt - 1e-9));

    ModeRun run;
    ModeState state = init_mode(model, basis);
    std::vector<double> scratch;

    std::vector<double> pending(spec.snapshot_times);
    std::sort(pending.begin(), pending.end());
    std::size_t next_snapshot = 0;

    auto record = [&]() {
        ModeRecord r;
        r.t = state.t;
        r.Ty = apply_T(model, state.y, basis);
        r.R = state.play.R;
        r.reaction = model.mirrored ? -state.play.R : state.play.R;
        r.max_abs_y = 0.0;
        for (double v : state.y) {
            r.max_abs_y = std::max(r.max_abs_y, std::abs(v));
        }
        r.mu.resize(K + 1);
        r.coeffs.resize(K + 1);
        for (std::size_t k = 0; k <= K; ++k) {
            r.mu[k] = r.reaction - model.D * basis.eigenvalues[k];
            r.coeffs[k] = mode_coefficient(basis, state.y, k);
        }
        r.index = monotonicity_index(r.reaction, model.D, basis.eigenvalues, K);
        run.records.push_back(std::move(r));
    };
    auto take_snapshots = [&]() {
        while (next_snapshot < pending.size() && pending[next_snapshot] <= state.t + 0.5 * spec.dt) {
            run.snapshots.push_back({state.t, state.y});
            ++next_snapshot;
        }
    };

    record();
    take_snapshots();
    for (std::size_t n = 0; n < n_steps; ++n) {
        state = step_mode(std::move(state), model, spec.dt, grid, basis, scratch);
        state.t = static_cast<double>(n + 1) * spec.dt;
        if ((n + 1) % spec.stride == 0 || n + 1 == n_steps) {
            record();
        }
        take_snapshots();
    }

    auto& recs = run.records;
    for (std::size_t i = 0; i < recs.size(); ++i) {
        if (recs.size() < 2) {
            break;
        }
        const std::size_t lo = i == 0 ? 0 : i - 1;
        const std::size_t hi = i + 1 == recs.size() ? i : i + 1;
        recs[i].dTy_dt = (recs[hi].Ty - recs[lo].Ty) / (recs[hi].t - recs[lo].t);
    }
    run.final_y = state.y;
    run.w_min = state.play.w_min;
    run.w_max = state.play.w_max;
    return run;
}

Classification classify_run(const std::vector<ModeRecord>& records, const ModeModel& model, double tol_contact) {
    if (records.empty()) {
        throw InvalidArgument("classify_run: no diagnostics recorded");
    }
    Classification out;
    const int m = static_cast<int>(model.m);

    std::size_t start = 0;
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (std::abs(records[i].R - model.bounds.upper(records[i].Ty)) <= tol_contact) {
            out.t_plus = records[i].t;
            start = i;
            break;
        }
    }
    for (const auto& r : records) {
        if (r.index <= m) {
            out.t_m = r.t;
            break;
        }
    }

    std::size_t after_turn = records.size();
    for (std::size_t i = start + 1; i < records.size(); ++i) {
        const double a = records[i - 1].dTy_dt;
        const double b = records[i].dTy_dt;
        if (a != 0.0 && (a < 0.0) != (b < 0.0)) {
            const double t0 = records[i - 1].t - a * (records[i].t - records[i - 1].t) / (b - a);
            out.t_0 = t0;
            after_turn = i;
            break;
        }
    }
    if (out.t_0) {
        for (std::size_t i = after_turn; i < records.size(); ++i) {
            if (std::abs(records[i].R - model.bounds.lower(records[i].Ty)) <= tol_contact) {
                out.t_minus = records[i].t;
                break;
            }
        }
    }

    if (out.t_m && (!out.t_0 || *out.t_m <= *out.t_0)) {
        out.verdict = DichotomyCase::CaseI_homogenisation;
    } else if (out.t_0 && records[after_turn].index > m) {
        out.verdict = DichotomyCase::CaseII_growup;
    }
    return out;
}

} // namespace hystrd
