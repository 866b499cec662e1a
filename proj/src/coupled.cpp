#include "hystrd/coupled.hpp"

#include "hystrd/errors.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <iostream>
#include <limits>

namespace hystrd {

namespace {

double checked_mass(const Grid1D& grid, const std::vector<double>& u, double t) {
    const double N = mass_integral(grid, u);
    if (!std::isfinite(N)) {
        throw DivergenceError("u", t);
    }
    if (!(N > 0.0)) {
        throw DegeneratePopulation("population mass N <= 0 at t=" + std::to_string(t));
    }
    return N;
}

void react_and_diffuse(const PopulationModel& model, std::vector<double>& u, double lambda, double dt,
                       std::vector<double>& scratch) {
    const double factor = 1.0 + dt * lambda;
    for (double& x : u) {
        x *= factor;
    }
    implicit_diffusion_solve(model.grid, model.D, dt, u, scratch);
}

std::size_t step_count(double horizon, double dt) {
    if (!(dt > 0.0) || !(horizon >= 0.0)) {
        throw InvalidArgument("run: need dt > 0 and horizon >= 0");
    }
    return static_cast<std::size_t>(std::ceil(horizon / dt - 1e-9));
}

std::pair<double, double> min_max(const std::vector<double>& u) {
    const auto [lo, hi] = std::minmax_element(u.begin(), u.end());
    return {*lo, *hi};
}

} // namespace

EpsState step_eps(EpsState state, const PopulationModel& model, double dt, std::vector<double>& scratch) {
    if (!(dt > 0.0)) {
        throw InvalidArgument("step_eps: dt must be positive");
    }
    if (!(state.eps > 0.0)) {
        throw InvalidArgument("step_eps: eps must be positive");
    }
    const double N = checked_mass(model.grid, state.u, state.t);
    if (!std::isfinite(state.S)) {
        throw DivergenceError("S", state.t);
    }
    const double F = model.supply(state.t);
    const double c = consume_rate(state.S, N, F, model.consume);
    const double lambda = c / model.consume.c_min - 1.0;

    react_and_diffuse(model, state.u, lambda, dt, scratch);
    state.S = std::max(0.0, state.S + dt / state.eps * (F - N * c));
    state.t += dt;
    return state;
}

EpsState step_eps(EpsState state, const PopulationModel& model, double dt) {
    std::vector<double> scratch;
    return step_eps(std::move(state), model, dt, scratch);
}

LimitState init_limit(const PopulationModel& model, std::vector<double> u_in, double S_in) {
    const double N = checked_mass(model.grid, u_in, 0.0);
    LimitState state;
    state.t = 0.0;
    state.play = init_play(limit_bounds(model.consume), S_in, model.supply(0.0) / N);
    state.u = std::move(u_in);
    return state;
}

LimitState step_limit(LimitState state, const PopulationModel& model, double dt, std::vector<double>& scratch) {
    if (!(dt > 0.0)) {
        throw InvalidArgument("step_limit: dt must be positive");
    }
    const double N = checked_mass(model.grid, state.u, state.t);
    const double t_next = state.t + dt;
    const double F = model.supply(t_next);
    state.play = exact_play_step(std::move(state.play), F / N);
    if (!std::isfinite(state.play.R)) {
        throw DivergenceError("S", state.t);
    }
    const double lambda = growth_rate(state.play.R, N, F, model.consume);
    react_and_diffuse(model, state.u, lambda, dt, scratch);
    state.t = t_next;
    return state;
}

LimitState step_limit(LimitState state, const PopulationModel& model, double dt) {
    std::vector<double> scratch;
    return step_limit(std::move(state), model, dt, scratch);
}

double projection_p(double S, double f, const ConsumeParams& p) {
    if (S < 0.0) {
        throw DomainError("projection_p: negative stock");
    }
    if (f >= p.c_st) {
        const double inv = (p.variant == ConsumeVariant::C1 && f >= p.c_max)
                               ? std::numeric_limits<double>::infinity()
                               : inverse_c_st(f, p);
        if (S <= inv) {
            return lower_branch(f, p);
        }
    }
    if (f <= tilde_c(p)) {
        const double u = upper_branch(f, p);
        if (S >= u) {
            return u;
        }
    }
    return S;
}

TimeSeries run_eps_system(const PopulationModel& model, const PopulationRunSpec& spec) {
    validate(model.consume);
    const std::size_t n_steps = step_count(spec.horizon, spec.dt);
    if (spec.stride == 0) {
        throw InvalidArgument("run: stride must be positive");
    }
    if (spec.dt > spec.eps / 10.0) {
        std::clog << "warning: dt=" << spec.dt << " exceeds eps/10=" << spec.eps / 10.0
                  << "; the stock update may be inaccurate\n";
    }

    TimeSeries ts;
    ts.columns = {"t", "F", "N", "f", "S", "lambda", "min_u", "max_u", "p_eps", "step2_lhs", "step2_rhs"};

    EpsState state{0.0, spec.u_in, spec.S_in, spec.eps};
    std::vector<double> scratch;

    double N = checked_mass(model.grid, state.u, 0.0);
    double F = model.supply(0.0);
    double p = projection_p(state.S, F / N, model.consume);
    const double gap0 = std::abs(state.S - p);
    double moved = 0.0;
    double proj_moved = 0.0;

    auto record = [&](double t) {
        const auto [lo, hi] = min_max(state.u);
        const double gap = std::abs(state.S - p);
        ts.append({t, F, N, F / N, state.S, growth_rate(state.S, N, F, model.consume), lo, hi, p,
                   gap + moved, gap0 + proj_moved});
    };
    record(0.0);

    for (std::size_t n = 0; n < n_steps; ++n) {
        const double S_old = state.S;
        const double p_old = p;
        state = step_eps(std::move(state), model, spec.dt, scratch);
        state.t = static_cast<double>(n + 1) * spec.dt;

        N = checked_mass(model.grid, state.u, state.t);
        F = model.supply(state.t);
        p = projection_p(state.S, F / N, model.consume);
        if (S_old != p_old) {
            moved += std::abs(state.S - S_old);
        }
        proj_moved += std::abs(p - p_old);

        if ((n + 1) % spec.stride == 0 || n + 1 == n_steps) {
            record(state.t);
        }
    }
    return ts;
}

TimeSeries run_limit_system(const PopulationModel& model, const PopulationRunSpec& spec) {
    validate(model.consume);
    const std::size_t n_steps = step_count(spec.horizon, spec.dt);
    if (spec.stride == 0) {
        throw InvalidArgument("run: stride must be positive");
    }

    TimeSeries ts;
    ts.columns = {"t", "F", "N", "f", "S", "lambda", "min_u", "max_u", "lower", "upper"};

    LimitState state = init_limit(model, spec.u_in, spec.S_in);
    std::vector<double> scratch;

    auto record = [&]() {
        const double N = mass_integral(model.grid, state.u);
        const double F = model.supply(state.t);
        const double f = state.play.w;
        const auto [lo, hi] = min_max(state.u);
        ts.append({state.t, F, N, f, state.play.R, growth_rate(state.play.R, N, F, model.consume), lo, hi,
                   state.play.bounds.lower(f), state.play.bounds.upper(f)});
    };
    record();

    for (std::size_t n = 0; n < n_steps; ++n) {
        state = step_limit(std::move(state), model, spec.dt, scratch);
        state.t = static_cast<double>(n + 1) * spec.dt;
        if ((n + 1) % spec.stride == 0 || n + 1 == n_steps) {
            record();
        }
    }
    return ts;
}

namespace {

ConvergenceRow convergence_run(const PopulationModel& model, const PopulationRunSpec& base, double eps,
                               double q, double dt_factor) {
    const double nominal = dt_factor * eps;
    const std::size_t n_steps = std::max<std::size_t>(1, step_count(base.horizon, nominal));
    const double dt = base.horizon > 0.0 ? base.horizon / static_cast<double>(n_steps) : nominal;

    EpsState fast{0.0, base.u_in, base.S_in, eps};
    LimitState slow = init_limit(model, base.u_in, base.S_in);
    std::vector<double> scratch;
    std::vector<double> diff(base.u_in.size());

    ConvergenceRow row;
    row.eps = eps;
    row.dt = dt;

    auto observe = [&](double t) {
        for (std::size_t j = 0; j < diff.size(); ++j) {
            diff[j] = fast.u[j] - slow.u[j];
        }
        row.u_error_sup_l2 = std::max(row.u_error_sup_l2, l2_norm(model.grid, diff));
        const double N = mass_integral(model.grid, fast.u);
        const double f = model.supply(t) / N;
        row.projection_gap_sup =
            std::max(row.projection_gap_sup, std::abs(fast.S - projection_p(fast.S, f, model.consume)));
        return std::pow(std::abs(fast.S - slow.play.R), q);
    };

    double integral = 0.0;
    double prev = observe(0.0);
    for (std::size_t n = 0; n < n_steps && base.horizon > 0.0; ++n) {
        fast = step_eps(std::move(fast), model, dt, scratch);
        slow = step_limit(std::move(slow), model, dt, scratch);
        const double t = static_cast<double>(n + 1) * dt;
        fast.t = t;
        slow.t = t;
        const double cur = observe(t);
        integral += 0.5 * dt * (prev + cur);
        prev = cur;
    }
    row.s_error_lq = std::pow(integral, 1.0 / q);
    return row;
}

} // namespace

std::vector<ConvergenceRow> convergence_study(const PopulationModel& model, const PopulationRunSpec& base,
                                              const std::vector<double>& eps_list, double q, double dt_factor) {
    validate(model.consume);
    if (!(q >= 1.0) || !std::isfinite(q)) {
        throw InvalidArgument("convergence_study: q must be finite and >= 1");
    }
    if (!(dt_factor > 0.0)) {
        throw InvalidArgument("convergence_study: dt_factor must be positive");
    }
    for (double eps : eps_list) {
        if (!(eps > 0.0)) {
            throw InvalidArgument("convergence_study: eps values must be positive");
        }
    }

    std::vector<std::future<ConvergenceRow>> jobs;
    jobs.reserve(eps_list.size());
    for (double eps : eps_list) {
        jobs.push_back(std::async(std::launch::async, convergence_run, std::cref(model), std::cref(base), eps, q,
                                  dt_factor));
    }
    std::vector<ConvergenceRow> rows;
    rows.reserve(jobs.size());
    for (auto& job : jobs) {
        rows.push_back(job.get());
    }
    return rows;
}

} // namespace hystrd
