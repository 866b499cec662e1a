#pragma once

#include "hystrd/consume.hpp"
#include "hystrd/grid.hpp"
#include "hystrd/play.hpp"
#include "hystrd/supply.hpp"
#include "hystrd/timeseries.hpp"

#include <cstddef>
#include <vector>

namespace hystrd {

/// Population density u on a 1-D Neumann domain, food supply F(t), consume model.
struct PopulationModel {
    Grid1D grid;
    double D = 0.1;
    ConsumeParams consume;
    SupplySpec supply;
};

/// State of the eps-system: field, stock and the fast time scale.
struct EpsState {
    double t = 0.0;
    std::vector<double> u;
    double S = 0.0;
    double eps = 1e-2;
};

/// State of the limit system; the play output is the stock, its input f = F/N.
struct LimitState {
    double t = 0.0;
    std::vector<double> u;
    PlayState play;
};

/// One semi-implicit step: explicit reaction and stock (old state), implicit diffusion.
/// The stock is floored at 0. `scratch` is reused by the tridiagonal solve.
EpsState step_eps(EpsState state, const PopulationModel& model, double dt);
EpsState step_eps(EpsState state, const PopulationModel& model, double dt, std::vector<double>& scratch);

/// Play started at f(0) = F(0)/N_in with S(0) = clamp(S_in, L(f(0)), U(f(0))).
LimitState init_limit(const PopulationModel& model, std::vector<double> u_in, double S_in);

/// One step: f+ = F(t+)/N, exact play to f+, then reaction with the new stock and diffusion.
LimitState step_limit(LimitState state, const PopulationModel& model, double dt);
LimitState step_limit(LimitState state, const PopulationModel& model, double dt, std::vector<double>& scratch);

/// Projection onto the closure of the zero-stock-change region of the (f, S) plane.
double projection_p(double S, double f, const ConsumeParams& p);

/// Everything a population run needs besides the model.
struct PopulationRunSpec {
    std::vector<double> u_in;
    double S_in = 0.0;
    double eps = 1e-2;
    double dt = 7.5e-5;
    double horizon = 1.0;
    std::size_t stride = 100;
};

/// Records every `stride` steps and at the final step:
/// t,F,N,f,S,lambda,min_u,max_u,p_eps,step2_lhs,step2_rhs.
/// step2_* accumulate |S - p|(t) + sum |dS| 1[S != p] and |S - p|(0) + sum |dp|.
TimeSeries run_eps_system(const PopulationModel& model, const PopulationRunSpec& spec);

/// Records t,F,N,f,S,lambda,min_u,max_u,lower,upper with S the play output.
TimeSeries run_limit_system(const PopulationModel& model, const PopulationRunSpec& spec);

struct ConvergenceRow {
    double eps = 0.0;
    double dt = 0.0;
    double s_error_lq = 0.0;       ///< ||S_eps - S_limit||_{L^q(0,T)}
    double u_error_sup_l2 = 0.0;   ///< sup_t ||u_eps - u_limit||_{L^2(0,1)}
    double projection_gap_sup = 0.0; ///< sup_t |S_eps - p(S_eps, f_eps)|
};

/// Runs the eps-system and the limit system in lockstep with dt = dt_factor * eps for
/// every eps and integrates the errors over every step (trapezoidal rule in time).
/// Runs execute concurrently; rows keep the order of `eps_list`.
std::vector<ConvergenceRow> convergence_study(const PopulationModel& model, const PopulationRunSpec& base,
                                              const std::vector<double>& eps_list, double q,
                                              double dt_factor = 0.05);

} // namespace hystrd
