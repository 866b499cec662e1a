#pragma once

#include "hystrd/play.hpp"

namespace hystrd {

enum class ConsumeVariant { C1, C2 };

/// Thresholds 0 < c_min < c_de_inf < c_st < c_max and the stock ceiling s_max.
/// For C2 s_max is part of the model; for C1 it is only a diagnostic value.
struct ConsumeParams {
    double c_min = 0.35;
    double c_de_inf = 0.4;
    double c_st = 0.45;
    double c_max = 1.0;
    ConsumeVariant variant = ConsumeVariant::C2;
    double s_max = 0.3;

    bool operator==(const ConsumeParams&) const = default;
};

/// Throws InvalidArgument if the ordering or s_max > 0 is violated.
void validate(const ConsumeParams& p);

/// Depleting threshold (c_de_inf S + c_min) / (S + 1).
double c_de(double S, const ConsumeParams& p);

/// Storing threshold: C1 (c_st + c_max S)/(1 + S), C2 S + c_st.
double c_st_curve(double S, const ConsumeParams& p);

/// Inverse of c_st_curve on its range ([c_st, c_max) for C1, [c_st, inf) for C2).
double inverse_c_st(double f, const ConsumeParams& p);

/// Per-capita consumption c(S, N, F) with f = F/N.
double consume_rate(double S, double N, double F, const ConsumeParams& p);

struct GainLoss {
    double G = 0.0;
    double l = 0.0;
};

/// Split of F - N c into G - l S with G >= 0, 0 <= l <= 1, G l = 0.
GainLoss gain_loss(double S, double N, double F, const ConsumeParams& p);

/// c / c_min - 1.
double growth_rate(double S, double N, double F, const ConsumeParams& p);

/// (S_max c_de_inf + c_min) / (S_max + 1); U(f) = S_max for f >= tilde_c.
double tilde_c(const ConsumeParams& p);

/// Upper curve U(f) = min(S_max, max(0, (f - c_min)/(c_de_inf - f))) and lower curve
/// L(f) = max(0, min(S_max, inverse_c_st(f))) of the limiting play.
PlayBounds limit_bounds(const ConsumeParams& p);

/// Uncapped upper branch u(f) = max(0, c_de^{-1}(f)); +inf for f >= c_de_inf.
double upper_branch(double f, const ConsumeParams& p);

/// Capped lower branch l(f) = min(S_max, inverse_c_st(f)), extended by -inf below c_st
/// and by S_max where the inverse does not exist.
double lower_branch(double f, const ConsumeParams& p);

enum class StockBranch { A, B };

/// Hypotheses of the a-priori stock bound for the bounded consume rate.
struct StockBoundAssumptions {
    StockBranch branch = StockBranch::A;
    // branch A
    double kappa = 0.5;
    double F_sup = 0.0;
    double N_in = 1.0;
    double T = 1.0;
    // branch B
    double F_min = 0.0;
    double F_max = 0.0;

    double gamma(const ConsumeParams& p) const { return F_max / F_min * p.c_min / p.c_max; }
};

/// Upper bound on the stock along any eps-run; throws AssumptionError naming the
/// violated hypothesis.
double s_max_bound(const StockBoundAssumptions& a, const ConsumeParams& p, double S_in);

} // namespace hystrd
