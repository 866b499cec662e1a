#include "hystrd/consume.hpp"

#include "hystrd/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace hystrd {

void validate(const ConsumeParams& p) {
    if (!(0.0 < p.c_min && p.c_min < p.c_de_inf && p.c_de_inf < p.c_st && p.c_st < p.c_max)) {
        std::ostringstream os;
        os << "consume thresholds must satisfy 0 < c_min < c_de_inf < c_st < c_max, got " << p.c_min
           << ", " << p.c_de_inf << ", " << p.c_st << ", " << p.c_max;
        throw InvalidArgument(os.str());
    }
    if (!(p.s_max > 0.0)) {
        throw InvalidArgument("s_max must be positive");
    }
}

double c_de(double S, const ConsumeParams& p) {
    if (S < 0.0) {
        throw DomainError("c_de: negative stock");
    }
    return (p.c_de_inf * S + p.c_min) / (S + 1.0);
}

double c_st_curve(double S, const ConsumeParams& p) {
    if (S < 0.0) {
        throw DomainError("c_st_curve: negative stock");
    }
    if (p.variant == ConsumeVariant::C1) {
        return (p.c_st + p.c_max * S) / (1.0 + S);
    }
    return S + p.c_st;
}

double inverse_c_st(double f, const ConsumeParams& p) {
    if (p.variant == ConsumeVariant::C1) {
        if (f < p.c_st || f >= p.c_max) {
            throw RangeError("inverse_c_st: f outside [c_st, c_max)");
        }
        return (f - p.c_st) / (p.c_max - f);
    }
    if (f < p.c_st) {
        throw RangeError("inverse_c_st: f below c_st");
    }
    return f - p.c_st;
}

namespace {

void check_state(double S, double N, double F) {
    if (!(N > 0.0)) {
        throw DomainError("consume model: population N must be positive");
    }
    if (S < 0.0) {
        throw DomainError("consume model: negative stock");
    }
    if (F < 0.0) {
        throw DomainError("consume model: negative supply");
    }
}

// 1 - exp(-N (1 - f/c_de)); the exponent is <= 0 on the depleting branch and exp
// underflows to 0 for large N.
double depletion_loss(double f, double N, double cde) {
    const double x = N * (1.0 - f / cde);
    if (x > 745.0) {
        return 1.0;
    }
    return -std::expm1(-x);
}

} // namespace

double consume_rate(double S, double N, double F, const ConsumeParams& p) {
    check_state(S, N, F);
    const double f = F / N;
    const double cde = c_de(S, p);
    if (f <= cde) {
        return f + S / N * depletion_loss(f, N, cde);
    }
    const double cst = c_st_curve(S, p);
    if (f < cst) {
        return f;
    }
    if (p.variant == ConsumeVariant::C1) {
        return cst;
    }
    if (S < p.s_max) {
        const double e = std::exp(S - p.s_max);
        return f * e + cst * (1.0 - e);
    }
    return f;
}

GainLoss gain_loss(double S, double N, double F, const ConsumeParams& p) {
    check_state(S, N, F);
    const double f = F / N;
    const double cde = c_de(S, p);
    if (f <= cde) {
        return {0.0, depletion_loss(f, N, cde)};
    }
    const double cst = c_st_curve(S, p);
    if (f < cst) {
        return {};
    }
    if (p.variant == ConsumeVariant::C1) {
        return {(f - cst) * N, 0.0};
    }
    if (S < p.s_max) {
        return {N * (f - cst) * -std::expm1(S - p.s_max), 0.0};
    }
    return {};
}

double growth_rate(double S, double N, double F, const ConsumeParams& p) {
    return consume_rate(S, N, F, p) / p.c_min - 1.0;
}

double tilde_c(const ConsumeParams& p) { return (p.s_max * p.c_de_inf + p.c_min) / (p.s_max + 1.0); }

PlayBounds limit_bounds(const ConsumeParams& p) {
    validate(p);
    CurveSpec upper = CurveSpec::clamped(0.0, p.s_max, Hyperbolic{p.c_min, p.c_de_inf});
    CurveSpec lower = p.variant == ConsumeVariant::C1
                          ? CurveSpec::clamped(0.0, p.s_max, Hyperbolic{p.c_st, p.c_max})
                          : CurveSpec::clamped(0.0, p.s_max, Affine{1.0, -p.c_st});
    return {std::move(upper), std::move(lower)};
}

double upper_branch(double f, const ConsumeParams& p) {
    if (f >= p.c_de_inf) {
        return std::numeric_limits<double>::infinity();
    }
    return std::max(0.0, (f - p.c_min) / (p.c_de_inf - f));
}

double lower_branch(double f, const ConsumeParams& p) {
    if (f < p.c_st) {
        return -std::numeric_limits<double>::infinity();
    }
    if (p.variant == ConsumeVariant::C1 && f >= p.c_max) {
        return p.s_max;
    }
    return std::min(p.s_max, inverse_c_st(f, p));
}

double s_max_bound(const StockBoundAssumptions& a, const ConsumeParams& p, double S_in) {
    if (S_in < 0.0) {
        throw DomainError("s_max_bound: negative initial stock");
    }
    if (a.branch == StockBranch::A) {
        if (!(a.kappa > 0.0 && a.kappa < 1.0)) {
            throw AssumptionError("branch A: kappa must lie in (0,1)");
        }
        const double cap = a.kappa * p.c_max * a.N_in * std::exp(-a.T);
        if (a.F_sup > cap) {
            std::ostringstream os;
            os << "branch A: F_sup <= kappa c_max N_in exp(-T) violated (" << a.F_sup << " > " << cap << ")";
            throw AssumptionError(os.str());
        }
        const double kc = a.kappa * p.c_max;
        if (kc <= p.c_st) {
            return S_in;
        }
        return std::max(S_in, (kc - p.c_st) / (p.c_max * (1.0 - a.kappa)));
    }
    if (!(a.F_min > 0.0 && a.F_max >= a.F_min)) {
        throw AssumptionError("branch B: need 0 < F_min <= F_max");
    }
    const double gamma = a.gamma(p);
    if (!(gamma < 1.0)) {
        throw AssumptionError("branch B: gamma = (F_max/F_min)(c_min/c_max) < 1 violated");
    }
    if (a.N_in < a.F_min / p.c_min) {
        throw AssumptionError("branch B: N_in >= F_min/c_min violated");
    }
    const double ratio = p.c_st / p.c_max;
    if (gamma < ratio) {
        return S_in;
    }
    return std::max(S_in, (gamma - ratio) / (1.0 - gamma));
}

} // namespace hystrd
