#include "hystrd/play.hpp"

#include "hystrd/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace hystrd {

void validate_bounds(const PlayBounds& bounds, double lo, double hi, int samples) {
    if (samples < 2 || !(hi >= lo)) {
        throw InvalidArgument("validate_bounds: need hi >= lo and samples >= 2");
    }
    for (int i = 0; i < samples; ++i) {
        const double z = lo + (hi - lo) * i / (samples - 1);
        if (bounds.upper(z) < bounds.lower(z)) {
            std::ostringstream os;
            os << "upper curve below lower curve at z=" << z;
            throw InvalidBounds(os.str());
        }
    }
}

PlayState init_play_unchecked(PlayBounds bounds, double R0, double w0) {
    PlayState state;
    state.R = std::min(bounds.upper(w0), std::max(bounds.lower(w0), R0));
    state.w = w0;
    state.w_min = w0;
    state.w_max = w0;
    state.bounds = std::move(bounds);
    return state;
}

PlayState init_play(PlayBounds bounds, double R0, double w0) {
    const double up = bounds.upper(w0);
    const double low = bounds.lower(w0);
    if (up < low) {
        std::ostringstream os;
        os << "inverted play band at w0=" << w0 << ": upper=" << up << " < lower=" << low;
        throw InvalidBounds(os.str());
    }
    return init_play_unchecked(std::move(bounds), R0, w0);
}

namespace {

void record_input(PlayState& state, double w) {
    state.w = w;
    state.w_min = std::min(state.w_min, w);
    state.w_max = std::max(state.w_max, w);
}

} // namespace

PlayState exact_play_step(PlayState state, double w_next) {
    state.R = std::min(state.bounds.upper(w_next), std::max(state.bounds.lower(w_next), state.R));
    record_input(state, w_next);
    return state;
}

double regularized_play_rhs(const PlayState& state, double w, double eps_reg) {
    if (!(eps_reg > 0.0)) {
        throw InvalidArgument("regularized_play_rhs: eps_reg must be positive");
    }
    const double below = std::max(0.0, state.bounds.lower(w) - state.R);
    const double above = std::max(0.0, state.R - state.bounds.upper(w));
    return (below - above) / eps_reg;
}

PlayState regularized_play_step(PlayState state, double w_next, double eps_reg, double dt) {
    if (!(dt > 0.0) || dt > eps_reg) {
        throw InvalidArgument("regularized_play_step: need 0 < dt <= eps_reg");
    }
    state.R += dt * regularized_play_rhs(state, w_next, eps_reg);
    record_input(state, w_next);
    return state;
}

double vi_residual(std::span<const double> times, std::span<const double> R,
                   std::span<const double> w, const PlayBounds& bounds) {
    if (times.size() != R.size() || times.size() != w.size()) {
        throw DimensionError("vi_residual: times, R and w must have equal length");
    }
    double worst = 0.0;
    for (std::size_t i = 1; i < times.size(); ++i) {
        const double dt = times[i] - times[i - 1];
        if (!(dt > 0.0)) {
            throw InvalidArgument("vi_residual: times must be strictly increasing");
        }
        const double dR = R[i] - R[i - 1];
        if (dR == 0.0) {
            continue;
        }
        // dR > 0 is worst against the lower endpoint, dR < 0 against the upper one.
        const double z = dR > 0.0 ? bounds.lower(w[i]) : bounds.upper(w[i]);
        worst = std::max(worst, dR * (R[i] - z) / dt);
    }
    return worst;
}

} // namespace hystrd
