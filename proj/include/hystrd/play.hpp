#pragma once

#include "hystrd/curve.hpp"

#include <span>

namespace hystrd {

struct PlayBounds {
    CurveSpec upper;
    CurveSpec lower;

    bool operator==(const PlayBounds&) const = default;
};

/// Throws InvalidBounds unless upper(z) >= lower(z) at `samples` points of [lo, hi].
void validate_bounds(const PlayBounds& bounds, double lo, double hi, int samples = 1000);

/// State of a generalised play: output R, last input w, and the visited input range.
struct PlayState {
    double R = 0.0;
    double w = 0.0;
    PlayBounds bounds;
    double w_min = 0.0;
    double w_max = 0.0;
};

/// R = min(upper(w0), max(lower(w0), R0)). Throws InvalidBounds if upper(w0) < lower(w0).
PlayState init_play(PlayBounds bounds, double R0, double w0);

/// Same clamp without the band check; if the band is inverted at w0 the result is upper(w0).
PlayState init_play_unchecked(PlayBounds bounds, double R0, double w0);

/// Rate-independent update R+ = clamp(R, lower(w+), upper(w+)).
PlayState exact_play_step(PlayState state, double w_next);

/// Hinge-penalty regularisation [ (lower(w) - R)_+ - (R - upper(w))_+ ] / eps_reg.
double regularized_play_rhs(const PlayState& state, double w, double eps_reg);

/// One explicit Euler step of the regularised play towards input w_next.
/// Requires dt <= eps_reg (stability with both hinges active).
PlayState regularized_play_step(PlayState state, double w_next, double eps_reg, double dt);

/// Largest discrete violation max(0, dR (R - z*) / dt) of the play variational inequality,
/// z* being the band endpoint at the end of each step that maximises the product.
double vi_residual(std::span<const double> times, std::span<const double> R,
                   std::span<const double> w, const PlayBounds& bounds);

} // namespace hystrd
