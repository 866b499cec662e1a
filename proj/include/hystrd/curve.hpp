#pragma once

#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace hystrd {

class CurveSpec;

/// a |z|^p sign(z) + b
struct SignedPower {
    double a = 1.0;
    double p = 1.0;
    double b = 0.0;
    bool operator==(const SignedPower&) const = default;
};

/// a z + b
struct Affine {
    double a = 1.0;
    double b = 0.0;
    bool operator==(const Affine&) const = default;
};

/// (z - zero) / (pole - z) for z < pole, +infinity for z >= pole.
/// Inverse of the saturating thresholds (c S + c0)/(S + 1).
struct Hyperbolic {
    double zero = 0.0;
    double pole = 1.0;
    bool operator==(const Hyperbolic&) const = default;
};

/// min(hi, max(lo, base(z)))
struct Clamped {
    double lo = 0.0;
    double hi = 0.0;
    std::shared_ptr<const CurveSpec> base;
    bool operator==(const Clamped& other) const;
};

/// Piecewise-linear through (x_i, y_i), constant beyond the end samples.
struct Tabulated {
    std::vector<double> x;
    std::vector<double> y;
    bool operator==(const Tabulated&) const = default;
};

/// Monotone non-decreasing scalar curve, immutable once built.
class CurveSpec {
public:
    using Variant = std::variant<SignedPower, Affine, Hyperbolic, Clamped, Tabulated>;

    CurveSpec() : curve_(Affine{}) {}
    CurveSpec(SignedPower c) : curve_(c) {}
    CurveSpec(Affine c) : curve_(c) {}
    CurveSpec(Hyperbolic c);
    CurveSpec(Clamped c);
    CurveSpec(Tabulated c);

    static CurveSpec clamped(double lo, double hi, CurveSpec base);

    double operator()(double z) const;

    const Variant& variant() const noexcept { return curve_; }
    std::string describe() const;

    bool operator==(const CurveSpec& other) const { return curve_ == other.curve_; }

private:
    Variant curve_;
};

/// Largest forward-difference slope of `curve` on [lo, hi] sampled at n points.
double sampled_lipschitz(const CurveSpec& curve, double lo, double hi, int n = 1000);

} // namespace hystrd
