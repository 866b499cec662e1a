#pragma once

#include <variant>
#include <vector>

namespace hystrd {

struct ConstantSupply {
    double value = 0.0;
    bool operator==(const ConstantSupply&) const = default;
};

/// amplitude * (1 - cos(omega t))
struct SinusoidSupply {
    double amplitude = 0.2;
    double omega = 1.0;
    bool operator==(const SinusoidSupply&) const = default;
};

/// Piecewise-linear in t, held constant outside the sampled range.
struct TabulatedSupply {
    std::vector<double> t;
    std::vector<double> F;
    bool operator==(const TabulatedSupply&) const = default;
};

/// External food supply F(t) >= 0.
struct SupplySpec {
    std::variant<ConstantSupply, SinusoidSupply, TabulatedSupply> kind = SinusoidSupply{};

    double operator()(double t) const;

    /// Throws InvalidArgument if F takes negative values or the table is malformed.
    void validate() const;

    /// Maximum of F over [0, T] (exact for the analytic families, over samples otherwise).
    double max_on(double T) const;

    bool operator==(const SupplySpec&) const = default;
};

} // namespace hystrd
