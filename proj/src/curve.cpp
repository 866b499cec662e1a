#include "hystrd/curve.hpp"

#include "hystrd/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace hystrd {

bool Clamped::operator==(const Clamped& other) const {
    if (lo != other.lo || hi != other.hi) {
        return false;
    }
    if (!base || !other.base) {
        return base == other.base;
    }
    return *base == *other.base;
}

CurveSpec::CurveSpec(Hyperbolic c) : curve_(c) {
    if (!(c.zero < c.pole)) {
        throw InvalidArgument("hyperbolic curve needs zero < pole");
    }
}

CurveSpec::CurveSpec(Clamped c) : curve_(c) {
    if (!c.base) {
        throw InvalidArgument("clamped curve without base curve");
    }
    if (!(c.lo <= c.hi)) {
        throw InvalidArgument("clamped curve needs lo <= hi");
    }
}

CurveSpec::CurveSpec(Tabulated c) {
    if (c.x.size() != c.y.size() || c.x.empty()) {
        throw InvalidArgument("tabulated curve needs equally many, and at least one, samples");
    }
    for (std::size_t i = 1; i < c.x.size(); ++i) {
        if (!(c.x[i] > c.x[i - 1])) {
            throw InvalidArgument("tabulated curve abscissae must be strictly increasing");
        }
        if (c.y[i] < c.y[i - 1]) {
            throw InvalidArgument("tabulated curve must be non-decreasing");
        }
    }
    curve_ = std::move(c);
}

CurveSpec CurveSpec::clamped(double lo, double hi, CurveSpec base) {
    return CurveSpec(Clamped{lo, hi, std::make_shared<const CurveSpec>(std::move(base))});
}

namespace {

struct Evaluate {
    double z;

    double operator()(const SignedPower& c) const {
        const double mag = c.a * std::pow(std::abs(z), c.p);
        return (z > 0.0 ? mag : (z < 0.0 ? -mag : 0.0)) + c.b;
    }
    double operator()(const Affine& c) const { return c.a * z + c.b; }
    double operator()(const Hyperbolic& c) const {
        if (z >= c.pole) {
            return std::numeric_limits<double>::infinity();
        }
        return (z - c.zero) / (c.pole - z);
    }
    double operator()(const Clamped& c) const { return std::min(c.hi, std::max(c.lo, (*c.base)(z))); }
    double operator()(const Tabulated& c) const {
        if (z <= c.x.front()) {
            return c.y.front();
        }
        if (z >= c.x.back()) {
            return c.y.back();
        }
        const auto it = std::upper_bound(c.x.begin(), c.x.end(), z);
        const std::size_t i = static_cast<std::size_t>(it - c.x.begin());
        const double s = (z - c.x[i - 1]) / (c.x[i] - c.x[i - 1]);
        return c.y[i - 1] + s * (c.y[i] - c.y[i - 1]);
    }
};

struct Describe {
    std::ostringstream& os;

    void operator()(const SignedPower& c) const { os << c.a << "*|z|^" << c.p << "*sign(z)+" << c.b; }
    void operator()(const Affine& c) const { os << c.a << "*z+" << c.b; }
    void operator()(const Hyperbolic& c) const { os << "(z-" << c.zero << ")/(" << c.pole << "-z)"; }
    void operator()(const Clamped& c) const {
        os << "clamp[" << c.lo << "," << c.hi << "](";
        std::visit(*this, c.base->variant());
        os << ")";
    }
    void operator()(const Tabulated& c) const { os << "table(" << c.x.size() << " samples)"; }
};

} // namespace

double CurveSpec::operator()(double z) const { return std::visit(Evaluate{z}, curve_); }

std::string CurveSpec::describe() const {
    std::ostringstream os;
    std::visit(Describe{os}, curve_);
    return os.str();
}

double sampled_lipschitz(const CurveSpec& curve, double lo, double hi, int n) {
    if (n < 2 || !(hi > lo)) {
        throw InvalidArgument("sampled_lipschitz: need hi > lo and n >= 2");
    }
    const double step = (hi - lo) / (n - 1);
    double best = 0.0;
    double prev = curve(lo);
    for (int i = 1; i < n; ++i) {
        const double cur = curve(lo + i * step);
        best = std::max(best, std::abs(cur - prev) / step);
        prev = cur;
    }
    return best;
}

} // namespace hystrd
