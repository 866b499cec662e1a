#include "hystrd/supply.hpp"

#include "hystrd/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hystrd {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

} // namespace

double SupplySpec::operator()(double t) const {
    return std::visit(overloaded{
                          [](const ConstantSupply& s) { return s.value; },
                          [t](const SinusoidSupply& s) { return s.amplitude * (1.0 - std::cos(s.omega * t)); },
                          [t](const TabulatedSupply& s) {
                              if (t <= s.t.front()) {
                                  return s.F.front();
                              }
                              if (t >= s.t.back()) {
                                  return s.F.back();
                              }
                              const auto it = std::upper_bound(s.t.begin(), s.t.end(), t);
                              const auto i = static_cast<std::size_t>(it - s.t.begin());
                              const double w = (t - s.t[i - 1]) / (s.t[i] - s.t[i - 1]);
                              return s.F[i - 1] + w * (s.F[i] - s.F[i - 1]);
                          },
                      },
                      kind);
}

void SupplySpec::validate() const {
    std::visit(overloaded{
                   [](const ConstantSupply& s) {
                       if (!(s.value >= 0.0) || !std::isfinite(s.value)) {
                           throw InvalidArgument("constant supply must be finite and non-negative");
                       }
                   },
                   [](const SinusoidSupply& s) {
                       if (!(s.amplitude >= 0.0) || !std::isfinite(s.amplitude) || !std::isfinite(s.omega)) {
                           throw InvalidArgument("sinusoid supply needs a finite non-negative amplitude");
                       }
                   },
                   [](const TabulatedSupply& s) {
                       if (s.t.empty() || s.t.size() != s.F.size()) {
                           throw InvalidArgument("tabulated supply needs equally many, and at least one, samples");
                       }
                       for (std::size_t i = 0; i < s.t.size(); ++i) {
                           if (!(s.F[i] >= 0.0) || !std::isfinite(s.F[i])) {
                               throw InvalidArgument("tabulated supply must be finite and non-negative");
                           }
                           if (i > 0 && !(s.t[i] > s.t[i - 1])) {
                               throw InvalidArgument("tabulated supply times must be strictly increasing");
                           }
                       }
                   },
               },
               kind);
}

double SupplySpec::max_on(double T) const {
    return std::visit(overloaded{
                          [](const ConstantSupply& s) { return s.value; },
                          [T](const SinusoidSupply& s) {
                              if (std::abs(s.omega) * T >= std::numbers::pi) {
                                  return 2.0 * s.amplitude;
                              }
                              return s.amplitude * (1.0 - std::cos(s.omega * T));
                          },
                          [this, T](const TabulatedSupply& s) {
                              double best = (*this)(0.0);
                              best = std::max(best, (*this)(T));
                              for (std::size_t i = 0; i < s.t.size(); ++i) {
                                  if (s.t[i] >= 0.0 && s.t[i] <= T) {
                                      best = std::max(best, s.F[i]);
                                  }
                              }
                              return best;
                          },
                      },
                      kind);
}

} // namespace hystrd
