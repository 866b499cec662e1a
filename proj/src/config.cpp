#include "hystrd/config.hpp"

#include "hystrd/errors.hpp"
#include "hystrd/grid.hpp"
#include "json_codec.hpp"

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <sstream>

namespace hystrd {

namespace detail {

namespace {

std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

std::string indexed(const std::string& path, std::size_t i) {
    return path + "[" + std::to_string(i) + "]";
}

void expect_object(const json& j, const std::string& path) {
    if (!j.is_object()) {
        throw ConfigError(path, "expected an object");
    }
}

void allow_keys(const json& j, const std::string& path, std::initializer_list<const char*> keys) {
    for (const auto& item : j.items()) {
        const bool known = std::any_of(keys.begin(), keys.end(),
                                       [&](const char* k) { return item.key() == k; });
        if (!known) {
            std::string list;
            for (const char* k : keys) {
                list += list.empty() ? k : std::string(", ") + k;
            }
            throw ConfigError(join(path, item.key()), "unknown key (allowed: " + list + ")");
        }
    }
}

double as_number(const json& j, const std::string& path) {
    if (!j.is_number()) {
        throw ConfigError(path, "expected a number");
    }
    const double v = j.get<double>();
    if (!std::isfinite(v)) {
        throw ConfigError(path, "must be finite");
    }
    return v;
}

std::size_t as_count(const json& j, const std::string& path) {
    if (!j.is_number_integer() || j.get<long long>() < 0) {
        throw ConfigError(path, "expected a non-negative integer");
    }
    return j.get<std::size_t>();
}

double number_or(const json& j, const std::string& path, const char* key, double fallback) {
    return j.contains(key) ? as_number(j.at(key), join(path, key)) : fallback;
}

std::size_t count_or(const json& j, const std::string& path, const char* key, std::size_t fallback) {
    return j.contains(key) ? as_count(j.at(key), join(path, key)) : fallback;
}

bool bool_or(const json& j, const std::string& path, const char* key, bool fallback) {
    if (!j.contains(key)) {
        return fallback;
    }
    if (!j.at(key).is_boolean()) {
        throw ConfigError(join(path, key), "expected true or false");
    }
    return j.at(key).get<bool>();
}

std::string string_at(const json& j, const std::string& path) {
    if (!j.is_string()) {
        throw ConfigError(path, "expected a string");
    }
    return j.get<std::string>();
}

std::vector<double> numbers(const json& j, const std::string& path) {
    if (!j.is_array()) {
        throw ConfigError(path, "expected an array of numbers");
    }
    std::vector<double> out;
    for (std::size_t i = 0; i < j.size(); ++i) {
        out.push_back(as_number(j[i], indexed(path, i)));
    }
    return out;
}

template <class F>
auto wrap(const std::string& path, F&& f) -> decltype(f()) {
    try {
        return f();
    } catch (const ConfigError&) {
        throw;
    } catch (const Error& e) {
        throw ConfigError(path, e.what());
    }
}

} // namespace

json curve_to_json(const CurveSpec& curve) {
    return std::visit(
        [](const auto& c) -> json {
            using T = std::decay_t<decltype(c)>;
            if constexpr (std::is_same_v<T, SignedPower>) {
                return {{"family", "signed_power"}, {"a", c.a}, {"p", c.p}, {"b", c.b}};
            } else if constexpr (std::is_same_v<T, Affine>) {
                return {{"family", "affine"}, {"a", c.a}, {"b", c.b}};
            } else if constexpr (std::is_same_v<T, Hyperbolic>) {
                return {{"family", "hyperbolic"}, {"zero", c.zero}, {"pole", c.pole}};
            } else if constexpr (std::is_same_v<T, Clamped>) {
                return {{"family", "clamped"}, {"lo", c.lo}, {"hi", c.hi}, {"base", curve_to_json(*c.base)}};
            } else {
                return {{"family", "tabulated"}, {"x", c.x}, {"y", c.y}};
            }
        },
        curve.variant());
}

CurveSpec curve_from_json(const json& j, const std::string& path) {
    expect_object(j, path);
    if (!j.contains("family")) {
        throw ConfigError(join(path, "family"), "missing curve family");
    }
    const std::string family = string_at(j.at("family"), join(path, "family"));
    return wrap(path, [&]() -> CurveSpec {
        if (family == "signed_power") {
            allow_keys(j, path, {"family", "a", "p", "b"});
            SignedPower c{number_or(j, path, "a", 1.0), number_or(j, path, "p", 1.0), number_or(j, path, "b", 0.0)};
            if (!(c.a >= 0.0) || !(c.p > 0.0)) {
                throw ConfigError(path, "signed_power needs a >= 0 and p > 0 to be monotone");
            }
            return c;
        }
        if (family == "affine") {
            allow_keys(j, path, {"family", "a", "b"});
            Affine c{number_or(j, path, "a", 1.0), number_or(j, path, "b", 0.0)};
            if (!(c.a >= 0.0)) {
                throw ConfigError(join(path, "a"), "affine slope must be >= 0");
            }
            return c;
        }
        if (family == "hyperbolic") {
            allow_keys(j, path, {"family", "zero", "pole"});
            return Hyperbolic{number_or(j, path, "zero", 0.0), number_or(j, path, "pole", 1.0)};
        }
        if (family == "clamped") {
            allow_keys(j, path, {"family", "lo", "hi", "base"});
            if (!j.contains("base")) {
                throw ConfigError(join(path, "base"), "missing base curve");
            }
            return CurveSpec::clamped(number_or(j, path, "lo", 0.0), number_or(j, path, "hi", 0.0),
                                      curve_from_json(j.at("base"), join(path, "base")));
        }
        if (family == "tabulated") {
            allow_keys(j, path, {"family", "x", "y"});
            if (!j.contains("x") || !j.contains("y")) {
                throw ConfigError(path, "tabulated curve needs x and y");
            }
            return Tabulated{numbers(j.at("x"), join(path, "x")), numbers(j.at("y"), join(path, "y"))};
        }
        throw ConfigError(join(path, "family"),
                          "unknown curve family '" + family +
                              "' (allowed: signed_power, affine, hyperbolic, clamped, tabulated)");
    });
}

json supply_to_json(const SupplySpec& supply) {
    return std::visit(
        [](const auto& s) -> json {
            using T = std::decay_t<decltype(s)>;
            if constexpr (std::is_same_v<T, ConstantSupply>) {
                return {{"kind", "constant"}, {"value", s.value}};
            } else if constexpr (std::is_same_v<T, SinusoidSupply>) {
                return {{"kind", "sinusoid"}, {"amplitude", s.amplitude}, {"omega", s.omega}};
            } else {
                return {{"kind", "tabulated"}, {"t", s.t}, {"F", s.F}};
            }
        },
        supply.kind);
}

SupplySpec supply_from_json(const json& j, const std::string& path) {
    expect_object(j, path);
    const std::string kind = j.contains("kind") ? string_at(j.at("kind"), join(path, "kind")) : "sinusoid";
    SupplySpec s;
    if (kind == "constant") {
        allow_keys(j, path, {"kind", "value"});
        s.kind = ConstantSupply{number_or(j, path, "value", 0.0)};
    } else if (kind == "sinusoid") {
        allow_keys(j, path, {"kind", "amplitude", "omega"});
        s.kind = SinusoidSupply{number_or(j, path, "amplitude", 0.2), number_or(j, path, "omega", 1.0)};
    } else if (kind == "tabulated") {
        allow_keys(j, path, {"kind", "t", "F"});
        if (!j.contains("t") || !j.contains("F")) {
            throw ConfigError(path, "tabulated supply needs t and F");
        }
        s.kind = TabulatedSupply{numbers(j.at("t"), join(path, "t")), numbers(j.at("F"), join(path, "F"))};
    } else {
        throw ConfigError(join(path, "kind"),
                          "unknown supply kind '" + kind + "' (allowed: constant, sinusoid, tabulated)");
    }
    wrap(path, [&] { s.validate(); });
    return s;
}

namespace {

const char* variant_name(ConsumeVariant v) { return v == ConsumeVariant::C1 ? "C1" : "C2"; }

const char* normalisation_name(Normalisation n) {
    switch (n) {
    case Normalisation::L2:
        return "l2";
    case Normalisation::Max:
        return "max";
    case Normalisation::None:
        break;
    }
    return "none";
}

ExperimentKind kind_from(const std::string& s) {
    if (s == "eps_system") return ExperimentKind::EpsSystem;
    if (s == "limit_system") return ExperimentKind::LimitSystem;
    if (s == "convergence") return ExperimentKind::Convergence;
    if (s == "mode_dichotomy") return ExperimentKind::ModeDichotomy;
    throw ConfigError("experiment", "unknown experiment kind '" + s +
                                        "' (allowed: eps_system, limit_system, convergence, mode_dichotomy)");
}

} // namespace

json config_to_json(const RunConfig& c) {
    json j;
    j["experiment"] = to_string(c.kind);
    j["grid"] = {{"n_cells", c.n_cells}};
    j["dt"] = c.dt;
    j["horizon"] = c.horizon;
    j["stride"] = c.stride;
    j["diffusion"] = c.diffusion ? json(*c.diffusion) : json("inverse_lambda1");
    j["eps"] = c.eps;
    j["consume"] = {{"variant", variant_name(c.consume.variant)}, {"c_min", c.consume.c_min},
                    {"c_de_inf", c.consume.c_de_inf}, {"c_st", c.consume.c_st},
                    {"c_max", c.consume.c_max}, {"s_max", c.consume.s_max}};
    j["supply"] = supply_to_json(c.supply);
    json modes = json::array();
    for (const auto& [k, a] : c.initial.modes) {
        modes.push_back({k, a});
    }
    j["initial"] = {{"modes", modes}, {"normalisation", normalisation_name(c.initial.normalisation)},
                    {"S_in", c.initial.S_in}, {"R0", c.initial.R0}};
    j["convergence"] = {{"eps_list", c.convergence.eps_list}, {"q", c.convergence.q},
                        {"dt_factor", c.convergence.dt_factor}};
    j["mode_model"] = {{"m", c.mode.m},
                       {"weights", c.mode.weights},
                       {"upper", curve_to_json(c.mode.upper)},
                       {"lower", curve_to_json(c.mode.lower)},
                       {"mirrored", c.mode.mirrored},
                       {"play", c.mode.stepper == PlayStepper::Exact ? "exact" : "regularized"},
                       {"eps_reg", c.mode.eps_reg},
                       {"tracked_modes", c.mode.tracked_modes},
                       {"tol_contact", c.mode.tol_contact},
                       {"snapshot_times", c.mode.snapshot_times}};
    return j;
}

RunConfig config_from_json(const json& j) {
    expect_object(j, "");
    allow_keys(j, "", {"experiment", "grid", "dt", "horizon", "stride", "diffusion", "eps", "consume", "supply",
                       "initial", "convergence", "mode_model"});
    RunConfig c;
    if (!j.contains("experiment")) {
        throw ConfigError("experiment", "missing (allowed: eps_system, limit_system, convergence, mode_dichotomy)");
    }
    c.kind = kind_from(string_at(j.at("experiment"), "experiment"));

    if (j.contains("grid")) {
        const json& g = j.at("grid");
        expect_object(g, "grid");
        allow_keys(g, "grid", {"n_cells"});
        c.n_cells = count_or(g, "grid", "n_cells", c.n_cells);
    }
    c.dt = number_or(j, "", "dt", c.dt);
    c.horizon = number_or(j, "", "horizon", c.horizon);
    c.stride = count_or(j, "", "stride", c.stride);
    c.eps = number_or(j, "", "eps", c.eps);
    if (j.contains("diffusion")) {
        const json& d = j.at("diffusion");
        if (d.is_string()) {
            if (d.get<std::string>() != "inverse_lambda1") {
                throw ConfigError("diffusion", "expected a number or \"inverse_lambda1\"");
            }
            c.diffusion.reset();
        } else {
            c.diffusion = as_number(d, "diffusion");
        }
    }

    if (j.contains("consume")) {
        const json& p = j.at("consume");
        expect_object(p, "consume");
        allow_keys(p, "consume", {"variant", "c_min", "c_de_inf", "c_st", "c_max", "s_max"});
        if (p.contains("variant")) {
            const std::string v = string_at(p.at("variant"), "consume.variant");
            if (v == "C1") {
                c.consume.variant = ConsumeVariant::C1;
            } else if (v == "C2") {
                c.consume.variant = ConsumeVariant::C2;
            } else {
                throw ConfigError("consume.variant", "unknown variant '" + v + "' (allowed: C1, C2)");
            }
        }
        c.consume.c_min = number_or(p, "consume", "c_min", c.consume.c_min);
        c.consume.c_de_inf = number_or(p, "consume", "c_de_inf", c.consume.c_de_inf);
        c.consume.c_st = number_or(p, "consume", "c_st", c.consume.c_st);
        c.consume.c_max = number_or(p, "consume", "c_max", c.consume.c_max);
        c.consume.s_max = number_or(p, "consume", "s_max", c.consume.s_max);
    }
    if (j.contains("supply")) {
        c.supply = supply_from_json(j.at("supply"), "supply");
    }

    if (j.contains("initial")) {
        const json& in = j.at("initial");
        expect_object(in, "initial");
        allow_keys(in, "initial", {"modes", "normalisation", "S_in", "R0"});
        if (in.contains("modes")) {
            const json& ms = in.at("modes");
            if (!ms.is_array() || ms.empty()) {
                throw ConfigError("initial.modes", "expected a non-empty array of [index, coefficient] pairs");
            }
            c.initial.modes.clear();
            for (std::size_t i = 0; i < ms.size(); ++i) {
                const std::string p = indexed("initial.modes", i);
                if (!ms[i].is_array() || ms[i].size() != 2) {
                    throw ConfigError(p, "expected [index, coefficient]");
                }
                c.initial.modes.emplace_back(as_count(ms[i][0], p + "[0]"), as_number(ms[i][1], p + "[1]"));
            }
        }
        if (in.contains("normalisation")) {
            const std::string n = string_at(in.at("normalisation"), "initial.normalisation");
            if (n == "l2") {
                c.initial.normalisation = Normalisation::L2;
            } else if (n == "max") {
                c.initial.normalisation = Normalisation::Max;
            } else if (n == "none") {
                c.initial.normalisation = Normalisation::None;
            } else {
                throw ConfigError("initial.normalisation", "unknown normalisation '" + n + "' (allowed: l2, max, none)");
            }
        }
        c.initial.S_in = number_or(in, "initial", "S_in", c.initial.S_in);
        c.initial.R0 = number_or(in, "initial", "R0", c.initial.R0);
    }

    if (j.contains("convergence")) {
        const json& cv = j.at("convergence");
        expect_object(cv, "convergence");
        allow_keys(cv, "convergence", {"eps_list", "q", "dt_factor"});
        if (cv.contains("eps_list")) {
            c.convergence.eps_list = numbers(cv.at("eps_list"), "convergence.eps_list");
        }
        c.convergence.q = number_or(cv, "convergence", "q", c.convergence.q);
        c.convergence.dt_factor = number_or(cv, "convergence", "dt_factor", c.convergence.dt_factor);
    }

    if (j.contains("mode_model")) {
        const json& mm = j.at("mode_model");
        const std::string path = "mode_model";
        expect_object(mm, path);
        allow_keys(mm, path, {"m", "weights", "upper", "lower", "mirrored", "play", "eps_reg", "tracked_modes",
                              "tol_contact", "snapshot_times"});
        c.mode.m = count_or(mm, path, "m", c.mode.m);
        if (mm.contains("weights")) {
            c.mode.weights = numbers(mm.at("weights"), "mode_model.weights");
        }
        if (mm.contains("upper")) {
            c.mode.upper = curve_from_json(mm.at("upper"), "mode_model.upper");
        }
        if (mm.contains("lower")) {
            c.mode.lower = curve_from_json(mm.at("lower"), "mode_model.lower");
        }
        c.mode.mirrored = bool_or(mm, path, "mirrored", c.mode.mirrored);
        if (mm.contains("play")) {
            const std::string s = string_at(mm.at("play"), "mode_model.play");
            if (s == "exact") {
                c.mode.stepper = PlayStepper::Exact;
            } else if (s == "regularized") {
                c.mode.stepper = PlayStepper::Regularized;
            } else {
                throw ConfigError("mode_model.play", "unknown play stepper '" + s + "' (allowed: exact, regularized)");
            }
        }
        c.mode.eps_reg = number_or(mm, path, "eps_reg", c.mode.eps_reg);
        c.mode.tracked_modes = count_or(mm, path, "tracked_modes", c.mode.tracked_modes);
        c.mode.tol_contact = number_or(mm, path, "tol_contact", c.mode.tol_contact);
        if (mm.contains("snapshot_times")) {
            c.mode.snapshot_times = numbers(mm.at("snapshot_times"), "mode_model.snapshot_times");
        }
    }
    return c;
}

} // namespace detail

using detail::json;

std::string to_string(ExperimentKind kind) {
    switch (kind) {
    case ExperimentKind::EpsSystem:
        return "eps_system";
    case ExperimentKind::LimitSystem:
        return "limit_system";
    case ExperimentKind::Convergence:
        return "convergence";
    case ExperimentKind::ModeDichotomy:
        break;
    }
    return "mode_dichotomy";
}

namespace {

void apply_override(json& root, const std::string& item) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
        throw ConfigError("--override", "expected KEY=VALUE, got '" + item + "'");
    }
    const std::string key = item.substr(0, eq);
    const std::string text = item.substr(eq + 1);
    json value = json::parse(text, nullptr, false);
    if (value.is_discarded()) {
        value = text;
    }

    json* node = &root;
    std::size_t start = 0;
    while (true) {
        const auto dot = key.find('.', start);
        const std::string seg = key.substr(start, dot == std::string::npos ? std::string::npos : dot - start);
        if (seg.empty()) {
            throw ConfigError(key, "empty path segment in override");
        }
        if (node->is_array()) {
            std::size_t idx = 0;
            try {
                idx = std::stoul(seg);
            } catch (const std::exception&) {
                throw ConfigError(key, "array segment '" + seg + "' is not an index");
            }
            if (idx >= node->size()) {
                throw ConfigError(key, "index " + seg + " out of range");
            }
            node = &(*node)[idx];
        } else {
            if (node->is_null()) {
                *node = json::object();
            }
            if (!node->is_object()) {
                throw ConfigError(key, "cannot descend into a scalar");
            }
            node = &(*node)[seg];
        }
        if (dot == std::string::npos) {
            break;
        }
        start = dot + 1;
    }
    *node = std::move(value);
}

void check(bool ok, const std::string& path, const std::string& what) {
    if (!ok) {
        throw ConfigError(path, what);
    }
}

} // namespace

RunConfig parse_config(const std::string& text, const std::vector<std::string>& overrides) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        // nlohmann reports "line L, column C" in its message
        throw ConfigError("", std::string("parse error: ") + e.what());
    }
    for (const auto& o : overrides) {
        apply_override(j, o);
    }
    RunConfig c = detail::config_from_json(j);
    validate(c);
    return c;
}

std::string serialise(const RunConfig& config) { return detail::config_to_json(config).dump(2) + "\n"; }

void validate(const RunConfig& c) {
    check(c.n_cells >= 2, "grid.n_cells", "must be >= 2");
    check(std::isfinite(c.dt) && c.dt > 0.0, "dt", "must be positive");
    check(std::isfinite(c.horizon) && c.horizon >= 0.0, "horizon", "must be >= 0");
    check(c.stride >= 1, "stride", "must be >= 1");
    check(std::isfinite(c.eps) && c.eps > 0.0, "eps", "must be positive");
    if (c.diffusion) {
        check(std::isfinite(*c.diffusion) && *c.diffusion >= 0.0, "diffusion", "must be >= 0");
    }
    detail::wrap("consume", [&] { validate(c.consume); });
    detail::wrap("supply", [&] { c.supply.validate(); });

    for (std::size_t i = 0; i < c.initial.modes.size(); ++i) {
        check(c.initial.modes[i].first < c.n_cells, "initial.modes[" + std::to_string(i) + "]",
              "mode index must be < n_cells");
    }
    check(std::isfinite(c.initial.S_in) && c.initial.S_in >= 0.0, "initial.S_in", "must be >= 0");

    if (c.kind == ExperimentKind::Convergence) {
        check(!c.convergence.eps_list.empty(), "convergence.eps_list", "must not be empty");
        for (std::size_t i = 0; i < c.convergence.eps_list.size(); ++i) {
            check(c.convergence.eps_list[i] > 0.0, "convergence.eps_list[" + std::to_string(i) + "]",
                  "must be positive");
        }
        check(c.convergence.q >= 1.0, "convergence.q", "must be >= 1");
        check(c.convergence.dt_factor > 0.0, "convergence.dt_factor", "must be positive");
    }

    if (c.kind == ExperimentKind::ModeDichotomy) {
        const ModeBlock& m = c.mode;
        check(m.m >= 1, "mode_model.m", "must be >= 1");
        check(m.weights.size() >= 2, "mode_model.weights", "need at least two weights (m < M)");
        check(m.m + m.weights.size() - 1 < c.n_cells, "mode_model.weights", "highest mode must be < n_cells");
        check(m.tracked_modes + 1 <= c.n_cells, "mode_model.tracked_modes", "must be < n_cells");
        check(m.tol_contact > 0.0, "mode_model.tol_contact", "must be positive");
        if (m.stepper == PlayStepper::Regularized) {
            check(m.eps_reg > 0.0, "mode_model.eps_reg", "must be positive");
            check(c.dt <= m.eps_reg, "mode_model.eps_reg", "regularised play needs dt <= eps_reg");
        }
        for (std::size_t i = 0; i < m.snapshot_times.size(); ++i) {
            check(m.snapshot_times[i] >= 0.0 && m.snapshot_times[i] <= c.horizon,
                  "mode_model.snapshot_times[" + std::to_string(i) + "]", "must lie in [0, horizon]");
        }
        ModeModel probe;
        probe.D = 0.0;
        probe.m = m.m;
        probe.weights = m.weights;
        probe.mirrored = m.mirrored;
        probe.stepper = m.stepper;
        probe.eps_reg = m.eps_reg;
        detail::wrap("mode_model.weights", [&] { validate(probe); });
    }
}

double resolved_diffusion(const RunConfig& config) {
    if (config.diffusion) {
        return *config.diffusion;
    }
    const Grid1D grid = build_grid(config.n_cells);
    return 1.0 / eigenpairs(grid, 2).eigenvalues[1];
}

std::vector<double> initial_field(const RunConfig& config) {
    const Grid1D grid = build_grid(config.n_cells);
    std::size_t K = 1;
    for (const auto& mode : config.initial.modes) {
        K = std::max(K, mode.first + 1);
    }
    const SpectralBasis basis = eigenpairs(grid, K);
    double scale = 1.0;
    if (config.initial.normalisation == Normalisation::L2) {
        scale = 1.0 / std::sqrt(grid.h);
    }
    std::vector<double> field = synthesize(basis, config.initial.modes, scale);
    if (config.initial.normalisation == Normalisation::Max) {
        double mx = 0.0;
        for (double v : field) {
            mx = std::max(mx, std::abs(v));
        }
        if (!(mx > 0.0)) {
            throw ConfigError("initial.modes", "initial field vanishes; cannot normalise");
        }
        for (double& v : field) {
            v /= mx;
        }
    }
    return field;
}

} // namespace hystrd
