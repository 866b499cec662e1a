// hystrd: run, converge, classify and report on hysteresis-reaction experiments.

#include "hystrd/errors.hpp"
#include "hystrd/runner.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

enum Exit { kOk = 0, kOther = 1, kConfig = 2, kDivergence = 3 };

struct Options {
    std::string config;
    std::string preset;
    std::string out = "out";
    std::vector<std::string> overrides;
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw hystrd::ConfigError("--config", "cannot read '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

hystrd::RunConfig load(const Options& o) {
    if (o.config.empty() == o.preset.empty()) {
        throw hystrd::ConfigError("--config", "give exactly one of --config PATH or --preset NAME");
    }
    const std::string text = o.preset.empty() ? slurp(o.config) : hystrd::preset_text(o.preset);
    return hystrd::parse_config(text, o.overrides);
}

int run_experiment(const Options& o, const char* command) {
    const hystrd::RunConfig config = load(o);
    const std::string cmd = command;
    if (cmd == "converge" && config.kind != hystrd::ExperimentKind::Convergence) {
        throw hystrd::ConfigError("experiment", "converge needs experiment = convergence");
    }
    if (cmd == "classify" && config.kind != hystrd::ExperimentKind::ModeDichotomy) {
        throw hystrd::ConfigError("experiment", "classify needs experiment = mode_dichotomy");
    }
    const hystrd::RunResult result = hystrd::execute(config);
    hystrd::write_outputs(result, o.out);
    std::ifstream in(std::filesystem::path(o.out) / "summary.json");
    std::ostringstream ss;
    ss << in.rdbuf();
    std::cout << hystrd::report_text(ss.str());
    return kOk;
}

void add_common(CLI::App* sub, Options& o) {
    sub->add_option("--config", o.config, "JSON config file");
    sub->add_option("--preset", o.preset, "bundled preset: population-fig2, dichotomy-cave, dichotomy-vex, convergence-sweep");
    sub->add_option("--out", o.out, "output directory")->capture_default_str();
    sub->add_option("--override", o.overrides, "KEY=VALUE applied before validation (repeatable)");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"hysteresis reaction-diffusion experiments"};
    app.require_subcommand(1);
    Options opts;
    CLI::App* run = app.add_subcommand("run", "run any configured experiment");
    CLI::App* converge = app.add_subcommand("converge", "singular-limit convergence sweep");
    CLI::App* classify = app.add_subcommand("classify", "mode-model run with dichotomy classification");
    CLI::App* report = app.add_subcommand("report", "print summary.json of an output directory");
    for (CLI::App* sub : {run, converge, classify}) {
        add_common(sub, opts);
    }
    report->add_option("--out", opts.out, "output directory")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kConfig;
    }

    try {
        if (report->parsed()) {
            std::cout << hystrd::report_text(slurp((std::filesystem::path(opts.out) / "summary.json").string()));
            return kOk;
        }
        for (CLI::App* sub : {run, converge, classify}) {
            if (sub->parsed()) {
                return run_experiment(opts, sub->get_name().c_str());
            }
        }
    } catch (const hystrd::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kConfig;
    } catch (const hystrd::DivergenceError& e) {
        std::cerr << "divergence: " << e.what() << "\n";
        return kDivergence;
    } catch (const hystrd::DegeneratePopulation& e) {
        std::cerr << "divergence: " << e.what() << "\n";
        return kDivergence;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kOther;
    }
    return kOther;
}
