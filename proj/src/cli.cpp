#include "smartbin/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "smartbin/analysis.hpp"
#include "smartbin/config.hpp"
#include "smartbin/scenario.hpp"
#include "smartbin/simulation.hpp"

namespace smartbin::cli {

namespace {

namespace fs = std::filesystem;

/// Reads a whole file; throws std::runtime_error("<what> not found: ...").
std::string read_file(const fs::path& path, const std::string& what) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error(what + " not found: " + path.string());
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ControlConfig load_config(const std::optional<fs::path>& path) {
    if (!path) {
        return ControlConfig{};
    }
    return parse_config(read_file(*path, "config"));
}

}  // namespace

int cmd_simulate(const SimulateOptions& options, std::ostream& out, std::ostream& err) {
    std::vector<TraceRecord> trace;
    try {
        const Scenario scenario = parse_scenario(read_file(options.scenario, "scenario"));
        const ControlConfig config = load_config(options.config);
        NoiseModel noise;
        noise.seed = options.seed;
        noise.sigma_mm = options.sigma_mm;
        noise.dropout_ppm = NoiseModel::probability_to_ppm(options.dropout);
        trace = run_simulation(scenario, config, noise);
    } catch (const ScenarioError& e) {
        err << "error: " << options.scenario.string() << ": " << e.what() << '\n';
        return kExitError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }

    std::uint64_t opens = 0;
    std::uint64_t closes = 0;
    for (const TraceRecord& r : trace) {
        if (r.servo_command_deg) {
            (r.lid == LidState::Open ? opens : closes) += 1;
        }
    }

    std::ostream* summary = &out;
    if (options.out == "-") {
        write_trace(out, trace, options.format);
        summary = &err;
    } else {
        std::ofstream file(options.out, std::ios::binary | std::ios::trunc);
        if (!file) {
            err << "error: cannot open output file: " << options.out << '\n';
            return kExitError;
        }
        write_trace(file, trace, options.format);
        if (!file.flush()) {
            err << "error: failed writing " << options.out << '\n';
            return kExitError;
        }
    }
    *summary << "simulated " << trace.size() << " cycles: " << opens << " open, " << closes << " close commands\n";
    return kExitOk;
}

int cmd_metrics(const fs::path& trace_path, const fs::path& scenario_path, const std::optional<fs::path>& config_path,
                std::ostream& out, std::ostream& err) {
    Metrics metrics;
    try {
        const auto trace = parse_trace(read_file(trace_path, "trace"));
        const Scenario scenario = parse_scenario(read_file(scenario_path, "scenario"));
        metrics = compute_metrics(trace, scenario, load_config(config_path));
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitError;
    }
    out << format_metrics(metrics);
    return metrics.budget_pass() ? kExitOk : kExitFailed;
}

int cmd_check(const fs::path& trace_path, const std::optional<fs::path>& config_path, std::ostream& out,
              std::ostream& err) {
    InvariantReport report;
    try {
        const auto trace = parse_trace(read_file(trace_path, "trace"));
        report = check_trace(trace, load_config(config_path));
    } catch (const std::exception& e) {
        err << "error: " << trace_path.string() << ": " << e.what() << '\n';
        return kExitError;
    }
    out << format_report(report);
    return report.all_passed() ? kExitOk : kExitFailed;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Smart waste bin controller simulator"};
    app.require_subcommand(1);

    SimulateOptions sim;
    std::string format = "keyvalue";
    auto* simulate = app.add_subcommand("simulate", "Run a scenario through the controller and write a trace");
    simulate->add_option("--scenario", sim.scenario, "Scenario file")->required();
    simulate->add_option("--config", sim.config, "Controller config (key=value)");
    simulate->add_option("--seed", sim.seed, "Noise seed");
    simulate->add_option("--sigma", sim.sigma_mm, "Gaussian distance noise, mm");
    simulate->add_option("--dropout", sim.dropout, "NoEcho probability in [0, 1]");
    simulate->add_option("--out", sim.out, "Trace output path ('-' for stdout)");
    simulate->add_option("--format", format, "Trace format")->check(CLI::IsMember({"keyvalue", "csv"}));

    fs::path trace_path;
    fs::path scenario_path;
    std::optional<fs::path> config_path;
    auto* metrics = app.add_subcommand("metrics", "Score a trace against the response-time budget");
    metrics->add_option("--trace", trace_path, "Trace file")->required();
    metrics->add_option("--scenario", scenario_path, "Scenario the trace was produced from")->required();
    metrics->add_option("--config", config_path, "Controller config used for the run");

    auto* check = app.add_subcommand("check", "Verify trace-level safety invariants");
    check->add_option("--trace", trace_path, "Trace file")->required();
    check->add_option("--config", config_path, "Controller config used for the run");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, out, err);
        return kExitError;
    }

    if (simulate->parsed()) {
        sim.format = format == "csv" ? TraceFormat::Csv : TraceFormat::KeyValue;
        return cmd_simulate(sim, out, err);
    }
    if (metrics->parsed()) {
        return cmd_metrics(trace_path, scenario_path, config_path, out, err);
    }
    return cmd_check(trace_path, config_path, out, err);
}

}  // namespace smartbin::cli
