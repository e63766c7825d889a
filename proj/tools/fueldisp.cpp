// fueldisp: batch scenario runner and live bridge for the simulated dispenser.
//
//   fueldisp run --scenario one_liter.scn [--tick-ms 10] [--until-ms N]
//                [--flow-k 26000] [--tank-l 10] [--format text|structured] [--out FILE]
//   fueldisp serve [--port 8765] [--timescale 1] [--tick-ms 10] [--flow-k 26000] [--tank-l 10]
//
// run exits 0 on success, 1 when the scenario cannot be read or parsed, and 2
// when the firmware drives an illegal motor pin state.

#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <boost/asio/io_context.hpp>
#include <boost/asio/signal_set.hpp>

#include "fueldisp/scenario.hpp"
#include "fueldisp/server.hpp"

namespace {

struct CommonOptions {
    std::int64_t tick_ms = fueldisp::kDefaultScanPeriodMs;
    std::int64_t flow_k = fueldisp::FlowConstant::kDefaultMsPerLiter;
    std::string tank_l = "10";
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--tick-ms", opts.tick_ms, "Scan / control period in ms")->check(CLI::PositiveNumber);
    cmd->add_option("--flow-k", opts.flow_k, "Pump calibration, motor-on ms per liter")->check(CLI::PositiveNumber);
    cmd->add_option("--tank-l", opts.tank_l, "Reservoir volume in liters");
}

int run_command(const std::string& scenario_path, const CommonOptions& opts, CLI::App* cmd,
                std::optional<std::int64_t> until_ms, const std::string& format, const std::string& out_path) {
    std::ifstream in(scenario_path, std::ios::binary);
    if (!in) {
        std::cerr << "fueldisp: cannot open scenario '" << scenario_path << "'\n";
        return 1;
    }
    std::stringstream text;
    text << in.rdbuf();

    fueldisp::RunConfig config;
    config.tick = fueldisp::DurationMs{opts.tick_ms};
    if (until_ms) config.until = fueldisp::SimTimeMs{*until_ms};
    // Explicit flags win over the scenario's @0 directives.
    if (cmd->count("--flow-k") > 0) config.flow = fueldisp::FlowConstant{opts.flow_k};
    if (cmd->count("--tank-l") > 0) {
        const auto tank = fueldisp::parse_liters(opts.tank_l);
        if (!tank) {
            std::cerr << "fueldisp: bad --tank-l '" << opts.tank_l << "'\n";
            return 1;
        }
        config.tank = *tank;
    }

    std::string output;
    try {
        const auto scenario = fueldisp::parse_scenario(text.str());
        const auto transcript = fueldisp::run_scenario(scenario, config);
        output = fueldisp::format_transcript(transcript, format == "structured"
                                                             ? fueldisp::TranscriptFormat::Structured
                                                             : fueldisp::TranscriptFormat::Text);
    } catch (const fueldisp::ScenarioError& e) {
        std::cerr << "fueldisp: " << scenario_path << ": " << e.what() << '\n';
        return 1;
    } catch (const fueldisp::InvariantViolation& e) {
        std::cerr << "fueldisp: invariant violation: " << e.what() << '\n';
        return 2;
    }

    if (out_path.empty()) {
        std::cout << output;
        return 0;
    }
    std::ofstream out(out_path, std::ios::binary);
    out << output;
    if (!out) {
        std::cerr << "fueldisp: cannot write '" << out_path << "'\n";
        return 1;
    }
    return 0;
}

int serve_command(const CommonOptions& opts, const std::string& address, std::uint16_t port, double timescale) {
    const auto tank = fueldisp::parse_liters(opts.tank_l);
    if (!tank) {
        std::cerr << "fueldisp: bad --tank-l '" << opts.tank_l << "'\n";
        return 1;
    }
    fueldisp::bridge::ServerConfig config;
    config.address = address;
    config.port = port;
    config.driver.sim.tick = fueldisp::DurationMs{opts.tick_ms};
    config.driver.sim.flow = fueldisp::FlowConstant{opts.flow_k};
    config.driver.sim.tank = *tank;
    config.driver.timescale = timescale;

    std::unique_ptr<fueldisp::bridge::Server> server;
    try {
        server = std::make_unique<fueldisp::bridge::Server>(config);
    } catch (const std::exception& e) {
        std::cerr << "fueldisp: cannot listen on " << address << ':' << port << ": " << e.what() << '\n';
        return 1;
    }
    server->start();
    std::cerr << "fueldisp: bridge listening on ws://" << address << ':' << server->port() << "/ (GET /health)\n";

    boost::asio::io_context signals_ctx;
    boost::asio::signal_set signals(signals_ctx, SIGINT, SIGTERM);
    signals.async_wait([&](const boost::system::error_code&, int) { server->stop(); });
    signals_ctx.run();
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simulated STM32/L298N fuel dispenser"};
    app.require_subcommand(1);

    CommonOptions run_opts;
    std::string scenario_path;
    std::optional<std::int64_t> until_ms;
    std::string format = "text";
    std::string out_path;
    auto* run = app.add_subcommand("run", "Run a key-press scenario and print its transcript");
    run->add_option("--scenario", scenario_path, "Scenario script")->required();
    add_common(run, run_opts);
    run->add_option("--until-ms", until_ms, "Stop the simulation at this time")->check(CLI::NonNegativeNumber);
    run->add_option("--format", format, "Transcript format")->check(CLI::IsMember({"text", "structured"}));
    run->add_option("--out", out_path, "Write the transcript here instead of stdout");

    CommonOptions serve_opts;
    std::string address = "127.0.0.1";
    std::uint16_t port = 8765;
    double timescale = 1.0;
    auto* serve = app.add_subcommand("serve", "Run the dispenser live behind a websocket bridge");
    add_common(serve, serve_opts);
    serve->add_option("--address", address, "Listen address");
    serve->add_option("--port", port, "Listen port");
    serve->add_option("--timescale", timescale, "Sim-time speedup factor")->check(CLI::Range(0.1, 100.0));

    CLI11_PARSE(app, argc, argv);

    if (*run) {
        return run_command(scenario_path, run_opts, run, until_ms, format, out_path);
    }
    return serve_command(serve_opts, address, port, timescale);
}
