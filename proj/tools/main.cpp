#include <CLI11.hpp>
#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) {
    using namespace dynes::cli;
    CLI::App app{"Temporal production-rule engine"};
    app.require_subcommand(1);

    fs::path check_kb;
    auto* check_cmd = app.add_subcommand("check", "Validate a knowledge base");
    check_cmd->add_option("kb", check_kb, "KRL file")->required();

    RunArgs run_args;
    std::string run_config;
    auto* run_cmd = app.add_subcommand("run", "Run a scenario and write a trace");
    run_cmd->add_option("--kb", run_args.kb)->required();
    run_cmd->add_option("--scenario", run_args.scenario)->required();
    run_cmd->add_option("--ticks", run_args.ticks)->required();
    run_cmd->add_option("--trace", run_args.trace)->required();
    run_cmd->add_option("--config", run_config, "JSON sidecar config");
    run_cmd->add_flag("--no-cache", run_args.no_cache, "Disable the evaluation cache");

    ConsultArgs consult_args;
    std::string consult_log, consult_config;
    auto* consult_cmd = app.add_subcommand("consult", "Interactive consultation on standard input");
    consult_cmd->add_option("--kb", consult_args.kb)->required();
    consult_cmd->add_option("--goal", consult_args.goal)->required();
    consult_cmd->add_option("--log", consult_log, "Write the JSON transcript here");
    consult_cmd->add_option("--config", consult_config, "JSON sidecar config");

    std::string host = "127.0.0.1", static_dir;
    int port = 8080;
    auto* serve_cmd = app.add_subcommand("serve", "HTTP session service");
    serve_cmd->add_option("--port", port);
    serve_cmd->add_option("--host", host);
    serve_cmd->add_option("--static", static_dir, "Directory of static assets");

    fs::path replay_kb, replay_scenario, replay_trace;
    auto* replay_cmd = app.add_subcommand("replay", "Re-run a trace and report the first divergence");
    replay_cmd->add_option("--kb", replay_kb)->required();
    replay_cmd->add_option("--scenario", replay_scenario)->required();
    replay_cmd->add_option("--trace", replay_trace)->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (*check_cmd) return check(check_kb, std::cerr);
    if (*run_cmd) {
        if (!run_config.empty()) run_args.config = run_config;
        return run(run_args, std::cout, std::cerr);
    }
    if (*consult_cmd) {
        if (!consult_log.empty()) consult_args.log = consult_log;
        if (!consult_config.empty()) consult_args.config = consult_config;
        return consult(consult_args, std::cin, std::cout, std::cerr);
    }
    if (*serve_cmd) {
        std::optional<fs::path> dir;
        if (!static_dir.empty()) dir = static_dir;
        return serve(host, port, dir, std::cout, std::cerr);
    }
    return replay(replay_kb, replay_scenario, replay_trace, std::cout, std::cerr);
}
