#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "essnorm/experiments.hpp"
#include "essnorm/kernels.hpp"

namespace ex = essnorm::experiments;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_assertion = 1;
constexpr int exit_config = 2;

int run(const std::string& config_path, const std::string& out_dir)
{
    const auto config = ex::load_config(config_path);
    const auto result = ex::run_scenario(config);
    const auto csv = ex::emit(result, config, out_dir);
    std::cout << ex::to_report(result);
    std::cout << "wrote " << csv.string() << "\n";
    return result.all_passed() ? exit_ok : exit_assertion;
}

int validate(const std::string& config_path)
{
    const auto config = ex::load_config(config_path);
    ex::validate(config);
    std::cout << "ok: " << ex::to_string(config.scenario) << "\n";
    return exit_ok;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"essnorm-lab: essential norms of multiplication operators at desk scale"};
    app.require_subcommand(1);

    std::string config_path, out_dir;
    auto* run_cmd = app.add_subcommand("run", "run one scenario and write CSV + report");
    run_cmd->add_option("--config", config_path, "JSON experiment configuration")->required();
    run_cmd->add_option("--out", out_dir, "output directory")->required();

    auto* validate_cmd = app.add_subcommand("validate", "check a configuration without running it");
    validate_cmd->add_option("--config", config_path, "JSON experiment configuration")->required();

    auto* list_cmd = app.add_subcommand("list-scenarios", "print the available scenarios");

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_config;
    }

    try {
        essnorm::kernels::configure_workers_from_env();
        if (*list_cmd) {
            for (auto s : ex::all_scenarios()) std::cout << ex::to_string(s) << "\t" << ex::describe(s) << "\n";
            return exit_ok;
        }
        if (*validate_cmd) return validate(config_path);
        return run(config_path, out_dir);
    }
    catch (const ex::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return exit_config;
    }
    catch (const ex::IoError& e) {
        std::cerr << "i/o error: " << e.what() << "\n";
        return exit_config;
    }
    catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_config;
    }
}
