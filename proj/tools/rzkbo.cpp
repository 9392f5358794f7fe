#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "rzk/cli.hpp"

int main(int argc, char** argv)
{
    CLI::App app{"rZK-BO pseudo-spectral simulator and analysis harness"};
    std::string command, config_path, out_dir;
    std::uint64_t seed = 0;
    app.add_option("command", command, "experiment to run")->required()->check(CLI::IsMember(rzk::command_names()));
    app.add_option("--config", config_path, "key = value configuration file")->required();
    auto* out_opt = app.add_option("--out", out_dir, "output directory (overrides [run] out_dir)");
    auto* seed_opt = app.add_option("--seed", seed, "random seed (overrides [run] seed)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e) == 0 ? 0 : 1;
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }

    rzk::RunConfig cfg;
    try {
        std::ifstream in(config_path);
        if (!in) throw rzk::ConfigError("cannot read config file " + config_path);
        std::ostringstream text;
        text << in.rdbuf();
        cfg = rzk::parse_config(text.str());
        cfg.command = rzk::parse_command(command);
        if (*out_opt) cfg.out_dir = out_dir;
        if (*seed_opt) cfg.seed = seed;
        cfg.validate();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return rzk::run(cfg, std::cerr);
}
