#ifndef RZK_CLI_HPP
#define RZK_CLI_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "rzk/experiments.hpp"
#include "rzk/grid.hpp"
#include "rzk/norms.hpp"
#include "rzk/solver.hpp"

namespace rzk {

enum class Command { simulate, linear_growth, decay_breakdown, uc_jump, b_bounded, inequalities, all };

std::string command_name(Command c);
/// Throws ConfigError for an unknown name.
Command parse_command(const std::string& name);
std::vector<std::string> command_names();

struct RunConfig {
    Command command = Command::all;
    GridSpec grid;
    SolverParams solver;  // solver.grid always equals grid
    NormIndices norms;
    std::uint64_t seed = 0;
    std::string out_dir = "out";
    double t2 = 1.0;       // uc-jump horizon
    int family_size = 50;  // b-bounded and inequality families

    void validate() const;
    bool operator==(const RunConfig&) const = default;
};

/// Sections [grid], [solver], [norms], [run] of key = value lines; '#' and ';'
/// start comments. Missing keys keep their defaults.
RunConfig parse_config(const std::string& text);
std::string serialize_config(const RunConfig& cfg);
/// Effective configuration as pretty-printed JSON.
std::string config_json(const RunConfig& cfg);

std::vector<ExperimentReport> run_experiments(const RunConfig& cfg);

/// Writes one CSV per series, verdicts.csv and config.json into cfg.out_dir.
void write_reports(const RunConfig& cfg, const std::vector<ExperimentReport>& reports);

/// 0 when every verdict passes, 2 on any failed verdict, 1 on error (one line on err).
int run(const RunConfig& cfg, std::ostream& err);

}  // namespace rzk

#endif  // RZK_CLI_HPP
