#include "rzk/cli.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace rzk {

namespace {

const std::vector<std::pair<Command, std::string>>& command_table()
{
    static const std::vector<std::pair<Command, std::string>> t = {
        {Command::simulate, "simulate"},         {Command::linear_growth, "linear-growth"},
        {Command::decay_breakdown, "decay-breakdown"}, {Command::uc_jump, "uc-jump"},
        {Command::b_bounded, "b-bounded"},       {Command::inequalities, "inequalities"},
        {Command::all, "all"},
    };
    return t;
}

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct Ctx {
    std::string section, key, value;

    [[noreturn]] void bad() const
    {
        throw ConfigError("invalid value '" + value + "' for key " + key + " in section [" + section + "]");
    }

    double real() const
    {
        double v = 0.0;
        const char* b = value.data();
        const char* e = b + value.size();
        auto [p, ec] = std::from_chars(b, e, v);
        if (ec != std::errc() || p != e || !std::isfinite(v)) bad();
        return v;
    }

    template <class I>
    I integer() const
    {
        I v = 0;
        const char* b = value.data();
        const char* e = b + value.size();
        auto [p, ec] = std::from_chars(b, e, v);
        if (ec != std::errc() || p != e) bad();
        return v;
    }

    bool boolean() const
    {
        if (value == "true" || value == "1") return true;
        if (value == "false" || value == "0") return false;
        bad();
    }
};

using Setter = void (*)(RunConfig&, const Ctx&);

const std::map<std::string, std::map<std::string, Setter>>& setters()
{
    static const std::map<std::string, std::map<std::string, Setter>> s = {
        {"grid",
         {
             {"nx", [](RunConfig& c, const Ctx& x) { c.grid.nx = x.integer<int>(); }},
             {"ny", [](RunConfig& c, const Ctx& x) { c.grid.ny = x.integer<int>(); }},
             {"lx", [](RunConfig& c, const Ctx& x) { c.grid.lx = x.real(); }},
             {"ly", [](RunConfig& c, const Ctx& x) { c.grid.ly = x.real(); }},
         }},
        {"solver",
         {
             {"a", [](RunConfig& c, const Ctx& x) { c.solver.a_coef = x.real(); }},
             {"b", [](RunConfig& c, const Ctx& x) { c.solver.b_coef = x.real(); }},
             {"n", [](RunConfig& c, const Ctx& x) { c.solver.n_power = x.integer<int>(); }},
             {"dt", [](RunConfig& c, const Ctx& x) { c.solver.dt = x.real(); }},
             {"t_end", [](RunConfig& c, const Ctx& x) { c.solver.t_end = x.real(); }},
             {"picard_tol", [](RunConfig& c, const Ctx& x) { c.solver.picard_tol = x.real(); }},
             {"picard_max", [](RunConfig& c, const Ctx& x) { c.solver.picard_max = x.integer<int>(); }},
             {"dealias", [](RunConfig& c, const Ctx& x) { c.solver.dealias = x.boolean(); }},
             {"nonlinear_includes_dyy",
              [](RunConfig& c, const Ctx& x) { c.solver.nonlinear_includes_dyy = x.boolean(); }},
             {"record_every", [](RunConfig& c, const Ctx& x) { c.solver.record_every = x.integer<int>(); }},
         }},
        {"norms",
         {
             {"s1", [](RunConfig& c, const Ctx& x) { c.norms.s1 = x.real(); }},
             {"s2", [](RunConfig& c, const Ctx& x) { c.norms.s2 = x.real(); }},
             {"r1", [](RunConfig& c, const Ctx& x) { c.norms.r1 = x.real(); }},
             {"r2", [](RunConfig& c, const Ctx& x) { c.norms.r2 = x.real(); }},
         }},
        {"run",
         {
             {"command", [](RunConfig& c, const Ctx& x) { c.command = parse_command(x.value); }},
             {"seed", [](RunConfig& c, const Ctx& x) { c.seed = x.integer<std::uint64_t>(); }},
             {"out_dir", [](RunConfig& c, const Ctx& x) { c.out_dir = x.value; }},
             {"t2", [](RunConfig& c, const Ctx& x) { c.t2 = x.real(); }},
             {"family_size", [](RunConfig& c, const Ctx& x) { c.family_size = x.integer<int>(); }},
         }},
    };
    return s;
}

std::string sanitize(const std::string& s)
{
    std::string r;
    for (char ch : s) {
        const bool ok = std::isalnum(static_cast<unsigned char>(ch)) || ch == '.' || ch == '-' || ch == '_' || ch == '=';
        r += ok ? ch : '_';
    }
    return r;
}

}  // namespace

std::string command_name(Command c)
{
    for (const auto& [k, n] : command_table())
        if (k == c) return n;
    throw StructuralError("unknown command value");
}

Command parse_command(const std::string& name)
{
    for (const auto& [k, n] : command_table())
        if (n == name) return k;
    throw ConfigError("unknown command '" + name + "'");
}

std::vector<std::string> command_names()
{
    std::vector<std::string> r;
    for (const auto& [k, n] : command_table()) r.push_back(n);
    return r;
}

void RunConfig::validate() const
{
    grid.validate();
    if (!(solver.grid == grid)) throw StructuralError("solver grid differs from [grid]");
    solver.validate();
    norms.validate();
    if (out_dir.empty()) throw ConfigError("out_dir must not be empty");
    if (!(t2 > 0)) throw ConfigError("t2 must be > 0");
    if (family_size < 2) throw ConfigError("family_size must be >= 2");
    if (command == Command::b_bounded && !(norms.r1 < 2.5))
        throw ConfigError("r1 must be < 2.5 for b-bounded pass regime");
    if (command == Command::uc_jump && solver.n_power != 2)
        throw ConfigError("uc-jump needs n = 2");
}

RunConfig parse_config(const std::string& text)
{
    RunConfig cfg;
    std::istringstream in(text);
    std::string line, section;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto c = line.find_first_of("#;");
        if (c != std::string::npos) line.erase(c);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') throw ConfigError("malformed section header on line " + std::to_string(lineno));
            section = trim(line.substr(1, line.size() - 2));
            if (!setters().count(section)) throw ConfigError("unknown section [" + section + "]");
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) throw ConfigError("expected key = value on line " + std::to_string(lineno));
        const Ctx ctx{section, trim(line.substr(0, eq)), trim(line.substr(eq + 1))};
        if (section.empty()) throw ConfigError("key " + ctx.key + " outside any section");
        const auto& keys = setters().at(section);
        const auto it = keys.find(ctx.key);
        if (it == keys.end()) throw ConfigError("unknown key '" + ctx.key + "' in section [" + section + "]");
        it->second(cfg, ctx);
    }
    cfg.solver.grid = cfg.grid;
    cfg.validate();
    return cfg;
}

std::string serialize_config(const RunConfig& c)
{
    std::ostringstream o;
    o << "[grid]\n"
      << "nx = " << c.grid.nx << "\n"
      << "ny = " << c.grid.ny << "\n"
      << "lx = " << fmt(c.grid.lx) << "\n"
      << "ly = " << fmt(c.grid.ly) << "\n\n"
      << "[solver]\n"
      << "a = " << fmt(c.solver.a_coef) << "\n"
      << "b = " << fmt(c.solver.b_coef) << "\n"
      << "n = " << c.solver.n_power << "\n"
      << "dt = " << fmt(c.solver.dt) << "\n"
      << "t_end = " << fmt(c.solver.t_end) << "\n"
      << "picard_tol = " << fmt(c.solver.picard_tol) << "\n"
      << "picard_max = " << c.solver.picard_max << "\n"
      << "dealias = " << (c.solver.dealias ? "true" : "false") << "\n"
      << "nonlinear_includes_dyy = " << (c.solver.nonlinear_includes_dyy ? "true" : "false") << "\n"
      << "record_every = " << c.solver.record_every << "\n\n"
      << "[norms]\n"
      << "s1 = " << fmt(c.norms.s1) << "\n"
      << "s2 = " << fmt(c.norms.s2) << "\n"
      << "r1 = " << fmt(c.norms.r1) << "\n"
      << "r2 = " << fmt(c.norms.r2) << "\n\n"
      << "[run]\n"
      << "command = " << command_name(c.command) << "\n"
      << "seed = " << c.seed << "\n"
      << "out_dir = " << c.out_dir << "\n"
      << "t2 = " << fmt(c.t2) << "\n"
      << "family_size = " << c.family_size << "\n";
    return o.str();
}

std::string config_json(const RunConfig& c)
{
    nlohmann::ordered_json j;
    j["command"] = command_name(c.command);
    j["grid"] = {{"nx", c.grid.nx}, {"ny", c.grid.ny}, {"lx", c.grid.lx}, {"ly", c.grid.ly}};
    j["solver"] = {{"a", c.solver.a_coef},
                   {"b", c.solver.b_coef},
                   {"n", c.solver.n_power},
                   {"dt", c.solver.dt},
                   {"t_end", c.solver.t_end},
                   {"picard_tol", c.solver.picard_tol},
                   {"picard_max", c.solver.picard_max},
                   {"dealias", c.solver.dealias},
                   {"nonlinear_includes_dyy", c.solver.nonlinear_includes_dyy},
                   {"record_every", c.solver.record_every}};
    j["norms"] = {{"s1", c.norms.s1}, {"s2", c.norms.s2}, {"r1", c.norms.r1}, {"r2", c.norms.r2}};
    j["run"] = {{"seed", c.seed}, {"out_dir", c.out_dir}, {"t2", c.t2}, {"family_size", c.family_size}};
    return j.dump(2) + "\n";
}

std::vector<ExperimentReport> run_experiments(const RunConfig& cfg)
{
    cfg.validate();
    const Command c = cfg.command;
    const bool all = c == Command::all;
    std::vector<ExperimentReport> out;
    if (all || c == Command::simulate) out.push_back(run_simulate(cfg.solver, cfg.norms));
    if (all) out.push_back(run_solver_suite());
    if (all || c == Command::linear_growth) out.push_back(run_linear_growth_suite(cfg.grid));
    if (all || c == Command::decay_breakdown) out.push_back(run_decay_breakdown());
    if (all || c == Command::uc_jump) {
        SolverParams lin = cfg.solver;
        lin.a_coef = 0.0;
        ExperimentReport r = run_uc_jump(lin, cfg.t2);
        r.name = "uc_jump_linear";
        out.push_back(std::move(r));
        if (cfg.solver.a_coef != 0.0) out.push_back(run_uc_jump(cfg.solver, cfg.t2));
    }
    if (all || c == Command::b_bounded) out.push_back(run_b_bounded_suite(cfg.norms, cfg.family_size, cfg.seed));
    if (all || c == Command::inequalities) {
        out.push_back(run_inequality_suite(2 * cfg.family_size, cfg.seed));
        out.push_back(run_stein_scaling());
        out.push_back(run_jump_nonmembership());
    }
    return out;
}

void write_reports(const RunConfig& cfg, const std::vector<ExperimentReport>& reports)
{
    namespace fs = std::filesystem;
    const fs::path dir(cfg.out_dir);
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec) throw Error("cannot create output directory " + cfg.out_dir + ": " + ec.message());

    auto open = [&](const std::string& name) {
        std::ofstream f(dir / name, std::ios::binary | std::ios::trunc);
        if (!f) throw Error("cannot write " + (dir / name).string());
        return f;
    };
    for (const auto& r : reports) {
        const std::string params = nlohmann::json(r.params).dump();
        for (const auto& s : r.series) {
            std::ofstream f = open(sanitize(r.name + "__" + s.label) + ".csv");
            f << "# " << r.name << "/" << s.label << "," << params << "\n";
            f << "t,value\n";
            for (std::size_t i = 0; i < s.x.size(); ++i) f << fmt(s.x[i]) << "," << fmt(s.values[i]) << "\n";
            if (!f) throw Error("write failed for series " + s.label);
        }
    }
    std::ofstream v = open("verdicts.csv");
    v << "criterion,measured,threshold,pass\n";
    for (const auto& r : reports)
        for (const auto& d : r.verdicts)
            v << r.name << "/" << d.criterion << "," << fmt(d.measured) << "," << fmt(d.threshold) << ","
              << (d.pass ? "true" : "false") << "\n";
    std::ofstream j = open("config.json");
    j << config_json(cfg);
    if (!v || !j) throw Error("write failed in " + cfg.out_dir);
}

int run(const RunConfig& cfg, std::ostream& err)
{
    try {
        const auto reports = run_experiments(cfg);
        write_reports(cfg, reports);
        for (const auto& r : reports)
            if (!r.all_pass()) return 2;
        return 0;
    } catch (const std::exception& e) {
        std::string msg = e.what();
        for (char& ch : msg)
            if (ch == '\n' || ch == '\r') ch = ' ';
        err << "error: " << msg << "\n";
        return 1;
    }
}

}  // namespace rzk
