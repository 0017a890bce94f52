#pragma once

// Run configuration: a flat key = value text file (# comments), with CLI
// overrides applied on top.  Keys are listed in the README; unknown keys
// and malformed values are reported with their line number.

#include <algorithm>
#include <cctype>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "toroidq/params.hpp"
#include "toroidq/sweep.hpp"

namespace toroidq {

enum class Command {
    spectrum,
    sweep_coupling,
    sweep_drive,
    bistability,
    pulse,
    fidelity,
    table1_check,
};

enum class OutputFormat { csv, json };
enum class SolverKind { linear, master };

struct RunConfig {
    Command command = Command::spectrum;

    // physical parameters, entered as value/2pi in MHz
    double kappa_ex_mhz = 0.0;
    double kappa_i_mhz = 0.0;
    double h_mhz = 0.0;
    double gamma_mhz = 0.0;
    double g_tw_mhz = 0.0;        ///< |g_tw|/2pi
    double g_tw_phase_rad = 0.0;  ///< phase k x of the traveling-wave coupling
    double delta_c_mhz = 0.0;
    double atom_offset_mhz = 0.0; ///< (omega_A - omega_C)/2pi
    double ep_mhz = 0.0;

    std::optional<int> fock_n_a;
    std::optional<int> fock_n_b;

    GridSpec grid;
    bool grid_set = false;

    double pulse_t_p_ns = 0.0;
    double pulse_alpha_sq = 0.0;

    std::string output_path;
    OutputFormat format = OutputFormat::csv;
    int workers = 1;
    bool strict = false;
    SolverKind solver = SolverKind::linear;

    SystemParams params() const
    {
        const complexd g_unit = std::polar(1.0, g_tw_phase_rad);
        return params_from_mhz(kappa_ex_mhz, kappa_i_mhz, h_mhz, gamma_mhz,
                               g_tw_mhz * g_unit, delta_c_mhz + atom_offset_mhz,
                               delta_c_mhz, complexd(ep_mhz, 0.0));
    }

    GaussianPulseSpec pulse() const
    {
        return GaussianPulseSpec{pulse_t_p_ns * 1e-3, pulse_alpha_sq};
    }

    std::optional<FockConfig> fock() const
    {
        if (fock_n_a && fock_n_b) return FockConfig{*fock_n_a, *fock_n_b};
        return std::nullopt;
    }
};

namespace detail {

inline std::string trim(const std::string& s)
{
    auto begin = s.find_first_not_of(" \t\r");
    auto end = s.find_last_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    return s.substr(begin, end - begin + 1);
}

inline double parse_double(const std::string& key, const std::string& value)
{
    std::size_t used = 0;
    double v = 0;
    try {
        v = std::stod(value, &used);
    } catch (const std::exception&) {
        throw config_error("key '" + key + "': not a number: '" + value + "'");
    }
    if (used != value.size()) {
        throw config_error("key '" + key + "': trailing junk in '" + value + "'");
    }
    return v;
}

inline int parse_int(const std::string& key, const std::string& value)
{
    const double v = parse_double(key, value);
    if (v != std::floor(v)) {
        throw config_error("key '" + key + "': expected integer, got '" +
                           value + "'");
    }
    return static_cast<int>(v);
}

inline bool parse_bool(const std::string& key, const std::string& value)
{
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw config_error("key '" + key + "': expected true/false");
}

} // namespace detail

inline Command command_from_string(const std::string& name)
{
    if (name == "spectrum") return Command::spectrum;
    if (name == "sweep-coupling") return Command::sweep_coupling;
    if (name == "sweep-drive") return Command::sweep_drive;
    if (name == "bistability") return Command::bistability;
    if (name == "pulse") return Command::pulse;
    if (name == "fidelity") return Command::fidelity;
    if (name == "table1-check") return Command::table1_check;
    throw config_error("unknown command: " + name);
}

inline std::string to_string(Command c)
{
    switch (c) {
        case Command::spectrum: return "spectrum";
        case Command::sweep_coupling: return "sweep-coupling";
        case Command::sweep_drive: return "sweep-drive";
        case Command::bistability: return "bistability";
        case Command::pulse: return "pulse";
        case Command::fidelity: return "fidelity";
        case Command::table1_check: return "table1-check";
    }
    return "?";
}

/// Apply one key = value assignment; throws config_error naming the key.
inline void apply_config_key(RunConfig& cfg, const std::string& key,
                             const std::string& value)
{
    using detail::parse_bool;
    using detail::parse_double;
    using detail::parse_int;

    if (key == "command") {
        cfg.command = command_from_string(value);
    } else if (key == "params.kappa_ex_mhz") {
        cfg.kappa_ex_mhz = parse_double(key, value);
    } else if (key == "params.kappa_i_mhz") {
        cfg.kappa_i_mhz = parse_double(key, value);
    } else if (key == "params.h_mhz") {
        cfg.h_mhz = parse_double(key, value);
    } else if (key == "params.gamma_mhz") {
        cfg.gamma_mhz = parse_double(key, value);
    } else if (key == "params.g_tw_mhz") {
        cfg.g_tw_mhz = parse_double(key, value);
    } else if (key == "params.g_tw_phase_rad") {
        cfg.g_tw_phase_rad = parse_double(key, value);
    } else if (key == "params.delta_c_mhz") {
        cfg.delta_c_mhz = parse_double(key, value);
    } else if (key == "params.atom_offset_mhz") {
        cfg.atom_offset_mhz = parse_double(key, value);
    } else if (key == "params.ep_mhz") {
        cfg.ep_mhz = parse_double(key, value);
    } else if (key == "fock.n_a") {
        cfg.fock_n_a = parse_int(key, value);
    } else if (key == "fock.n_b") {
        cfg.fock_n_b = parse_int(key, value);
    } else if (key == "grid.start") {
        cfg.grid.start = parse_double(key, value);
        cfg.grid_set = true;
    } else if (key == "grid.stop") {
        cfg.grid.stop = parse_double(key, value);
        cfg.grid_set = true;
    } else if (key == "grid.count") {
        cfg.grid.count = parse_int(key, value);
        cfg.grid_set = true;
    } else if (key == "grid.scale") {
        if (value == "linear") {
            cfg.grid.log_scale = false;
        } else if (value == "log") {
            cfg.grid.log_scale = true;
        } else {
            throw config_error("grid.scale must be linear or log");
        }
        cfg.grid_set = true;
    } else if (key == "pulse.t_p_ns") {
        cfg.pulse_t_p_ns = parse_double(key, value);
    } else if (key == "pulse.alpha_sq") {
        cfg.pulse_alpha_sq = parse_double(key, value);
    } else if (key == "output.path") {
        cfg.output_path = value;
    } else if (key == "output.format") {
        if (value == "csv") {
            cfg.format = OutputFormat::csv;
        } else if (value == "json") {
            cfg.format = OutputFormat::json;
        } else {
            throw config_error("output.format must be csv or json");
        }
    } else if (key == "workers") {
        cfg.workers = parse_int(key, value);
        if (cfg.workers < 1) throw config_error("workers must be >= 1");
    } else if (key == "strict") {
        cfg.strict = parse_bool(key, value);
    } else if (key == "solver") {
        if (value == "linear") {
            cfg.solver = SolverKind::linear;
        } else if (value == "master") {
            cfg.solver = SolverKind::master;
        } else {
            throw config_error("solver must be linear or master");
        }
    } else {
        throw config_error("unknown config key: " + key);
    }
}

/// "key = value" with '#' comments; one assignment per line.
inline void parse_config_text(RunConfig& cfg, const std::string& text)
{
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw config_error("line " + std::to_string(lineno) +
                               ": expected key = value");
        }
        const std::string key = detail::trim(line.substr(0, eq));
        const std::string value = detail::trim(line.substr(eq + 1));
        try {
            apply_config_key(cfg, key, value);
        } catch (const config_error& e) {
            throw config_error("line " + std::to_string(lineno) + ": " +
                               e.what());
        }
    }
}

inline void parse_config_file(RunConfig& cfg, const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw config_error("cannot read config file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    parse_config_text(cfg, buf.str());
}

/// CLI override of the form key=value.
inline void apply_override(RunConfig& cfg, const std::string& assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) {
        throw config_error("override must be key=value: " + assignment);
    }
    apply_config_key(cfg, detail::trim(assignment.substr(0, eq)),
                     detail::trim(assignment.substr(eq + 1)));
}

} // namespace toroidq
