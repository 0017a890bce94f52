#pragma once

// Built-in parameter presets for the reference figures, transcribed from
// their captions.  A preset fills the physical parameters and a sensible
// default grid for the requested command; explicit config keys and CLI
// overrides are applied after it and win.

#include "toroidq/config.hpp"

namespace toroidq {

inline void apply_figure_preset(RunConfig& cfg, int figure)
{
    auto rates = [&](double kex, double ki, double h, double gamma) {
        cfg.kappa_ex_mhz = kex;
        cfg.kappa_i_mhz = ki;
        cfg.h_mhz = h;
        cfg.gamma_mhz = gamma;
    };
    switch (figure) {
        case 2:  // critical coupling spectrum
            cfg.command = Command::spectrum;
            cfg.solver = SolverKind::linear;
            rates(10, 10, 0, 5.2);
            cfg.g_tw_mhz = 100;
            cfg.ep_mhz = 1;
            cfg.grid = {-250, 250, 1001, false};
            cfg.grid_set = true;
            break;
        case 3:  // overcoupled spectrum
            cfg.command = Command::spectrum;
            cfg.solver = SolverKind::linear;
            rates(20, 0.2, 0, 5.2);
            cfg.g_tw_mhz = 100;
            cfg.ep_mhz = 1;
            cfg.grid = {-250, 250, 1001, false};
            cfg.grid_set = true;
            break;
        case 4:  // coupling-strength sweep on resonance
            cfg.command = Command::sweep_coupling;
            rates(30, 0.5, 0, 5.2);
            cfg.ep_mhz = 10;
            cfg.grid = {0, 150, 31, false};
            cfg.grid_set = true;
            break;
        case 5:  // drive-strength sweep (saturation)
            cfg.command = Command::sweep_drive;
            rates(30, 0.5, 0, 5.2);
            cfg.g_tw_mhz = 100;
            cfg.grid = {2, 120, 31, false};
            cfg.grid_set = true;
            break;
        case 6:
            // shared parameter set of the strong-drive studies: bistability
            // curve, or the master-equation spectrum when invoked as
            // `spectrum` (drive selectable via params.ep_mhz)
            if (cfg.command == Command::spectrum) {
                cfg.solver = SolverKind::master;
                rates(30, 0.5, 0, 5.2);
                cfg.g_tw_mhz = 150;
                cfg.ep_mhz = 10;
                cfg.grid = {-300, 300, 121, false};
            } else {
                cfg.command = Command::bistability;
                rates(30, 0.5, 0, 5.2);
                cfg.g_tw_mhz = 100;
                cfg.grid = {1e-2, 40, 400, true};
            }
            cfg.grid_set = true;
            break;
        case 7:  // fidelity vs pulse photon number, coupling series
            cfg.command = Command::fidelity;
            rates(30, 0.5, 0, 5.2);
            cfg.g_tw_mhz = 100;
            cfg.pulse_t_p_ns = 318;
            cfg.grid = {0, 50, 26, false};
            cfg.grid_set = true;
            break;
        case 8:  // pulse shapes through the switch
            cfg.command = Command::pulse;
            rates(50, 0.5, 0, 5.2);
            cfg.g_tw_mhz = 100;
            cfg.pulse_t_p_ns = 159;
            cfg.pulse_alpha_sq = 20;
            break;
        case 9:  // fidelity vs pulse photon number, intrinsic-loss series
            cfg.command = Command::fidelity;
            rates(50, 0.5, 0, 5.2);
            cfg.g_tw_mhz = 100;
            cfg.pulse_t_p_ns = 159;
            cfg.grid = {0, 50, 26, false};
            cfg.grid_set = true;
            break;
        default:
            throw config_error("no preset for figure " +
                               std::to_string(figure) + " (have 2..9)");
    }
}

} // namespace toroidq
