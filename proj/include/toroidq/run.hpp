#pragma once

// Command dispatch behind the CLI.  Each command produces one Table,
// serialized as CSV or JSON; row order follows the grid regardless of the
// worker count, so identical configurations give byte-identical files.

#include <iostream>
#include <sstream>

#include "toroidq/config.hpp"
#include "toroidq/io.hpp"
#include "toroidq/linear.hpp"
#include "toroidq/master.hpp"
#include "toroidq/presets.hpp"
#include "toroidq/pulse.hpp"
#include "toroidq/semiclassical.hpp"
#include "toroidq/sweep.hpp"
#include "toroidq/units.hpp"

namespace toroidq {

namespace detail {

inline Cell cell(double v) { return Cell{v}; }
inline Cell cell(std::optional<double> v)
{
    return v ? Cell{*v} : Cell{std::monostate{}};
}

inline std::string sanitize_csv(std::string s)
{
    for (auto& c : s) {
        if (c == ',' || c == '\n' || c == '\r') c = ';';
    }
    return s;
}

inline std::vector<std::string> master_columns(const std::string& x_name)
{
    return {x_name,       "T_F",         "T_B",         "g2_FF",
            "g2_BB",      "re_a_mean",   "im_a_mean",   "re_b_mean",
            "im_b_mean",  "re_A_mean",   "im_A_mean",   "re_B_mean",
            "im_B_mean",  "n_a",         "n_b",         "p_exc",
            "fock_n",     "status"};
}

inline void append_master_row(Table& table, const SweepPoint& row)
{
    if (!row.error.empty()) {
        std::vector<Cell> cells(table.columns.size(), Cell{std::monostate{}});
        cells[0] = cell(row.x);
        cells.back() = Cell{"failed: " + sanitize_csv(row.error)};
        table.add_row(std::move(cells));
        return;
    }
    const auto& o = row.obs;
    table.add_row({cell(row.x), cell(o.T_F), cell(o.T_B), cell(o.g2_FF),
                   cell(o.g2_BB), cell(o.a_mean.real()), cell(o.a_mean.imag()),
                   cell(o.b_mean.real()), cell(o.b_mean.imag()),
                   cell(o.A_mean.real()), cell(o.A_mean.imag()),
                   cell(o.B_mean.real()), cell(o.B_mean.imag()), cell(o.n_a),
                   cell(o.n_b), cell(o.p_exc),
                   cell(static_cast<double>(row.fock.n_a)), Cell{"ok"}});
}

template <typename MakeParams>
Table master_sweep_table(const RunConfig& cfg, const std::vector<double>& xs,
                         const std::string& x_name, MakeParams&& make_params)
{
    SolveOptions opt;
    opt.fock = cfg.fock();
    Table table;
    table.columns = master_columns(x_name);
    const auto rows = sweep_observables(xs, make_params, opt, cfg.workers,
                                        cfg.strict);
    for (const auto& row : rows) append_master_row(table, row);
    return table;
}

} // namespace detail

inline Table run_spectrum(const RunConfig& cfg)
{
    const auto detunings_mhz = cfg.grid.values();
    if (cfg.solver == SolverKind::linear) {
        std::vector<double> detunings(detunings_mhz.size());
        for (std::size_t i = 0; i < detunings.size(); ++i) {
            detunings[i] = mhz_to_rad_us(detunings_mhz[i]);
        }
        const auto points =
            spectrum(cfg.params(), detunings, /*atom_present=*/true,
                     mhz_to_rad_us(cfg.atom_offset_mhz));
        Table table;
        table.columns = {"Delta_C_over_2pi_MHz", "T_F", "T_B"};
        for (std::size_t i = 0; i < points.size(); ++i) {
            table.add_row({detail::cell(detunings_mhz[i]),
                           detail::cell(points[i].T_F),
                           detail::cell(points[i].T_B)});
        }
        return table;
    }
    return detail::master_sweep_table(
        cfg, detunings_mhz, "Delta_C_over_2pi_MHz", [&](double dc_mhz) {
            RunConfig point = cfg;
            point.delta_c_mhz = dc_mhz;
            return point.params();
        });
}

inline Table run_sweep_coupling(const RunConfig& cfg)
{
    return detail::master_sweep_table(
        cfg, cfg.grid.values(), "g_tw_over_2pi_MHz", [&](double g_mhz) {
            RunConfig point = cfg;
            point.g_tw_mhz = g_mhz;
            return point.params();
        });
}

inline Table run_sweep_drive(const RunConfig& cfg)
{
    return detail::master_sweep_table(
        cfg, cfg.grid.values(), "Ep_over_2pi_MHz", [&](double ep_mhz) {
            RunConfig point = cfg;
            point.ep_mhz = ep_mhz;
            return point.params();
        });
}

inline Table run_bistability(const RunConfig& cfg, std::ostream& log)
{
    const auto params = cfg.params();
    const auto xs = cfg.grid.values();
    const auto points = bistability_curve(params, xs);
    Table table;
    table.columns = {"X_mag", "Y_mag", "A_mag", "Ep_over_2pi_MHz"};
    for (const auto& pt : points) {
        table.add_row({detail::cell(pt.X_mag), detail::cell(pt.Y_mag),
                       detail::cell(pt.A_mag),
                       detail::cell(rad_us_to_mhz(pt.drive))});
    }
    if (params.cooperativity() > 2.0) {
        const auto tp = turning_points(params);
        log << "turning points (exact): lower |X| = " << tp.X_lower
            << " at Ep/2pi = " << rad_us_to_mhz(tp.drive_lower)
            << " MHz, upper |X| = " << tp.X_upper
            << " at Ep/2pi = " << rad_us_to_mhz(tp.drive_upper) << " MHz\n";
        log << "asymptotics: g_tw/sqrt(2) = "
            << rad_us_to_mhz(tp.drive_lower_asym)
            << " MHz, sqrt(2 kappa gamma) = "
            << rad_us_to_mhz(tp.drive_upper_asym) << " MHz\n";
    } else {
        log << "C = " << params.cooperativity()
            << " <= 2: monotone curve, no turning points\n";
    }
    return table;
}

inline Table run_fidelity(const RunConfig& cfg)
{
    const auto params = cfg.params();
    const auto alpha_grid = cfg.grid.values();
    struct Row {
        double alpha_sq, f_exact, f_approx, f_refl, f_refl_nb, abs_xi;
    };
    const auto rows = parallel_map<Row>(
        static_cast<int>(alpha_grid.size()), cfg.workers, [&](int i) {
            const double a2 = alpha_grid[i];
            GaussianPulseSpec pulse{cfg.pulse_t_p_ns * 1e-3, a2};
            Row row{};
            row.alpha_sq = a2;
            row.f_approx = fidelity_approx(params, a2);
            if (a2 == 0.0) {
                row.f_exact = 1.0;
                row.f_refl = 1.0;
                row.f_refl_nb = 1.0;
                row.abs_xi = 1.0;
                return row;
            }
            row.f_exact = fidelity_exact(params, pulse);
            const auto refl = reflection_fidelity(params, pulse);
            row.f_refl = refl.exact;
            row.f_refl_nb = refl.narrowband;
            row.abs_xi = std::abs(overlap_factor_xi(params, pulse));
            return row;
        });
    Table table;
    table.columns = {"alpha_sq",     "F_exact",           "F_approx",
                     "F_refl_exact", "F_refl_narrowband", "abs_xi"};
    for (const auto& r : rows) {
        table.add_row({detail::cell(r.alpha_sq), detail::cell(r.f_exact),
                       detail::cell(r.f_approx), detail::cell(r.f_refl),
                       detail::cell(r.f_refl_nb), detail::cell(r.abs_xi)});
    }
    return table;
}

inline Table run_pulse(const RunConfig& cfg, std::ostream& log)
{
    const auto params = cfg.params();
    const auto pulse = cfg.pulse();
    const double t_p = pulse.t_p;
    const int samples = cfg.grid_set ? cfg.grid.count : 501;
    const double t_min = cfg.grid_set ? cfg.grid.start * 1e-3 : -5.0 * t_p;
    const double t_max = cfg.grid_set ? cfg.grid.stop * 1e-3 : 5.0 * t_p;

    const auto fwd0 = output_pulse_time_domain(
        params, pulse, PulseChannel::forward_g0, t_min, t_max, samples);
    const auto bwd = output_pulse_time_domain(
        params, pulse, PulseChannel::backward_g, t_min, t_max, samples);
    const auto fwd = output_pulse_time_domain(
        params, pulse, PulseChannel::forward_g, t_min, t_max, samples);

    Table table;
    table.columns = {"t_us", "input_flux_per_us", "forward_g0_flux_per_us",
                     "backward_g_flux_per_us", "forward_g_flux_per_us"};
    for (int i = 0; i < samples; ++i) {
        table.add_row({detail::cell(fwd0.time[i]),
                       detail::cell(input_flux_profile(params, pulse,
                                                       fwd0.time[i])),
                       detail::cell(fwd0.flux[i]), detail::cell(bwd.flux[i]),
                       detail::cell(fwd.flux[i])});
    }

    const auto ch = channel_amplitudes(params, pulse);
    const double sat = pulse_saturation_ratio(params, pulse);
    log << "channel photon numbers: |alpha_ex|^2 = " << ch.alpha_ex_sq
        << ", |alpha_ex0|^2 = " << ch.alpha_ex0_sq
        << ", |beta_ex|^2 = " << ch.beta_ex_sq
        << ", |alpha_i|^2 = " << ch.alpha_i_sq
        << ", |beta_i|^2 = " << ch.beta_i_sq << ", |eta|^2 = " << ch.eta_sq
        << "\n";
    log << "fidelity F = " << fidelity_exact(params, pulse)
        << ", |xi| = " << std::abs(overlap_factor_xi(params, pulse)) << "\n";
    if (sat > 0.5) {
        log << "warning: peak flux is " << sat
            << " of the saturation flux; linear treatment degrades\n";
    }
    return table;
}

inline Table run_table1_check(const RunConfig& cfg)
{
    RunConfig c = cfg;
    if (c.kappa_ex_mhz == 0.0) {
        // canonical check point: strong overcoupling, negligible intrinsic
        // loss, very large coupling
        c.kappa_ex_mhz = 30;
        c.kappa_i_mhz = 0;
        c.gamma_mhz = 5.2;
        c.g_tw_mhz = 1e4;
        c.ep_mhz = 1;
    }
    const auto params = c.params();
    const complexd i(0.0, 1.0);
    const complexd drive = params.drive;
    const double kex = params.kappa_ex;
    const complexd a_in = input_amplitude(params);
    const double rt2 = std::sqrt(2.0);

    SystemParams with_atom = params;
    SystemParams no_atom = params;
    no_atom.g_tw = 0.0;
    const auto ss0 = linear_steady_state(no_atom);
    const auto ss1 = linear_steady_state(with_atom);

    struct Entry {
        std::string name;
        complexd expected;
        complexd value;
        double scale;
    };
    const double amp_scale = std::abs(drive) / (2.0 * kex);
    const double out_scale = std::abs(a_in);
    auto normal_a = [&](const LinearSteadyState& s) {
        return (s.a_ss + s.b_ss) / rt2;
    };
    auto normal_b = [&](const LinearSteadyState& s) {
        return (s.a_ss - s.b_ss) / rt2;
    };
    const std::vector<Entry> entries = {
        {"a_ss[g=0]", -i * drive / kex, ss0.a_ss, amp_scale},
        {"b_ss[g=0]", 0.0, ss0.b_ss, amp_scale},
        {"A_ss[g=0]", -i * drive / (rt2 * kex), normal_a(ss0), amp_scale},
        {"B_ss[g=0]", -i * drive / (rt2 * kex), normal_b(ss0), amp_scale},
        {"a_out[g=0]", a_in, ss0.a_out_ex, out_scale},
        {"b_out[g=0]", 0.0, ss0.b_out_ex, out_scale},
        {"a_ss[g_large]", -i * drive / (2.0 * kex), ss1.a_ss, amp_scale},
        {"b_ss[g_large]", i * drive / (2.0 * kex), ss1.b_ss, amp_scale},
        {"A_ss[g_large]", 0.0, normal_a(ss1), amp_scale},
        {"B_ss[g_large]", -i * drive / (rt2 * kex), normal_b(ss1), amp_scale},
        {"a_out[g_large]", 0.0, ss1.a_out_ex, out_scale},
        {"b_out[g_large]", -a_in, ss1.b_out_ex, out_scale},
    };

    Table table;
    table.columns = {"quantity", "expected_re", "expected_im",
                     "value_re",  "value_im",   "rel_err",
                     "pass"};
    for (const auto& e : entries) {
        const double rel = std::abs(e.value - e.expected) /
                           std::max(std::abs(e.expected), e.scale);
        table.add_row({Cell{e.name}, detail::cell(e.expected.real()),
                       detail::cell(e.expected.imag()),
                       detail::cell(e.value.real()),
                       detail::cell(e.value.imag()), detail::cell(rel),
                       Cell{std::string(rel <= 1e-2 ? "pass" : "fail")}});
    }
    return table;
}

inline std::string default_output_path(const RunConfig& cfg)
{
    return to_string(cfg.command) +
           (cfg.format == OutputFormat::csv ? ".csv" : ".json");
}

/// Execute the configured command and write its output file.
/// Returns the path written.
inline std::string run(const RunConfig& cfg, std::ostream& log = std::cout)
{
    Table table;
    switch (cfg.command) {
        case Command::spectrum: table = run_spectrum(cfg); break;
        case Command::sweep_coupling: table = run_sweep_coupling(cfg); break;
        case Command::sweep_drive: table = run_sweep_drive(cfg); break;
        case Command::bistability: table = run_bistability(cfg, log); break;
        case Command::pulse: table = run_pulse(cfg, log); break;
        case Command::fidelity: table = run_fidelity(cfg); break;
        case Command::table1_check: table = run_table1_check(cfg); break;
    }
    const std::string path =
        cfg.output_path.empty() ? default_output_path(cfg) : cfg.output_path;
    write_file(path, cfg.format == OutputFormat::csv ? to_csv(table)
                                                     : to_json(table));
    log << to_string(cfg.command) << ": wrote " << table.rows.size()
        << " rows to " << path << "\n";
    return path;
}

} // namespace toroidq
