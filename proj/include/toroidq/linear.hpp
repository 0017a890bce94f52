#pragma once

// Weak-drive (coherent-state) analysis.  In this regime the atom acts as
// one more harmonic oscillator, every field stays coherent, and the three
// mean amplitudes <a>, <b>, <sigma-> obey a closed linear system whose
// steady state has the closed forms implemented here.

#include <cmath>
#include <complex>
#include <vector>

#include "toroidq/params.hpp"

namespace toroidq {

struct LinearSteadyState {
    complexd a_ss;       ///< <a>
    complexd b_ss;       ///< <b>
    complexd sigma_ss;   ///< <sigma->
    complexd a_out_ex;   ///< <a_out,ex> = -<a_in,ex> + sqrt(2 kex) <a>
    complexd b_out_ex;   ///< <b_out,ex>
    double T_F = 0.0;    ///< |<a_out,ex>|^2 normalized to the input flux
    double T_B = 0.0;
};

inline complexd input_amplitude(const SystemParams& p)
{
    return -complexd(0.0, 1.0) * p.drive / std::sqrt(2.0 * p.kappa_ex);
}

inline LinearSteadyState linear_steady_state(const SystemParams& p)
{
    p.require_cavity();
    if (p.gamma <= 0 && p.delta_atom == 0 && p.g_tw != complexd(0.0)) {
        throw config_error("atomic response undefined: gamma = 0 and delta_atom = 0");
    }
    const complexd i(0.0, 1.0);
    const complexd atom = p.gamma / 2.0 + i * p.delta_atom;      // gamma/2 + i dA
    const complexd cav = p.kappa() + i * p.delta_cavity;         // kappa + i dC
    const complexd g = p.g_tw;
    const complexd shared = cav * atom + std::norm(g);

    const complexd num = i * p.drive * atom * shared;
    const complexd fac_conj = i * p.h * atom + std::conj(g) * std::conj(g);
    const complexd fac = i * p.h * atom + g * g;
    const complexd den = fac_conj * fac - shared * shared;
    const double den_scale = std::max(std::abs(fac_conj * fac),
                                      std::abs(shared * shared));
    if (std::abs(den) < 1e-14 * den_scale) {
        throw singular_error("linear steady state: near-singular denominator");
    }

    LinearSteadyState ss;
    ss.a_ss = num / den;
    ss.b_ss = -fac / shared * ss.a_ss;
    // stationary atomic amplitude, from the third equation of motion
    ss.sigma_ss = (std::abs(atom) > 0)
                      ? -i * (g * ss.a_ss + std::conj(g) * ss.b_ss) / atom
                      : complexd(0.0);

    const double root = std::sqrt(2.0 * p.kappa_ex);
    ss.a_out_ex = i * p.drive / root + root * ss.a_ss;
    ss.b_out_ex = root * ss.b_ss;
    const double flux_in = p.input_flux();
    ss.T_F = std::norm(ss.a_out_ex) / flux_in;
    ss.T_B = std::norm(ss.b_out_ex) / flux_in;
    return ss;
}

// Empty-resonator transmission/reflection at the shifted resonance
// delta_C = +/- h:
//   T_F = [(1-2kex/k)^2 + (4h^2/k^2)(1-kex/k)^2] / (1+4h^2/k^2)
//   T_B = (kex/k)^2 (4h^2/k^2) / (1+4h^2/k^2)
inline std::pair<double, double> limit_no_atom(const SystemParams& p)
{
    p.require_cavity();
    const double k = p.kappa();
    const double r = p.kappa_ex / k;
    const double hh = 4.0 * p.h * p.h / (k * k);
    const double t_f = ((1.0 - 2.0 * r) * (1.0 - 2.0 * r) +
                        hh * (1.0 - r) * (1.0 - r)) /
                       (1.0 + hh);
    const double t_b = r * r * hh / (1.0 + hh);
    return {t_f, t_b};
}

// Strong-coupling asymptotics at delta_C = h cos(2kx):
// T_F -> (ki/k)^2, T_B -> (kex/k)^2.  The position enters only through
// where the formula applies; the limiting values do not depend on it.
inline std::pair<double, double> limit_strong_atom(const SystemParams& p,
                                                   double /*x*/ = 0.0,
                                                   double /*k*/ = 0.0)
{
    p.require_cavity();
    const double k = p.kappa();
    return {(p.kappa_i / k) * (p.kappa_i / k),
            (p.kappa_ex / k) * (p.kappa_ex / k)};
}

struct SpectrumPoint {
    double delta_cavity = 0.0;
    double T_F = 0.0;
    double T_B = 0.0;
};

/// Probe-detuning sweep.  The probe frequency moves while the atom stays
/// tied to the cavity: delta_A = delta_C + atom_cavity_offset
/// (offset = omega_A - omega_C, zero in all the reference spectra).
inline std::vector<SpectrumPoint> spectrum(const SystemParams& base,
                                           const std::vector<double>& detunings,
                                           bool atom_present,
                                           double atom_cavity_offset = 0.0)
{
    std::vector<SpectrumPoint> out;
    out.reserve(detunings.size());
    SystemParams p = base;
    if (!atom_present) p.g_tw = 0.0;
    for (double dc : detunings) {
        p.delta_cavity = dc;
        p.delta_atom = dc + atom_cavity_offset;
        const auto ss = linear_steady_state(p);
        out.push_back({dc, ss.T_F, ss.T_B});
    }
    return out;
}

/// Frequency-space linear response amplitudes (h = 0): the five output
/// channels per unit incident amplitude at sideband frequency omega.
struct TransferCoefficients {
    complexd t_ex;   ///< fiber forward
    complexd t_i;    ///< intrinsic loss of mode a
    complexd r_ex;   ///< fiber backward
    complexd r_i;    ///< intrinsic loss of mode b
    complexd s;      ///< atomic free-space emission
    complexd t_ex0;  ///< t_ex with the coupling switched off
};

inline TransferCoefficients transfer_coefficients(const SystemParams& p,
                                                  double omega)
{
    p.require_cavity();
    if (p.h != 0.0) {
        throw regime_error("transfer coefficients are derived for h = 0");
    }
    const complexd i(0.0, 1.0);
    const complexd cav = p.kappa() + i * (p.delta_cavity - omega);
    const complexd atom = p.gamma / 2.0 + i * (p.delta_atom - omega);
    const complexd base = cav * atom;
    const double g2 = std::norm(p.g_tw);
    const complexd den = base + 2.0 * g2;
    if (std::abs(den) < 1e-14 * std::max(std::abs(base), 2.0 * g2) ||
        std::abs(cav) == 0.0) {
        throw singular_error("transfer coefficients: near-singular denominator");
    }

    const double root_ii_ex = 2.0 * std::sqrt(p.kappa_i * p.kappa_ex);
    const complexd atom_weight = (base + g2) / den;

    TransferCoefficients c;
    c.t_ex = -1.0 + (2.0 * p.kappa_ex / cav) * atom_weight;
    c.t_i = (root_ii_ex / cav) * atom_weight;
    c.r_ex = -(2.0 * p.kappa_ex / cav) * (p.g_tw * p.g_tw) / den;
    c.r_i = -(root_ii_ex / cav) * (p.g_tw * p.g_tw) / den;
    c.s = -i * p.g_tw * std::sqrt(2.0 * p.kappa_ex * p.gamma) / den;
    c.t_ex0 = -1.0 + 2.0 * p.kappa_ex / cav;
    return c;
}

// |t_ex|^2+|t_i|^2+|r_ex|^2+|r_i|^2+|s|^2; equals 1 for every omega
// (passive linear network)
inline double transfer_flux_sum(const TransferCoefficients& c)
{
    return std::norm(c.t_ex) + std::norm(c.t_i) + std::norm(c.r_ex) +
           std::norm(c.r_i) + std::norm(c.s);
}

} // namespace toroidq
