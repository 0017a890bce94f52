#pragma once

// Semiclassical optical bistability of the atom-coupled normal mode and
// the saturation-flux estimates derived from it.  With the factorized
// mean-field ansatz the drive-amplitude relation is
//
//   |Y| = |X| (1 + 4C / (1 + 2|X|^2)),
//
// with X = <A>/sqrt(n), Y = i drive / (kappa sqrt(2n)), n = gamma^2/(8 g^2),
// C = g^2/(kappa gamma).  Valid on resonance with a real coupling and no
// intermode scattering.

#include <cmath>
#include <span>
#include <vector>

#include "toroidq/params.hpp"

namespace toroidq {

struct BistabilityPoint {
    double X_mag = 0.0;  ///< |<A>| / sqrt(n)
    double Y_mag = 0.0;  ///< normalized drive recovering this amplitude
    double A_mag = 0.0;  ///< |<A>| in photon-amplitude units
    double drive = 0.0;  ///< drive magnitude, drive = kappa sqrt(2n) |Y|
};

namespace detail {

inline void require_bistability_regime(const SystemParams& p)
{
    p.require_cavity();
    if (p.gamma <= 0 || p.g_tw.imag() != 0.0 || p.g_tw.real() <= 0.0 ||
        p.h != 0.0 || p.delta_atom != 0.0 || p.delta_cavity != 0.0) {
        throw regime_error("bistability curve requires gamma > 0, real g_tw > 0, "
                           "h = 0 and zero detunings");
    }
}

inline double saturation_photon_number(const SystemParams& p)
{
    const double g = p.g_tw.real();
    return p.gamma * p.gamma / (8.0 * g * g);
}

} // namespace detail

inline double bistability_drive_of_x(const SystemParams& p, double x_mag)
{
    const double c = p.cooperativity();
    const double y = x_mag * (1.0 + 4.0 * c / (1.0 + 2.0 * x_mag * x_mag));
    return p.kappa() * std::sqrt(2.0 * detail::saturation_photon_number(p)) * y;
}

inline std::vector<BistabilityPoint> bistability_curve(
    const SystemParams& p, std::span<const double> x_grid)
{
    detail::require_bistability_regime(p);
    const double c = p.cooperativity();
    const double n = detail::saturation_photon_number(p);
    std::vector<BistabilityPoint> out;
    out.reserve(x_grid.size());
    for (double x : x_grid) {
        BistabilityPoint pt;
        pt.X_mag = x;
        pt.Y_mag = x * (1.0 + 4.0 * c / (1.0 + 2.0 * x * x));
        pt.A_mag = x * std::sqrt(n);
        pt.drive = p.kappa() * std::sqrt(2.0 * n) * pt.Y_mag;
        out.push_back(pt);
    }
    return out;
}

inline double bistability_slope(double c, double x_mag)
{
    const double q = 1.0 + 2.0 * x_mag * x_mag;
    return 1.0 + 4.0 * c * (1.0 - 2.0 * x_mag * x_mag) / (q * q);
}

/// Stationary points of |Y|(|X|): exact roots of the quadratic in |X|^2,
///   4 t^2 + 4(1-2C) t + (1+4C) = 0,
/// which are real only for C > 2 (below that the curve is monotone).  The
/// large-C locations are |X| = sqrt(1/2) (lower branch, drive ~ g/sqrt(2))
/// and |X| = sqrt(2C) (upper branch, drive sqrt(2 kappa gamma)); the
/// asymptotic values are returned alongside the exact ones.
struct TurningPoints {
    double X_lower = 0.0, X_upper = 0.0;       ///< exact root locations
    double drive_lower = 0.0, drive_upper = 0.0;
    double X_lower_asym = 0.0, X_upper_asym = 0.0;
    double drive_lower_asym = 0.0, drive_upper_asym = 0.0;
};

inline TurningPoints turning_points(const SystemParams& p)
{
    detail::require_bistability_regime(p);
    const double c = p.cooperativity();
    if (c <= 2.0) {
        throw regime_error("no turning points: curve is monotone for C <= 2");
    }
    const double disc = 4.0 * c * (c - 2.0);
    TurningPoints tp;
    const double t_lower = ((2.0 * c - 1.0) - std::sqrt(disc)) / 2.0;
    const double t_upper = ((2.0 * c - 1.0) + std::sqrt(disc)) / 2.0;
    tp.X_lower = std::sqrt(t_lower);
    tp.X_upper = std::sqrt(t_upper);
    tp.drive_lower = bistability_drive_of_x(p, tp.X_lower);
    tp.drive_upper = bistability_drive_of_x(p, tp.X_upper);

    const double g = p.g_tw.real();
    tp.X_lower_asym = std::sqrt(0.5);
    tp.X_upper_asym = std::sqrt(2.0 * c);
    tp.drive_lower_asym = g / std::sqrt(2.0);
    tp.drive_upper_asym = std::sqrt(2.0 * p.kappa() * p.gamma);
    return tp;
}

/// Largest incident flux the switch tolerates before the atom saturates:
/// F_sat = g^2 / (4 kappa_ex), in photons/us for angular rates in rad/us.
inline double saturation_flux(double g_tw, double kappa_ex)
{
    if (g_tw <= 0 || kappa_ex <= 0) {
        throw config_error("saturation flux needs positive g_tw and kappa_ex");
    }
    return g_tw * g_tw / (4.0 * kappa_ex);
}

inline double saturation_power(double g_tw, double kappa_ex, double wavelength)
{
    return flux_to_power(saturation_flux(g_tw, kappa_ex), wavelength);
}

/// Mean photon number of a Gaussian pulse running at flux_fraction of the
/// saturation flux, plus the pulse-bandwidth check 2.35/t_p << 2 kappa_ex
/// ("<<" taken as a factor of 10; the raw ratio is reported so callers can
/// apply their own margin).
struct PulseBudget {
    double mean_photons = 0.0;
    bool bandwidth_ok = false;
    double bandwidth_ratio = 0.0;  ///< (2.35/t_p) / (2 kappa_ex)
};

inline PulseBudget pulse_budget(double g_tw, double kappa_ex, double t_p,
                                double flux_fraction)
{
    if (t_p <= 0) throw config_error("pulse width must be positive");
    PulseBudget out;
    out.mean_photons = flux_fraction * saturation_flux(g_tw, kappa_ex) *
                       std::sqrt(two_pi) * t_p;
    out.bandwidth_ratio = (2.35 / t_p) / (2.0 * kappa_ex);
    out.bandwidth_ok = out.bandwidth_ratio < 0.1;
    return out;
}

} // namespace toroidq
