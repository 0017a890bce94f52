#pragma once

#include <cmath>
#include <complex>

#include "toroidq/errors.hpp"
#include "toroidq/units.hpp"

namespace toroidq {

using complexd = std::complex<double>;

/// Physical parameters of the driven atom + two-WGM-mode system.
/// All rates are angular (rad/us); use params_from_mhz for values quoted
/// as nu = omega/2pi in MHz.
struct SystemParams {
    double kappa_ex = 0.0;    ///< fiber (extrinsic) field decay rate
    double kappa_i = 0.0;     ///< intrinsic field decay rate
    double h = 0.0;           ///< intermode scattering strength
    double gamma = 0.0;       ///< atomic spontaneous emission rate (full rate)
    complexd g_tw{0.0, 0.0};  ///< traveling-wave atom-field coupling
    double delta_atom = 0.0;  ///< atom-probe detuning, omega_A - omega_p
    double delta_cavity = 0.0; ///< cavity-probe detuning, omega_C - omega_p
    complexd drive{0.0, 0.0}; ///< probe drive amplitude into mode a

    double kappa() const { return kappa_ex + kappa_i; }

    // C = |g_tw|^2 / (kappa * gamma)
    double cooperativity() const
    {
        return std::norm(g_tw) / (kappa() * gamma);
    }

    // normalized input photon flux |drive|^2 / (2 kappa_ex), in 1/us
    double input_flux() const
    {
        return std::norm(drive) / (2.0 * kappa_ex);
    }

    void validate() const
    {
        if (kappa_ex < 0 || kappa_i < 0 || gamma < 0) {
            throw config_error("decay rates must be nonnegative");
        }
    }

    void require_cavity() const
    {
        validate();
        if (kappa() <= 0) {
            throw config_error("kappa_ex + kappa_i must be positive");
        }
    }
};

/// Convenience builder taking every rate as value/2pi in MHz.
inline SystemParams params_from_mhz(double kappa_ex, double kappa_i, double h,
                                    double gamma, complexd g_tw,
                                    double delta_atom, double delta_cavity,
                                    complexd drive)
{
    SystemParams p;
    p.kappa_ex = mhz_to_rad_us(kappa_ex);
    p.kappa_i = mhz_to_rad_us(kappa_i);
    p.h = mhz_to_rad_us(h);
    p.gamma = mhz_to_rad_us(gamma);
    p.g_tw = two_pi * g_tw;
    p.delta_atom = mhz_to_rad_us(delta_atom);
    p.delta_cavity = mhz_to_rad_us(delta_cavity);
    p.drive = two_pi * drive;
    return p;
}

// g_tw = g0 * f(r) * e^{ikx} with the evanescent profile f(r) = e^{-alpha r}
inline complexd coupling_amplitude(double g0_tw, double r, double x,
                                   double alpha_ev, double k)
{
    return g0_tw * std::exp(-alpha_ev * r) *
           std::exp(complexd(0.0, k * x));
}

// normal-mode couplings (g_A, g_B) = sqrt(2) (Re g_tw, Im g_tw)
inline std::pair<double, double> normal_mode_couplings(complexd g_tw)
{
    const double rt2 = std::sqrt(2.0);
    return {rt2 * g_tw.real(), rt2 * g_tw.imag()};
}

/// Fock truncations for the two cavity modes; the atom always contributes
/// a factor 2.
struct FockConfig {
    int n_a = 0;  ///< highest kept photon number of mode a
    int n_b = 0;  ///< highest kept photon number of mode b

    long dim() const { return static_cast<long>(n_a + 1) * (n_b + 1) * 2; }

    void validate(long dim_cap = default_dim_cap) const
    {
        if (n_a < 0 || n_b < 0) {
            throw config_error("Fock truncations must be nonnegative");
        }
        if (dim() > dim_cap) {
            throw dimension_error("Hilbert-space dimension " +
                                  std::to_string(dim()) + " exceeds cap " +
                                  std::to_string(dim_cap));
        }
    }

    static constexpr long default_dim_cap = 20000;
};

/// Incident coherent Gaussian pulse: flux profile
/// F(t) = F_max exp(-t^2 / (2 t_p^2)), FWHM = 2.35 t_p, carrying a total
/// mean photon number alpha_sq.
struct GaussianPulseSpec {
    double t_p = 0.0;       ///< width parameter, us
    double alpha_sq = 0.0;  ///< total mean photon number |alpha|^2

    void validate() const
    {
        if (t_p <= 0) throw config_error("pulse width t_p must be positive");
        if (alpha_sq < 0) throw config_error("alpha_sq must be nonnegative");
    }
};

// Drive amplitude reproducing alpha_sq = drive^2 sqrt(2 pi) t_p / (2 kappa_ex);
// also the inverse map, so drive strength and photon number are
// interchangeable parametrizations of the same pulse.
inline double pulse_drive_amplitude(const GaussianPulseSpec& pulse,
                                    double kappa_ex)
{
    pulse.validate();
    return std::sqrt(2.0 * kappa_ex * pulse.alpha_sq /
                     (std::sqrt(two_pi) * pulse.t_p));
}

inline double pulse_mean_photon_number(double drive, double t_p,
                                       double kappa_ex)
{
    return drive * drive * std::sqrt(two_pi) * t_p / (2.0 * kappa_ex);
}

} // namespace toroidq
