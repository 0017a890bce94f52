#pragma once

// Unit conventions used throughout:
//   - rates and detunings are angular frequencies in rad/us,
//   - times are in us, photon fluxes in 1/us,
//   - user-facing values (CLI, presets) are linear frequencies nu = omega/2pi
//     in MHz, the way experiments quote them.  1 MHz of nu is 2pi rad/us.

#include <cmath>

namespace toroidq {

inline constexpr double two_pi = 6.283185307179586476925286766559;

inline constexpr double mhz_to_rad_us(double mhz) { return two_pi * mhz; }
inline constexpr double rad_us_to_mhz(double w) { return w / two_pi; }

// photon energy h*c/lambda in joules; lambda in meters
inline double photon_energy(double wavelength)
{
    constexpr double planck = 6.62607015e-34;        // J s
    constexpr double light_speed = 2.99792458e8;     // m/s
    return planck * light_speed / wavelength;
}

// optical power in watts carried by a photon flux given in 1/us
inline double flux_to_power(double flux_per_us, double wavelength)
{
    return flux_per_us * 1e6 * photon_energy(wavelength);
}

} // namespace toroidq
