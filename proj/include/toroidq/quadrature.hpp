#pragma once

#include <complex>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "toroidq/errors.hpp"

namespace toroidq {

// Adaptive Gauss-Kronrod over a finite window split at the given
// breakpoints.  The pulse integrands are a narrow Gaussian spectral weight
// under much wider response prefactors; the breakpoints hand the adaptive
// rule the location of the core so depth is spent where the mass is.

inline constexpr double quadrature_rel_tol = 1e-8;
inline constexpr int quadrature_max_depth = 15;

template <typename F>
double integrate_real(const F& f, const std::vector<double>& breakpoints)
{
    using rule = boost::math::quadrature::gauss_kronrod<double, 15>;
    double total = 0.0;
    for (std::size_t k = 0; k + 1 < breakpoints.size(); ++k) {
        double error = 0.0;
        total += rule::integrate(f, breakpoints[k], breakpoints[k + 1],
                                 quadrature_max_depth, quadrature_rel_tol,
                                 &error);
    }
    return total;
}

template <typename F>
std::complex<double> integrate_complex(const F& f,
                                       const std::vector<double>& breakpoints)
{
    const double re =
        integrate_real([&](double w) { return f(w).real(); }, breakpoints);
    const double im =
        integrate_real([&](double w) { return f(w).imag(); }, breakpoints);
    return {re, im};
}

} // namespace toroidq
