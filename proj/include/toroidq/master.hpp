#pragma once

// Full quantum steady state of the Lindblad master equation and the
// observables extracted from it.
//
// Two solution paths share the same null-space solver:
//
//  * full:        rho on the complete a (x) b (x) atom space.  Direct sparse
//                 factorization of the vectorized generator; practical up to
//                 a few hundred Hilbert-space dimensions on one core.
//
//  * factorized:  whenever the atom couples to only one normal mode
//                 (Im g_tw = 0 or Re g_tw = 0) the steady state factorizes
//                 exactly as rho_(coupled mode, atom) (x) |beta><beta|, with
//                 the uncoupled normal mode in a coherent state beta known in
//                 closed form.  Only the coupled mode is truncated, which
//                 reaches drive strengths far beyond what the full-space
//                 factorization can afford.
//
// Output-field moments: the fiber input is in a coherent state, so
// normally-ordered output moments follow from the displaced intracavity
// operator D = sqrt(2 kex) a - <a_in>; vacuum inputs contribute nothing in
// normal order.

#include <algorithm>
#include <array>
#include <cmath>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <Eigen/SparseLU>

#include "toroidq/linear.hpp"
#include "toroidq/operators.hpp"
#include "toroidq/params.hpp"
#include "toroidq/sweep.hpp"

namespace toroidq {

struct DensityOperator {
    Eigen::MatrixXcd rho;

    long dim() const { return rho.rows(); }
    double trace_error() const { return std::abs(rho.trace() - 1.0); }
    double hermiticity_error() const
    {
        return (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    }
    double min_eigenvalue() const
    {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(
            0.5 * (rho + rho.adjoint()), Eigen::EigenvaluesOnly);
        return es.eigenvalues().minCoeff();
    }
};

// --- null-space steady state ------------------------------------------

/// Solve L x = 0, tr(x) = 1 by replacing the redundant rho_00 row of L
/// with the trace functional.  Trace preservation makes the diagonal rows
/// of L linearly dependent, so the replacement keeps full rank whenever
/// the stationary state is unique.
inline Eigen::MatrixXcd steady_state_null_space(const ComplexOperator& liou,
                                                long dim)
{
    ComplexOperator m = liou;
    // zero row 0, then put ones at the diagonal positions k*(dim+1)
    for (int outer = 0; outer < m.outerSize(); ++outer) {
        for (ComplexOperator::InnerIterator it(m, outer); it; ++it) {
            if (it.row() == 0) it.valueRef() = 0.0;
        }
    }
    std::vector<Triplet> trace_row;
    trace_row.reserve(dim);
    for (long k = 0; k < dim; ++k) {
        trace_row.emplace_back(0, k * (dim + 1), 1.0);
    }
    ComplexOperator tr(m.rows(), m.cols());
    tr.setFromTriplets(trace_row.begin(), trace_row.end());
    m = (m + tr).pruned();
    m.makeCompressed();

    Eigen::SparseLU<ComplexOperator> lu;
    lu.compute(m);
    if (lu.info() != Eigen::Success) {
        throw convergence_error("steady state: sparse factorization failed", -1.0);
    }
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(m.rows());
    rhs(0) = 1.0;
    Eigen::VectorXcd x = lu.solve(rhs);
    if (lu.info() != Eigen::Success) {
        throw convergence_error("steady state: sparse solve failed", -1.0);
    }
    Eigen::MatrixXcd rho = unvectorize(x, dim);
    rho = 0.5 * (rho + rho.adjoint()).eval();
    rho /= rho.trace().real();
    return rho;
}

// --- adaptive time marching (fallback) ---------------------------------

/// Integrate rho_dot = L rho from the vacuum-ground state with an embedded
/// Dormand-Prince 5(4) pair until ||rho_dot|| drops below stop_tol, or the
/// time budget runs out.  Returns the reached state; the caller judges the
/// residual.
inline Eigen::MatrixXcd steady_state_time_march(const ComplexOperator& liou,
                                                long dim, double stop_tol,
                                                double t_max,
                                                double step_tol = 1e-10)
{
    static constexpr double a21 = 1.0 / 5;
    static constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
    static constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
    static constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187,
                            a53 = 64448.0 / 6561, a54 = -212.0 / 729;
    static constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33,
                            a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                            a65 = -5103.0 / 18656;
    static constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113,
                            b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                            b6 = 11.0 / 84;
    static constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695,
                            e4 = 71.0 / 1920, e5 = -17253.0 / 339200,
                            e6 = 22.0 / 525, e7 = -1.0 / 40;

    Eigen::VectorXcd y = Eigen::VectorXcd::Zero(dim * dim);
    y(0) = 1.0;  // vec of |vac,vac,g><vac,vac,g| in the chosen ordering

    // crude spectral-radius bound for the first step
    double lnorm = 0.0;
    for (int outer = 0; outer < liou.outerSize(); ++outer) {
        double col = 0.0;
        for (ComplexOperator::InnerIterator it(liou, outer); it; ++it) {
            col += std::abs(it.value());
        }
        lnorm = std::max(lnorm, col);
    }
    double dt = (lnorm > 0) ? 0.1 / lnorm : 1e-3;
    double t = 0.0;
    Eigen::VectorXcd k1 = liou * y;

    while (t < t_max) {
        if (k1.norm() < stop_tol) break;
        dt = std::min(dt, t_max - t);
        const Eigen::VectorXcd k2 = liou * (y + dt * (a21 * k1));
        const Eigen::VectorXcd k3 = liou * (y + dt * (a31 * k1 + a32 * k2));
        const Eigen::VectorXcd k4 =
            liou * (y + dt * (a41 * k1 + a42 * k2 + a43 * k3));
        const Eigen::VectorXcd k5 =
            liou * (y + dt * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
        const Eigen::VectorXcd k6 = liou * (y + dt * (a61 * k1 + a62 * k2 +
                                                      a63 * k3 + a64 * k4 +
                                                      a65 * k5));
        const Eigen::VectorXcd ynew =
            y + dt * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
        const Eigen::VectorXcd k7 = liou * ynew;
        const double err =
            dt *
            (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7).norm();
        const double scale =
            step_tol * std::max(1.0, std::max(y.norm(), ynew.norm()));
        if (err <= scale) {
            t += dt;
            y = ynew;
            k1 = k7;  // FSAL
        }
        const double factor =
            (err > 0) ? 0.9 * std::pow(scale / err, 0.2) : 5.0;
        dt *= std::clamp(factor, 0.2, 5.0);
    }

    Eigen::MatrixXcd rho = unvectorize(y, dim);
    rho = 0.5 * (rho + rho.adjoint()).eval();
    const complexd tr = rho.trace();
    if (std::abs(tr) > 1e-300) rho /= tr.real();
    return rho;
}

// --- residual-checked front end ----------------------------------------

inline double liouvillian_frobenius(const ComplexOperator& liou)
{
    double sum = 0.0;
    for (int outer = 0; outer < liou.outerSize(); ++outer) {
        for (ComplexOperator::InnerIterator it(liou, outer); it; ++it) {
            sum += std::norm(it.value());
        }
    }
    return std::sqrt(sum);
}

inline double steady_state_residual(const ComplexOperator& liou,
                                    const Eigen::MatrixXcd& rho)
{
    const Eigen::VectorXcd v = vectorize(rho);
    return (liou * v).norm() / (liouvillian_frobenius(liou) * v.norm());
}

/// Null-space solve first; adaptive time marching as fallback.  Throws
/// convergence_error carrying the best residual if neither strategy meets
/// the tolerance.
inline DensityOperator solve_steady_state_from(const ComplexOperator& liou,
                                               long dim,
                                               double residual_tol = 1e-10)
{
    const double lnorm = liouvillian_frobenius(liou);
    Eigen::MatrixXcd rho;
    double residual = std::numeric_limits<double>::infinity();
    try {
        rho = steady_state_null_space(liou, dim);
        residual = (liou * vectorize(rho)).norm() / (lnorm * vectorize(rho).norm());
    } catch (const convergence_error&) {
        // fall through to time marching
    }
    if (!(residual <= residual_tol)) {
        // slowest relaxation sets the horizon; cap the budget
        const double t_max = 1e4 / std::max(lnorm * 1e-6, 1e-12);
        Eigen::MatrixXcd rho2 = steady_state_time_march(
            liou, dim, residual_tol * lnorm, std::min(t_max, 1e5));
        const double res2 =
            (liou * vectorize(rho2)).norm() / (lnorm * vectorize(rho2).norm());
        if (res2 < residual) {
            rho = rho2;
            residual = res2;
        }
        if (!(residual <= residual_tol)) {
            throw convergence_error("steady state did not converge", residual);
        }
    }
    return DensityOperator{std::move(rho)};
}

// largest vectorized dimension dim^2 the direct solver is allowed to
// attempt; beyond this the factorization's memory and time are no longer
// practical on a single node
inline constexpr long max_vectorized_dim = 200000;

inline void require_solvable_dim(long dim)
{
    if (dim * dim > max_vectorized_dim) {
        throw dimension_error(
            "vectorized Liouvillian dimension " + std::to_string(dim * dim) +
            " exceeds the direct-solver limit " +
            std::to_string(max_vectorized_dim) +
            "; reduce the truncation or use a factorizable coupling phase");
    }
}

inline DensityOperator solve_steady_state(const SystemParams& params,
                                          const FockConfig& fock,
                                          double residual_tol = 1e-10,
                                          long dim_cap = FockConfig::default_dim_cap)
{
    require_solvable_dim(fock.dim());
    const auto liou = build_liouvillian(params, fock, dim_cap);
    return solve_steady_state_from(liou, fock.dim(), residual_tol);
}

// --- moments and observables -------------------------------------------

/// Normally ordered ladder moments m[i][j] = <X'^i X^j>, i,j <= 2.
struct NormalMoments {
    std::array<std::array<complexd, 3>, 3> m{};

    const complexd& operator()(int i, int j) const { return m[i][j]; }
    complexd& operator()(int i, int j) { return m[i][j]; }
};

inline complexd trace_product(const ComplexOperator& op_conj_weighted,
                              const Eigen::MatrixXcd& mat)
{
    // tr(op^dag mat) = sum_ij conj(op_ij) mat_ij
    complexd sum = 0.0;
    for (int outer = 0; outer < op_conj_weighted.outerSize(); ++outer) {
        for (ComplexOperator::InnerIterator it(op_conj_weighted, outer); it;
             ++it) {
            sum += std::conj(it.value()) * mat(it.row(), it.col());
        }
    }
    return sum;
}

inline NormalMoments ladder_moments(const ComplexOperator& op,
                                    const Eigen::MatrixXcd& rho)
{
    const ComplexOperator op2 = (op * op).pruned();
    const ComplexOperator id = identity_op(op.rows());
    const std::array<const ComplexOperator*, 3> pow{&id, &op, &op2};
    NormalMoments mom;
    for (int j = 0; j < 3; ++j) {
        const Eigen::MatrixXcd xr = (*pow[j]) * rho;
        for (int i = 0; i < 3; ++i) {
            mom(i, j) = trace_product(*pow[i], xr);
        }
    }
    return mom;
}

/// Flux and zero-delay g2 of the displaced operator D = x X + c from the
/// ladder moments of X; expansion of <D'D> and <D'^2 D^2> in normal order.
struct OutputMoments {
    double flux = 0.0;
    double fourth = 0.0;
};

inline OutputMoments displaced_output_moments(const NormalMoments& mom,
                                              double x, complexd c)
{
    static const double binom[3] = {1.0, 2.0, 1.0};
    OutputMoments out;
    out.flux = std::real(x * x * mom(1, 1) + x * c * mom(1, 0) +
                         x * std::conj(c) * mom(0, 1) + std::norm(c));
    complexd fourth = 0.0;
    for (int i = 0; i <= 2; ++i) {
        for (int j = 0; j <= 2; ++j) {
            fourth += binom[i] * binom[j] * std::pow(x, i + j) *
                      std::pow(std::conj(c), 2 - i) * std::pow(c, 2 - j) *
                      mom(i, j);
        }
    }
    out.fourth = std::real(fourth);
    return out;
}

struct SteadyStateObservables {
    complexd a_mean, b_mean, A_mean, B_mean;
    double n_a = 0.0, n_b = 0.0;
    double p_exc = 0.0;
    double T_F = 0.0, T_B = 0.0;
    std::optional<double> g2_FF, g2_BB;  ///< empty below the flux floor
};

// correlations are numerically meaningless below this fraction of the
// input flux
inline constexpr double g2_flux_floor = 1e-12;

inline void fill_output_flux(SteadyStateObservables& obs,
                             const NormalMoments& ma, const NormalMoments& mb,
                             double x, complexd c_forward, complexd c_backward,
                             double flux_in)
{
    if (flux_in <= 0) return;  // undriven: normalized fluxes stay zero
    const auto fwd = displaced_output_moments(ma, x, c_forward);
    const auto bwd = displaced_output_moments(mb, x, c_backward);
    obs.T_F = fwd.flux / flux_in;
    obs.T_B = bwd.flux / flux_in;
    if (fwd.flux > g2_flux_floor * flux_in) {
        obs.g2_FF = fwd.fourth / (fwd.flux * fwd.flux);
    }
    if (bwd.flux > g2_flux_floor * flux_in) {
        obs.g2_BB = bwd.fourth / (bwd.flux * bwd.flux);
    }
}

inline SteadyStateObservables observables(const DensityOperator& state,
                                          const SystemParams& params,
                                          const FockConfig& fock)
{
    const auto ops = composite_operators(fock);
    const auto ma = ladder_moments(ops.a, state.rho);
    const auto mb = ladder_moments(ops.b, state.rho);

    SteadyStateObservables obs;
    obs.a_mean = ma(0, 1);
    obs.b_mean = mb(0, 1);
    const double rt2 = std::sqrt(2.0);
    obs.A_mean = (obs.a_mean + obs.b_mean) / rt2;
    obs.B_mean = (obs.a_mean - obs.b_mean) / rt2;
    obs.n_a = std::real(ma(1, 1));
    obs.n_b = std::real(mb(1, 1));
    obs.p_exc = std::real(
        trace_product(ops.sm, ComplexOperator(ops.sm) * state.rho));

    const double flux_in = params.input_flux();
    const complexd a_in = input_amplitude(params);
    fill_output_flux(obs, ma, mb, std::sqrt(2.0 * params.kappa_ex), -a_in, 0.0,
                     flux_in);
    return obs;
}

// --- exact normal-mode factorization ------------------------------------

/// Steady state when only one normal mode couples to the atom.  For
/// Im g_tw = 0 the coupled mode is A = (a+b)/sqrt(2); for Re g_tw = 0 it
/// is B.  The uncoupled mode is the driven damped oscillator
/// beta = -i(drive/sqrt2)/(kappa + i(delta_C -/+ h)), exactly coherent.
struct FactorizedSteadyState {
    Eigen::MatrixXcd rho_sub;  ///< coupled (mode, atom) density operator
    complexd beta;             ///< coherent amplitude of the uncoupled mode
    bool coupled_is_A = true;
    int n_levels = 0;          ///< coupled-mode truncation
    NormalMoments coupled;     ///< ladder moments of the coupled mode
    double p_exc = 0.0;
};

inline bool factorizes(const SystemParams& params)
{
    return params.g_tw.imag() == 0.0 || params.g_tw.real() == 0.0;
}

inline FactorizedSteadyState solve_steady_state_factorized(
    const SystemParams& params, int n_levels, double residual_tol = 1e-10,
    long dim_cap = FockConfig::default_dim_cap)
{
    params.require_cavity();
    if (!factorizes(params)) {
        throw regime_error("factorized solver needs a purely real or purely "
                           "imaginary g_tw");
    }
    FactorizedSteadyState out;
    out.coupled_is_A = params.g_tw.imag() == 0.0;
    out.n_levels = n_levels;

    const auto [g_A, g_B] = normal_mode_couplings(params.g_tw);
    // coupled-mode parameters; for mode B the coupling picks up the phase
    // from -i g_B (B' s- - s+ B)
    const double delta_mode = params.delta_cavity +
                              (out.coupled_is_A ? params.h : -params.h);
    const complexd coupling = out.coupled_is_A ? complexd(g_A) : complexd(0.0, g_B);
    const complexd drive_mode = params.drive / std::sqrt(2.0);
    const double delta_other = params.delta_cavity +
                               (out.coupled_is_A ? -params.h : params.h);
    out.beta = -complexd(0.0, 1.0) * drive_mode /
               complexd(params.kappa(), delta_other);

    const long dim = 2L * (n_levels + 1);
    if (dim > dim_cap) {
        throw dimension_error("factorized subsystem dimension " +
                              std::to_string(dim) + " exceeds cap");
    }
    require_solvable_dim(dim);
    const auto im = identity_op(n_levels + 1);
    const auto iq = identity_op(2);
    const ComplexOperator mode = kron(destroy_op(n_levels + 1), iq);
    const ComplexOperator sm = kron(im, sigma_minus_op());
    const ComplexOperator md = mode.adjoint();
    const ComplexOperator sp = sm.adjoint();

    ComplexOperator ham = (params.delta_atom * (sp * sm) +
                           delta_mode * (md * mode) +
                           std::conj(drive_mode) * mode + drive_mode * md +
                           std::conj(coupling) * (md * sm) +
                           coupling * (sp * mode))
                              .pruned();
    const auto liou = build_liouvillian_from(
        ham, {{params.kappa(), mode}, {params.gamma / 2.0, sm}});
    out.rho_sub = solve_steady_state_from(liou, dim, residual_tol).rho;
    out.coupled = ladder_moments(mode, out.rho_sub);
    out.p_exc = std::real(trace_product(sm, ComplexOperator(sm) * out.rho_sub));
    return out;
}

inline SteadyStateObservables observables(const FactorizedSteadyState& st,
                                          const SystemParams& params)
{
    const double rt2 = std::sqrt(2.0);
    const complexd coupled_mean = st.coupled(0, 1);
    SteadyStateObservables obs;
    obs.p_exc = st.p_exc;
    if (st.coupled_is_A) {
        obs.A_mean = coupled_mean;
        obs.B_mean = st.beta;
    } else {
        obs.A_mean = st.beta;
        obs.B_mean = coupled_mean;
    }
    obs.a_mean = (obs.A_mean + obs.B_mean) / rt2;
    obs.b_mean = (obs.A_mean - obs.B_mean) / rt2;

    // with M the coupled and beta the uncoupled amplitude,
    // a = (M + beta)/sqrt2 and b = +/-(M - beta)/sqrt2; the sign only
    // flips the mean (handled through the role assignment above), while
    // photon numbers and output moments are sign-blind
    const complexd beta = st.beta;
    obs.n_a = 0.5 * std::real(st.coupled(1, 1) + st.coupled(1, 0) * beta +
                              std::conj(beta) * st.coupled(0, 1) +
                              std::norm(beta));
    obs.n_b = 0.5 * std::real(st.coupled(1, 1) - st.coupled(1, 0) * beta -
                              std::conj(beta) * st.coupled(0, 1) +
                              std::norm(beta));

    const double flux_in = params.input_flux();
    const complexd a_in = input_amplitude(params);
    const double x = std::sqrt(params.kappa_ex);  // sqrt(2 kex)/sqrt2
    const complexd c_forward = x * beta - a_in;
    const complexd c_backward = -x * beta;
    fill_output_flux(obs, st.coupled, st.coupled, x, c_forward, c_backward,
                     flux_in);
    return obs;
}

// --- auto-truncated solves ----------------------------------------------

enum class Representation { automatic, full, factorized };

struct SolveOptions {
    Representation representation = Representation::automatic;
    std::optional<FockConfig> fock;   ///< fixed truncation; disables doubling
    double convergence_rel = 0.005;   ///< doubling acceptance threshold
    double residual_tol = 1e-10;
    long dim_cap = FockConfig::default_dim_cap;
};

struct ConvergedObservables {
    SteadyStateObservables obs;
    FockConfig fock;        ///< accepted truncation (factorized: n_a = n_b = n_levels)
    bool factorized = false;
};

namespace detail {

inline std::vector<double> comparison_vector(const SteadyStateObservables& o)
{
    std::vector<double> v{o.T_F,
                          o.T_B,
                          o.n_a,
                          o.n_b,
                          o.p_exc,
                          std::abs(o.a_mean),
                          std::abs(o.b_mean)};
    if (o.g2_FF) v.push_back(*o.g2_FF);
    if (o.g2_BB) v.push_back(*o.g2_BB);
    return v;
}

inline bool within_rel(const SteadyStateObservables& lo,
                       const SteadyStateObservables& hi, double rel)
{
    const auto a = comparison_vector(lo);
    const auto b = comparison_vector(hi);
    if (a.size() != b.size()) return false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double scale = std::max({std::abs(a[i]), std::abs(b[i]), 1e-9});
        if (std::abs(a[i] - b[i]) > rel * scale) return false;
    }
    return true;
}

inline int starting_truncation(const SystemParams& p)
{
    const double ratio = std::norm(p.drive) / (p.kappa() * p.kappa());
    return std::max(3, static_cast<int>(std::ceil(2.0 * ratio)) + 2);
}

} // namespace detail

inline SteadyStateObservables solve_observables_full(const SystemParams& params,
                                                     const FockConfig& fock,
                                                     const SolveOptions& opt)
{
    const auto state =
        solve_steady_state(params, fock, opt.residual_tol, opt.dim_cap);
    return observables(state, params, fock);
}

inline SteadyStateObservables solve_observables_factorized(
    const SystemParams& params, int n_levels, const SolveOptions& opt)
{
    const auto st = solve_steady_state_factorized(params, n_levels,
                                                  opt.residual_tol, opt.dim_cap);
    return observables(st, params);
}

/// Solve with the truncation grown by doubling until one more doubling
/// moves no reported observable by more than convergence_rel.
inline ConvergedObservables solve_observables_auto(const SystemParams& params,
                                                   const SolveOptions& opt = {})
{
    ConvergedObservables out;
    const bool use_factorized =
        opt.representation == Representation::factorized ||
        (opt.representation == Representation::automatic && factorizes(params));
    out.factorized = use_factorized;

    if (opt.fock) {
        out.fock = *opt.fock;
        out.obs = use_factorized
                      ? solve_observables_factorized(
                            params, std::max(opt.fock->n_a, opt.fock->n_b), opt)
                      : solve_observables_full(params, *opt.fock, opt);
        return out;
    }

    int n = detail::starting_truncation(params);
    if (use_factorized) {
        auto coarse = solve_observables_factorized(params, n, opt);
        while (true) {
            auto fine = solve_observables_factorized(params, 2 * n, opt);
            if (detail::within_rel(coarse, fine, opt.convergence_rel)) break;
            n *= 2;
            coarse = std::move(fine);
        }
        out.obs = std::move(coarse);
        out.fock = FockConfig{n, n};
        return out;
    }

    auto coarse = solve_observables_full(params, FockConfig{n, n}, opt);
    while (true) {
        auto fine = solve_observables_full(params, FockConfig{2 * n, 2 * n}, opt);
        if (detail::within_rel(coarse, fine, opt.convergence_rel)) break;
        n *= 2;
        coarse = std::move(fine);
    }
    out.obs = std::move(coarse);
    out.fock = FockConfig{n, n};
    return out;
}

// --- sweeps ---------------------------------------------------------------

/// One grid point of a steady-state sweep.  A nonempty error means the
/// point failed (only possible with strict = false).
struct SweepPoint {
    double x = 0.0;
    SteadyStateObservables obs;
    FockConfig fock;
    std::string error;
};

/// Evaluate the steady state over a grid, one independent solve per point,
/// dispatched to a bounded worker pool; results come back in grid order.
template <typename ParamsOf>
std::vector<SweepPoint> sweep_observables(const std::vector<double>& grid,
                                          ParamsOf&& params_of,
                                          const SolveOptions& opt = {},
                                          int workers = 1, bool strict = false)
{
    return parallel_map<SweepPoint>(
        static_cast<int>(grid.size()), workers, [&](int i) {
            SweepPoint pt;
            pt.x = grid[i];
            try {
                const auto solved =
                    solve_observables_auto(params_of(grid[i]), opt);
                pt.obs = solved.obs;
                pt.fock = solved.fock;
            } catch (const std::exception& e) {
                if (strict) throw;
                pt.error = e.what();
            }
            return pt;
        });
}

/// Observables vs coupling magnitude |g_tw| (the phase of params.g_tw is
/// kept; angular units).
inline std::vector<SweepPoint> sweep_coupling(const SystemParams& params,
                                              const std::vector<double>& g_values,
                                              const SolveOptions& opt = {},
                                              int workers = 1,
                                              bool strict = false)
{
    const complexd phase = (params.g_tw == complexd(0.0))
                               ? complexd(1.0)
                               : params.g_tw / std::abs(params.g_tw);
    return sweep_observables(
        g_values,
        [&](double g) {
            SystemParams p = params;
            p.g_tw = g * phase;
            return p;
        },
        opt, workers, strict);
}

/// Observables vs drive strength (angular units).
inline std::vector<SweepPoint> sweep_drive(const SystemParams& params,
                                           const std::vector<double>& drives,
                                           const SolveOptions& opt = {},
                                           int workers = 1, bool strict = false)
{
    return sweep_observables(
        drives,
        [&](double ep) {
            SystemParams p = params;
            p.drive = ep;
            return p;
        },
        opt, workers, strict);
}

/// Detuning sweep of the full quantum solution at fixed drive; the probe
/// moves, so delta_A tracks delta_C up to the fixed atom-cavity offset.
inline std::vector<SweepPoint> spectrum_strong_drive(
    const SystemParams& params, const std::vector<double>& detunings,
    double atom_cavity_offset = 0.0, const SolveOptions& opt = {},
    int workers = 1, bool strict = false)
{
    return sweep_observables(
        detunings,
        [&](double dc) {
            SystemParams p = params;
            p.delta_cavity = dc;
            p.delta_atom = dc + atom_cavity_offset;
            return p;
        },
        opt, workers, strict);
}

} // namespace toroidq
