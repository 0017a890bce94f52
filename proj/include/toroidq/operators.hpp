#pragma once

// Hilbert-space operators for the atom + two-WGM-mode system.
//
// Tensor ordering is mode a (x) mode b (x) atom, with the atom index
// fastest: composite index = (i_a*(n_b+1) + i_b)*2 + i_atom, atom 0 = |g>,
// 1 = |e>.  Vectorization is column-stacking: vec(rho)[j*dim + i] = rho(i,j),
// so vec(A rho B) = (B^T kron A) vec(rho).  Both choices are conventions
// only, but golden files and the Liouvillian layout depend on them.

#include <complex>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/SparseCore>

#include "toroidq/params.hpp"

namespace toroidq {

using ComplexOperator = Eigen::SparseMatrix<complexd>;
using Triplet = Eigen::Triplet<complexd>;

inline ComplexOperator identity_op(long n)
{
    ComplexOperator id(n, n);
    id.setIdentity();
    return id;
}

// annihilation operator on a (levels)-dimensional truncated Fock space
inline ComplexOperator destroy_op(int levels)
{
    ComplexOperator a(levels, levels);
    std::vector<Triplet> t;
    t.reserve(levels);
    for (int n = 1; n < levels; ++n) {
        t.emplace_back(n - 1, n, std::sqrt(static_cast<double>(n)));
    }
    a.setFromTriplets(t.begin(), t.end());
    return a;
}

inline ComplexOperator sigma_minus_op()
{
    ComplexOperator s(2, 2);
    s.insert(0, 1) = 1.0;  // |g><e|
    s.makeCompressed();
    return s;
}

inline ComplexOperator kron(const ComplexOperator& A, const ComplexOperator& B)
{
    ComplexOperator out(A.rows() * B.rows(), A.cols() * B.cols());
    std::vector<Triplet> t;
    t.reserve(static_cast<std::size_t>(A.nonZeros()) * B.nonZeros());
    for (int ka = 0; ka < A.outerSize(); ++ka) {
        for (ComplexOperator::InnerIterator ia(A, ka); ia; ++ia) {
            for (int kb = 0; kb < B.outerSize(); ++kb) {
                for (ComplexOperator::InnerIterator ib(B, kb); ib; ++ib) {
                    t.emplace_back(ia.row() * B.rows() + ib.row(),
                                   ia.col() * B.cols() + ib.col(),
                                   ia.value() * ib.value());
                }
            }
        }
    }
    out.setFromTriplets(t.begin(), t.end());
    return out;
}

/// The three elementary operators lifted to the composite space.
struct ModeOperators {
    ComplexOperator a;   ///< annihilation, mode a
    ComplexOperator b;   ///< annihilation, mode b
    ComplexOperator sm;  ///< atomic lowering sigma^-
    long dim = 0;
};

inline ModeOperators composite_operators(const FockConfig& fock,
                                         long dim_cap = FockConfig::default_dim_cap)
{
    fock.validate(dim_cap);
    const auto ia = identity_op(fock.n_a + 1);
    const auto ib = identity_op(fock.n_b + 1);
    const auto iq = identity_op(2);
    ModeOperators ops;
    ops.a = kron(kron(destroy_op(fock.n_a + 1), ib), iq);
    ops.b = kron(kron(ia, destroy_op(fock.n_b + 1)), iq);
    ops.sm = kron(kron(ia, ib), sigma_minus_op());
    ops.dim = fock.dim();
    return ops;
}

/// Rotating-frame Hamiltonian
///   H = dA s+s- + dC (a'a + b'b) + h (a'b + b'a)
///     + (E* a + E a') + (g* a's- + g s+a) + (g b's- + g* s+b).
inline ComplexOperator build_hamiltonian(const SystemParams& params,
                                         const ModeOperators& ops)
{
    const ComplexOperator ad = ops.a.adjoint();
    const ComplexOperator bd = ops.b.adjoint();
    const ComplexOperator sp = ops.sm.adjoint();
    const complexd g = params.g_tw;
    const complexd drive = params.drive;

    ComplexOperator ham =
        (params.delta_atom * (sp * ops.sm) +
         params.delta_cavity * (ComplexOperator(ad * ops.a) + bd * ops.b) +
         params.h * (ComplexOperator(ad * ops.b) + bd * ops.a) +
         std::conj(drive) * ops.a + drive * ad +
         std::conj(g) * (ad * ops.sm) + g * (sp * ops.a) +
         g * (bd * ops.sm) + std::conj(g) * (sp * ops.b))
            .pruned();
    ham.makeCompressed();
    return ham;
}

inline ComplexOperator build_hamiltonian(const SystemParams& params,
                                         const FockConfig& fock,
                                         long dim_cap = FockConfig::default_dim_cap)
{
    params.validate();
    if (fock.n_a < 1 || fock.n_b < 1) {
        throw config_error("Fock truncations must be >= 1");
    }
    return build_hamiltonian(params, composite_operators(fock, dim_cap));
}

/// Same system written in the normal modes A = (a+b)/sqrt(2),
/// B = (a-b)/sqrt(2); the A/B tensor slots reuse the a/b truncations.
/// Used for cross-checks and for the factorized solver below.
inline ComplexOperator build_normal_mode_hamiltonian(const SystemParams& params,
                                                     const ModeOperators& ops)
{
    const ComplexOperator Ad = ops.a.adjoint();
    const ComplexOperator Bd = ops.b.adjoint();
    const ComplexOperator sp = ops.sm.adjoint();
    const auto [g_A, g_B] = normal_mode_couplings(params.g_tw);
    const complexd drive = params.drive / std::sqrt(2.0);
    const complexd i_gB(0.0, g_B);

    ComplexOperator ham =
        (params.delta_atom * (sp * ops.sm) +
         (params.delta_cavity + params.h) * (Ad * ops.a) +
         (params.delta_cavity - params.h) * (Bd * ops.b) +
         std::conj(drive) * ops.a + drive * Ad +
         std::conj(drive) * ops.b + drive * Bd +
         g_A * (ComplexOperator(Ad * ops.sm) + sp * ops.a) -
         i_gB * (ComplexOperator(Bd * ops.sm) - sp * ops.b))
            .pruned();
    ham.makeCompressed();
    return ham;
}

/// Vectorized Lindblad generator with rho_dot = L vec(rho):
///   L = -i(I (x) H - H^T (x) I)
///     + sum_k w_k [ 2 conj(C_k) (x) C_k - I (x) C_k'C_k - (C_k'C_k)^T (x) I ]
/// matching D[O]rho = 2 O rho O' - O'O rho - rho O'O with weights
/// {kappa: a, kappa: b, gamma/2: sigma^-}.
inline ComplexOperator build_liouvillian_from(
    const ComplexOperator& ham,
    const std::vector<std::pair<double, ComplexOperator>>& collapse)
{
    const long dim = ham.rows();
    const ComplexOperator id = identity_op(dim);
    const complexd minus_i(0.0, -1.0);

    ComplexOperator liou = minus_i * (kron(id, ham) -
                                      kron(ComplexOperator(ham.transpose()), id));
    for (const auto& [weight, c] : collapse) {
        const ComplexOperator cdc = (ComplexOperator(c.adjoint()) * c).pruned();
        liou = liou +
               weight * (2.0 * kron(c.conjugate(), c) - kron(id, cdc) -
                         kron(ComplexOperator(cdc.transpose()), id));
    }
    liou.makeCompressed();
    return liou;
}

inline ComplexOperator build_liouvillian(const SystemParams& params,
                                         const FockConfig& fock,
                                         long dim_cap = FockConfig::default_dim_cap)
{
    params.require_cavity();
    const auto ops = composite_operators(fock, dim_cap);
    const auto ham = build_hamiltonian(params, ops);
    return build_liouvillian_from(ham, {{params.kappa(), ops.a},
                                        {params.kappa(), ops.b},
                                        {params.gamma / 2.0, ops.sm}});
}

inline Eigen::VectorXcd vectorize(const Eigen::MatrixXcd& rho)
{
    return Eigen::Map<const Eigen::VectorXcd>(rho.data(), rho.size());
}

inline Eigen::MatrixXcd unvectorize(const Eigen::VectorXcd& v, long dim)
{
    return Eigen::Map<const Eigen::MatrixXcd>(v.data(), dim, dim);
}

} // namespace toroidq
