#pragma once

#include <vector>

#include "ptqes/grid.hpp"

namespace ptqes {

/// The complex constant epsilon in the factorized Hamiltonian
/// H = 1/2 (-d/dx + W)(d/dx + W) + epsilon.
struct FactorizationEnergy {
    Complex value{};
};

inline Complex twice_imag_part(const FactorizationEnergy& eps) {
    // 2(eps - eps*) = 4i Im(eps)
    return Complex(0.0, 4.0 * eps.value.imag());
}

/// psi = exp(-I) with I the cumulative integral of W from 0; psi(0) = 1.
/// When |Re I| exceeds 700 the exponent is clamped and `clamped` is set:
/// the wave function is not representable (unbounded for practical
/// purposes) but the samples stay finite.
struct WavefunctionResult {
    SampledFunction psi;
    std::vector<Complex> log_psi;  // -I, the exact log-domain values (unclamped)
    bool clamped = false;
};

/// Everything the construction produces for one (U+, epsilon) input:
/// sampled U+, U-, W, V, psi on a shared grid, the symbolic forms used to
/// build them, and their sampled derivatives (consumed by verification).
struct PTModel {
    Grid grid;
    FactorizationEnergy epsilon;
    Bindings bindings;

    Expr u_plus_expr;
    Expr u_minus_expr;
    Expr w_expr;

    SampledFunction u_plus;
    SampledFunction u_minus;
    SampledFunction w;
    SampledFunction v;
    SampledFunction psi;

    SampledFunction u_plus_prime;
    SampledFunction u_minus_prime;
    SampledFunction w_prime;

    std::vector<Complex> log_psi;
    bool psi_clamped = false;
};

/// |U+| at every grid point must exceed this, otherwise the division in the
/// construction is meaningless and ZeroGeneratingFunction is thrown.
inline constexpr double kZeroGeneratingThreshold = 1e-12;
inline constexpr double kExpOverflowGuard = 700.0;

/// U- = (U+' - 2(eps - eps*)) / U+ as an expression (U+' symbolic).
Expr u_minus_expression(const Expr& u_plus, const FactorizationEnergy& eps);

/// W = 1/2 (U+ + U-) as an expression.
Expr superpotential_expression(const Expr& u_plus, const FactorizationEnergy& eps);

SampledFunction build_u_minus(const Expr& u_plus, const FactorizationEnergy& eps,
                              const Grid& grid, const Bindings& bindings);

SampledFunction build_superpotential(const Expr& u_plus, const FactorizationEnergy& eps,
                                     const Grid& grid, const Bindings& bindings);

/// V = 1/2 (W^2 - W') + eps, pointwise.
SampledFunction potential_from_superpotential(const SampledFunction& w,
                                              const SampledFunction& w_prime,
                                              const FactorizationEnergy& eps);

/// V = 1/8 (U+^2 + U-^2) - 1/4 U-' + Re eps, pointwise.
SampledFunction potential_from_u_pair(const SampledFunction& u_plus,
                                      const SampledFunction& u_minus,
                                      const SampledFunction& u_minus_prime,
                                      const FactorizationEnergy& eps);

WavefunctionResult build_wavefunction(const SampledFunction& w);

/// Runs the whole construction. V is computed from the (U+, U-) form with
/// U-' taken symbolically; the superpotential form of V is recomputed inside
/// the verification battery rather than stored twice.
PTModel build_model(const Expr& u_plus, const FactorizationEnergy& eps,
                    const Grid& grid, const Bindings& bindings);

}  // namespace ptqes
