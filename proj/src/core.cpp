#include "ptqes/core.hpp"

#include <cmath>

namespace ptqes {

namespace {

void require_nonvanishing(const SampledFunction& u, const char* what) {
    for (int j = 0; j < u.size(); ++j) {
        if (std::abs(u[j]) <= kZeroGeneratingThreshold)
            throw ZeroGeneratingFunction(u.grid().point(j));
    }
    (void)what;
}

}  // namespace

Expr u_minus_expression(const Expr& u_plus, const FactorizationEnergy& eps) {
    return (differentiate(u_plus) - Expr::constant(twice_imag_part(eps))) / u_plus;
}

Expr superpotential_expression(const Expr& u_plus, const FactorizationEnergy& eps) {
    return Expr::constant(0.5) * (u_plus + u_minus_expression(u_plus, eps));
}

SampledFunction build_u_minus(const Expr& u_plus, const FactorizationEnergy& eps,
                              const Grid& grid, const Bindings& bindings) {
    require_nonvanishing(sample(u_plus, grid, bindings), "U+");
    return sample(u_minus_expression(u_plus, eps), grid, bindings);
}

SampledFunction build_superpotential(const Expr& u_plus, const FactorizationEnergy& eps,
                                     const Grid& grid, const Bindings& bindings) {
    require_nonvanishing(sample(u_plus, grid, bindings), "U+");
    return sample(superpotential_expression(u_plus, eps), grid, bindings);
}

SampledFunction potential_from_superpotential(const SampledFunction& w,
                                              const SampledFunction& w_prime,
                                              const FactorizationEnergy& eps) {
    if (!(w.grid() == w_prime.grid()))
        throw InvalidParameters("W and W' must share one grid");
    std::vector<Complex> v(w.size());
    for (int j = 0; j < w.size(); ++j) v[j] = 0.5 * (w[j] * w[j] - w_prime[j]) + eps.value;
    return SampledFunction(w.grid(), std::move(v));
}

SampledFunction potential_from_u_pair(const SampledFunction& u_plus,
                                      const SampledFunction& u_minus,
                                      const SampledFunction& u_minus_prime,
                                      const FactorizationEnergy& eps) {
    if (!(u_plus.grid() == u_minus.grid()) || !(u_plus.grid() == u_minus_prime.grid()))
        throw InvalidParameters("U+, U-, U-' must share one grid");
    const Complex re_eps(eps.value.real(), 0.0);  // (eps* + eps)/2
    std::vector<Complex> v(u_plus.size());
    for (int j = 0; j < u_plus.size(); ++j)
        v[j] = 0.125 * (u_plus[j] * u_plus[j] + u_minus[j] * u_minus[j]) -
               0.25 * u_minus_prime[j] + re_eps;
    return SampledFunction(u_plus.grid(), std::move(v));
}

WavefunctionResult build_wavefunction(const SampledFunction& w) {
    std::vector<Complex> integral = cumulative_integral_from_center(w);
    std::vector<Complex> log_psi(integral.size());
    std::vector<Complex> psi(integral.size());
    bool clamped = false;
    for (std::size_t j = 0; j < integral.size(); ++j) {
        log_psi[j] = -integral[j];
        double re = log_psi[j].real();
        if (std::abs(re) > kExpOverflowGuard) {
            clamped = true;
            re = std::copysign(kExpOverflowGuard, re);
        }
        psi[j] = std::exp(Complex(re, log_psi[j].imag()));
    }
    return {SampledFunction(w.grid(), std::move(psi)), std::move(log_psi), clamped};
}

PTModel build_model(const Expr& u_plus, const FactorizationEnergy& eps, const Grid& grid,
                    const Bindings& bindings) {
    SampledFunction u_plus_samples = sample(u_plus, grid, bindings);
    require_nonvanishing(u_plus_samples, "U+");

    Expr um_expr = u_minus_expression(u_plus, eps);
    Expr w_expr = Expr::constant(0.5) * (u_plus + um_expr);

    SampledFunction u_minus = sample(um_expr, grid, bindings);
    SampledFunction w = sample(w_expr, grid, bindings);
    SampledFunction u_plus_prime = sample(differentiate(u_plus), grid, bindings);
    SampledFunction u_minus_prime = sample(differentiate(um_expr), grid, bindings);
    SampledFunction w_prime = sample(differentiate(w_expr), grid, bindings);

    SampledFunction v = potential_from_u_pair(u_plus_samples, u_minus, u_minus_prime, eps);
    WavefunctionResult wf = build_wavefunction(w);

    return PTModel{
        .grid = grid,
        .epsilon = eps,
        .bindings = bindings,
        .u_plus_expr = u_plus,
        .u_minus_expr = um_expr,
        .w_expr = w_expr,
        .u_plus = std::move(u_plus_samples),
        .u_minus = std::move(u_minus),
        .w = std::move(w),
        .v = std::move(v),
        .psi = std::move(wf.psi),
        .u_plus_prime = std::move(u_plus_prime),
        .u_minus_prime = std::move(u_minus_prime),
        .w_prime = std::move(w_prime),
        .log_psi = std::move(wf.log_psi),
        .psi_clamped = wf.clamped,
    };
}

}  // namespace ptqes
