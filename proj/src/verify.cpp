#include "ptqes/verify.hpp"

#include <algorithm>
#include <cmath>

namespace ptqes {

std::string to_string(StateClass s) {
    switch (s) {
        case StateClass::BoundState: return "BoundState";
        case StateClass::ContinuumState: return "ContinuumState";
        case StateClass::NotAnEigenstate: return "NotAnEigenstate";
    }
    return "?";
}

namespace {

double normalized(double raw, double scale) { return raw == 0.0 ? 0.0 : raw / scale; }

CheckEntry make_entry(std::string name, double residual, double tol) {
    return {std::move(name), residual, tol, residual <= tol};
}

}  // namespace

CheckEntry check_pt_symmetric(const SampledFunction& f, double tol, const std::string& name) {
    const Grid& g = f.grid();
    double raw = 0.0;
    for (int j = 0; j < g.size(); ++j)
        raw = std::max(raw, std::abs(std::conj(f[g.mirror_index(j)]) - f[j]));
    double scale = std::max(f.max_abs(), 1e-300);
    return make_entry(name, normalized(raw, scale), tol);
}

CheckEntry check_anti_pt(const SampledFunction& f, double tol, const std::string& name) {
    const Grid& g = f.grid();
    double raw = 0.0;
    for (int j = 0; j < g.size(); ++j)
        raw = std::max(raw, std::abs(std::conj(f[g.mirror_index(j)]) + f[j]));
    double scale = std::max(f.max_abs(), 1e-300);
    return make_entry(name, normalized(raw, scale), tol);
}

CheckEntry check_superpotential_condition(const SampledFunction& w,
                                          const SampledFunction& w_prime,
                                          const FactorizationEnergy& eps, double tol) {
    const Grid& g = w.grid();
    const Complex two_eps = 2.0 * eps.value;
    const Complex two_eps_conj = std::conj(two_eps);
    double raw = 0.0;
    double scale = 0.0;
    for (int j = 0; j < g.size(); ++j) {
        int m = g.mirror_index(j);
        Complex wr = std::conj(w[m]);                 // W*(-x)
        Complex wr_prime = -std::conj(w_prime[m]);    // d/dx W*(-x)
        Complex lhs = wr * wr + wr_prime + two_eps_conj;
        Complex rhs = w[j] * w[j] - w_prime[j] + two_eps;
        raw = std::max(raw, std::abs(lhs - rhs));
        scale = std::max(scale, std::abs(w[j]) * std::abs(w[j]) + std::abs(w_prime[j]));
    }
    scale = std::max(scale + std::abs(two_eps), 1e-300);
    return make_entry("superpotential_condition", normalized(raw, scale), tol);
}

CheckEntry schrodinger_residual(const SampledFunction& v, const SampledFunction& psi,
                                const FactorizationEnergy& eps, double tol) {
    if (!(v.grid() == psi.grid())) throw InvalidParameters("V and psi must share one grid");
    const Grid& g = v.grid();
    const double h = g.spacing();
    double raw = 0.0;
    for (int j = 1; j < g.size() - 1; ++j) {
        Complex d2 = (psi[j + 1] - 2.0 * psi[j] + psi[j - 1]) / (h * h);
        raw = std::max(raw, std::abs(-0.5 * d2 + v[j] * psi[j] - eps.value * psi[j]));
    }
    double scale = std::max(psi.max_abs(), 1e-300);
    return make_entry("schrodinger_residual", normalized(raw, scale), tol);
}

StateClass classify_state(const SampledFunction& psi, double decay_tol, double bound_tol) {
    const Grid& g = psi.grid();
    double peak = std::max(psi.max_abs(), 1e-300);
    double edge = std::max(std::abs(psi[0]), std::abs(psi[g.size() - 1]));
    if (edge / peak < decay_tol) return StateClass::BoundState;
    double center = std::abs(psi[g.center_index()]);
    if (center > 0.0 && peak / center < bound_tol) return StateClass::ContinuumState;
    return StateClass::NotAnEigenstate;
}

VerificationReport run_battery(const PTModel& model, const Tolerances& tols) {
    VerificationReport report;
    const Grid& g = model.grid;
    report.grid_half_width = g.half_width();
    report.grid_points = g.size();
    report.grid_spacing = g.spacing();
    report.epsilon = model.epsilon.value;

    report.checks.push_back(check_pt_symmetric(model.v, tols.symmetry, "pt_symmetry_v"));
    report.checks.push_back(
        check_pt_symmetric(model.u_plus, tols.symmetry, "pt_symmetry_u_plus"));
    report.checks.push_back(check_anti_pt(model.u_minus, tols.symmetry, "anti_pt_u_minus"));
    report.checks.push_back(
        check_superpotential_condition(model.w, model.w_prime, model.epsilon, tols.symmetry));

    // first-order identity U+' = U+ U- + 2(eps - eps*)
    {
        const Complex shift = twice_imag_part(model.epsilon);
        double raw = 0.0;
        double scale = std::abs(shift);
        for (int j = 0; j < g.size(); ++j) {
            Complex product = model.u_plus[j] * model.u_minus[j];
            raw = std::max(raw, std::abs(model.u_plus_prime[j] - product - shift));
            scale = std::max({scale, std::abs(model.u_plus_prime[j]), std::abs(product)});
        }
        scale = std::max(scale, 1e-300);
        report.checks.push_back(
            make_entry("factorization_identity", normalized(raw, scale), tols.symmetry));
    }

    // the superpotential route to V must agree with the stored (U+, U-) route
    {
        SampledFunction v6 =
            potential_from_superpotential(model.w, model.w_prime, model.epsilon);
        double raw = 0.0;
        for (int j = 0; j < g.size(); ++j)
            raw = std::max(raw, std::abs(v6[j] - model.v[j]));
        double scale = 1.0 + model.v.max_abs();
        report.checks.push_back(
            make_entry("potential_consistency", raw / scale, tols.symmetry));
    }

    {
        double v_scale = 1.0;
        for (int j = 0; j < g.size(); ++j)
            v_scale = std::max(v_scale, std::abs(model.v[j] - model.epsilon.value));
        double tol = tols.schrodinger_factor * g.spacing() * g.spacing() * v_scale;
        report.checks.push_back(schrodinger_residual(model.v, model.psi, model.epsilon, tol));
    }

    report.state_class = classify_state(model.psi, tols.decay, tols.bounded);
    report.overall = std::all_of(report.checks.begin(), report.checks.end(),
                                 [](const CheckEntry& c) { return c.pass; });
    return report;
}

}  // namespace ptqes
