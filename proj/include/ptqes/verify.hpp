#pragma once

#include <string>
#include <vector>

#include "ptqes/core.hpp"

namespace ptqes {

struct CheckEntry {
    std::string name;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

enum class StateClass { BoundState, ContinuumState, NotAnEigenstate };

std::string to_string(StateClass s);

struct VerificationReport {
    std::vector<CheckEntry> checks;
    StateClass state_class = StateClass::NotAnEigenstate;
    bool overall = false;  // conjunction of the entries
    double grid_half_width = 0.0;
    int grid_points = 0;
    double grid_spacing = 0.0;
    Complex epsilon{};
};

/// All residuals are scale-normalized (divided by the max magnitude of the
/// checked quantity) so the tolerances are dimensionless.
struct Tolerances {
    double symmetry = 1e-9;            // PT / anti-PT / identity checks
    double schrodinger_factor = 10.0;  // threshold = factor * h^2 * max(max|V - eps|, 1)
    double decay = 1e-3;               // bound-state edge decay
    double bounded = 1e3;              // continuum boundedness, max|psi| / |psi(0)|
};

/// PT condition f*(-x) = f(x), checked by exact index mirroring.
CheckEntry check_pt_symmetric(const SampledFunction& f, double tol,
                              const std::string& name = "pt_symmetry");

/// Anti-PT condition f*(-x) = -f(x).
CheckEntry check_anti_pt(const SampledFunction& f, double tol,
                         const std::string& name = "anti_pt_symmetry");

/// The superpotential condition that makes V PT-symmetric:
///   (W*(-x))^2 + d/dx W*(-x) + 2 eps* = W^2 - W' + 2 eps,
/// with d/dx W*(-x) = -conj(W'(-x)) obtained from the mirrored samples.
CheckEntry check_superpotential_condition(const SampledFunction& w,
                                          const SampledFunction& w_prime,
                                          const FactorizationEnergy& eps, double tol);

/// max over interior points of |-(1/2) D2 psi + V psi - eps psi| / max|psi|,
/// with D2 the 3-point second difference.
CheckEntry schrodinger_residual(const SampledFunction& v, const SampledFunction& psi,
                                const FactorizationEnergy& eps, double tol);

StateClass classify_state(const SampledFunction& psi, double decay_tol = 1e-3,
                          double bound_tol = 1e3);

/// Runs every check: PT on V and U+, anti-PT on U-, the superpotential
/// condition, the first-order factorization identity
/// U+' = U+ U- + 2(eps - eps*), the consistency of the two potential
/// formulas, and the Schrodinger residual; classifies psi.
VerificationReport run_battery(const PTModel& model, const Tolerances& tols = {});

}  // namespace ptqes
