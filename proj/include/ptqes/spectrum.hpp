#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ptqes/verify.hpp"

namespace ptqes {

/// H = -1/2 d^2/dx^2 + V discretized with the 3-point Laplacian and
/// Dirichlet conditions at +-L. The matrix is complex symmetric tridiagonal:
/// diagonal 1/h^2 + V(x_j) over the N-2 interior points, constant real
/// off-diagonal -1/(2 h^2).
struct TridiagonalComplexMatrix {
    std::vector<Complex> diagonal;
    double off_diagonal = 0.0;
    double grid_half_width = 0.0;
    int grid_points = 0;
    double grid_spacing = 0.0;

    int dimension() const { return static_cast<int>(diagonal.size()); }
};

struct Spectrum {
    std::vector<Complex> eigenvalues;     // sorted by real part, then imaginary
    double reality_fraction = 0.0;        // |Im| < 1e-6 * max(1, |Re|)
    std::vector<double> backward_errors;  // ||T y - lambda y|| over unit y, per eigenvalue
    double max_backward_error = 0.0;
};

struct MatchResult {
    bool matched = false;
    double distance = 0.0;
    int index = -1;
};

TridiagonalComplexMatrix discretize(const SampledFunction& v);

/// All eigenvalues of the complex symmetric tridiagonal matrix via the
/// implicit-shift QL iteration with complex rotations, each refined by one
/// inverse-iteration step that also supplies its backward error. Throws
/// NonConvergence with iteration diagnostics.
Spectrum eigenvalues(const TridiagonalComplexMatrix& m);

MatchResult match_factorization_energy(const Spectrum& s, const FactorizationEnergy& eps,
                                       double tol = 1e-3);

struct SweepRecord {
    Complex epsilon{};
    std::optional<VerificationReport> report;
    double reality_fraction = 0.0;
    double nearest_distance = 0.0;
    int n_eigenvalues = 0;
    std::string error;  // nonempty when this point failed; the sweep continues
};

/// One record per epsilon, in input order; per-point failures are recorded,
/// not fatal.
std::vector<SweepRecord> sweep(const Expr& u_plus, const std::vector<Complex>& eps_path,
                               const Grid& grid, const Bindings& bindings,
                               const Tolerances& tols = {});

}  // namespace ptqes
