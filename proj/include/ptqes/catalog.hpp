#pragma once

#include <vector>

#include "ptqes/core.hpp"
#include "ptqes/verify.hpp"

namespace ptqes {

/// A closed-form family: the generating function together with the exact
/// U-, W, V and psi it produces. Entries act as oracles for the generic
/// construction. psi is kept both as a normalized expression (psi(0) = 1)
/// and in log form, because |psi| can leave the double range while its
/// logarithm stays perfectly comparable.
struct CatalogEntry {
    std::string name;
    Expr u_plus;
    Bindings bindings;
    FactorizationEnergy epsilon;
    int power = 0;  // the odd exponent n of the first family, 0 otherwise

    Expr u_minus;
    Expr w;
    Expr v;
    Expr psi;      // normalized so psi(0) = 1
    Expr log_psi;  // log of the normalized psi, continuous along the real axis

    // real-axis projections of singular points, used to exclude a window
    // around them from oracle comparisons
    std::vector<double> singularity_projections;

    bool exactly_solvable = false;
    std::string notes;
};

/// U+ = i alpha / (x + i a)^n with n odd. Bound state iff Im(eps)/alpha < 0.
/// n = 1 is the regularized PT harmonic oscillator (exactly solvable).
CatalogEntry example1(double alpha, double a, int n, Complex eps);

/// U+ = alpha e^{i k x}, the periodic family. Im(eps) = 0 is the exactly
/// solvable limit.
CatalogEntry example2(double alpha, double k, Complex eps);

/// The degenerate U+ -> 0 construction for a PT-symmetric wave function:
/// W = 1/2 { f'/f - i B / f }. f must be nonzero on the grid.
SampledFunction pt_wavefunction_limit(const Expr& f, double B, const Grid& grid,
                                      const Bindings& bindings);

/// Full model for the limiting case: U+ == 0, U- = 2W, V from the
/// superpotential with W' symbolic, eps = eps_re (real, as the limit forces).
PTModel pt_limit_model(const Expr& f, double B, double eps_re, const Grid& grid,
                       const Bindings& bindings);

struct LimitSequence {
    std::vector<double> alphas;
    std::vector<Complex> epsilons;      // Im(eps_m) = alpha_m * B / 4 -> 0
    std::vector<SampledFunction> w;     // superpotential of (alpha_m f, eps_m)
    SampledFunction w_limit;
    std::vector<double> max_errors;     // max_j |W_m - W_limit|
};

/// The finite-alpha approach to the limit: U+ = alpha_m f with
/// eps_m = eps_re + i alpha_m B / 4, so that 2(eps_m - eps_m*)/alpha_m = iB
/// for every m and W_m -> W_limit as alpha_m -> 0.
LimitSequence limit_sequence(const Expr& f, double B, double eps_re,
                             const std::vector<double>& alphas, const Grid& grid,
                             const Bindings& bindings);

/// For an example1 entry with n = 1, least-squares fits the built V to
/// c0 + c2 (x+ia)^2 + cm2 (x+ia)^-2 and compares against the closed-form
/// coefficients c2 = 2 Im(eps)^2/alpha^2, cm2 = -alpha^2/8 - 1/8,
/// c0 = Re(eps) + 2 Im(eps)/alpha. Throws WrongEntry otherwise.
CheckEntry check_n1_oscillator_structure(const CatalogEntry& entry, const Grid& grid,
                                         double tol = 1e-8);

/// How far the generic construction is from the entry's closed forms on the
/// grid: scale-relative for U-, W, V; pointwise-relative for psi via the log
/// domain, restricted to points where |psi| is representable in doubles.
/// Points within `exclusion_radius` of a singularity's real-axis projection
/// are skipped.
struct OracleDeviation {
    double u_minus = 0.0;
    double w = 0.0;
    double v = 0.0;
    double psi = 0.0;
    double max() const;
};

OracleDeviation compare_with_pipeline(const CatalogEntry& entry, const Grid& grid,
                                      double exclusion_radius = 0.1);

}  // namespace ptqes
