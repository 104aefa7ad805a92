#include "ptqes/catalog.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace ptqes {

namespace {

const char* kBoundStateNote =
    "bound state iff Im(eps)/alpha < 0; psi decays at both infinities";

Expr imag_const(double v) { return Expr::constant(Complex(0.0, v)); }

// 3x3 complex linear solve with partial pivoting
std::array<Complex, 3> solve3(std::array<std::array<Complex, 3>, 3> A,
                              std::array<Complex, 3> b) {
    for (int c = 0; c < 3; ++c) {
        int piv = c;
        for (int r = c + 1; r < 3; ++r)
            if (std::abs(A[r][c]) > std::abs(A[piv][c])) piv = r;
        std::swap(A[c], A[piv]);
        std::swap(b[c], b[piv]);
        if (std::abs(A[c][c]) == 0.0) throw Error("singular normal equations in the V fit");
        for (int r = c + 1; r < 3; ++r) {
            Complex f = A[r][c] / A[c][c];
            for (int k = c; k < 3; ++k) A[r][k] -= f * A[c][k];
            b[r] -= f * b[c];
        }
    }
    std::array<Complex, 3> x{};
    for (int r = 2; r >= 0; --r) {
        Complex acc = b[r];
        for (int k = r + 1; k < 3; ++k) acc -= A[r][k] * x[k];
        x[r] = acc / A[r][r];
    }
    return x;
}

}  // namespace

double OracleDeviation::max() const { return std::max({u_minus, w, v, psi}); }

CatalogEntry example1(double alpha, double a, int n, Complex eps) {
    if (alpha == 0.0) throw InvalidParameters("example1 requires alpha != 0");
    if (a == 0.0) throw InvalidParameters("example1 requires a != 0");
    if (n < 1 || n % 2 == 0)
        throw InvalidParameters("example1 requires an odd n >= 1, got " + std::to_string(n));

    const double im = eps.imag();
    const double re = eps.real();

    Expr x = Expr::variable();
    Expr al = Expr::parameter("al");
    Expr ap = Expr::parameter("a");
    Expr i = Expr::imaginary_unit();
    Expr z = x + i * ap;
    Expr zn = pow_int(z, n);

    CatalogEntry entry;
    entry.name = "example1";
    entry.power = n;
    entry.epsilon = {eps};
    entry.bindings.bind_real("al", alpha);
    entry.bindings.bind_real("a", a);
    entry.singularity_projections = {0.0};  // the pole sits at x = -i a

    entry.u_plus = i * al / zn;
    entry.u_minus = -(Expr::constant(static_cast<double>(n)) / z) -
                    (Expr::constant(4.0 * im) / al) * zn;
    entry.w = Expr::constant(0.5) * i * al / zn -
              Expr::constant(0.5 * static_cast<double>(n)) / z -
              (Expr::constant(2.0 * im) / al) * zn;
    entry.v = Expr::constant(re) - pow_int(al, 2) / Expr::constant(8.0) / pow_int(z, 2 * n) +
              (Expr::constant(2.0 * im * im) / pow_int(al, 2)) * pow_int(z, 2 * n) +
              Expr::constant(static_cast<double>(n * n - 2 * n) / 8.0) / pow_int(z, 2) +
              (Expr::constant(2.0 * static_cast<double>(n) * im) / al) * pow_int(z, n - 1);

    Expr log_psi_raw;
    if (n == 1) {
        log_psi_raw = ((Expr::constant(1.0) - i * al) / Expr::constant(2.0)) * log(z) +
                      (Expr::constant(im) / al) * pow_int(z, 2);
    } else {
        log_psi_raw = Expr::constant(static_cast<double>(n) / 2.0) * log(z) +
                      (i * al / Expr::constant(2.0 * (n - 1))) * pow_int(z, 1 - n) +
                      (Expr::constant(2.0 * im) / al) * pow_int(z, n + 1) /
                          Expr::constant(static_cast<double>(n + 1));
    }
    Complex anchor = evaluate(log_psi_raw, 0.0, entry.bindings);
    entry.log_psi = log_psi_raw - Expr::constant(anchor);
    entry.psi = exp(entry.log_psi);

    entry.exactly_solvable = (n == 1);
    entry.notes = std::string(kBoundStateNote) +
                  (n == 1 ? "; n = 1 is the regularized PT harmonic oscillator "
                            "(exactly solvable); Im(eps) -> 0 with alpha -> 0 at fixed "
                            "2 Im(eps)/alpha recovers the PT-symmetric wave-function "
                            "limit with a real eigenvalue"
                          : "");
    return entry;
}

CatalogEntry example2(double alpha, double k, Complex eps) {
    if (alpha == 0.0) throw InvalidParameters("example2 requires alpha != 0");
    if (k == 0.0) throw InvalidParameters("example2 requires k != 0");

    const double im = eps.imag();
    const double re = eps.real();

    Expr x = Expr::variable();
    Expr al = Expr::parameter("al");
    Expr kp = Expr::parameter("k");
    Expr i = Expr::imaginary_unit();
    Expr e_plus = exp(i * kp * x);
    Expr e_minus = exp(imag_const(-1.0) * kp * x);

    CatalogEntry entry;
    entry.name = "example2";
    entry.epsilon = {eps};
    entry.bindings.bind_real("al", alpha);
    entry.bindings.bind_real("k", k);

    entry.u_plus = al * e_plus;
    entry.u_minus = i * kp - (imag_const(4.0 * im) / al) * e_minus;
    entry.w = Expr::constant(0.5) * al * e_plus + Expr::constant(0.5) * i * kp -
              (imag_const(2.0 * im) / al) * e_minus;
    entry.v = Expr::constant(re) - pow_int(kp, 2) / Expr::constant(8.0) +
              (pow_int(al, 2) / Expr::constant(8.0)) * exp(imag_const(2.0) * kp * x) -
              (Expr::constant(2.0 * im * im) / pow_int(al, 2)) *
                  exp(imag_const(-2.0) * kp * x) +
              (Expr::constant(2.0 * im) * kp / al) * e_minus;

    Expr log_psi_raw = imag_const(-0.5) * kp * x +
                       (imag_const(0.5) * al / kp) * e_plus -
                       (Expr::constant(2.0 * im) / (al * kp)) * e_minus;
    Complex anchor = evaluate(log_psi_raw, 0.0, entry.bindings);
    entry.log_psi = log_psi_raw - Expr::constant(anchor);
    entry.psi = exp(entry.log_psi);

    entry.exactly_solvable = (im == 0.0);
    entry.notes = "periodic PT-symmetric potential; Im(eps) = 0 is the exactly "
                  "solvable limit";
    return entry;
}

namespace {

Expr limit_superpotential_expression(const Expr& f, double B) {
    return Expr::constant(0.5) * ((differentiate(f) - Expr::constant(Complex(0.0, B))) / f);
}

void require_nonvanishing_f(const Expr& f, const Grid& grid, const Bindings& bindings) {
    SampledFunction fs = sample(f, grid, bindings);
    for (int j = 0; j < fs.size(); ++j)
        if (std::abs(fs[j]) <= kZeroGeneratingThreshold)
            throw ZeroGeneratingFunction(grid.point(j));
}

}  // namespace

SampledFunction pt_wavefunction_limit(const Expr& f, double B, const Grid& grid,
                                      const Bindings& bindings) {
    require_nonvanishing_f(f, grid, bindings);
    return sample(limit_superpotential_expression(f, B), grid, bindings);
}

PTModel pt_limit_model(const Expr& f, double B, double eps_re, const Grid& grid,
                       const Bindings& bindings) {
    require_nonvanishing_f(f, grid, bindings);
    Expr w_expr = limit_superpotential_expression(f, B);
    FactorizationEnergy eps{Complex(eps_re, 0.0)};

    SampledFunction w = sample(w_expr, grid, bindings);
    SampledFunction w_prime = sample(differentiate(w_expr), grid, bindings);

    // U+ vanishes identically in the limit, so U- = 2W and the two potential
    // formulas coincide
    std::vector<Complex> zeros(grid.size(), Complex(0.0, 0.0));
    SampledFunction u_plus(grid, zeros);
    std::vector<Complex> um(grid.size()), ump(grid.size());
    for (int j = 0; j < grid.size(); ++j) {
        um[j] = 2.0 * w[j];
        ump[j] = 2.0 * w_prime[j];
    }
    SampledFunction u_minus(grid, std::move(um));
    SampledFunction u_minus_prime(grid, std::move(ump));
    SampledFunction v = potential_from_u_pair(u_plus, u_minus, u_minus_prime, eps);
    WavefunctionResult wf = build_wavefunction(w);

    return PTModel{
        .grid = grid,
        .epsilon = eps,
        .bindings = bindings,
        .u_plus_expr = Expr::constant(0.0),
        .u_minus_expr = Expr::constant(2.0) * w_expr,
        .w_expr = w_expr,
        .u_plus = std::move(u_plus),
        .u_minus = std::move(u_minus),
        .w = w,
        .v = std::move(v),
        .psi = std::move(wf.psi),
        .u_plus_prime = SampledFunction(grid, zeros),
        .u_minus_prime = std::move(u_minus_prime),
        .w_prime = std::move(w_prime),
        .log_psi = std::move(wf.log_psi),
        .psi_clamped = wf.clamped,
    };
}

LimitSequence limit_sequence(const Expr& f, double B, double eps_re,
                             const std::vector<double>& alphas, const Grid& grid,
                             const Bindings& bindings) {
    LimitSequence seq{alphas, {}, {}, pt_wavefunction_limit(f, B, grid, bindings), {}};
    for (double alpha : alphas) {
        // Im(eps_m) = alpha B / 4 keeps 2(eps_m - eps_m*)/alpha = iB exactly,
        // so W_m - W_limit = alpha f / 2 and the approach is monotone
        Complex eps_m(eps_re, alpha * B / 4.0);
        seq.epsilons.push_back(eps_m);
        Expr u_plus_m = Expr::constant(alpha) * f;
        SampledFunction w_m =
            build_superpotential(u_plus_m, FactorizationEnergy{eps_m}, grid, bindings);
        double err = 0.0;
        for (int j = 0; j < grid.size(); ++j)
            err = std::max(err, std::abs(w_m[j] - seq.w_limit[j]));
        seq.max_errors.push_back(err);
        seq.w.push_back(std::move(w_m));
    }
    return seq;
}

CheckEntry check_n1_oscillator_structure(const CatalogEntry& entry, const Grid& grid,
                                         double tol) {
    if (entry.name != "example1" || entry.power != 1)
        throw WrongEntry("the oscillator-structure check applies to example1 with n = 1");

    const double alpha = entry.bindings.value("al").real();
    const double a = entry.bindings.value("a").real();
    const double im = entry.epsilon.value.imag();
    const double re = entry.epsilon.value.real();

    SampledFunction v = sample(entry.v, grid, entry.bindings);

    // least-squares fit of V to c0 + c2 (x+ia)^2 + cm2 (x+ia)^-2
    std::array<std::array<Complex, 3>, 3> ata{};
    std::array<Complex, 3> atv{};
    std::vector<std::array<Complex, 3>> rows(grid.size());
    for (int j = 0; j < grid.size(); ++j) {
        Complex z(grid.point(j), a);
        std::array<Complex, 3> row{Complex(1.0, 0.0), z * z, 1.0 / (z * z)};
        rows[j] = row;
        for (int p = 0; p < 3; ++p) {
            for (int q = 0; q < 3; ++q) ata[p][q] += std::conj(row[p]) * row[q];
            atv[p] += std::conj(row[p]) * v[j];
        }
    }
    std::array<Complex, 3> coeff = solve3(ata, atv);

    double fit_residual = 0.0;
    for (int j = 0; j < grid.size(); ++j) {
        Complex fitted = coeff[0] * rows[j][0] + coeff[1] * rows[j][1] + coeff[2] * rows[j][2];
        fit_residual = std::max(fit_residual, std::abs(fitted - v[j]));
    }
    fit_residual /= std::max(v.max_abs(), 1e-300);

    const Complex expected_c0(re + 2.0 * im / alpha, 0.0);
    const Complex expected_c2(2.0 * im * im / (alpha * alpha), 0.0);
    const Complex expected_cm2(-alpha * alpha / 8.0 - 0.125, 0.0);
    double coeff_dev = 0.0;
    coeff_dev = std::max(coeff_dev, std::abs(coeff[0] - expected_c0) /
                                        std::max(1.0, std::abs(expected_c0)));
    coeff_dev = std::max(coeff_dev, std::abs(coeff[1] - expected_c2) /
                                        std::max(1.0, std::abs(expected_c2)));
    coeff_dev = std::max(coeff_dev, std::abs(coeff[2] - expected_cm2) /
                                        std::max(1.0, std::abs(expected_cm2)));

    double residual = std::max(fit_residual, coeff_dev);
    return {"n1_oscillator_structure", residual, tol, residual <= tol};
}

OracleDeviation compare_with_pipeline(const CatalogEntry& entry, const Grid& grid,
                                      double exclusion_radius) {
    PTModel model = build_model(entry.u_plus, entry.epsilon, grid, entry.bindings);

    SampledFunction um_closed = sample(entry.u_minus, grid, entry.bindings);
    SampledFunction w_closed = sample(entry.w, grid, entry.bindings);
    SampledFunction v_closed = sample(entry.v, grid, entry.bindings);

    auto excluded = [&](int j) {
        for (double p : entry.singularity_projections)
            if (std::abs(grid.point(j) - p) <= exclusion_radius) return true;
        return false;
    };

    auto scale_relative = [&](const SampledFunction& pipe, const SampledFunction& closed) {
        double raw = 0.0, scale = 0.0;
        for (int j = 0; j < grid.size(); ++j) {
            if (excluded(j)) continue;
            raw = std::max(raw, std::abs(pipe[j] - closed[j]));
            scale = std::max(scale, std::abs(closed[j]));
        }
        return raw / std::max(scale, 1e-300);
    };

    OracleDeviation dev;
    dev.u_minus = scale_relative(model.u_minus, um_closed);
    dev.w = scale_relative(model.w, w_closed);
    dev.v = scale_relative(model.v, v_closed);

    // psi pointwise-relative via the log domain, where |psi| fits in doubles
    double psi_dev = 0.0;
    for (int j = 0; j < grid.size(); ++j) {
        if (excluded(j)) continue;
        Complex log_closed = evaluate(entry.log_psi, grid.point(j), entry.bindings);
        if (std::abs(log_closed.real()) > kExpOverflowGuard) continue;
        psi_dev = std::max(psi_dev, std::abs(model.log_psi[j] - log_closed));
    }
    dev.psi = psi_dev;
    return dev;
}

}  // namespace ptqes
