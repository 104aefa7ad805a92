#include "ptqes/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace ptqes {

TridiagonalComplexMatrix discretize(const SampledFunction& v) {
    const Grid& g = v.grid();
    if (g.size() < 5) throw InvalidParameters("discretization needs at least 5 grid points");
    const double h = g.spacing();
    TridiagonalComplexMatrix m;
    m.grid_half_width = g.half_width();
    m.grid_points = g.size();
    m.grid_spacing = h;
    m.off_diagonal = -0.5 / (h * h);
    m.diagonal.resize(g.size() - 2);
    for (int j = 0; j < g.size() - 2; ++j) m.diagonal[j] = 1.0 / (h * h) + v[j + 1];
    return m;
}

namespace {

constexpr int kMaxIterationsPerEigenvalue = 60;

// Implicit-shift QL for a complex symmetric tridiagonal matrix. The plane
// rotations are complex orthogonal (c^2 + s^2 = 1), which preserves the
// complex symmetric tridiagonal form. r = sqrt(f^2 + g^2) can come close to
// zero in the complex case; the sweep then restarts from a snapshot with a
// slightly perturbed shift. Eigenvalues land in d.
void ql_implicit(std::vector<Complex>& d, std::vector<Complex>& e) {
    const int n = static_cast<int>(d.size());
    const double eps = std::numeric_limits<double>::epsilon();
    double mat_scale = 0.0;
    for (const Complex& v : d) mat_scale = std::max(mat_scale, std::abs(v));
    for (const Complex& v : e) mat_scale = std::max(mat_scale, std::abs(v));

    std::vector<Complex> d_snap, e_snap;
    for (int l = 0; l < n; ++l) {
        int iter = 0;
        int retries = 0;
        while (true) {
            int m = l;
            while (m < n - 1) {
                double tst = std::abs(d[m]) + std::abs(d[m + 1]);
                if (tst == 0.0) tst = mat_scale;
                if (std::abs(e[m]) <= eps * tst) break;
                ++m;
            }
            if (m == l) break;
            if (++iter > kMaxIterationsPerEigenvalue) throw NonConvergence(l, iter);

            d_snap.assign(d.begin() + l, d.begin() + m + 1);
            e_snap.assign(e.begin() + l, e.begin() + m + 1);

            // Wilkinson-style shift from the leading 2x2 of the window
            Complex g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            Complex r = std::sqrt(g * g + 1.0);
            Complex denom = g + (std::abs(g + r) >= std::abs(g - r) ? r : -r);
            g = d[m] - d[l] + e[l] / denom;
            if (retries > 0) g *= 1.0 + 1e-8 * static_cast<double>(retries);

            Complex s(1.0, 0.0), c(1.0, 0.0), p(0.0, 0.0);
            bool breakdown = false;
            for (int i = m - 1; i >= l; --i) {
                Complex f = s * e[i];
                Complex b = c * e[i];
                r = std::sqrt(f * f + g * g);
                if (std::abs(r) <= 1e-10 * (std::abs(f) + std::abs(g))) {
                    breakdown = true;
                    break;
                }
                e[i + 1] = r;
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
            }
            if (breakdown) {
                std::copy(d_snap.begin(), d_snap.end(), d.begin() + l);
                std::copy(e_snap.begin(), e_snap.end(), e.begin() + l);
                ++retries;
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = Complex(0.0, 0.0);
        }
    }
}

// deterministic pseudo-random start vector for inverse iteration
std::vector<Complex> start_vector(int n) {
    std::vector<Complex> b(n);
    std::uint64_t state = 0x9e3779b97f4a7c15ull;
    auto next = [&state]() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return 0.5 + static_cast<double>(state % 100000ull) / 100000.0;
    };
    for (int i = 0; i < n; ++i) b[i] = Complex(next(), next());
    return b;
}

// One inverse-iteration step on (T - lambda I) with partial pivoting,
// followed by a Rayleigh-quotient update; returns the refined eigenvalue and
// its backward error ||T y - lambda y||_2 for the unit eigenvector estimate.
struct Refined {
    Complex lambda;
    double backward_error;
};

Refined refine_eigenvalue(const std::vector<Complex>& diag, double off, Complex lambda) {
    const int n = static_cast<int>(diag.size());
    if (n == 1) return {diag[0], 0.0};

    std::vector<Complex> sub(n - 1, Complex(off, 0.0));
    std::vector<Complex> main(n), sup(n - 1, Complex(off, 0.0)), sup2(n, Complex(0.0, 0.0));
    for (int i = 0; i < n; ++i) main[i] = diag[i] - lambda;

    double scale = std::abs(off);
    for (const Complex& v : main) scale = std::max(scale, std::abs(v));
    const double tiny = scale * std::numeric_limits<double>::epsilon() *
                        std::numeric_limits<double>::epsilon();

    std::vector<Complex> y = start_vector(n);

    // LU factorization with row swaps (dgttrf-style)
    for (int i = 0; i < n - 1; ++i) {
        if (std::abs(main[i]) == 0.0) main[i] = Complex(tiny, tiny);
        if (std::abs(sub[i]) > std::abs(main[i])) {
            std::swap(main[i], sub[i]);
            std::swap(sup[i], main[i + 1]);
            if (i + 1 < n - 1) std::swap(sup2[i], sup[i + 1]);
            std::swap(y[i], y[i + 1]);
        }
        Complex mult = sub[i] / main[i];
        main[i + 1] -= mult * sup[i];
        if (i + 1 < n - 1) sup[i + 1] -= mult * sup2[i];
        y[i + 1] -= mult * y[i];
    }
    if (std::abs(main[n - 1]) == 0.0) main[n - 1] = Complex(tiny, tiny);

    // back substitution with scaling against overflow
    double ymax = 0.0;
    for (int i = n - 1; i >= 0; --i) {
        Complex acc = y[i];
        if (i + 1 < n) acc -= sup[i] * y[i + 1];
        if (i + 2 < n) acc -= sup2[i] * y[i + 2];
        y[i] = acc / main[i];
        ymax = std::max(ymax, std::abs(y[i]));
        if (ymax > 1e200) {
            for (int k = i; k < n; ++k) y[k] *= 1e-200;
            ymax *= 1e-200;
        }
    }

    double norm2 = 0.0;
    for (const Complex& v : y) norm2 += std::norm(v);
    double inv = 1.0 / std::sqrt(norm2);
    for (Complex& v : y) v *= inv;

    // T y, then candidate Rayleigh quotients: the bilinear form (the natural
    // one for complex symmetric matrices), falling back to the Hermitian one
    // when y is nearly quasi-null
    std::vector<Complex> ty(n);
    for (int i = 0; i < n; ++i) {
        ty[i] = diag[i] * y[i];
        if (i > 0) ty[i] += off * y[i - 1];
        if (i + 1 < n) ty[i] += off * y[i + 1];
    }
    Complex yty(0.0, 0.0), yy(0.0, 0.0), yhy(0.0, 0.0);
    for (int i = 0; i < n; ++i) {
        yty += y[i] * ty[i];
        yy += y[i] * y[i];
        yhy += std::conj(y[i]) * ty[i];
    }
    Complex mu = std::abs(yy) > 1e-3 ? yty / yy : yhy;

    auto residual = [&](Complex cand) {
        double r = 0.0;
        for (int i = 0; i < n; ++i) r += std::norm(ty[i] - cand * y[i]);
        return std::sqrt(r);
    };
    double res_mu = residual(mu);
    double res_lambda = residual(lambda);
    if (res_mu < res_lambda) return {mu, res_mu};
    return {lambda, res_lambda};
}

}  // namespace

Spectrum eigenvalues(const TridiagonalComplexMatrix& m) {
    const int n = m.dimension();
    if (n < 1) throw InvalidParameters("eigenvalue problem needs dimension >= 1");

    std::vector<Complex> d = m.diagonal;
    std::vector<Complex> e(n, Complex(m.off_diagonal, 0.0));
    e[n - 1] = Complex(0.0, 0.0);
    ql_implicit(d, e);

    std::vector<Refined> refined(n);
    for (int k = 0; k < n; ++k)
        refined[k] = refine_eigenvalue(m.diagonal, m.off_diagonal, d[k]);
    std::sort(refined.begin(), refined.end(), [](const Refined& a, const Refined& b) {
        if (a.lambda.real() != b.lambda.real()) return a.lambda.real() < b.lambda.real();
        return a.lambda.imag() < b.lambda.imag();
    });

    Spectrum s;
    s.eigenvalues.resize(n);
    s.backward_errors.resize(n);
    for (int k = 0; k < n; ++k) {
        s.eigenvalues[k] = refined[k].lambda;
        s.backward_errors[k] = refined[k].backward_error;
        s.max_backward_error = std::max(s.max_backward_error, refined[k].backward_error);
    }

    int real_count = 0;
    for (const Complex& ev : s.eigenvalues)
        if (std::abs(ev.imag()) < 1e-6 * std::max(1.0, std::abs(ev.real()))) ++real_count;
    s.reality_fraction = static_cast<double>(real_count) / n;
    return s;
}

MatchResult match_factorization_energy(const Spectrum& s, const FactorizationEnergy& eps,
                                       double tol) {
    MatchResult r;
    double best = std::numeric_limits<double>::infinity();
    for (int k = 0; k < static_cast<int>(s.eigenvalues.size()); ++k) {
        double dist = std::abs(s.eigenvalues[k] - eps.value);
        if (dist < best) {
            best = dist;
            r.index = k;
        }
    }
    if (r.index >= 0) {
        r.distance = best;
        r.matched = best < tol;
    }
    return r;
}

std::vector<SweepRecord> sweep(const Expr& u_plus, const std::vector<Complex>& eps_path,
                               const Grid& grid, const Bindings& bindings,
                               const Tolerances& tols) {
    std::vector<SweepRecord> records;
    records.reserve(eps_path.size());
    for (const Complex& eps_value : eps_path) {
        SweepRecord rec;
        rec.epsilon = eps_value;
        try {
            FactorizationEnergy eps{eps_value};
            PTModel model = build_model(u_plus, eps, grid, bindings);
            rec.report = run_battery(model, tols);
            Spectrum spec = eigenvalues(discretize(model.v));
            rec.reality_fraction = spec.reality_fraction;
            rec.n_eigenvalues = static_cast<int>(spec.eigenvalues.size());
            rec.nearest_distance = match_factorization_energy(spec, eps).distance;
        } catch (const Error& err) {
            rec.error = err.what();
        }
        records.push_back(std::move(rec));
    }
    return records;
}

}  // namespace ptqes
