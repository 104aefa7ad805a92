#include <doctest.h>

#include <cmath>
#include <random>

#include "ptqes/spectrum.hpp"

using namespace ptqes;

namespace {

SampledFunction constant_potential(const Grid& g, Complex c) {
    return SampledFunction(g, std::vector<Complex>(g.size(), c));
}

Spectrum spectrum_of_constant(const Grid& g, Complex c) {
    return eigenvalues(discretize(constant_potential(g, c)));
}

}  // namespace

TEST_SUITE_BEGIN("spectrum");

TEST_CASE("discretize: arithmetic of the stencil") {
    Grid g(2.0, 5);  // h = 1
    TridiagonalComplexMatrix m = discretize(constant_potential(g, Complex(0, 0)));
    CHECK(m.dimension() == 3);
    CHECK(m.off_diagonal == doctest::Approx(-0.5));
    for (const Complex& d : m.diagonal) CHECK(std::abs(d - Complex(1, 0)) < 1e-15);

    TridiagonalComplexMatrix mc = discretize(constant_potential(g, Complex(2.5, -0.5)));
    for (const Complex& d : mc.diagonal) CHECK(std::abs(d - Complex(3.5, -0.5)) < 1e-15);

    CHECK_THROWS_AS(discretize(constant_potential(Grid(1.0, 3), Complex(0, 0))),
                    InvalidParameters);
}

TEST_CASE("eigenvalues: discrete Dirichlet Laplacian closed form") {
    Grid g(10.0, 51);  // dimension 49
    Spectrum s = spectrum_of_constant(g, Complex(0, 0));
    const int M = 49;
    REQUIRE(static_cast<int>(s.eigenvalues.size()) == M);
    const double h = g.spacing();
    for (int m = 1; m <= M; ++m) {
        double expected = (1.0 - std::cos(m * M_PI / (M + 1))) / (h * h);
        Complex got = s.eigenvalues[m - 1];  // sorted ascending by real part
        CHECK(std::abs(got - Complex(expected, 0)) < 1e-10 * std::max(1.0, expected));
    }
    CHECK(s.reality_fraction == 1.0);
    REQUIRE(s.backward_errors.size() == s.eigenvalues.size());
    for (double be : s.backward_errors) CHECK(be < 1e-8);
}

TEST_CASE("eigenvalues: shift invariance, real and complex shifts") {
    Grid g(5.0, 41);
    Spectrum base = spectrum_of_constant(g, Complex(0, 0));
    for (Complex c : {Complex(2.0, 0.0), Complex(-0.7, 0.3)}) {
        Spectrum shifted = spectrum_of_constant(g, c);
        REQUIRE(shifted.eigenvalues.size() == base.eigenvalues.size());
        double scale = 0.0;
        for (const Complex& ev : base.eigenvalues) scale = std::max(scale, std::abs(ev));
        for (std::size_t k = 0; k < base.eigenvalues.size(); ++k) {
            CHECK(std::abs(shifted.eigenvalues[k] - base.eigenvalues[k] - c) <
                  1e-10 * std::max(1.0, scale));
        }
    }
}

TEST_CASE("eigenvalues: real potential gives a real spectrum") {
    Grid g(6.0, 61);
    std::vector<Complex> v(g.size());
    for (int j = 0; j < g.size(); ++j) v[j] = Complex(0.5 * g.point(j) * g.point(j), 0);
    Spectrum s = eigenvalues(discretize(SampledFunction(g, v)));
    double scale = 0.0;
    for (const Complex& ev : s.eigenvalues) scale = std::max(scale, std::abs(ev));
    for (const Complex& ev : s.eigenvalues) CHECK(std::abs(ev.imag()) < 1e-10 * scale);
    CHECK(s.reality_fraction == 1.0);
}

TEST_CASE("eigenvalues: trace and determinant cross-checks on complex matrices") {
    std::mt19937 rng(404);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int trial = 0; trial < 6; ++trial) {
        Grid g(3.0, 13);  // dimension 11
        std::vector<Complex> v(g.size());
        for (int j = 0; j < g.size(); ++j) v[j] = Complex(u(rng), u(rng));
        TridiagonalComplexMatrix m = discretize(SampledFunction(g, v));
        Spectrum s = eigenvalues(m);
        REQUIRE(s.eigenvalues.size() == m.diagonal.size());

        Complex trace_direct(0, 0), trace_eigen(0, 0);
        for (const Complex& d : m.diagonal) trace_direct += d;
        for (const Complex& ev : s.eigenvalues) trace_eigen += ev;
        CHECK(std::abs(trace_direct - trace_eigen) < 1e-9 * std::abs(trace_direct));

        // determinant by the tridiagonal three-term recurrence
        Complex pm2(1, 0), pm1 = m.diagonal[0];
        double off2 = m.off_diagonal * m.off_diagonal;
        for (int j = 1; j < m.dimension(); ++j) {
            Complex p = m.diagonal[j] * pm1 - off2 * pm2;
            pm2 = pm1;
            pm1 = p;
        }
        Complex det_eigen(1, 0);
        for (const Complex& ev : s.eigenvalues) det_eigen *= ev;
        CHECK(std::abs(pm1 - det_eigen) < 1e-8 * std::abs(pm1));
    }
}

TEST_CASE("match_factorization_energy: exact member and tolerances") {
    Spectrum s;
    s.eigenvalues = {Complex(0, 0), Complex(1, -0.5), Complex(2, 0.25)};
    MatchResult exact = match_factorization_energy(s, {Complex(1, -0.5)});
    CHECK(exact.matched);
    CHECK(exact.distance == 0.0);
    CHECK(exact.index == 1);

    MatchResult miss = match_factorization_energy(s, {Complex(10, 0)}, 1e-3);
    CHECK(!miss.matched);
    CHECK(miss.index == 2);
}

TEST_CASE("spectrum membership: example-1 bound state at moderate resolution") {
    Grid g(10.0, 1001);
    PTModel m = build_model(parse("2*i/(x+i)"), {Complex(1.0, -0.5)}, g, {});
    Spectrum s = eigenvalues(discretize(m.v));
    MatchResult match = match_factorization_energy(s, m.epsilon, 1e-3);
    CHECK(match.matched);
    CHECK(match.distance < 1e-3);
}

TEST_CASE("sweep: empty path and record ordering") {
    Grid g(5.0, 101);
    Bindings b;
    b.bind_real("al", 1.0);
    b.bind_real("k", 1.0);
    Expr u_plus = parse("al*exp(i*k*x)");

    CHECK(sweep(u_plus, {}, g, b).empty());

    std::vector<Complex> path;
    for (int s = 0; s < 9; ++s) path.emplace_back(0.0, -0.2 + 0.05 * s);
    std::vector<SweepRecord> records = sweep(u_plus, path, g, b);
    REQUIRE(records.size() == 9);
    for (std::size_t k = 0; k < records.size(); ++k) {
        CHECK(records[k].epsilon == path[k]);
        CHECK(records[k].error.empty());
        CHECK(records[k].report.has_value());
    }
}

TEST_CASE("sweep: example-1 classification flips across Im(eps) = 0") {
    Grid g(10.0, 501);
    Expr u_plus = parse("2*i/(x+i)");
    std::vector<Complex> path = {Complex(1.0, -0.5), Complex(1.0, 0.5)};
    std::vector<SweepRecord> records = sweep(u_plus, path, g, {});
    REQUIRE(records.size() == 2);
    REQUIRE(records[0].report.has_value());
    REQUIRE(records[1].report.has_value());
    CHECK(records[0].report->state_class == StateClass::BoundState);
    CHECK(records[1].report->state_class == StateClass::NotAnEigenstate);
}

TEST_CASE("sweep: per-point failures are recorded, not fatal") {
    Grid g(5.0, 101);
    // U+ = x vanishes at the center: every point degenerates
    std::vector<SweepRecord> records =
        sweep(parse("x"), {Complex(0, 0), Complex(0, 0.1)}, g, {});
    REQUIRE(records.size() == 2);
    CHECK(!records[0].error.empty());
    CHECK(!records[1].error.empty());
}

TEST_SUITE_END();
