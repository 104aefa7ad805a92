#include "ptqes/grid.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace ptqes {

Grid::Grid(double half_width, int n_points) : half_width_(half_width), n_points_(n_points) {
    if (!(half_width > 0.0)) throw InvalidParameters("grid half-width must be positive");
    if (n_points < 3 || n_points % 2 == 0)
        throw InvalidParameters("grid point count must be odd and at least 3");
    spacing_ = 2.0 * half_width / (n_points - 1);
}

SampledFunction::SampledFunction(Grid grid, std::vector<Complex> values)
    : grid_(grid), values_(std::move(values)) {
    if (static_cast<int>(values_.size()) != grid_.size())
        throw InvalidParameters("sample count does not match the grid");
}

double SampledFunction::max_abs() const {
    double m = 0.0;
    for (const Complex& v : values_) m = std::max(m, std::abs(v));
    return m;
}

SampledFunction sample(const Expr& e, const Grid& grid, const Bindings& bindings) {
    std::vector<Complex> values(grid.size());
    for (int j = 0; j < grid.size(); ++j) {
        double x = grid.point(j);
        Complex v = evaluate(e, x, bindings);
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw EvalError("non-finite value", x);
        values[j] = v;
    }
    return SampledFunction(grid, std::move(values));
}

SampledFunction pt_reflect(const SampledFunction& f) {
    const Grid& g = f.grid();
    std::vector<Complex> values(g.size());
    for (int j = 0; j < g.size(); ++j) values[j] = std::conj(f[g.mirror_index(j)]);
    return SampledFunction(g, std::move(values));
}

SampledFunction fd_derivative(const SampledFunction& f) {
    const Grid& g = f.grid();
    const int n = g.size();
    if (n < 5) throw InvalidParameters("4th-order derivative needs at least 5 points");
    const double h = g.spacing();
    std::vector<Complex> d(n);
    for (int j = 2; j < n - 2; ++j)
        d[j] = (f[j - 2] - 8.0 * f[j - 1] + 8.0 * f[j + 1] - f[j + 2]) / (12.0 * h);
    d[0] = (-25.0 * f[0] + 48.0 * f[1] - 36.0 * f[2] + 16.0 * f[3] - 3.0 * f[4]) / (12.0 * h);
    d[1] = (-3.0 * f[0] - 10.0 * f[1] + 18.0 * f[2] - 6.0 * f[3] + f[4]) / (12.0 * h);
    d[n - 2] = -(-3.0 * f[n - 1] - 10.0 * f[n - 2] + 18.0 * f[n - 3] - 6.0 * f[n - 4] +
                 f[n - 5]) /
               (12.0 * h);
    d[n - 1] = -(-25.0 * f[n - 1] + 48.0 * f[n - 2] - 36.0 * f[n - 3] + 16.0 * f[n - 4] -
                 3.0 * f[n - 5]) /
               (12.0 * h);
    return SampledFunction(g, std::move(d));
}

namespace {

// Degree-7 interpolatory weights for a single interval [x_j, x_{j+1}] using
// the 8 nodes x_{j-s} .. x_{j-s+7}; row s covers stencil start offsets 0..6.
// All entries share the denominator 120960.
constexpr double kDen = 120960.0;
constexpr std::array<std::array<double, 8>, 7> kIntervalWeights = {{
    {36799, 139849, -121797, 123133, -88547, 41499, -11351, 1375},
    {-1375, 47799, 101349, -44797, 26883, -11547, 2999, -351},
    {351, -4183, 57627, 81693, -20227, 7227, -1719, 191},
    {-191, 1879, -9531, 68323, 68323, -9531, 1879, -191},
    {191, -1719, 7227, -20227, 81693, 57627, -4183, 351},
    {-351, 2999, -11547, 26883, -44797, 101349, 47799, -1375},
    {1375, -11351, 41499, -88547, 123133, -121797, 139849, 36799},
}};

// integral over [x_j, x_{j+1}], stencil shifted to stay on the grid
Complex interval_integral(const SampledFunction& f, int j) {
    const int n = f.size();
    int s = 3;  // centered stencil
    if (j - s < 0) s = j;
    if (j - s + 7 > n - 1) s = j - (n - 8);
    const auto& w = kIntervalWeights[s];
    Complex acc(0.0, 0.0);
    for (int t = 0; t < 8; ++t) acc += w[t] * f[j - s + t];
    return acc * (f.grid().spacing() / kDen);
}

// Simpson pairs with trapezoid closure; only used for grids too small for
// the 8-node stencils
std::vector<Complex> cumulative_small(const SampledFunction& f) {
    const int n = f.size();
    const int c = f.grid().center_index();
    const double h = f.grid().spacing();
    std::vector<Complex> I(n, Complex(0.0, 0.0));
    for (int j = c + 1; j < n; ++j) {
        if ((j - c) % 2 == 0)
            I[j] = I[j - 2] + (h / 3.0) * (f[j - 2] + 4.0 * f[j - 1] + f[j]);
        else
            I[j] = I[j - 1] + (h / 2.0) * (f[j - 1] + f[j]);
    }
    for (int j = c - 1; j >= 0; --j) {
        if ((c - j) % 2 == 0)
            I[j] = I[j + 2] - (h / 3.0) * (f[j + 2] + 4.0 * f[j + 1] + f[j]);
        else
            I[j] = I[j + 1] - (h / 2.0) * (f[j + 1] + f[j]);
    }
    return I;
}

}  // namespace

std::vector<Complex> cumulative_integral_from_center(const SampledFunction& f) {
    const int n = f.size();
    if (n < 9) return cumulative_small(f);
    const int c = f.grid().center_index();
    std::vector<Complex> I(n, Complex(0.0, 0.0));
    for (int j = c; j < n - 1; ++j) I[j + 1] = I[j] + interval_integral(f, j);
    for (int j = c; j > 0; --j) I[j - 1] = I[j] - interval_integral(f, j - 1);
    return I;
}

}  // namespace ptqes
