#pragma once

#include <vector>

#include "ptqes/expr.hpp"

namespace ptqes {

/// Uniform real grid, exactly symmetric about x = 0. N is odd so that 0 is a
/// grid point; abscissae are computed as (j - center)*h, which makes the
/// mirror identity x[N-1-j] == -x[j] exact in floating point.
class Grid {
public:
    Grid(double half_width, int n_points);

    double half_width() const { return half_width_; }
    int size() const { return n_points_; }
    double spacing() const { return spacing_; }
    int center_index() const { return (n_points_ - 1) / 2; }
    int mirror_index(int j) const { return n_points_ - 1 - j; }
    double point(int j) const { return (j - center_index()) * spacing_; }

    bool operator==(const Grid& other) const {
        return half_width_ == other.half_width_ && n_points_ == other.n_points_;
    }

private:
    double half_width_;
    int n_points_;
    double spacing_;
};

/// Complex samples of a function on a Grid. Values are finite by
/// construction; sample() rejects non-finite results.
class SampledFunction {
public:
    SampledFunction(Grid grid, std::vector<Complex> values);

    const Grid& grid() const { return grid_; }
    int size() const { return static_cast<int>(values_.size()); }
    const Complex& operator[](int j) const { return values_[j]; }
    const std::vector<Complex>& values() const { return values_; }

    double max_abs() const;

private:
    Grid grid_;
    std::vector<Complex> values_;
};

SampledFunction sample(const Expr& e, const Grid& grid, const Bindings& bindings);

/// PT image on the grid: conj of the index-mirrored samples (exact, no
/// interpolation).
SampledFunction pt_reflect(const SampledFunction& f);

/// 4th-order finite-difference d/dx (central stencils inside, one-sided at
/// the edges). Needs N >= 5.
SampledFunction fd_derivative(const SampledFunction& f);

/// Cumulative integral from x = 0 outward along the grid, I[j] = int_0^{x_j}.
/// Each interval is integrated with a degree-7 interpolatory rule (8 nodes)
/// and prefix-summed from the center, so I[center] == 0 and the accumulated
/// error stays smooth in j. Grids with N < 9 fall back to Simpson pairs with
/// a trapezoid closure.
std::vector<Complex> cumulative_integral_from_center(const SampledFunction& f);

}  // namespace ptqes
