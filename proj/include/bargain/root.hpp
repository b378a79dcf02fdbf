#pragma once

#include <functional>
#include <optional>

// Thin wrappers around the scalar solvers used throughout: bracketed
// root-finding (TOMS 748 with a scan-and-bisect fallback) and bounded
// one-dimensional maximization (dense grid pass refined by Brent).

namespace bargain {

struct RootResult {
    double x;
    double residual;
};

// Finds a root of f on [lo, hi]. If f(lo) and f(hi) do not bracket, scans
// `scan_points` subintervals for a sign change before giving up.
std::optional<RootResult> find_root(const std::function<double(double)>& f, double lo, double hi,
                                    int scan_points = 4096);

struct MaximizeResult {
    double x;
    double value;
    double grid_min;  // smallest objective value seen on the grid
    double grid_max;  // largest; grid_max - grid_min < flat_tol flags a flat objective
};

// Maximizes f on [lo, hi]: dense grid of `grid_points` evaluations, then a
// Brent refinement around the best grid point. Ties go to the smaller x.
MaximizeResult maximize_scalar(const std::function<double(double)>& f, double lo, double hi,
                               int grid_points, double xtol);

}  // namespace bargain
