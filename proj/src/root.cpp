#include "bargain/root.hpp"

#include <boost/math/tools/minima.hpp>
#include <boost/math/tools/roots.hpp>

#include <cmath>
#include <cstdint>
#include <limits>

namespace bargain {

namespace {

RootResult polish(const std::function<double(double)>& f, double a, double b, double fa, double fb) {
    // toms748 leaves a tight bracket; take its midpoint and keep the endpoint
    // with the smaller residual.
    auto tol = boost::math::tools::eps_tolerance<double>(52);
    std::uintmax_t iters = 200;
    auto r = boost::math::tools::toms748_solve(f, a, b, fa, fb, tol, iters);
    double x = 0.5 * (r.first + r.second);
    double fx = f(x);
    double x1 = r.first, f1 = f(r.first);
    if (std::abs(f1) < std::abs(fx)) { x = x1; fx = f1; }
    return RootResult{x, fx};
}

}  // namespace

std::optional<RootResult> find_root(const std::function<double(double)>& f, double lo, double hi,
                                    int scan_points) {
    double flo = f(lo), fhi = f(hi);
    if (flo == 0.0) return RootResult{lo, 0.0};
    if (fhi == 0.0) return RootResult{hi, 0.0};
    if (flo * fhi < 0.0) return polish(f, lo, hi, flo, fhi);

    // No sign change at the endpoints; scan for an interior bracket.
    double prev_x = lo, prev_f = flo;
    for (int i = 1; i <= scan_points; ++i) {
        double x = lo + (hi - lo) * static_cast<double>(i) / scan_points;
        double fx = f(x);
        if (fx == 0.0) return RootResult{x, 0.0};
        if (prev_f * fx < 0.0) return polish(f, prev_x, x, prev_f, fx);
        prev_x = x;
        prev_f = fx;
    }
    return std::nullopt;
}

MaximizeResult maximize_scalar(const std::function<double(double)>& f, double lo, double hi,
                               int grid_points, double xtol) {
    double best_x = lo, best_v = -std::numeric_limits<double>::infinity();
    double vmin = std::numeric_limits<double>::infinity();
    double vmax = -std::numeric_limits<double>::infinity();
    for (int i = 0; i <= grid_points; ++i) {
        double x = lo + (hi - lo) * static_cast<double>(i) / grid_points;
        double v = f(x);
        vmin = std::min(vmin, v);
        vmax = std::max(vmax, v);
        if (v > best_v) {  // strict: ties keep the smaller x
            best_v = v;
            best_x = x;
        }
    }
    double h = (hi - lo) / grid_points;
    double a = std::max(lo, best_x - h), b = std::min(hi, best_x + h);
    int bits = static_cast<int>(std::ceil(-std::log2(std::max(xtol, 1e-15))));
    std::uintmax_t iters = 200;
    auto neg = [&f](double x) { return -f(x); };
    auto r = boost::math::tools::brent_find_minima(neg, a, b, bits, iters);
    double x = r.first, v = -r.second;
    if (v < best_v) { x = best_x; v = best_v; }  // grid point was already the max
    return MaximizeResult{x, v, vmin, vmax};
}

}  // namespace bargain
