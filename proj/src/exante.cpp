#include "bargain/exante.hpp"

#include <cmath>
#include <stdexcept>

#include "bargain/equilibria.hpp"
#include "bargain/root.hpp"

namespace bargain {

namespace {

void check(double sigma_last, double accept_prob) {
    if (!(sigma_last >= 0.0 && sigma_last <= 1.0 && accept_prob >= 0.0 && accept_prob <= 1.0))
        throw std::invalid_argument("probabilities must lie in [0,1]");
}

}  // namespace

double exante_value(double sigma_last, double accept_prob, const GameParams& params) {
    check(sigma_last, accept_prob);
    params.validate();
    const int T = params.horizon;
    const double p = accept_prob, V = params.pie, delta = params.discount;
    double common = 0.0, w = 1.0;  // w = delta^{t-1} (1-p)^{t-1}
    for (int t = 1; t < T; ++t) {
        common += w * p * V / 4.0;
        w *= delta * (1.0 - p);
    }
    double a_tail = w * p * V / 4.0;
    double b_tail = w * V / 2.0;
    return common + sigma_last * a_tail + (1.0 - sigma_last) * b_tail;
}

double exante_second_difference(double sigma_last, double accept_prob, const GameParams& params) {
    const double h = 1e-3;
    return (exante_value(sigma_last, accept_prob + h, params) -
            2.0 * exante_value(sigma_last, accept_prob, params) +
            exante_value(sigma_last, accept_prob - h, params)) /
           (h * h);
}

namespace {

// Exact derivative of the planning objective in p.
double exante_derivative(double sigma_last, double p, const GameParams& params) {
    const int T = params.horizon;
    const double V = params.pie, delta = params.discount;
    auto dterm = [p](int t) {  // d/dp of p (1-p)^{t-1}
        if (t == 1) return 1.0;
        double q = 1.0 - p;
        return std::pow(q, t - 1) - p * (t - 1) * std::pow(q, t - 2);
    };
    double common = 0.0;
    for (int t = 1; t < T; ++t) common += std::pow(delta, t - 1) * dterm(t) * V / 4.0;
    double a_tail = std::pow(delta, T - 1) * dterm(T) * V / 4.0;
    double b_tail = std::pow(delta, T - 1) * (-(T - 1)) * std::pow(1.0 - p, T - 2) * V / 2.0;
    return common + sigma_last * a_tail + (1.0 - sigma_last) * b_tail;
}

}  // namespace

ExAnteBestResponse exante_best_response(double sigma_last, const GameParams& params) {
    check(sigma_last, 0.0);
    params.validate();
    ExAnteBestResponse br;
    if (sigma_last == 0.0) {
        // A final-period greedy probability of zero propagates backwards to the
        // all-fair profile, whose planning problem pays V/2 for every p.
        br.all_optimal = true;
        br.value = params.pie / 2.0;
        return br;
    }
    auto f = [&](double p) { return exante_value(sigma_last, p, params); };
    auto m = maximize_scalar(f, 0.0, 1.0, 10000, 1e-9);
    if (m.grid_max - m.grid_min < 1e-12 * params.pie) {
        br.all_optimal = true;
        br.value = m.value;
        return br;
    }
    br.argmax = m.x;
    br.value = m.value;
    return br;
}

EquivalenceReport certify_equivalence(const GameParams& params) {
    params.validate();
    EquivalenceReport rep;
    auto root = solve_mixing(params);
    if (!root || *root <= 0.0 || *root >= 1.0) return rep;  // mixing absent (or boundary-degenerate)
    rep.mixing_exists = true;
    rep.sigma_last = *root;

    auto foc = [&](double p) { return exante_derivative(rep.sigma_last, p, params); };
    auto st = find_root(foc, 2.0 / 3.0 - 5e-2, 2.0 / 3.0 + 5e-2, 256);
    rep.stationary_p = st ? st->x : -1.0;

    rep.second_difference = exante_second_difference(rep.sigma_last, 2.0 / 3.0, params);
    rep.concave_at_indifference = rep.second_difference <= 0.0;

    auto br = exante_best_response(rep.sigma_last, params);
    rep.global_argmax = br.all_optimal ? 2.0 / 3.0 : br.argmax;
    rep.global_matches = std::abs(rep.global_argmax - 2.0 / 3.0) <= 1e-6;

    rep.pass = st.has_value() && std::abs(rep.stationary_p - 2.0 / 3.0) <= 1e-6 &&
               rep.concave_at_indifference;
    return rep;
}

}  // namespace bargain
