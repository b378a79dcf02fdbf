#include "bargain/baseline.hpp"

#include <cmath>

namespace bargain {

namespace {

void check_inputs(const ProposerPolicy& sigma, double accept_greedy) {
    sigma.validate();
    if (!(accept_greedy >= 0.0 && accept_greedy <= 1.0))
        throw std::invalid_argument("accept_greedy must lie in [0,1]");
}

std::vector<double> values_impl(const ProposerPolicy& sigma, double accept_greedy,
                                const GameParams& params, double greedy_payoff) {
    const int T = sigma.horizon();
    std::vector<double> u(static_cast<std::size_t>(T) + 1, 0.0);
    const double fair_payoff = params.pie / 2.0;
    for (int t = T; t >= 1; --t) {
        double s = sigma.greedy[static_cast<std::size_t>(t - 1)];
        u[t - 1] = s * accept_greedy * greedy_payoff + (1.0 - s) * fair_payoff +
                   params.discount * s * (1.0 - accept_greedy) * u[t];
    }
    return u;
}

}  // namespace

std::vector<double> unconditional_beliefs(const ProposerPolicy& sigma, double accept_greedy) {
    check_inputs(sigma, accept_greedy);
    const int T = sigma.horizon();
    std::vector<double> w(static_cast<std::size_t>(T), 1.0);
    for (int t = 1; t < T; ++t)
        w[t] = w[t - 1] * (1.0 - accept_greedy) * sigma.greedy[static_cast<std::size_t>(t - 1)];
    double sum = 0.0;
    for (double x : w) sum += x;
    for (double& x : w) x /= sum;  // sum >= w[0] = 1
    return w;
}

ConditionalBeliefs conditional_beliefs(const ProposerPolicy& sigma, double accept_greedy,
                                       const std::optional<std::vector<double>>& offpath_belief) {
    check_inputs(sigma, accept_greedy);
    const int T = sigma.horizon();
    if (offpath_belief) {
        if (static_cast<int>(offpath_belief->size()) != T)
            throw std::invalid_argument("offpath_belief has wrong length");
        if (!is_probability_vector(*offpath_belief))
            throw std::invalid_argument("offpath_belief is not a probability vector");
    }
    auto gamma = unconditional_beliefs(sigma, accept_greedy);

    auto posterior = [&](bool greedy_side) -> std::optional<std::vector<double>> {
        std::vector<double> num(static_cast<std::size_t>(T));
        double denom = 0.0;
        for (int t = 0; t < T; ++t) {
            double s = sigma.greedy[static_cast<std::size_t>(t)];
            num[static_cast<std::size_t>(t)] = (greedy_side ? s : 1.0 - s) * gamma[static_cast<std::size_t>(t)];
            denom += num[static_cast<std::size_t>(t)];
        }
        if (denom <= 0.0) return offpath_belief;  // off-path; nullopt when none supplied
        for (double& x : num) x /= denom;
        return num;
    };

    return ConditionalBeliefs{posterior(true), posterior(false)};
}

TimeBeliefs consistent_beliefs(const ProposerPolicy& sigma, double accept_greedy,
                               const std::optional<std::vector<double>>& offpath_belief) {
    auto cond = conditional_beliefs(sigma, accept_greedy, offpath_belief);
    return TimeBeliefs{unconditional_beliefs(sigma, accept_greedy), std::move(cond.after_greedy),
                       std::move(cond.after_fair)};
}

std::vector<double> proposer_values(const ProposerPolicy& sigma, double accept_greedy,
                                    const GameParams& params) {
    check_inputs(sigma, accept_greedy);
    params.validate();
    return values_impl(sigma, accept_greedy, params, 3.0 * params.pie / 4.0);
}

std::vector<double> respondent_values(const ProposerPolicy& sigma, double accept_greedy,
                                      const GameParams& params) {
    check_inputs(sigma, accept_greedy);
    params.validate();
    return values_impl(sigma, accept_greedy, params, params.pie / 4.0);
}

namespace {
double value_at(const std::vector<double>& u, int t) {
    if (t < 1 || t > static_cast<int>(u.size()))
        throw std::invalid_argument("period out of range");
    return u[static_cast<std::size_t>(t - 1)];
}
}  // namespace

double proposer_value(const ProposerPolicy& sigma, double accept_greedy, int t,
                      const GameParams& params) {
    return value_at(proposer_values(sigma, accept_greedy, params), t);
}

double respondent_value(const ProposerPolicy& sigma, double accept_greedy, int t,
                        const GameParams& params) {
    return value_at(respondent_values(sigma, accept_greedy, params), t);
}

double accept_indifference_slope(const ProposerPolicy& sigma, double accept_greedy,
                                 std::span<const double> alpha_greedy, const GameParams& params) {
    check_inputs(sigma, accept_greedy);
    params.validate();
    const int T = sigma.horizon();
    if (static_cast<int>(alpha_greedy.size()) != T)
        throw std::invalid_argument("alpha_greedy has wrong length (off-path marker not allowed here)");
    auto u = respondent_values(sigma, accept_greedy, params);
    double quarter = params.pie / 4.0;
    double slope = 0.0;
    double disc = 1.0;  // delta^{t-1}
    for (int t = 1; t <= T; ++t) {
        slope += alpha_greedy[static_cast<std::size_t>(t - 1)] *
                 (disc * quarter - disc * params.discount * u[static_cast<std::size_t>(t)]);
        disc *= params.discount;
    }
    return slope;
}

}  // namespace bargain
