#pragma once

#include <optional>
#include <span>
#include <vector>

#include "bargain/types.hpp"

// Belief consistency and value recursions for the baseline binary-offer game.
// All functions are pure; inputs are validated and violations throw
// std::invalid_argument.

namespace bargain {

// Long-run frequency gamma_t of being in period t, unconditional on the offer:
//   gamma_t proportional to (1-p_G)^{t-1} * prod_{l<t} sigma_l,
// normalized to sum to 1. Reaching period t requires every earlier offer to
// have been greedy (a fair offer is accepted for sure) and rejected.
std::vector<double> unconditional_beliefs(const ProposerPolicy& sigma, double accept_greedy);

struct ConditionalBeliefs {
    std::optional<std::vector<double>> after_greedy;  // nullopt: greedy offer off-path
    std::optional<std::vector<double>> after_fair;
};

// Bayes posteriors over the period given the offer. Where a denominator is
// zero the offer is off-path: the supplied belief is used if given, otherwise
// the marker stays empty. At most one side can be off-path.
ConditionalBeliefs conditional_beliefs(const ProposerPolicy& sigma, double accept_greedy,
                                       const std::optional<std::vector<double>>& offpath_belief = {});

TimeBeliefs consistent_beliefs(const ProposerPolicy& sigma, double accept_greedy,
                               const std::optional<std::vector<double>>& offpath_belief = {});

// Backward value recursions with boundary U_{T+1} = 0:
//   U_t^P = sigma_t p_G 3V/4 + (1-sigma_t) V/2 + delta sigma_t (1-p_G) U_{t+1}^P
//   U_t^R = sigma_t p_G  V/4 + (1-sigma_t) V/2 + delta sigma_t (1-p_G) U_{t+1}^R
// The returned vector has length T+1; index t-1 holds the value at period t,
// index T holds U_{T+1} = 0.
std::vector<double> proposer_values(const ProposerPolicy& sigma, double accept_greedy,
                                    const GameParams& params);
std::vector<double> respondent_values(const ProposerPolicy& sigma, double accept_greedy,
                                      const GameParams& params);

// Value at a single period t in 1..T+1.
double proposer_value(const ProposerPolicy& sigma, double accept_greedy, int t,
                      const GameParams& params);
double respondent_value(const ProposerPolicy& sigma, double accept_greedy, int t,
                        const GameParams& params);

// Slope of the respondent program in the acceptance probability:
//   L = sum_t alpha_t^G (delta^{t-1} V/4 - delta^t U_{t+1}^R).
// The respondent strictly prefers accepting a greedy offer iff L > 0.
double accept_indifference_slope(const ProposerPolicy& sigma, double accept_greedy,
                                 std::span<const double> alpha_greedy, const GameParams& params);

}  // namespace bargain
