#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bargain/types.hpp"

// Independent verification machinery for the baseline game: deviation
// checking against the equilibrium definition, exhaustive outcome
// enumeration, brute-force strategy-grid search, and the trembling-sequence
// certificate for fair equilibria.

namespace bargain {

struct DeviationReport {
    double max_proposer_gain = 0.0;    // best one-period deviation gain, units of V
    double max_respondent_gain = 0.0;  // units of V
    double max_proposer_slope = 0.0;   // worst KKT residual of condition (i), units of V
    double max_respondent_slope = 0.0; // KKT residual of condition (iii), units of V
    double belief_consistency_error = 0.0;
    double tolerance = kAhpeTol;
    bool pass = false;
};

// Checks the three equilibrium conditions for a candidate profile:
//   (i)  each sigma_t maximizes the proposer's linear per-period program;
//   (ii) supplied beliefs match Bayes posteriors wherever on-path;
//   (iii) accept_greedy is optimal against the slope L of the respondent
//         program (interior requires |L| <= tol*V, corners require the sign).
// Off-path sides must come with caller-supplied beliefs; verification of the
// respondent condition without a belief for a greedy offer is impossible and
// throws.
DeviationReport ahpe_check(const ProposerPolicy& sigma, double accept_greedy,
                           const std::optional<std::vector<double>>& alpha_greedy,
                           const std::optional<std::vector<double>>& alpha_fair,
                           const GameParams& params, double tol = kAhpeTol);

struct OutcomeDistribution {
    std::vector<double> trade_greedy;  // deal at period t on greedy terms
    std::vector<double> trade_fair;
    double no_deal = 0.0;
    double proposer_payoff = 0.0;   // discounted expectations
    double respondent_payoff = 0.0;

    std::vector<double> trade_at() const;       // per-period totals
    double expected_date_given_deal() const;    // exact conditional mean of the trade date
};

// Exact walk of the game tree under (sigma, p_G). Probabilities sum to 1.
OutcomeDistribution enumerate_outcomes(const ProposerPolicy& sigma, double accept_greedy,
                                       const GameParams& params);

enum class ClusterLabel { Greedy, Fair, Mixing, Unclassified };

struct EquilibriumCluster {
    ClusterLabel label;
    double sigma_last_centroid;
    double accept_centroid;
    std::size_t cells;
};

struct GridSearchResult {
    std::vector<EquilibriumCluster> clusters;
    double step;
    double tolerance;  // units of V
    bool has(ClusterLabel l) const;
    std::size_t count(ClusterLabel l) const;
};

// Scans (sigma_T, p_G) on a square grid, resolving sigma_{t<T} period by
// period as the proposer's best response, and retains candidates whose
// deviation report passes at tolerance 2*step*V. Retained cells are clustered
// by grid adjacency within equal resolved early-policy patterns and labeled
// by centroid (Mixing near p=2/3, Fair at small sigma, Greedy near (1,1)).
GridSearchResult grid_search_equilibria(const GameParams& params, double grid_step);

struct SequentialCertificate {
    bool certified = false;
    bool trivial = false;        // all offers on-path; no tremble needed
    double alpha1_gap = 0.0;     // |alpha_1^(n) - 1| at n_max
    double max_late_alpha = 0.0; // max_{t>1} alpha_t^(n) at n_max
    bool monotone_tail = false;  // both quantities decay over the last decade of n
    std::uint64_t n_max = 0;
};

// Tremble certificate for a fair profile: sigma_t^(n) = n^{-t} with the
// profile's own acceptance probability, recomputing beliefs along the
// sequence. Profiles with the greedy offer on-path certify trivially.
SequentialCertificate sequential_certificate(const ProposerPolicy& sigma, double accept_greedy,
                                             const GameParams& params, std::uint64_t n_max);

}  // namespace bargain
