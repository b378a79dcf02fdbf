#pragma once

#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

// Core primitives of the finite-horizon bargaining game with an
// absentminded respondent. The proposer chooses between a greedy offer
// (3V/4 to herself, V/4 to the respondent) and a fair offer (V/2 each)
// in each of T periods; an unaccepted offer forfeits the pie at the
// deadline. The respondent cannot distinguish calendar periods.

namespace bargain {

// Absolute tolerance for probability-vector checks.
inline constexpr double kProbTol = 1e-12;
// Residual bound |L| <= kMixingResidualTol * V for the mixing root.
inline constexpr double kMixingResidualTol = 1e-10;
// Default deviation tolerance for exact equilibrium verification, in units of V.
inline constexpr double kAhpeTol = 1e-9;
// Offer-equality tolerance in the general offer-space module.
inline constexpr double kOfferTol = 1e-12;

struct GameParams {
    double pie = 1.0;       // V
    int horizon = 2;        // T
    double discount = 1.0;  // delta, (0, 1]; delta = 1 is admitted (finite horizon)

    void validate() const {
        if (!(pie > 0.0)) throw std::invalid_argument("GameParams: pie must be positive");
        if (horizon < 1) throw std::invalid_argument("GameParams: horizon must be >= 1");
        if (!(discount > 0.0 && discount <= 1.0))
            throw std::invalid_argument("GameParams: discount must lie in (0, 1]");
    }
};

// Behavioral proposer strategy: greedy[t] is the probability of the greedy
// offer in period t+1 (0-based storage for periods 1..T).
struct ProposerPolicy {
    std::vector<double> greedy;

    int horizon() const { return static_cast<int>(greedy.size()); }

    static ProposerPolicy constant(int horizon, double s) {
        return ProposerPolicy{std::vector<double>(static_cast<std::size_t>(horizon), s)};
    }
    // All greedy except the final period.
    static ProposerPolicy greedy_until_last(int horizon, double last) {
        ProposerPolicy p = constant(horizon, 1.0);
        p.greedy.back() = last;
        return p;
    }

    void validate() const {
        if (greedy.empty()) throw std::invalid_argument("ProposerPolicy: empty policy");
        for (double s : greedy)
            if (!(s >= 0.0 && s <= 1.0))
                throw std::invalid_argument("ProposerPolicy: entries must lie in [0,1]");
    }
};

// Behavioral respondent strategy. Accepting a fair offer is weakly dominant,
// so accept_fair is pinned at 1.
struct RespondentPolicy {
    double accept_greedy = 1.0;  // p_G
    double accept_fair = 1.0;    // p_F, fixed

    void validate() const {
        if (!(accept_greedy >= 0.0 && accept_greedy <= 1.0))
            throw std::invalid_argument("RespondentPolicy: accept_greedy must lie in [0,1]");
        if (accept_fair != 1.0)
            throw std::invalid_argument("RespondentPolicy: accept_fair is fixed at 1");
    }
};

// Calendar-time beliefs. A missing conditional vector marks the offer as
// off-path (the Bayes denominator vanishes); supporting beliefs for off-path
// offers are always an explicit input elsewhere, never defaulted.
struct TimeBeliefs {
    std::vector<double> unconditional;                 // gamma_t
    std::optional<std::vector<double>> after_greedy;   // alpha_t^G
    std::optional<std::vector<double>> after_fair;     // alpha_t^F
};

inline bool is_probability_vector(std::span<const double> v, double tol = kProbTol) {
    if (v.empty()) return false;
    double sum = 0.0;
    for (double x : v) {
        if (!(x >= -tol)) return false;
        sum += x;
    }
    return std::abs(sum - 1.0) <= tol;
}

}  // namespace bargain
