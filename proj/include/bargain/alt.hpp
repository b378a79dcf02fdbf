#pragma once

#include <vector>

#include "bargain/types.hpp"

// Alternative protocols at horizon 2: the absentminded proposer facing a
// cognizant respondent, and the game where both parties are absentminded.

namespace bargain {

enum class AltKind { Greedy, Fair, Mixed };

struct ProposerAbsentProfile {
    AltKind kind;
    double greedy_prob = 1.0;     // phi
    double accept_first = 1.0;    // q_1
    double accept_last = 1.0;     // q_2, always 1: the cognizant party takes any deal at the deadline
    double belief_t1 = 1.0;       // proposer's belief alpha that the period is 1
    double delay_probability = 0.0;  // phi (1 - q_1)
};

// Positive root of 4 delta^2 - delta - 1 = 0: the upper limit of the discount
// range supporting a mixed profile when the proposer is absentminded.
double delta_bar();

// Equilibria of the absentminded-proposer game: greedy always, fair iff
// delta >= 1/2, mixed iff delta in [1/2, delta_bar()] with phi = 2 - 1/delta
// and q_1 from the proposer's exact indifference.
std::vector<ProposerAbsentProfile> proposer_absent_equilibria(double delta);

struct TwoAbsentProfile {
    AltKind kind;
    double greedy_prob = 1.0;   // sigma
    double accept_prob = 1.0;   // p
    double gamma = 1.0;         // unconditional weight on t = 1
    double belief_t1 = 1.0;     // supporting belief alpha
    double fair_accept_bound = 0.0;
    // residuals of the two indifference equations at the mixing profile
    double residual_proposer = 0.0;
    double residual_respondent = 0.0;
};

// Value of the mixing quadratic (1+4d) s^2 + (1-12d) s + (8d-4).
double two_absent_quadratic(double sigma, double delta);

// Equilibria when both parties are absentminded: greedy always, the fair
// family iff delta >= 1/2, and the mixing profile at the unique root of the
// quadratic in [0,1] (exists iff delta >= 1/2) with p = 2(1-sigma)/(4-3sigma).
std::vector<TwoAbsentProfile> two_absent_equilibria(double delta);

}  // namespace bargain
