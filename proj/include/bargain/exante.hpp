#pragma once

#include "bargain/types.hpp"

// The respondent's planning problem: commit ex-ante to one acceptance
// probability against the lottery over decision problems induced by the
// proposer's strategy (greedy in every period before the deadline, greedy
// with probability sigma_T at it).

namespace bargain {

// Planning objective sigma_T * A(p) + (1 - sigma_T) * B(p) with
//   A(p) = sum_{t=1}^{T}   delta^{t-1} p (1-p)^{t-1} V/4
//   B(p) = sum_{t=1}^{T-1} delta^{t-1} p (1-p)^{t-1} V/4
//        + delta^{T-1} (1-p)^{T-1} V/2.
double exante_value(double sigma_last, double accept_prob, const GameParams& params);

// Centered second difference of the objective in p (step 1e-3).
double exante_second_difference(double sigma_last, double accept_prob, const GameParams& params);

struct ExAnteBestResponse {
    bool all_optimal = false;  // the induced objective is flat; every p solves it
    double argmax = 0.0;
    double value = 0.0;
};

// Global maximizer over p in [0,1], dense grid (step 1e-4) refined to 1e-9.
// sigma_last = 0 induces the all-fair profile whose planning problem is flat.
ExAnteBestResponse exante_best_response(double sigma_last, const GameParams& params);

struct EquivalenceReport {
    bool mixing_exists = false;
    double sigma_last = 0.0;
    double stationary_p = 0.0;        // zero of the planning FOC nearest 2/3
    double second_difference = 0.0;   // at p = 2/3
    bool concave_at_indifference = false;
    double global_argmax = 0.0;
    bool global_matches = false;      // global argmax within 1e-6 of 2/3
    bool pass = false;                // stationary within 1e-6 of 2/3 and locally concave
};

// Certifies the indifference-root / planning-optimality correspondence at the
// mixing profile: the planning FOC vanishes at p = 2/3 and the objective is
// locally concave there. The global argmax is reported alongside; near the
// existence threshold it can sit at the always-accept corner, which the
// report surfaces via global_matches.
EquivalenceReport certify_equivalence(const GameParams& params);

}  // namespace bargain
