#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "bargain/types.hpp"

// Two-period bargaining over an arbitrary offer space X in [0,1]. An offer x
// gives the respondent the share x. Implements the punctured-gap test, the
// Markov delay construction, the complete-space outcomes, the patient
// non-Markov delay construction, and the definitional equilibrium checker.

namespace bargain {

struct OfferSpace {
    bool full_interval = false;
    std::vector<double> grid;  // sorted ascending, deduplicated, entries in [0,1]

    static OfferSpace full() { return OfferSpace{true, {}}; }
    static OfferSpace finite(std::vector<double> offers);  // sorts, dedups, validates

    double lo() const { return full_interval ? 0.0 : grid.front(); }
    double hi() const { return full_interval ? 1.0 : grid.back(); }
};

enum class GapDirection { Up, Down };  // (a, a/delta) or (delta a, a)

struct PuncturedWitness {
    double anchor = 0.0;  // the offer a > 0
    GapDirection direction = GapDirection::Up;
    double gap_lo = 0.0, gap_hi = 0.0;
};

// Scans a finite space for an empty open gap (a, a/delta) or (delta a, a)
// inside the convex hull; the full interval is never punctured. Returns the
// smallest qualifying anchor, Up direction first on ties. delta must lie in
// (0, 1); the condition degenerates at delta = 1.
std::optional<PuncturedWitness> is_delta_punctured(const OfferSpace& space, double delta);

struct OfferDistribution {
    std::vector<std::pair<double, double>> atoms;  // (offer, weight), weights sum to 1

    static OfferDistribution degenerate(double x) { return OfferDistribution{{{x, 1.0}}}; }
    void validate() const;
    double expected_accepted_share(const struct GeneralProfile& profile) const;
};

// A two-period profile over offers. Acceptance is an exact-atom map plus an
// accept-everything threshold; the belief rule likewise carries exact atoms
// with a default for unlisted (off-path) offers.
struct GeneralProfile {
    OfferDistribution first;                          // sigma_1
    OfferDistribution second_default;                 // sigma_2 for unlisted conditioning offers
    std::map<double, OfferDistribution> second_by_offer;  // history-dependent overrides
    std::map<double, double> accept_atoms;            // p(x) at exact offers
    double accept_all_from = 1.0;                     // p(x) = 1 for x >= this, else 0 unless listed
    std::map<double, double> belief_atoms;            // alpha(x) at exact offers
    double offpath_belief = 1.0;                      // alpha(x) for unlisted offers

    double accept_prob(double x) const;
    double belief_t1(double x) const;
    const OfferDistribution& second_period(double conditioning_offer) const;
    bool is_markov() const;
    double immediate_agreement() const;  // integral of p d sigma_1
};

// Markov perfect profile with delay built from a punctured witness: the
// proposer offers the gap anchor x in period 1 and mixes between x and
// xbar = min{x' in X : x' >= x/delta} at the deadline; the respondent accepts
// x with probability (1-xbar)/(1-x). The second-period weight on x solves the
// respondent's indifference at x exactly. Throws when the space is not
// punctured.
GeneralProfile construct_delay_mpe(const OfferSpace& space, double delta);

struct CompleteSpaceOutcome {
    bool unique = false;           // delta < 1: both periods offer 0, everything accepted
    double folk_offer = 0.0;       // delta = 1: any x' supports immediate agreement at x'
    GeneralProfile profile;        // realized profile (at folk_offer when delta = 1)
};

// Markov outcomes when X = [0,1]: offer zero under impatience, a folk family
// under patience.
CompleteSpaceOutcome complete_space_outcome(double delta, double folk_offer = 0.0);

// Patient (delta = 1) non-Markov delay profile on offers {x_lo, x_hi}: the
// proposer opens with x_lo, mixes between x_lo and x_hi on path at t = 2, and
// punishes any other first-period offer with x_hi for sure. The x_hi-weight q
// solves the respondent's indifference at x_lo.
GeneralProfile construct_patient_delay(double x_lo, double x_hi);

struct GeneralCheckReport {
    double max_t2_gain = 0.0;          // proposer deviation gains, units of V
    double max_t1_gain = 0.0;
    double max_respondent_residual = 0.0;  // KKT residual of the acceptance rule
    double belief_error = 0.0;
    double immediate_agreement = 1.0;
    double delay = 0.0;  // 1 - immediate_agreement
    bool markov = true;
    double tolerance = kAhpeTol;
    bool pass = false;
};

// Definitional check of the two-period equilibrium conditions over every
// offer in the evaluation set (the finite grid, or the profile support plus
// a caller grid for the full interval).
GeneralCheckReport general_ahpe_check(const GeneralProfile& profile, const OfferSpace& space,
                                      double delta, double tol = kAhpeTol,
                                      const std::vector<double>& extra_grid = {});

struct StructuralReport {
    bool sso_ok = false;        // second-period support dominates in the strong set order
    int matched_case = 0;       // 1..4 support pattern, 0 if none matches
    bool monotone_ok = false;   // p strictly increasing across interior on-path offers
    std::optional<std::pair<double, double>> offending;
};

// Structural facts every Markov delay profile must satisfy.
StructuralReport structural_diagnostics(const GeneralProfile& profile);

// Exhaustive search for a Markov delay profile over two-point supports: every
// candidate support pattern is solved exactly from the indifference
// conditions and verified with the definitional checker. Returns the first
// verified profile with delay, or nullopt.
std::optional<GeneralProfile> markov_delay_search(const OfferSpace& space, double delta,
                                                  double tol = 1e-6);

}  // namespace bargain
