#pragma once

#include <optional>
#include <string>
#include <vector>

#include "bargain/types.hpp"

// Enumeration of the baseline equilibria: the greedy and fair pure profiles
// and the mixing profile where the proposer randomizes only at the deadline.

namespace bargain {

enum class EquilibriumKind { Greedy, Fair, Mixing };

struct EquilibriumProfile {
    EquilibriumKind kind;
    ProposerPolicy sigma;
    double accept_greedy = 1.0;
    std::optional<std::vector<double>> alpha_greedy;  // supporting/Bayes beliefs
    std::optional<std::vector<double>> alpha_fair;
    double residual = 0.0;           // value of the indifference slope L (mixing)
    double fair_accept_bound = 0.0;  // (1-delta)/(3/2-delta), reported for fair profiles
};

// Upper bound on the acceptance probability in a fair equilibrium.
double fair_bound(double delta);

// Root of the deadline indifference equation L(sigma_T) = 0 with sigma_t = 1
// for t < T and p_G = 2/3. Returns the root on [0, 1) with |L| <= 1e-10 V
// (0 exactly at the threshold boundary), or nullopt when L has no zero.
std::optional<double> solve_mixing(const GameParams& params);

// Existence of the mixing equilibrium: the indifference root is interior and
// the planning objective is locally concave at p = 2/3 (nonpositive second
// difference). A root alone is not enough below the threshold.
bool mixing_equilibrium_exists(const GameParams& params);

// Smallest discount factor at which the mixing profile exists. Bisection on
// the existence predicate to 1e-7.
double mixing_threshold(int horizon);

// All equilibrium profiles at the given parameters. Fair profiles are a
// family; the p_G = 0 member and the extreme-bound member are both emitted,
// each with beliefs that support it.
std::vector<EquilibriumProfile> enumerate_equilibria(const GameParams& params);

struct DelayStats {
    std::vector<double> trade_at;  // Pr(deal at t), t = 1..T
    double no_deal = 0.0;
    double expected_date_given_deal = 0.0;
};

// Trade-date distribution of the mixing profile: Pr(deal at t) = p (1-p)^{t-1}
// for t < T, the deadline picks up the fair mass, and no-deal has probability
// sigma_T (1-p)^T. The conditional expected date uses the closed form
//   (p / (1 - sigma_T (1-p)^T)) sum_t (1-p)^{t-1} t.
DelayStats delay_stats(double sigma_last, double accept_greedy, int horizon);

enum class SweepParameter { Delta, Horizon };

struct SweepRow {
    double param = 0.0;
    std::optional<double> sigma_last;  // nullopt: mixing does not exist at this point
    std::optional<DelayStats> stats;
};

struct SweepTable {
    SweepParameter parameter;
    std::vector<SweepRow> rows;
    int max_horizon = 0;  // column count for the CSV layout
    // monotonicity diagnostics over rows where mixing exists
    bool sigma_nondecreasing = true;
    bool no_deal_nondecreasing = true;
    bool expected_date_nondecreasing = true;

    std::string to_csv() const;  // header: param,sigma_T,pr_trade_1..T,pr_no_deal,e_date
};

// Comparative statics table. For Delta the grid entries are discount factors
// at fixed horizon; for Horizon they are integer horizons at fixed discount.
SweepTable sweep(const GameParams& base, SweepParameter parameter, const std::vector<double>& grid);

}  // namespace bargain
