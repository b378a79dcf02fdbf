#include "bargain/equilibria.hpp"

#include <cmath>
#include <sstream>

#include "bargain/baseline.hpp"
#include "bargain/exante.hpp"
#include "bargain/root.hpp"

namespace bargain {

double fair_bound(double delta) {
    if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("delta must lie in (0,1]");
    return (1.0 - delta) / (1.5 - delta);
}

namespace {

double mixing_slope(double sigma_last, const GameParams& params) {
    auto sigma = ProposerPolicy::greedy_until_last(params.horizon, sigma_last);
    auto beliefs = conditional_beliefs(sigma, 2.0 / 3.0);
    return accept_indifference_slope(sigma, 2.0 / 3.0, *beliefs.after_greedy, params);
}

}  // namespace

bool mixing_equilibrium_exists(const GameParams& params) {
    auto root = solve_mixing(params);
    if (!root) return false;
    if (*root == 0.0) return true;  // boundary tie: degenerate member at the threshold itself
    return exante_second_difference(*root, 2.0 / 3.0, params) <= 0.0;
}

std::optional<double> solve_mixing(const GameParams& params) {
    params.validate();
    if (params.horizon < 2) throw std::invalid_argument("mixing requires horizon >= 2");
    const double V = params.pie;
    auto f = [&params](double s) { return mixing_slope(s, params); };

    // L(0) < 0 < L(1) above the threshold; L(0) = 0 exactly at it. The scan
    // fallback in find_root guards the region near the threshold where the
    // root approaches the boundary.
    auto r = find_root(f, 0.0, 1.0);
    if (!r) return std::nullopt;
    if (std::abs(r->residual) > kMixingResidualTol * V) return std::nullopt;
    if (r->x >= 1.0) return std::nullopt;
    return r->x;
}

double mixing_threshold(int horizon) {
    if (horizon < 2) throw std::invalid_argument("mixing requires horizon >= 2");
    GameParams p{1.0, horizon, 1.0};
    if (!mixing_equilibrium_exists(p)) throw std::domain_error("no mixing profile exists even at delta = 1");
    double lo = 0.05, hi = 1.0;
    GameParams q = p;
    q.discount = lo;
    if (mixing_equilibrium_exists(q)) return lo;
    while (hi - lo > 1e-7) {
        double mid = 0.5 * (lo + hi);
        q.discount = mid;
        (mixing_equilibrium_exists(q) ? hi : lo) = mid;
    }
    return hi;
}

std::vector<EquilibriumProfile> enumerate_equilibria(const GameParams& params) {
    params.validate();
    if (params.horizon < 2) throw std::invalid_argument("enumeration requires horizon >= 2");
    const int T = params.horizon;
    const double delta = params.discount;
    std::vector<EquilibriumProfile> out;

    // Greedy: always an equilibrium; beliefs are Bayes (fair offers off-path).
    {
        EquilibriumProfile g;
        g.kind = EquilibriumKind::Greedy;
        g.sigma = ProposerPolicy::constant(T, 1.0);
        g.accept_greedy = 1.0;
        auto b = conditional_beliefs(g.sigma, 1.0);
        g.alpha_greedy = b.after_greedy;
        g.alpha_fair = b.after_fair;  // off-path marker
        out.push_back(std::move(g));
    }

    // Fair family: exists iff rejecting the greedy offer is credible,
    // delta V/2 >= V/4. Both the p_G = 0 member and the extreme-bound member
    // are emitted with their supporting off-path beliefs.
    if (delta >= 0.5) {
        double bound = fair_bound(delta);
        {
            EquilibriumProfile f;
            f.kind = EquilibriumKind::Fair;
            f.sigma = ProposerPolicy::constant(T, 0.0);
            f.accept_greedy = 0.0;
            std::vector<double> a(static_cast<std::size_t>(T), 0.0);
            a[0] = 1.0;  // believe any greedy offer arrives in period 1
            f.alpha_greedy = a;
            f.alpha_fair = conditional_beliefs(f.sigma, 0.0).after_fair;
            f.fair_accept_bound = bound;
            out.push_back(std::move(f));
        }
        if (bound > 0.0) {
            // Interior acceptance needs exact indifference; mix the off-path
            // belief between periods 1 and T to zero the slope.
            EquilibriumProfile f;
            f.kind = EquilibriumKind::Fair;
            f.sigma = ProposerPolicy::constant(T, 0.0);
            f.accept_greedy = bound;
            double a1_coeff = 0.25 - delta * 0.5;                      // weight-1 slope term (< 0 here)
            double aT_coeff = std::pow(delta, T - 1) * 0.25;           // weight-T slope term
            double a1 = aT_coeff / (aT_coeff - a1_coeff);
            std::vector<double> a(static_cast<std::size_t>(T), 0.0);
            a[0] = a1;
            a[static_cast<std::size_t>(T - 1)] = 1.0 - a1;
            f.alpha_greedy = a;
            f.alpha_fair = conditional_beliefs(f.sigma, bound).after_fair;
            f.fair_accept_bound = bound;
            out.push_back(std::move(f));
        }
    }

    if (mixing_equilibrium_exists(params)) {
        auto root = solve_mixing(params);
        EquilibriumProfile m;
        m.kind = EquilibriumKind::Mixing;
        m.sigma = ProposerPolicy::greedy_until_last(T, *root);
        m.accept_greedy = 2.0 / 3.0;
        auto b = conditional_beliefs(m.sigma, 2.0 / 3.0);
        m.alpha_greedy = b.after_greedy;
        m.alpha_fair = b.after_fair;
        m.residual = mixing_slope(*root, params);
        out.push_back(std::move(m));
    }
    return out;
}

DelayStats delay_stats(double sigma_last, double accept_greedy, int horizon) {
    if (horizon < 2) throw std::invalid_argument("delay stats require horizon >= 2");
    if (!(sigma_last >= 0.0 && sigma_last <= 1.0 && accept_greedy >= 0.0 && accept_greedy <= 1.0))
        throw std::invalid_argument("probabilities must lie in [0,1]");
    const int T = horizon;
    const double p = accept_greedy;
    DelayStats d;
    d.trade_at.assign(static_cast<std::size_t>(T), 0.0);
    double surv = 1.0;  // (1-p)^{t-1}
    double date_sum = 0.0;
    for (int t = 1; t < T; ++t) {
        d.trade_at[static_cast<std::size_t>(t - 1)] = p * surv;
        date_sum += surv * static_cast<double>(t);
        surv *= 1.0 - p;
    }
    d.trade_at[static_cast<std::size_t>(T - 1)] = surv * (sigma_last * p + (1.0 - sigma_last));
    date_sum += surv * static_cast<double>(T);
    d.no_deal = sigma_last * surv * (1.0 - p);
    d.expected_date_given_deal = p * date_sum / (1.0 - d.no_deal);
    return d;
}

SweepTable sweep(const GameParams& base, SweepParameter parameter, const std::vector<double>& grid) {
    base.validate();
    SweepTable table;
    table.parameter = parameter;
    table.max_horizon = base.horizon;

    double prev_sigma = -1.0, prev_nodeal = -1.0, prev_edate = -1.0;
    for (double g : grid) {
        GameParams p = base;
        if (parameter == SweepParameter::Delta) {
            p.discount = g;
        } else {
            p.horizon = static_cast<int>(std::lround(g));
            table.max_horizon = std::max(table.max_horizon, p.horizon);
        }
        p.validate();

        SweepRow row;
        row.param = parameter == SweepParameter::Delta ? p.discount
                                                       : static_cast<double>(p.horizon);
        auto root = mixing_equilibrium_exists(p) ? solve_mixing(p) : std::nullopt;
        if (root) {
            row.sigma_last = *root;
            row.stats = delay_stats(*root, 2.0 / 3.0, p.horizon);
            if (prev_sigma >= 0.0) {
                if (*root < prev_sigma - 1e-12) table.sigma_nondecreasing = false;
                if (row.stats->no_deal < prev_nodeal - 1e-12) table.no_deal_nondecreasing = false;
                if (row.stats->expected_date_given_deal < prev_edate - 1e-12)
                    table.expected_date_nondecreasing = false;
            }
            prev_sigma = *root;
            prev_nodeal = row.stats->no_deal;
            prev_edate = row.stats->expected_date_given_deal;
        }
        table.rows.push_back(std::move(row));
    }
    return table;
}

std::string SweepTable::to_csv() const {
    std::ostringstream os;
    os.precision(12);
    os << "param,sigma_T";
    for (int t = 1; t <= max_horizon; ++t) os << ",pr_trade_" << t;
    os << ",pr_no_deal,e_date\n";
    for (const SweepRow& r : rows) {
        os << r.param << ",";
        if (!r.sigma_last) {
            os << "none";
            for (int t = 0; t <= max_horizon + 1; ++t) os << ",";
        } else {
            os << *r.sigma_last;
            for (int t = 0; t < max_horizon; ++t) {
                os << ",";
                if (t < static_cast<int>(r.stats->trade_at.size())) os << r.stats->trade_at[static_cast<std::size_t>(t)];
            }
            os << "," << r.stats->no_deal << "," << r.stats->expected_date_given_deal;
        }
        os << "\n";
    }
    return os.str();
}

}  // namespace bargain
