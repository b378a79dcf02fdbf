#include "bargain/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "bargain/baseline.hpp"

namespace bargain {

namespace {

// KKT residual of a linear program max_{x in [0,1]} slope * x at a candidate x.
double kkt_residual(double slope, double x) {
    if (x >= 1.0) return std::max(0.0, -slope);
    if (x <= 0.0) return std::max(0.0, slope);
    return std::abs(slope);
}

// Payoff gained by moving x to the better corner.
double corner_gain(double slope, double x) {
    return std::max({0.0, slope * (1.0 - x), -slope * x});
}

}  // namespace

DeviationReport ahpe_check(const ProposerPolicy& sigma, double accept_greedy,
                           const std::optional<std::vector<double>>& alpha_greedy,
                           const std::optional<std::vector<double>>& alpha_fair,
                           const GameParams& params, double tol) {
    sigma.validate();
    params.validate();
    RespondentPolicy{accept_greedy, 1.0}.validate();
    const int T = sigma.horizon();
    const double V = params.pie;

    DeviationReport rep;
    rep.tolerance = tol;

    // Condition (i): per-period proposer program, linear in s_t with slope
    // p 3V/4 - V/2 + delta (1-p) U^P_{t+1}.
    auto uP = proposer_values(sigma, accept_greedy, params);
    for (int t = 1; t <= T; ++t) {
        double slope = accept_greedy * 3.0 * V / 4.0 - V / 2.0 +
                       params.discount * (1.0 - accept_greedy) * uP[static_cast<std::size_t>(t)];
        double s = sigma.greedy[static_cast<std::size_t>(t - 1)];
        rep.max_proposer_slope = std::max(rep.max_proposer_slope, kkt_residual(slope, s) / V);
        rep.max_proposer_gain = std::max(rep.max_proposer_gain, corner_gain(slope, s) / V);
    }

    // Condition (ii): supplied beliefs must match Bayes posteriors on-path.
    auto bayes = conditional_beliefs(sigma, accept_greedy);
    auto compare = [&](const std::optional<std::vector<double>>& supplied,
                       const std::optional<std::vector<double>>& computed) {
        if (!supplied) return;
        if (static_cast<int>(supplied->size()) != T)
            throw std::invalid_argument("belief vector has wrong length");
        if (!is_probability_vector(*supplied, 1e-9))
            throw std::invalid_argument("belief vector is not a probability vector");
        if (!computed) return;  // off-path: any supplied belief is consistent
        for (int t = 0; t < T; ++t)
            rep.belief_consistency_error =
                std::max(rep.belief_consistency_error,
                         std::abs((*supplied)[static_cast<std::size_t>(t)] -
                                  (*computed)[static_cast<std::size_t>(t)]));
    };
    compare(alpha_greedy, bayes.after_greedy);
    compare(alpha_fair, bayes.after_fair);

    // Condition (iii): respondent optimality after a greedy offer.
    const std::vector<double>* aG = nullptr;
    if (alpha_greedy) aG = &*alpha_greedy;
    else if (bayes.after_greedy) aG = &*bayes.after_greedy;
    else throw std::invalid_argument("greedy offer off-path and no supporting belief supplied");
    double L = accept_indifference_slope(sigma, accept_greedy, *aG, params);
    rep.max_respondent_slope = kkt_residual(L, accept_greedy) / V;
    rep.max_respondent_gain = corner_gain(L, accept_greedy) / V;

    // The fair-offer side never binds: accepting is weakly dominant since
    // delta^{t-1} V/2 >= delta^t U^R_{t+1} for every t and belief.

    rep.pass = rep.max_proposer_slope <= tol && rep.max_respondent_slope <= tol &&
               rep.belief_consistency_error <= std::max(tol, 1e-9);
    return rep;
}

std::vector<double> OutcomeDistribution::trade_at() const {
    std::vector<double> out(trade_greedy.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = trade_greedy[i] + trade_fair[i];
    return out;
}

double OutcomeDistribution::expected_date_given_deal() const {
    double mass = 0.0, sum = 0.0;
    for (std::size_t i = 0; i < trade_greedy.size(); ++i) {
        double p = trade_greedy[i] + trade_fair[i];
        mass += p;
        sum += p * static_cast<double>(i + 1);
    }
    return mass > 0.0 ? sum / mass : 0.0;
}

OutcomeDistribution enumerate_outcomes(const ProposerPolicy& sigma, double accept_greedy,
                                       const GameParams& params) {
    sigma.validate();
    params.validate();
    const int T = sigma.horizon();
    OutcomeDistribution out;
    out.trade_greedy.assign(static_cast<std::size_t>(T), 0.0);
    out.trade_fair.assign(static_cast<std::size_t>(T), 0.0);
    double reach = 1.0;  // probability period t is reached
    double disc = 1.0;
    for (int t = 0; t < T; ++t) {
        double s = sigma.greedy[static_cast<std::size_t>(t)];
        double pg = reach * s * accept_greedy;
        double pf = reach * (1.0 - s);
        out.trade_greedy[static_cast<std::size_t>(t)] = pg;
        out.trade_fair[static_cast<std::size_t>(t)] = pf;
        out.proposer_payoff += disc * (pg * 3.0 * params.pie / 4.0 + pf * params.pie / 2.0);
        out.respondent_payoff += disc * (pg * params.pie / 4.0 + pf * params.pie / 2.0);
        reach *= s * (1.0 - accept_greedy);
        disc *= params.discount;
    }
    out.no_deal = reach;
    return out;
}

bool GridSearchResult::has(ClusterLabel l) const {
    return std::any_of(clusters.begin(), clusters.end(),
                       [l](const EquilibriumCluster& c) { return c.label == l; });
}

std::size_t GridSearchResult::count(ClusterLabel l) const {
    return static_cast<std::size_t>(std::count_if(
        clusters.begin(), clusters.end(), [l](const EquilibriumCluster& c) { return c.label == l; }));
}

namespace {

struct UnionFind {
    std::vector<std::int32_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::int32_t find(std::int32_t a) {
        while (parent[static_cast<std::size_t>(a)] != a) {
            parent[static_cast<std::size_t>(a)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
            a = parent[static_cast<std::size_t>(a)];
        }
        return a;
    }
    void merge(std::int32_t a, std::int32_t b) {
        a = find(a); b = find(b);
        if (a != b) parent[static_cast<std::size_t>(b)] = a;
    }
};

}  // namespace

GridSearchResult grid_search_equilibria(const GameParams& params, double grid_step) {
    params.validate();
    if (!(grid_step >= 1e-3 && grid_step <= 0.1))
        throw std::invalid_argument("grid_step must lie in [1e-3, 0.1]");
    if (params.horizon > 4)
        throw std::invalid_argument("grid search supports horizons up to 4");
    const int T = params.horizon;
    const double delta = params.discount;
    const double tol = 2.0 * grid_step;  // deviation tolerance in units of V
    const int N = static_cast<int>(std::lround(1.0 / grid_step));

    // key per cell: resolved sigma_{t<T} bit pattern, or -1 if not retained.
    std::vector<std::int8_t> key(static_cast<std::size_t>(N + 1) * (N + 1), -1);
    auto cell = [N](int i, int j) { return static_cast<std::size_t>(i) * (N + 1) + j; };

    std::vector<double> sig(static_cast<std::size_t>(T));
    std::vector<double> uR(static_cast<std::size_t>(T) + 1, 0.0);
    for (int i = 0; i <= N; ++i) {
        double sT = static_cast<double>(i) * grid_step;
        for (int j = 0; j <= N; ++j) {
            double p = static_cast<double>(j) * grid_step;

            // Resolve sigma_{t<T} backwards as the proposer's best response.
            sig[static_cast<std::size_t>(T - 1)] = sT;
            double uP = sT * p * 0.75 + (1.0 - sT) * 0.5;  // value at period T, V = 1
            std::int8_t pattern = 0;
            for (int t = T - 1; t >= 1; --t) {
                double slope = p * 0.75 - 0.5 + delta * (1.0 - p) * uP;
                double s = slope > 0.0 ? 1.0 : 0.0;
                sig[static_cast<std::size_t>(t - 1)] = s;
                if (s > 0.5) pattern |= static_cast<std::int8_t>(1 << (t - 1));
                uP = s * (p * 0.75 + delta * (1.0 - p) * uP) + (1.0 - s) * 0.5;
            }

            // Condition (i) holds for resolved periods by construction; check sigma_T.
            double uP_after_T = 0.0;
            double slope_T = p * 0.75 - 0.5 + delta * (1.0 - p) * uP_after_T;
            if (kkt_residual(slope_T, sT) > tol) continue;

            // Respondent values and survival weights.
            for (int t = T; t >= 1; --t) {
                double s = sig[static_cast<std::size_t>(t - 1)];
                uR[static_cast<std::size_t>(t - 1)] =
                    s * p * 0.25 + (1.0 - s) * 0.5 + delta * s * (1.0 - p) * uR[static_cast<std::size_t>(t)];
            }

            double w = 1.0, denom = 0.0, slope_L = 0.0, disc = 1.0;
            double cmin = 1e300, cmax = -1e300;
            // gamma weights are proportional to w_t; alpha^G to sigma_t w_t.
            for (int t = 1; t <= T; ++t) {
                double c = disc * 0.25 - disc * delta * uR[static_cast<std::size_t>(t)];
                cmin = std::min(cmin, c);
                cmax = std::max(cmax, c);
                double s = sig[static_cast<std::size_t>(t - 1)];
                denom += s * w;
                slope_L += s * w * c;
                w *= s * (1.0 - p);
                disc *= delta;
            }

            bool ok;
            if (denom > 0.0) {
                ok = kkt_residual(slope_L / denom, p) <= tol;  // Bayes beliefs
            } else {
                // Greedy offer off-path: some supporting belief must make p optimal.
                if (p >= 1.0) ok = cmax >= -tol;
                else if (p <= 0.0) ok = cmin <= tol;
                else ok = cmin <= tol && cmax >= -tol;
            }
            if (ok) key[cell(i, j)] = pattern;
        }
    }

    // Cluster retained cells: 8-neighborhood adjacency within equal patterns.
    std::vector<std::int32_t> id(static_cast<std::size_t>(N + 1) * (N + 1), -1);
    std::vector<std::size_t> retained;
    for (int i = 0; i <= N; ++i)
        for (int j = 0; j <= N; ++j)
            if (key[cell(i, j)] >= 0) {
                id[cell(i, j)] = static_cast<std::int32_t>(retained.size());
                retained.push_back(cell(i, j));
            }
    UnionFind uf(retained.size());
    for (int i = 0; i <= N; ++i)
        for (int j = 0; j <= N; ++j) {
            if (key[cell(i, j)] < 0) continue;
            for (int di = -1; di <= 1; ++di)
                for (int dj = -1; dj <= 1; ++dj) {
                    if (di == 0 && dj == 0) continue;
                    int ii = i + di, jj = j + dj;
                    if (ii < 0 || jj < 0 || ii > N || jj > N) continue;
                    if (key[cell(ii, jj)] == key[cell(i, j)])
                        uf.merge(id[cell(i, j)], id[cell(ii, jj)]);
                }
        }

    struct Acc { double si = 0.0, pj = 0.0; std::size_t n = 0; };
    std::vector<std::int32_t> roots;
    std::vector<Acc> acc;
    std::vector<std::int32_t> root_index(retained.size(), -1);
    for (std::size_t k = 0; k < retained.size(); ++k) {
        std::int32_t r = uf.find(static_cast<std::int32_t>(k));
        if (root_index[static_cast<std::size_t>(r)] < 0) {
            root_index[static_cast<std::size_t>(r)] = static_cast<std::int32_t>(roots.size());
            roots.push_back(r);
            acc.emplace_back();
        }
        Acc& a = acc[static_cast<std::size_t>(root_index[static_cast<std::size_t>(r)])];
        std::size_t c = retained[k];
        a.si += static_cast<double>(c / (static_cast<std::size_t>(N) + 1)) * grid_step;
        a.pj += static_cast<double>(c % (static_cast<std::size_t>(N) + 1)) * grid_step;
        a.n += 1;
    }

    GridSearchResult res;
    res.step = grid_step;
    res.tolerance = tol;
    for (const Acc& a : acc) {
        EquilibriumCluster c;
        c.cells = a.n;
        c.sigma_last_centroid = a.si / static_cast<double>(a.n);
        c.accept_centroid = a.pj / static_cast<double>(a.n);
        if (std::abs(c.accept_centroid - 2.0 / 3.0) <= 0.05) c.label = ClusterLabel::Mixing;
        else if (c.sigma_last_centroid < 0.05) c.label = ClusterLabel::Fair;
        else if (c.sigma_last_centroid > 0.95 && c.accept_centroid > 0.95) c.label = ClusterLabel::Greedy;
        else c.label = ClusterLabel::Unclassified;
        res.clusters.push_back(c);
    }
    std::sort(res.clusters.begin(), res.clusters.end(),
              [](const EquilibriumCluster& a, const EquilibriumCluster& b) {
                  return a.sigma_last_centroid < b.sigma_last_centroid;
              });
    return res;
}

SequentialCertificate sequential_certificate(const ProposerPolicy& sigma, double accept_greedy,
                                             const GameParams& params, std::uint64_t n_max) {
    sigma.validate();
    params.validate();
    const int T = sigma.horizon();
    SequentialCertificate cert;
    cert.n_max = n_max;

    for (double s : sigma.greedy)
        if (s > 0.0) {
            // Greedy offers on-path: beliefs are pinned by Bayes, no tremble needed.
            cert.trivial = true;
            cert.certified = true;
            cert.monotone_tail = true;
            return cert;
        }

    // Fair profile: tremble sigma_t^(n) = n^{-t}, acceptance held at the
    // profile's own p_G. Report alpha^(n) at n and its decay over the last
    // decade of n.
    auto alpha_stats = [&](double n) {
        // relative weight of period t in alpha^(n): n^{-t} (1-p)^{t-1} n^{-t(t-1)/2}
        std::vector<double> rel(static_cast<std::size_t>(T));
        for (int t = 1; t <= T; ++t)
            rel[static_cast<std::size_t>(t - 1)] =
                std::pow(n, -static_cast<double>(t) - static_cast<double>(t) * (t - 1) / 2.0) *
                std::pow(1.0 - accept_greedy, t - 1);
        double sum = 0.0;
        for (double r : rel) sum += r;
        double gap = 0.0, late = 0.0;
        for (int t = 1; t <= T; ++t) {
            double a = rel[static_cast<std::size_t>(t - 1)] / sum;
            if (t == 1) gap = std::abs(a - 1.0);
            else late = std::max(late, a);
        }
        return std::pair{gap, late};
    };

    auto [gap, late] = alpha_stats(static_cast<double>(n_max));
    cert.alpha1_gap = gap;
    cert.max_late_alpha = late;

    cert.monotone_tail = true;
    double prev_gap = 1e300, prev_late = 1e300;
    for (int k = 0; k <= 9; ++k) {
        double n = static_cast<double>(n_max) / 10.0 +
                   (static_cast<double>(n_max) - static_cast<double>(n_max) / 10.0) * k / 9.0;
        auto [g, l] = alpha_stats(n);
        if (g > prev_gap + 1e-18 || l > prev_late + 1e-18) cert.monotone_tail = false;
        prev_gap = g;
        prev_late = l;
    }

    cert.certified = cert.alpha1_gap <= 1e-6 && cert.max_late_alpha <= 1e-6 && cert.monotone_tail;
    return cert;
}

}  // namespace bargain
