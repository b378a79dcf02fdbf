#include "bargain/general.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "bargain/root.hpp"

namespace bargain {

namespace {

bool near(double a, double b) { return std::abs(a - b) <= kOfferTol; }

template <typename M>
const typename M::mapped_type* find_atom(const M& m, double x) {
    auto it = m.lower_bound(x - kOfferTol);
    if (it != m.end() && std::abs(it->first - x) <= kOfferTol) return &it->second;
    return nullptr;
}

double kkt_residual(double slope, double p) {
    if (p >= 1.0) return std::max(0.0, -slope);
    if (p <= 0.0) return std::max(0.0, slope);
    return std::abs(slope);
}

}  // namespace

OfferSpace OfferSpace::finite(std::vector<double> offers) {
    if (offers.empty()) throw std::invalid_argument("offer space must be nonempty");
    std::sort(offers.begin(), offers.end());
    std::vector<double> grid;
    for (double x : offers) {
        if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("offers must lie in [0,1]");
        if (grid.empty() || !near(grid.back(), x)) grid.push_back(x);
    }
    return OfferSpace{false, std::move(grid)};
}

std::optional<PuncturedWitness> is_delta_punctured(const OfferSpace& space, double delta) {
    if (!(delta > 0.0 && delta < 1.0))
        throw std::invalid_argument("the punctured condition needs delta in (0,1)");
    if (space.full_interval) return std::nullopt;  // a convex set has no gap
    const auto& X = space.grid;
    const double lo = X.front(), hi = X.back();

    auto empty_open = [&X](double a, double b) {
        for (double x : X)
            if (x > a + kOfferTol && x < b - kOfferTol) return false;
        return true;
    };

    for (double a : X) {
        if (a <= kOfferTol) continue;
        double up = a / delta;
        if (up <= hi + kOfferTol && empty_open(a, up))
            return PuncturedWitness{a, GapDirection::Up, a, up};
        double down = delta * a;
        if (down >= lo - kOfferTol && empty_open(down, a))
            return PuncturedWitness{a, GapDirection::Down, down, a};
    }
    return std::nullopt;
}

void OfferDistribution::validate() const {
    if (atoms.empty()) throw std::invalid_argument("offer distribution has no support");
    double sum = 0.0;
    for (auto [x, w] : atoms) {
        if (!(x >= 0.0 && x <= 1.0)) throw std::invalid_argument("offer outside [0,1]");
        if (!(w >= -kProbTol)) throw std::invalid_argument("negative weight");
        sum += w;
    }
    if (std::abs(sum - 1.0) > kProbTol) throw std::invalid_argument("weights must sum to 1");
}

double OfferDistribution::expected_accepted_share(const GeneralProfile& profile) const {
    double v = 0.0;
    for (auto [x, w] : atoms) v += w * x * profile.accept_prob(x);
    return v;
}

double GeneralProfile::accept_prob(double x) const {
    if (const double* p = find_atom(accept_atoms, x)) return *p;
    return x >= accept_all_from - kOfferTol ? 1.0 : 0.0;
}

double GeneralProfile::belief_t1(double x) const {
    if (const double* a = find_atom(belief_atoms, x)) return *a;
    return offpath_belief;
}

const OfferDistribution& GeneralProfile::second_period(double conditioning_offer) const {
    if (const OfferDistribution* d = find_atom(second_by_offer, conditioning_offer)) return *d;
    return second_default;
}

bool GeneralProfile::is_markov() const {
    auto same = [](const OfferDistribution& a, const OfferDistribution& b) {
        if (a.atoms.size() != b.atoms.size()) return false;
        for (std::size_t i = 0; i < a.atoms.size(); ++i)
            if (!near(a.atoms[i].first, b.atoms[i].first) ||
                std::abs(a.atoms[i].second - b.atoms[i].second) > kProbTol)
                return false;
        return true;
    };
    for (const auto& [x, d] : second_by_offer)
        if (!same(d, second_default)) return false;
    return true;
}

double GeneralProfile::immediate_agreement() const {
    double v = 0.0;
    for (auto [x, w] : first.atoms) v += w * accept_prob(x);
    return v;
}

namespace {

// Weight s on the low offer in the deadline mixture, from the respondent's
// exact indifference at x. gamma is the unconditional weight on t = 1.
double solve_low_weight(double x, double xbar, double p_x, double delta) {
    double gamma = 1.0 / (2.0 - p_x);
    if (std::abs(xbar - x / delta) <= 1e-12) return 0.0;  // deadline offer pinned at xbar
    auto f = [&](double s) {
        double cont = s * x * p_x + (1.0 - s) * xbar;
        return gamma * (x - delta * cont) + s * (1.0 - gamma) * delta * x;
    };
    auto r = find_root(f, 0.0, 1.0);
    if (!r) throw std::domain_error("respondent indifference has no solution in [0,1]");
    return r->x;
}

GeneralProfile build_two_point_markov(double x, double xbar, double p_x, double s) {
    GeneralProfile prof;
    prof.first = OfferDistribution::degenerate(x);
    OfferDistribution second;
    if (s > 1e-15) second.atoms.emplace_back(x, s);
    if (1.0 - s > 1e-15) second.atoms.emplace_back(xbar, 1.0 - s);
    prof.second_default = std::move(second);
    prof.accept_atoms[x] = p_x;
    prof.accept_all_from = xbar;
    double gamma = 1.0 / (2.0 - p_x);
    prof.belief_atoms[x] = gamma / (gamma + s * (1.0 - gamma));
    prof.belief_atoms[xbar] = 0.0;
    prof.offpath_belief = 1.0;
    return prof;
}

}  // namespace

GeneralProfile construct_delay_mpe(const OfferSpace& space, double delta) {
    auto witness = is_delta_punctured(space, delta);
    if (!witness) throw std::domain_error("offer space is not delta-punctured");
    const auto& X = space.grid;

    // Reduce a down-gap witness to an up-gap anchor.
    double x;
    if (witness->direction == GapDirection::Up) {
        x = witness->anchor;
    } else {
        x = X.front();
        for (double v : X)
            if (v <= delta * witness->anchor + kOfferTol) x = v;
    }

    double xbar = x;
    if (x <= kOfferTol) {
        for (double v : X)
            if (v > x + kOfferTol) { xbar = v; break; }
    } else {
        for (double v : X)
            if (v >= x / delta - kOfferTol) { xbar = v; break; }
    }
    if (near(xbar, x)) throw std::domain_error("no deadline offer above the gap");

    double p_x = (1.0 - xbar) / (1.0 - x);
    double s = solve_low_weight(x, xbar, p_x, delta);
    return build_two_point_markov(x, xbar, p_x, s);
}

CompleteSpaceOutcome complete_space_outcome(double delta, double folk_offer) {
    if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("delta must lie in (0,1]");
    if (!(folk_offer >= 0.0 && folk_offer <= 1.0))
        throw std::invalid_argument("folk offer must lie in [0,1]");
    CompleteSpaceOutcome out;
    out.unique = delta < 1.0;
    out.folk_offer = out.unique ? 0.0 : folk_offer;

    GeneralProfile prof;
    prof.first = OfferDistribution::degenerate(out.folk_offer);
    prof.second_default = OfferDistribution::degenerate(out.folk_offer);
    prof.accept_all_from = out.folk_offer;
    prof.belief_atoms[out.folk_offer] = 1.0;  // accepted immediately, so t = 1 for sure
    prof.offpath_belief = 1.0;
    out.profile = std::move(prof);
    return out;
}

GeneralProfile construct_patient_delay(double x_lo, double x_hi) {
    if (!(x_lo >= 0.0 && x_lo < x_hi && x_hi <= 1.0))
        throw std::invalid_argument("need 0 <= x_lo < x_hi <= 1");
    double p_lo = (1.0 - x_hi) / (1.0 - x_lo);
    double gamma = 1.0 / (2.0 - p_lo);

    // Weight q on x_hi in the on-path deadline mixture: respondent indifference
    // at x_lo under delta = 1, with the acceptance probability inside the
    // continuation integral.
    auto f = [&](double q) {
        double alpha = gamma / (gamma + (1.0 - q) * (1.0 - gamma));
        return alpha * (q * x_hi + (1.0 - q) * x_lo * p_lo) - x_lo;
    };
    auto r = find_root(f, 0.0, 1.0);
    if (!r) throw std::domain_error("no interior mixing weight");
    double q = r->x;

    GeneralProfile prof;
    prof.first = OfferDistribution::degenerate(x_lo);
    OfferDistribution onpath;
    if (1.0 - q > 1e-15) onpath.atoms.emplace_back(x_lo, 1.0 - q);
    if (q > 1e-15) onpath.atoms.emplace_back(x_hi, q);
    prof.second_by_offer[x_lo] = std::move(onpath);
    prof.second_default = OfferDistribution::degenerate(x_hi);  // off-path self-punishment
    prof.accept_atoms[x_lo] = p_lo;
    prof.accept_all_from = x_hi;
    prof.belief_atoms[x_lo] = gamma / (gamma + (1.0 - q) * (1.0 - gamma));
    prof.belief_atoms[x_hi] = 0.0;
    prof.offpath_belief = 1.0;
    return prof;
}

GeneralCheckReport general_ahpe_check(const GeneralProfile& profile, const OfferSpace& space,
                                      double delta, double tol,
                                      const std::vector<double>& extra_grid) {
    if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("delta must lie in (0,1]");
    profile.first.validate();
    profile.second_default.validate();
    for (const auto& [x, d] : profile.second_by_offer) d.validate();

    // Evaluation set: the finite grid, or support plus caller grid.
    std::set<double> eval;
    auto add = [&eval](double x) {
        for (double e : eval)
            if (near(e, x)) return;
        eval.insert(x);
    };
    if (space.full_interval) {
        for (auto [x, w] : profile.first.atoms) add(x);
        for (auto [x, w] : profile.second_default.atoms) add(x);
        for (const auto& [k, d] : profile.second_by_offer) {
            add(k);
            for (auto [x, w] : d.atoms) add(x);
        }
        for (double x : extra_grid) add(x);
    } else {
        for (double x : space.grid) add(x);
    }

    GeneralCheckReport rep;
    rep.tolerance = tol;
    rep.markov = profile.is_markov();
    rep.immediate_agreement = profile.immediate_agreement();
    rep.delay = 1.0 - rep.immediate_agreement;

    // Deadline sequential rationality: every second-period support point must
    // attain the best acceptance-weighted share, under every conditioning offer.
    double best2 = 0.0;
    for (double x : eval) best2 = std::max(best2, (1.0 - x) * profile.accept_prob(x));
    auto check_second = [&](const OfferDistribution& d) {
        for (auto [x, w] : d.atoms) {
            if (w <= 1e-15) continue;
            rep.max_t2_gain = std::max(rep.max_t2_gain, best2 - (1.0 - x) * profile.accept_prob(x));
        }
    };
    check_second(profile.second_default);
    for (const auto& [k, d] : profile.second_by_offer) check_second(d);

    // Opening-offer sequential rationality.
    auto payoff1 = [&](double x) {
        double p = profile.accept_prob(x);
        const OfferDistribution& d = profile.second_period(x);
        double cont = 0.0;
        for (auto [y, w] : d.atoms) cont += w * (1.0 - y) * profile.accept_prob(y);
        return p * (1.0 - x) + delta * (1.0 - p) * cont;
    };
    double best1 = 0.0;
    for (double x : eval) best1 = std::max(best1, payoff1(x));
    for (auto [x, w] : profile.first.atoms)
        if (w > 1e-15) rep.max_t1_gain = std::max(rep.max_t1_gain, best1 - payoff1(x));

    // Bayes consistency of the belief rule on-path.
    double rho = 0.0;  // reach probability of t = 2
    for (auto [x, w] : profile.first.atoms) rho += w * (1.0 - profile.accept_prob(x));
    double gamma = 1.0 / (1.0 + rho);
    for (double x : eval) {
        double w1 = 0.0;
        for (auto [y, w] : profile.first.atoms)
            if (near(y, x)) w1 += w;
        double w2 = 0.0;
        if (rho > 0.0) {
            for (auto [y, wy] : profile.first.atoms) {
                const OfferDistribution& d = profile.second_period(y);
                for (auto [z, wz] : d.atoms)
                    if (near(z, x)) w2 += wy * (1.0 - profile.accept_prob(y)) * wz;
            }
            w2 /= rho;
        }
        double num = gamma * w1, den = gamma * w1 + (1.0 - gamma) * w2;
        if (den <= 0.0) continue;  // off-path: any belief is consistent
        rep.belief_error = std::max(rep.belief_error, std::abs(profile.belief_t1(x) - num / den));
    }

    // Respondent optimality at every offer: the program is linear in the
    // acceptance probability with slope alpha (x - delta C) + (1-alpha) delta x.
    for (double x : eval) {
        double alpha = profile.belief_t1(x);
        double cont = profile.second_period(x).expected_accepted_share(profile);
        double slope = alpha * (x - delta * cont) + (1.0 - alpha) * delta * x;
        rep.max_respondent_residual =
            std::max(rep.max_respondent_residual, kkt_residual(slope, profile.accept_prob(x)));
    }

    rep.pass = rep.max_t2_gain <= tol && rep.max_t1_gain <= tol &&
               rep.max_respondent_residual <= tol && rep.belief_error <= std::max(tol, 1e-9);
    return rep;
}

StructuralReport structural_diagnostics(const GeneralProfile& profile) {
    StructuralReport rep;
    auto support = [](const OfferDistribution& d) {
        std::vector<double> s;
        for (auto [x, w] : d.atoms)
            if (w > 1e-12) s.push_back(x);
        std::sort(s.begin(), s.end());
        return s;
    };
    auto s1 = support(profile.first);
    auto s2 = support(profile.second_default);
    auto contains = [](const std::vector<double>& v, double x) {
        return std::any_of(v.begin(), v.end(), [x](double y) { return near(y, x); });
    };

    rep.sso_ok = true;
    for (double a : s2)
        for (double b : s1) {
            if (!contains(s2, std::max(a, b)) || !contains(s1, std::min(a, b))) {
                rep.sso_ok = false;
                rep.offending = {b, a};
            }
        }

    double xlo2 = s2.front(), xhi2 = s2.back();
    if (s2.size() == 1) {
        if (s1.size() == 2 && near(s1.back(), xlo2) && s1.front() < xlo2) rep.matched_case = 1;
        else if (s1.size() == 1) rep.matched_case = 2;
    } else if (s2.size() == 2) {
        if (s1.size() == 1 && near(s1.front(), xlo2)) rep.matched_case = 3;
        else if (s1.size() == 2 && near(s1.back(), xlo2) && s1.front() < xlo2) rep.matched_case = 4;
    }
    (void)xhi2;

    // Interior acceptance probabilities must rise with the offer on-path.
    std::vector<double> onpath = s1;
    for (double x : s2)
        if (!contains(onpath, x)) onpath.push_back(x);
    std::sort(onpath.begin(), onpath.end());
    rep.monotone_ok = true;
    double prev_x = -1.0, prev_p = -1.0;
    for (double x : onpath) {
        double p = profile.accept_prob(x);
        if (p <= 1e-12 || p >= 1.0 - 1e-12) continue;
        if (prev_p >= 0.0 && p <= prev_p) {
            rep.monotone_ok = false;
            rep.offending = {prev_x, x};
        }
        prev_x = x;
        prev_p = p;
    }
    return rep;
}

std::optional<GeneralProfile> markov_delay_search(const OfferSpace& space, double delta,
                                                  double tol) {
    if (space.full_interval)
        throw std::invalid_argument("search requires a finite offer space");
    if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("search requires delta in (0,1)");
    const auto& X = space.grid;

    auto verified = [&](const GeneralProfile& prof) {
        auto rep = general_ahpe_check(prof, space, delta, tol);
        return rep.pass && rep.delay > 1e-9;
    };

    // Deadline mixes over {u, w}; opening offer at u. Covers the punctured
    // construction for every candidate pair, not just gap witnesses.
    for (std::size_t i = 0; i < X.size(); ++i) {
        for (std::size_t j = i + 1; j < X.size(); ++j) {
            double u = X[i], w = X[j];
            if (u >= 1.0) continue;
            double p_u = (1.0 - w) / (1.0 - u);
            double s;
            try {
                s = solve_low_weight(u, w, p_u, delta);
            } catch (const std::domain_error&) {
                continue;
            }
            GeneralProfile prof = build_two_point_markov(u, w, p_u, s);
            if (u <= kOfferTol && s >= 1.0 - 1e-12) {
                // Degenerate zero-anchor family: everything above zero is accepted.
                double minpos = 0.0;
                for (double v : X)
                    if (v > kOfferTol) { minpos = v; break; }
                if (minpos > 0.0) {
                    for (double p0 : {1.0 - minpos, 1.0 - 0.75 * minpos, 1.0 - 0.5 * minpos}) {
                        if (!(p0 > 0.0 && p0 < 1.0)) continue;
                        GeneralProfile zp;
                        zp.first = OfferDistribution::degenerate(0.0);
                        zp.second_default = OfferDistribution::degenerate(0.0);
                        zp.accept_atoms[0.0] = p0;
                        zp.accept_all_from = minpos;
                        zp.belief_atoms[0.0] = 1.0 / (2.0 - p0);
                        zp.offpath_belief = 1.0;
                        if (verified(zp)) return zp;
                    }
                }
            }
            if (verified(prof)) return prof;
        }
    }

    // Degenerate deadline offer w with a lower opening offer x1 = delta w,
    // either alone or mixed with w in the opening period.
    for (double w : X) {
        for (double x1 : X) {
            if (x1 >= w || std::abs(x1 - delta * w) > 1e-9) continue;
            // Opening offer alone.
            for (double p1 : {0.25, 0.5, 0.75, 0.9}) {
                GeneralProfile prof;
                prof.first = OfferDistribution::degenerate(x1);
                prof.second_default = OfferDistribution::degenerate(w);
                prof.accept_atoms[x1] = p1;
                prof.accept_all_from = w;
                prof.belief_atoms[x1] = 1.0;
                prof.belief_atoms[w] = 0.0;
                prof.offpath_belief = 1.0;
                if (verified(prof)) return prof;
            }
            // Opening mixture over {x1, w}: the opening acceptance probability
            // keeps the proposer exactly indifferent between the two.
            double denom = (1.0 - x1) - delta * (1.0 - w);
            if (denom <= 0.0) continue;
            double p1 = (1.0 - w) * (1.0 - delta) / denom;
            if (!(p1 > 0.0 && p1 < 1.0)) continue;
            for (double r : {0.25, 0.5, 0.75}) {
                GeneralProfile prof;
                prof.first.atoms = {{x1, r}, {w, 1.0 - r}};
                prof.second_default = OfferDistribution::degenerate(w);
                prof.accept_atoms[x1] = p1;
                prof.accept_all_from = w;
                prof.belief_atoms[x1] = 1.0;
                double rho = r * (1.0 - p1);
                double gamma = 1.0 / (1.0 + rho);
                double a_w = gamma * (1.0 - r) / (gamma * (1.0 - r) + (1.0 - gamma) * 1.0);
                prof.belief_atoms[w] = a_w;
                prof.offpath_belief = 1.0;
                if (verified(prof)) return prof;
            }
        }
    }

    // Opening mixture {x1, u} against a deadline mixture {u, w}. The deadline
    // weight is pinned by the indifference of the revealed opening offer.
    for (std::size_t i = 0; i < X.size(); ++i) {
        for (std::size_t j = i + 1; j < X.size(); ++j) {
            double u = X[i], w = X[j];
            if (u >= 1.0) continue;
            double p_u = (1.0 - w) / (1.0 - u);
            for (double x1 : X) {
                if (x1 >= u) continue;
                double denomS = w - u * p_u;
                if (denomS <= 0.0) continue;
                double s = (w - x1 / delta) / denomS;
                if (!(s >= 0.0 && s <= 1.0)) continue;
                double v2 = 1.0 - w;
                double denomP = (1.0 - x1) - delta * v2;
                if (denomP <= 0.0) continue;
                double p1 = (v2 * (1.0 + delta * (1.0 - p_u)) - delta * v2) / denomP;
                if (!(p1 > 0.0 && p1 < 1.0)) continue;
                for (double r : {0.25, 0.5, 0.75}) {
                    GeneralProfile prof;
                    prof.first.atoms = {{x1, r}, {u, 1.0 - r}};
                    OfferDistribution d;
                    if (s > 1e-15) d.atoms.emplace_back(u, s);
                    if (1.0 - s > 1e-15) d.atoms.emplace_back(w, 1.0 - s);
                    prof.second_default = std::move(d);
                    prof.accept_atoms[x1] = p1;
                    prof.accept_atoms[u] = p_u;
                    prof.accept_all_from = w;
                    prof.belief_atoms[x1] = 1.0;
                    double rho = r * (1.0 - p1) + (1.0 - r) * (1.0 - p_u);
                    double gamma = 1.0 / (1.0 + rho);
                    double w2u = rho > 0.0 ? s : 0.0;
                    prof.belief_atoms[u] =
                        gamma * (1.0 - r) / (gamma * (1.0 - r) + (1.0 - gamma) * w2u);
                    prof.belief_atoms[w] = 0.0;
                    prof.offpath_belief = 1.0;
                    if (verified(prof)) return prof;
                }
            }
        }
    }

    return std::nullopt;
}

}  // namespace bargain
