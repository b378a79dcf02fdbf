#include "bargain/alt.hpp"

#include <cmath>

namespace bargain {

double delta_bar() { return (1.0 + std::sqrt(17.0)) / 8.0; }

std::vector<ProposerAbsentProfile> proposer_absent_equilibria(double delta) {
    if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("delta must lie in (0,1]");
    std::vector<ProposerAbsentProfile> out;

    out.push_back(ProposerAbsentProfile{AltKind::Greedy, 1.0, 1.0, 1.0, 1.0, 0.0});

    // Fair: rejecting a greedy opening offer needs V/4 <= delta V/2.
    if (delta >= 0.5)
        out.push_back(ProposerAbsentProfile{AltKind::Fair, 0.0, 0.0, 1.0, 1.0, 0.0});

    // Mixed: the respondent's period-1 indifference pins phi = 2 - 1/delta;
    // the proposer's indifference (solved for q_1, continuation value
    // K = phi 3V/4 + (1-phi) V/2) admits q_1 >= 0 only up to delta_bar.
    if (delta >= 0.5 && delta <= delta_bar() + 1e-15) {
        double phi = 2.0 - 1.0 / delta;
        double K = phi * 0.75 + (1.0 - phi) * 0.5;
        double num = 0.5 - phi * 0.25 - delta * K;
        double den = 0.75 - phi * 0.25 - delta * K;
        double q1 = num / den;
        if (q1 >= -1e-12 && q1 <= 1.0) {
            q1 = std::max(q1, 0.0);
            double gamma = 1.0 / (1.0 + (1.0 - q1) * phi);
            out.push_back(
                ProposerAbsentProfile{AltKind::Mixed, phi, q1, 1.0, gamma, phi * (1.0 - q1)});
        }
    }
    return out;
}

double two_absent_quadratic(double sigma, double delta) {
    return (1.0 + 4.0 * delta) * sigma * sigma + (1.0 - 12.0 * delta) * sigma + 8.0 * delta - 4.0;
}

std::vector<TwoAbsentProfile> two_absent_equilibria(double delta) {
    if (!(delta > 0.0 && delta <= 1.0)) throw std::invalid_argument("delta must lie in (0,1]");
    std::vector<TwoAbsentProfile> out;

    out.push_back(TwoAbsentProfile{AltKind::Greedy, 1.0, 1.0, 1.0, 1.0, 0.0, 0.0, 0.0});

    if (delta >= 0.5) {
        double bound = (1.0 - delta) / (1.5 - delta);
        // p = 0 member: believing t = 1 makes rejection optimal.
        out.push_back(TwoAbsentProfile{AltKind::Fair, 0.0, 0.0, 1.0, 1.0, bound, 0.0, 0.0});
        if (bound > 0.0)
            // Interior members need exact indifference: V/4 = alpha delta V/2.
            out.push_back(TwoAbsentProfile{AltKind::Fair, 0.0, bound, 1.0, 1.0 / (2.0 * delta),
                                           bound, 0.0, 0.0});

        // Mixing: smaller root of the quadratic, computed cancellation-free.
        double a = 1.0 + 4.0 * delta, b = 1.0 - 12.0 * delta, c = 8.0 * delta - 4.0;
        double disc = b * b - 4.0 * a * c;
        if (disc >= 0.0) {
            double q = -(b - std::sqrt(disc)) / 2.0;  // b < 0 here
            double sigma = c / q;                      // root inside [0,1]
            if (sigma >= -1e-12 && sigma <= 1.0) {
                sigma = std::max(sigma, 0.0);
                double p = 2.0 * (1.0 - sigma) / (4.0 - 3.0 * sigma);
                double gamma = 1.0 / (1.0 + (1.0 - p) * sigma);
                double cont = sigma * p * 0.25 + (1.0 - sigma) * 0.5;
                TwoAbsentProfile m;
                m.kind = AltKind::Mixed;
                m.greedy_prob = sigma;
                m.accept_prob = p;
                m.gamma = gamma;
                m.belief_t1 = gamma;
                m.residual_proposer =
                    p * 0.75 + (1.0 - p) * gamma * delta * (sigma * p * 0.75 + (1.0 - sigma) * 0.5) -
                    0.5;
                m.residual_respondent = 0.25 - gamma * delta * cont;
                out.push_back(m);
            }
        }
    }
    return out;
}

}  // namespace bargain
