#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bargain/general.hpp"
#include "bargain/montecarlo.hpp"

using namespace bargain;

namespace {

OfferSpace penny_grid() {
    std::vector<double> v;
    for (int k = 1; k <= 100; ++k) v.push_back(0.01 * k);
    return OfferSpace::finite(std::move(v));
}

OfferSpace uniform_grid(double eps) {
    std::vector<double> v;
    for (int k = 1; k * eps <= 1.0 + 1e-12; ++k) v.push_back(k * eps);
    return OfferSpace::finite(std::move(v));
}

}  // namespace

TEST_CASE("punctured detection") {
    auto w = is_delta_punctured(penny_grid(), 0.5);
    REQUIRE(w.has_value());
    CHECK(w->anchor == doctest::Approx(0.01));
    CHECK(w->direction == GapDirection::Up);

    CHECK_FALSE(is_delta_punctured(OfferSpace::full(), 0.5).has_value());
    CHECK_FALSE(is_delta_punctured(OfferSpace::full(), 0.99).has_value());

    auto two = OfferSpace::finite({0.25, 0.5});
    w = is_delta_punctured(two, 0.6);
    REQUIRE(w.has_value());
    CHECK(w->anchor == doctest::Approx(0.25));
    CHECK(w->direction == GapDirection::Up);
    CHECK(w->gap_hi == doctest::Approx(0.25 / 0.6).epsilon(1e-12));

    // evenly spaced grids are punctured exactly when delta >= 1/2
    for (double eps : {0.01, 0.05, 0.1}) {
        CHECK(is_delta_punctured(uniform_grid(eps), 0.5).has_value());
        CHECK(is_delta_punctured(uniform_grid(eps), 0.8).has_value());
        CHECK_FALSE(is_delta_punctured(uniform_grid(eps), 0.49).has_value());
    }

    CHECK_THROWS_AS(is_delta_punctured(penny_grid(), 1.0), std::invalid_argument);
    CHECK_THROWS_AS(OfferSpace::finite({}), std::invalid_argument);
    CHECK_THROWS_AS(OfferSpace::finite({-0.1, 0.5}), std::invalid_argument);
}

TEST_CASE("markov delay construction on the worked two-point space") {
    auto space = OfferSpace::finite({0.25, 0.5});
    auto prof = construct_delay_mpe(space, 0.6);

    CHECK(prof.accept_prob(0.25) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    // weight on the low offer solves the indifference exactly (not the
    // printed closed form, which gives 0.15)
    double s = 0.0;
    for (auto [x, w] : prof.second_default.atoms)
        if (x == doctest::Approx(0.25)) s = w;
    CHECK(s == doctest::Approx(0.2).epsilon(1e-10));

    auto rep = general_ahpe_check(prof, space, 0.6);
    CHECK(rep.pass);
    CHECK(rep.markov);
    CHECK(rep.delay == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    // the delay probability (xbar - x)/(1 - x) does not move with delta
    for (double delta : {0.5, 0.55, 0.7}) {
        auto p = construct_delay_mpe(space, delta);
        auto r = general_ahpe_check(p, space, delta);
        CHECK(r.pass);
        CHECK(r.delay == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    }

    CHECK_THROWS_AS(construct_delay_mpe(space, 0.4), std::domain_error);
}

TEST_CASE("markov delay construction, boundary and down-gap cases") {
    // xbar = x/delta exactly: the deadline offer is pinned at xbar
    auto exact = OfferSpace::finite({0.3, 0.6});
    auto prof = construct_delay_mpe(exact, 0.5);
    CHECK(prof.second_default.atoms.size() == 1);
    CHECK(prof.second_default.atoms[0].first == doctest::Approx(0.6));
    CHECK(prof.belief_t1(0.3) == doctest::Approx(1.0));
    auto rep = general_ahpe_check(prof, exact, 0.5);
    CHECK(rep.pass);
    CHECK(rep.delay > 0.0);

    // a down-gap witness reduces to an up-gap anchor
    auto down = OfferSpace::finite({0.1, 0.15, 0.8});
    auto w = is_delta_punctured(down, 0.75);
    REQUIRE(w.has_value());
    auto dprof = construct_delay_mpe(down, 0.75);
    auto drep = general_ahpe_check(dprof, down, 0.75);
    CHECK(drep.pass);
    CHECK(drep.delay > 0.0);
}

TEST_CASE("complete offer space outcomes") {
    auto imp = complete_space_outcome(0.99);
    CHECK(imp.unique);
    CHECK(imp.folk_offer == 0.0);
    std::vector<double> grid;
    for (int k = 0; k <= 10; ++k) grid.push_back(0.1 * k);
    auto rep = general_ahpe_check(imp.profile, OfferSpace::full(), 0.99, 1e-12, grid);
    CHECK(rep.pass);
    CHECK(rep.delay == doctest::Approx(0.0));

    auto folk = complete_space_outcome(1.0, 0.5);
    CHECK_FALSE(folk.unique);
    rep = general_ahpe_check(folk.profile, OfferSpace::full(), 1.0, 1e-12, grid);
    CHECK(rep.pass);
    CHECK(rep.delay == doctest::Approx(0.0));

    auto degenerate = complete_space_outcome(1.0, 0.0);
    rep = general_ahpe_check(degenerate.profile, OfferSpace::full(), 1.0, 1e-12, grid);
    CHECK(rep.pass);
}

TEST_CASE("patient delay construction") {
    auto prof = construct_patient_delay(0.25, 0.5);
    CHECK(prof.accept_prob(0.25) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    double q = 0.0;
    for (auto [x, w] : prof.second_period(0.25).atoms)
        if (x == doctest::Approx(0.5)) q = w;
    CHECK(q == doctest::Approx(0.4).epsilon(1e-9));  // the printed equation would give 0.25

    std::vector<double> grid;
    for (int k = 0; k <= 20; ++k) grid.push_back(0.05 * k);
    auto rep = general_ahpe_check(prof, OfferSpace::full(), 1.0, 1e-9, grid);
    CHECK(rep.pass);
    CHECK_FALSE(rep.markov);
    CHECK(rep.delay == doctest::Approx(1.0 / 3.0).epsilon(1e-12));

    // interior mixing weight everywhere in the admissible wedge
    SplitMix64 rng{11};
    for (int i = 0; i < 40; ++i) {
        double lo = 0.02 + 0.6 * rng.next_double();
        double hi = lo + (0.98 - lo) * (0.1 + 0.9 * rng.next_double());
        auto p = construct_patient_delay(lo, hi);
        double qq = 0.0;
        for (auto [x, w] : p.second_period(lo).atoms)
            if (std::abs(x - hi) < 1e-12) qq = w;
        CHECK(qq > 0.0);
        CHECK(qq < 1.0);
        auto r = general_ahpe_check(p, OfferSpace::full(), 1.0, 1e-9, {0.0, lo / 2, (lo + hi) / 2, 1.0});
        CHECK(r.pass);
    }

    // trivial branch at x_lo = 0
    auto zero = construct_patient_delay(0.0, 1.0);
    CHECK(zero.accept_prob(0.0) == doctest::Approx(0.0));
    CHECK_THROWS_AS(construct_patient_delay(0.5, 0.5), std::invalid_argument);
}

TEST_CASE("checker flags broken profiles") {
    auto space = OfferSpace::finite({0.25, 0.5});
    auto prof = construct_delay_mpe(space, 0.6);
    prof.accept_atoms[0.25] = 0.5;  // wrong acceptance probability
    auto rep = general_ahpe_check(prof, space, 0.6);
    CHECK_FALSE(rep.pass);
}

TEST_CASE("structural diagnostics") {
    auto space = OfferSpace::finite({0.25, 0.5});
    auto prof = construct_delay_mpe(space, 0.6);
    auto diag = structural_diagnostics(prof);
    CHECK(diag.sso_ok);
    CHECK(diag.matched_case == 3);
    CHECK(diag.monotone_ok);

    // reversed supports violate the strong set order
    GeneralProfile bad;
    bad.first = OfferDistribution::degenerate(0.5);
    bad.second_default = OfferDistribution::degenerate(0.25);
    bad.accept_all_from = 0.25;
    auto b = structural_diagnostics(bad);
    CHECK_FALSE(b.sso_ok);
    REQUIRE(b.offending.has_value());

    // equal interior acceptance probabilities at two on-path offers
    GeneralProfile flat;
    flat.first.atoms = {{0.3, 0.5}, {0.4, 0.5}};
    flat.second_default = OfferDistribution::degenerate(0.4);
    flat.accept_atoms[0.3] = 0.5;
    flat.accept_atoms[0.4] = 0.5;
    flat.accept_all_from = 0.9;
    auto f = structural_diagnostics(flat);
    CHECK_FALSE(f.monotone_ok);
}

TEST_CASE("gap condition is equivalent to Markov delay on a randomized corpus") {
    SplitMix64 rng{20250401};
    const double deltas[] = {0.5, 0.6, 0.75, 0.9};
    int punctured_seen = 0, smooth_seen = 0;
    for (int inst = 0; inst < 40; ++inst) {
        double delta = deltas[rng.next() % 4];
        std::vector<double> offers;
        int shape = static_cast<int>(rng.next() % 3);
        if (shape == 0) {  // uniform grid
            double eps = 0.02 + 0.08 * rng.next_double();
            for (int k = 1; k * eps <= 1.0; ++k) offers.push_back(k * eps);
        } else if (shape == 1) {  // perturbed grid
            double eps = 0.05 + 0.05 * rng.next_double();
            for (int k = 1; k * eps <= 1.0; ++k)
                offers.push_back(std::min(1.0, std::max(0.0, k * eps + 0.2 * eps * (rng.next_double() - 0.5))));
        } else {  // sparse random set
            int n = 2 + static_cast<int>(rng.next() % 5);
            for (int k = 0; k < n; ++k) offers.push_back(0.05 + 0.9 * rng.next_double());
        }
        auto space = OfferSpace::finite(std::move(offers));
        auto witness = is_delta_punctured(space, delta);
        if (witness) {
            ++punctured_seen;
            auto prof = construct_delay_mpe(space, delta);
            auto rep = general_ahpe_check(prof, space, delta);
            INFO("instance ", inst, " delta ", delta);
            CHECK(rep.pass);
            CHECK(rep.delay > 0.0);
            // deadline offers dominate opening offers in the strong set order
            auto diag = structural_diagnostics(prof);
            CHECK(diag.sso_ok);
            CHECK((diag.matched_case == 2 || diag.matched_case == 3));
        } else {
            ++smooth_seen;
            auto found = markov_delay_search(space, delta, 1e-6);
            INFO("instance ", inst, " delta ", delta);
            CHECK_FALSE(found.has_value());
        }
    }
    CHECK(punctured_seen > 0);
    CHECK(smooth_seen > 0);
}

TEST_CASE("search recovers delay profiles on punctured spaces") {
    auto space = OfferSpace::finite({0.25, 0.5});
    auto found = markov_delay_search(space, 0.6, 1e-6);
    REQUIRE(found.has_value());
    auto rep = general_ahpe_check(*found, space, 0.6, 1e-6);
    CHECK(rep.pass);
    CHECK(rep.delay > 1e-6);
}
