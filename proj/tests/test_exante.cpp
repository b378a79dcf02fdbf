#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "bargain/equilibria.hpp"
#include "bargain/exante.hpp"
#include "bargain/montecarlo.hpp"

using namespace bargain;

TEST_CASE("planning objective values") {
    GameParams params{1.0, 3, 0.9};
    CHECK(exante_value(1.0, 1.0, params) == doctest::Approx(0.25));
    CHECK(exante_value(0.0, 0.0, GameParams{1.0, 3, 1.0}) == doctest::Approx(0.5));
    CHECK(exante_value(0.0, 0.0, GameParams{1.0, 4, 0.8}) ==
          doctest::Approx(std::pow(0.8, 3) * 0.5).epsilon(1e-12));

    // linearity in the deadline mixing weight
    SplitMix64 rng{7};
    for (int rep = 0; rep < 50; ++rep) {
        double s = rng.next_double(), p = rng.next_double();
        GameParams pr{1.0, 2 + static_cast<int>(rng.next() % 4), 0.2 + 0.8 * rng.next_double()};
        double lhs = exante_value(s, p, pr);
        double rhs = s * exante_value(1.0, p, pr) + (1.0 - s) * exante_value(0.0, p, pr);
        CHECK(lhs == doctest::Approx(rhs).epsilon(1e-12));
    }
}

TEST_CASE("best response") {
    // the two-term objective at T=2, delta=1 has its stationary point at 2/3
    auto br = exante_best_response(0.6, GameParams{1.0, 2, 1.0});
    CHECK_FALSE(br.all_optimal);
    CHECK(std::abs(br.argmax - 2.0 / 3.0) <= 1e-6);

    br = exante_best_response(1.0, GameParams{1.0, 3, 0.9});
    CHECK_FALSE(br.all_optimal);
    CHECK(br.argmax == doctest::Approx(1.0).epsilon(1e-9));

    br = exante_best_response(0.0, GameParams{1.0, 3, 0.9});
    CHECK(br.all_optimal);
    CHECK(br.value == doctest::Approx(0.5));
}

TEST_CASE("local concavity near the indifference point at patient discounting") {
    // concavity is a neighborhood property: at delta = 1 and T = 4 the
    // objective turns convex again above p = 7/9
    for (int T : {2, 3, 4}) {
        GameParams params{1.0, T, 1.0};
        auto root = solve_mixing(params);
        REQUIRE(root.has_value());
        for (double p = 0.58; p <= 0.75; p += 1e-3)
            CHECK(exante_second_difference(*root, p, params) <= 1e-9);
    }
}

TEST_CASE("equivalence certification") {
    auto rep = certify_equivalence(GameParams{1.0, 2, 0.9});
    CHECK(rep.mixing_exists);
    CHECK(rep.pass);
    CHECK(std::abs(rep.stationary_p - 2.0 / 3.0) <= 1e-6);
    CHECK(rep.global_matches);
    CHECK(rep.sigma_last == doctest::Approx(8.0 / 15.0).epsilon(1e-10));

    rep = certify_equivalence(GameParams{1.0, 3, 1.0});
    CHECK(rep.pass);
    CHECK(rep.sigma_last == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
    CHECK(rep.global_matches);

    rep = certify_equivalence(GameParams{1.0, 2, 0.4});
    CHECK_FALSE(rep.mixing_exists);
    CHECK_FALSE(rep.pass);

    // near the existence threshold the planning optimum can sit at the
    // always-accept corner even though 2/3 is a stationary local max;
    // the report surfaces the mismatch rather than hiding it
    rep = certify_equivalence(GameParams{1.0, 3, 0.896001});
    CHECK(rep.pass);
    CHECK(rep.concave_at_indifference);
    CHECK_FALSE(rep.global_matches);
    CHECK(rep.global_argmax == doctest::Approx(1.0).epsilon(1e-6));

    rep = certify_equivalence(GameParams{1.0, 3, 0.95});
    CHECK(rep.pass);
    CHECK(rep.global_matches);
}

TEST_CASE("indifference root and planning stationarity coincide above threshold") {
    for (double delta : {0.55, 0.7, 0.85, 1.0}) {
        GameParams params{1.0, 2, delta};
        auto rep = certify_equivalence(params);
        REQUIRE(rep.mixing_exists);
        CHECK(std::abs(rep.stationary_p - 2.0 / 3.0) <= 1e-6);
    }
}
