#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "bargain/general.hpp"
#include "bargain/types.hpp"

// Seeded path simulation with counter-based per-run random streams: run i
// draws from a splitmix64 sequence keyed by hash(seed, i), so results are
// bit-identical regardless of scheduling or thread count.

namespace bargain {

// splitmix64 (Steele, Lea, Flood 2014; Vigna's public-domain reference).
struct SplitMix64 {
    std::uint64_t state;

    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    double next_double() {  // uniform in [0,1) with 53 random bits
        return static_cast<double>(next() >> 11) * 0x1.0p-53;
    }
    static std::uint64_t mix(std::uint64_t a, std::uint64_t b) {
        SplitMix64 g{a ^ (0x9E3779B97F4A7C15ULL * (b + 1))};
        return g.next();
    }
};

struct SimConfig {
    std::uint64_t runs = 0;
    std::uint64_t seed = 0;
    GameParams params;

    void validate() const {
        params.validate();
        if (runs < 1) throw std::invalid_argument("SimConfig: runs must be >= 1");
    }
};

struct SimStats {
    std::vector<std::uint64_t> trade_count;  // deals at period t = 1..T
    std::uint64_t no_deal_count = 0;
    std::uint64_t runs = 0;
    double proposer_payoff_mean = 0.0;   // discounted
    double respondent_payoff_mean = 0.0;
    double mean_date_given_deal = 0.0;

    std::vector<double> frequencies() const;  // trade_1..T then no-deal
    std::string histogram_csv() const;        // date,count,frequency rows
};

// Baseline-game simulation of (sigma, p_G). Deterministic in (seed, runs);
// thread count never changes the counts.
SimStats simulate(const ProposerPolicy& sigma, double accept_greedy, const SimConfig& config,
                  int threads = 1);

// Two-period general-profile simulation (dates only span 1, 2, no-deal).
SimStats simulate_general(const GeneralProfile& profile, const SimConfig& config, int threads = 1);

struct ComparisonResult {
    double max_standardized = 0.0;  // max |empirical - analytic| / binomial s.e.
    int worst_cell = -1;            // index into the frequency layout
    bool pass = false;              // threshold 4 standard errors
};

// Cell-wise comparison of the empirical histogram against an analytic
// distribution laid out as trade_1..T followed by the no-deal mass.
ComparisonResult compare(const SimStats& stats, std::span<const double> analytic);

}  // namespace bargain
