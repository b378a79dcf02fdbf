#include "bargain/montecarlo.hpp"

#include <cmath>
#include <sstream>
#include <thread>

namespace bargain {

std::vector<double> SimStats::frequencies() const {
    std::vector<double> f;
    f.reserve(trade_count.size() + 1);
    for (auto c : trade_count) f.push_back(static_cast<double>(c) / static_cast<double>(runs));
    f.push_back(static_cast<double>(no_deal_count) / static_cast<double>(runs));
    return f;
}

std::string SimStats::histogram_csv() const {
    std::ostringstream os;
    os.precision(12);
    os << "date,count,frequency\n";
    for (std::size_t t = 0; t < trade_count.size(); ++t)
        os << (t + 1) << "," << trade_count[t] << ","
           << static_cast<double>(trade_count[t]) / static_cast<double>(runs) << "\n";
    os << "no_deal," << no_deal_count << ","
       << static_cast<double>(no_deal_count) / static_cast<double>(runs) << "\n";
    return os.str();
}

namespace {

struct Tally {
    std::vector<std::uint64_t> trade;
    std::uint64_t no_deal = 0;
    double proposer_sum = 0.0;
    double respondent_sum = 0.0;
    std::uint64_t date_sum = 0;

    explicit Tally(std::size_t periods) : trade(periods, 0) {}
    void merge(const Tally& o) {
        for (std::size_t i = 0; i < trade.size(); ++i) trade[i] += o.trade[i];
        no_deal += o.no_deal;
        proposer_sum += o.proposer_sum;
        respondent_sum += o.respondent_sum;
        date_sum += o.date_sum;
    }
};

template <typename RunFn>
SimStats run_parallel(const SimConfig& config, std::size_t periods, int threads, RunFn run_one) {
    config.validate();
    if (threads < 1) threads = 1;
    std::vector<Tally> parts(static_cast<std::size_t>(threads), Tally(periods));
    auto worker = [&](int w) {
        Tally& t = parts[static_cast<std::size_t>(w)];
        for (std::uint64_t i = static_cast<std::uint64_t>(w); i < config.runs;
             i += static_cast<std::uint64_t>(threads)) {
            SplitMix64 rng{SplitMix64::mix(config.seed, i)};
            run_one(rng, t);
        }
    };
    if (threads == 1) {
        worker(0);
    } else {
        std::vector<std::thread> pool;
        for (int w = 0; w < threads; ++w) pool.emplace_back(worker, w);
        for (auto& th : pool) th.join();
    }
    Tally total(periods);
    for (const Tally& t : parts) total.merge(t);

    SimStats s;
    s.trade_count = total.trade;
    s.no_deal_count = total.no_deal;
    s.runs = config.runs;
    s.proposer_payoff_mean = total.proposer_sum / static_cast<double>(config.runs);
    s.respondent_payoff_mean = total.respondent_sum / static_cast<double>(config.runs);
    std::uint64_t deals = config.runs - total.no_deal;
    s.mean_date_given_deal =
        deals > 0 ? static_cast<double>(total.date_sum) / static_cast<double>(deals) : 0.0;
    return s;
}

}  // namespace

SimStats simulate(const ProposerPolicy& sigma, double accept_greedy, const SimConfig& config,
                  int threads) {
    sigma.validate();
    RespondentPolicy{accept_greedy, 1.0}.validate();
    if (sigma.horizon() != config.params.horizon)
        throw std::invalid_argument("policy horizon does not match parameters");
    const int T = config.params.horizon;
    const double V = config.params.pie, delta = config.params.discount;

    return run_parallel(config, static_cast<std::size_t>(T), threads, [&](SplitMix64& rng, Tally& t) {
        double disc = 1.0;
        for (int period = 1; period <= T; ++period) {
            bool greedy = rng.next_double() < sigma.greedy[static_cast<std::size_t>(period - 1)];
            bool accepted = greedy ? rng.next_double() < accept_greedy : true;
            if (accepted) {
                t.trade[static_cast<std::size_t>(period - 1)] += 1;
                t.date_sum += static_cast<std::uint64_t>(period);
                t.proposer_sum += disc * (greedy ? 3.0 * V / 4.0 : V / 2.0);
                t.respondent_sum += disc * (greedy ? V / 4.0 : V / 2.0);
                return;
            }
            disc *= delta;
        }
        t.no_deal += 1;
    });
}

SimStats simulate_general(const GeneralProfile& profile, const SimConfig& config, int threads) {
    profile.first.validate();
    const double V = config.params.pie, delta = config.params.discount;

    auto draw = [](const OfferDistribution& d, double u) {
        double acc = 0.0;
        for (auto [x, w] : d.atoms) {
            acc += w;
            if (u < acc) return x;
        }
        return d.atoms.back().first;
    };

    return run_parallel(config, 2, threads, [&](SplitMix64& rng, Tally& t) {
        double x1 = draw(profile.first, rng.next_double());
        if (rng.next_double() < profile.accept_prob(x1)) {
            t.trade[0] += 1;
            t.date_sum += 1;
            t.proposer_sum += (1.0 - x1) * V;
            t.respondent_sum += x1 * V;
            return;
        }
        double x2 = draw(profile.second_period(x1), rng.next_double());
        if (rng.next_double() < profile.accept_prob(x2)) {
            t.trade[1] += 1;
            t.date_sum += 2;
            t.proposer_sum += delta * (1.0 - x2) * V;
            t.respondent_sum += delta * x2 * V;
            return;
        }
        t.no_deal += 1;
    });
}

ComparisonResult compare(const SimStats& stats, std::span<const double> analytic) {
    if (stats.runs < 1) throw std::invalid_argument("no runs to compare");
    auto freq = stats.frequencies();
    if (freq.size() != analytic.size()) throw std::invalid_argument("support mismatch");

    ComparisonResult r;
    for (std::size_t i = 0; i < freq.size(); ++i) {
        double p = analytic[i];
        double se = std::sqrt(p * (1.0 - p) / static_cast<double>(stats.runs));
        double z;
        if (se > 0.0) z = std::abs(freq[i] - p) / se;
        else z = freq[i] == p ? 0.0 : 1e300;  // degenerate cell must match exactly
        if (z > r.max_standardized) {
            r.max_standardized = z;
            r.worst_cell = static_cast<int>(i);
        }
    }
    r.pass = r.max_standardized <= 4.0;
    return r;
}

}  // namespace bargain
