// Command-line surface for the bargaining toolkit. Thin adapters only: every
// subcommand parses flags, calls one library entry point, and prints a JSON
// or CSV artifact. Exit codes: 0 success, 1 validation/usage error, 2 a
// legitimate negative answer (no equilibrium, no witness, check failed).

#include <CLI11.hpp>

#include <iostream>
#include <string>

#include "bargain/alt.hpp"
#include "bargain/baseline.hpp"
#include "bargain/equilibria.hpp"
#include "bargain/exante.hpp"
#include "bargain/general.hpp"
#include "bargain/montecarlo.hpp"
#include "bargain/oracle.hpp"
#include "bargain/serialize.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kUsageError = 1;
constexpr int kNegative = 2;

void print(const nlohmann::json& j) { std::cout << j.dump(2) << "\n"; }

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Finite-horizon bargaining with absentminded players"};
    app.require_subcommand(1);

    double delta = 0.9, pie = 1.0;
    int horizon = 2;
    int exit_code = kOk;

    // solve-baseline
    auto* solve = app.add_subcommand("solve-baseline", "Enumerate all equilibria");
    solve->add_option("--T", horizon, "Horizon")->required();
    solve->add_option("--delta", delta, "Discount factor")->required();
    solve->add_option("--V", pie, "Pie size");
    solve->callback([&] {
        bargain::GameParams params{pie, horizon, delta};
        print(bargain::to_json(bargain::enumerate_equilibria(params), params));
    });

    // threshold
    auto* thr = app.add_subcommand("threshold", "Mixing-existence discount threshold");
    thr->add_option("--T", horizon, "Horizon")->required();
    thr->callback([&] { std::cout.precision(9); std::cout << bargain::mixing_threshold(horizon) << "\n"; });

    // delay-stats
    auto* ds = app.add_subcommand("delay-stats", "Trade-date distribution of the mixing profile");
    ds->add_option("--T", horizon, "Horizon")->required();
    ds->add_option("--delta", delta, "Discount factor")->required();
    ds->callback([&] {
        bargain::GameParams params{1.0, horizon, delta};
        auto root = bargain::mixing_equilibrium_exists(params) ? bargain::solve_mixing(params)
                                                               : std::nullopt;
        if (!root) {
            std::cerr << "no mixing equilibrium at these parameters\n";
            exit_code = kNegative;
            return;
        }
        auto j = bargain::to_json(bargain::delay_stats(*root, 2.0 / 3.0, horizon));
        j["sigma_T"] = *root;
        print(j);
    });

    // sweep
    auto* sw = app.add_subcommand("sweep", "Comparative statics table (CSV on stdout)");
    std::string param_name;
    double from = 0.9, to = 1.0, step = 0.01;
    sw->add_option("--param", param_name, "delta or T")->required()->check(CLI::IsMember({"delta", "T"}));
    sw->add_option("--from", from, "Grid start")->required();
    sw->add_option("--to", to, "Grid end")->required();
    sw->add_option("--step", step, "Grid step")->required();
    sw->add_option("--T", horizon, "Horizon (delta sweep)");
    sw->add_option("--delta", delta, "Discount factor (T sweep)");
    sw->add_option("--V", pie, "Pie size");
    sw->callback([&] {
        if (!(step > 0.0) || to < from) throw CLI::ValidationError("--step must be positive and --to >= --from");
        std::vector<double> grid;
        for (double g = from; g <= to + 1e-12; g += step) grid.push_back(std::min(g, to));
        bargain::GameParams base{pie, horizon, delta};
        auto parameter = param_name == "delta" ? bargain::SweepParameter::Delta
                                               : bargain::SweepParameter::Horizon;
        std::cout << bargain::sweep(base, parameter, grid).to_csv();
    });

    // exante-certify
    auto* ec = app.add_subcommand("exante-certify", "Planning-optimality certificate for the mixing profile");
    ec->add_option("--T", horizon, "Horizon")->required();
    ec->add_option("--delta", delta, "Discount factor")->required();
    ec->callback([&] {
        auto rep = bargain::certify_equivalence(bargain::GameParams{1.0, horizon, delta});
        print(bargain::to_json(rep));
        if (!rep.mixing_exists) exit_code = kNegative;
    });

    // punctured
    auto* pu = app.add_subcommand("punctured", "Test an offer file for a delta-sized gap");
    std::string offers_path;
    pu->add_option("--offers", offers_path, "Offer file (JSON array or one number per line)")->required();
    pu->add_option("--delta", delta, "Discount factor")->required();
    pu->callback([&] {
        auto space = bargain::load_offer_space(offers_path);
        auto w = bargain::is_delta_punctured(space, delta);
        if (!w) {
            std::cerr << "offer space is not punctured at delta=" << delta << "\n";
            exit_code = kNegative;
            return;
        }
        print(bargain::to_json(*w));
    });

    // construct-mpe
    auto* cm = app.add_subcommand("construct-mpe", "Markov delay profile from a punctured offer file");
    cm->add_option("--offers", offers_path, "Offer file")->required();
    cm->add_option("--delta", delta, "Discount factor")->required();
    cm->callback([&] {
        auto space = bargain::load_offer_space(offers_path);
        if (!bargain::is_delta_punctured(space, delta)) {
            std::cerr << "offer space is not punctured at delta=" << delta << "\n";
            exit_code = kNegative;
            return;
        }
        auto prof = bargain::construct_delay_mpe(space, delta);
        auto j = bargain::to_json(prof);
        j["check"] = bargain::to_json(bargain::general_ahpe_check(prof, space, delta));
        print(j);
    });

    // construct-patient
    auto* cp = app.add_subcommand("construct-patient", "Patient (delta=1) delay profile on two offers");
    double xl = 0.25, xh = 0.5;
    cp->add_option("--xl", xl, "Opening offer")->required();
    cp->add_option("--xh", xh, "High deadline offer")->required();
    cp->callback([&] {
        auto prof = bargain::construct_patient_delay(xl, xh);
        auto j = bargain::to_json(prof);
        std::vector<double> grid;
        for (int k = 0; k <= 20; ++k) grid.push_back(0.05 * k);
        j["check"] = bargain::to_json(
            bargain::general_ahpe_check(prof, bargain::OfferSpace::full(), 1.0, bargain::kAhpeTol, grid));
        print(j);
    });

    // verify
    auto* vf = app.add_subcommand("verify", "Deviation check for a baseline profile file");
    std::string profile_path;
    vf->add_option("--profile", profile_path, "Profile JSON file")->required();
    vf->add_option("--T", horizon, "Horizon")->required();
    vf->add_option("--delta", delta, "Discount factor")->required();
    vf->add_option("--V", pie, "Pie size");
    vf->callback([&] {
        auto p = bargain::baseline_profile_from_json(bargain::load_json_file(profile_path));
        if (p.sigma.horizon() != horizon) throw CLI::ValidationError("profile horizon does not match --T");
        auto rep = bargain::ahpe_check(p.sigma, p.accept_greedy, p.alpha_greedy, p.alpha_fair,
                                       bargain::GameParams{pie, horizon, delta});
        print(bargain::to_json(rep));
        if (!rep.pass) exit_code = kNegative;
    });

    // alt
    auto* alt = app.add_subcommand("alt", "Alternative bargaining protocols");
    alt->require_subcommand(1);
    auto* pa = alt->add_subcommand("proposer-absent", "Absentminded proposer, cognizant respondent");
    pa->add_option("--delta", delta, "Discount factor")->required();
    pa->callback([&] {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& p : bargain::proposer_absent_equilibria(delta)) arr.push_back(bargain::to_json(p));
        print(nlohmann::json{{"schema_version", bargain::kSchemaVersion},
                             {"kind", "proposer_absent_equilibria"},
                             {"delta", delta},
                             {"profiles", arr}});
    });
    auto* ta = alt->add_subcommand("two-absent", "Both parties absentminded");
    ta->add_option("--delta", delta, "Discount factor")->required();
    ta->callback([&] {
        nlohmann::json arr = nlohmann::json::array();
        for (const auto& p : bargain::two_absent_equilibria(delta)) arr.push_back(bargain::to_json(p));
        print(nlohmann::json{{"schema_version", bargain::kSchemaVersion},
                             {"kind", "two_absent_equilibria"},
                             {"delta", delta},
                             {"profiles", arr}});
    });

    // simulate
    auto* sim = app.add_subcommand("simulate", "Monte Carlo runs of a profile file");
    std::uint64_t runs = 1000000, seed = 1;
    int threads = 1;
    bool sim_csv = false;
    sim->add_option("--profile", profile_path, "Profile JSON file")->required();
    sim->add_option("--runs", runs, "Number of runs")->required();
    sim->add_option("--seed", seed, "RNG seed")->required();
    sim->add_option("--delta", delta, "Discount factor")->required();
    sim->add_option("--V", pie, "Pie size");
    sim->add_option("--threads", threads, "Worker threads");
    sim->add_flag("--csv", sim_csv, "Print the histogram as CSV instead of JSON");
    sim->callback([&] {
        auto j = bargain::load_json_file(profile_path);
        bargain::SimStats stats;
        if (j.contains("sigma1")) {
            auto prof = bargain::general_profile_from_json(j);
            bargain::SimConfig cfg{runs, seed, bargain::GameParams{pie, 2, delta}};
            stats = bargain::simulate_general(prof, cfg, threads);
        } else {
            auto p = bargain::baseline_profile_from_json(j);
            bargain::SimConfig cfg{runs, seed, bargain::GameParams{pie, p.sigma.horizon(), delta}};
            stats = bargain::simulate(p.sigma, p.accept_greedy, cfg, threads);
        }
        if (sim_csv) std::cout << stats.histogram_csv();
        else print(bargain::to_json(stats));
    });

    // sequential-certify
    auto* sq = app.add_subcommand("sequential-certify", "Tremble certificate for the fair profile");
    std::uint64_t n_max = 1000000;
    sq->add_option("--T", horizon, "Horizon")->required();
    sq->add_option("--delta", delta, "Discount factor")->required();
    sq->add_option("--n-max", n_max, "Largest tremble index");
    sq->callback([&] {
        if (delta < 0.5) {
            std::cerr << "no fair equilibrium below delta = 1/2\n";
            exit_code = kNegative;
            return;
        }
        auto sigma = bargain::ProposerPolicy::constant(horizon, 0.0);
        auto cert = bargain::sequential_certificate(sigma, 0.0, bargain::GameParams{1.0, horizon, delta}, n_max);
        print(bargain::to_json(cert));
        if (!cert.certified) exit_code = kNegative;
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        std::cerr << e.what() << "\n";
        return kUsageError;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kUsageError;
    }
    return exit_code;
}
