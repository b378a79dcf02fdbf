#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

#include "bargain/equilibria.hpp"
#include "bargain/serialize.hpp"

// End-to-end checks of the command-line binary: artifacts, exit codes, and
// determinism of the JSON output. The binary path comes from the build.

#ifndef BARGAIN_CLI
#error "BARGAIN_CLI must point at the CLI binary"
#endif

namespace {

struct RunResult {
    int exit_code;
    std::string out;
};

RunResult run(const std::string& args) {
    std::string out_path = "/tmp/bargain_cli_out.txt";
    std::string cmd = std::string(BARGAIN_CLI) + " " + args + " > " + out_path + " 2>/dev/null";
    int rc = std::system(cmd.c_str());
    std::ifstream in(out_path);
    std::stringstream buf;
    buf << in.rdbuf();
    std::remove(out_path.c_str());
    return RunResult{WEXITSTATUS(rc), buf.str()};
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path);
    out << content;
}

}  // namespace

TEST_CASE("threshold subcommand") {
    auto r = run("threshold --T 2");
    CHECK(r.exit_code == 0);
    CHECK(std::abs(std::stod(r.out) - 0.5) <= 1e-6);

    r = run("threshold --T 3");
    CHECK(r.exit_code == 0);
    CHECK(std::abs(std::stod(r.out) - 0.886001) <= 1e-5);
}

TEST_CASE("solve-baseline artifacts and determinism") {
    auto r = run("solve-baseline --T 2 --delta 0.4");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"greedy\"") != std::string::npos);
    CHECK(r.out.find("\"fair\"") == std::string::npos);
    CHECK(r.out.find("\"mixing\"") == std::string::npos);

    auto again = run("solve-baseline --T 2 --delta 0.4");
    CHECK(again.out == r.out);  // byte-identical given identical flags

    r = run("solve-baseline --T 2 --delta 0.9");
    CHECK(r.out.find("\"mixing\"") != std::string::npos);
    CHECK(r.out.find("0.53333") != std::string::npos);

    // the CLI is a thin adapter: its artifact equals the library's
    bargain::GameParams params{1.0, 2, 0.9};
    auto direct = bargain::to_json(bargain::enumerate_equilibria(params), params);
    CHECK(nlohmann::json::parse(r.out) == direct);
}

TEST_CASE("punctured exit codes") {
    write_file("/tmp/bargain_cli_grid.json", "[0.25, 0.5]");
    auto r = run("punctured --offers /tmp/bargain_cli_grid.json --delta 0.6");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"anchor\": 0.25") != std::string::npos);

    r = run("punctured --offers /tmp/bargain_cli_grid.json --delta 0.45");
    CHECK(r.exit_code == 2);  // a negative answer, not a failure

    r = run("punctured --offers /nonexistent.json --delta 0.6");
    CHECK(r.exit_code == 1);

    r = run("punctured --offers /tmp/bargain_cli_grid.json");
    CHECK(r.exit_code == 1);  // missing required flag

    // penny grid from the minimum-unit-of-account example
    std::string penny;
    for (int k = 1; k <= 100; ++k) penny += std::to_string(0.01 * k) + "\n";
    write_file("/tmp/bargain_cli_penny.txt", penny);
    r = run("punctured --offers /tmp/bargain_cli_penny.txt --delta 0.5");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("0.01") != std::string::npos);
    std::remove("/tmp/bargain_cli_penny.txt");
}

TEST_CASE("construct and verify round trip") {
    auto r = run("construct-mpe --offers /tmp/bargain_cli_grid.json --delta 0.6");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"pass\": true") != std::string::npos);
    CHECK(r.out.find("\"markov\": true") != std::string::npos);

    r = run("construct-patient --xl 0.25 --xh 0.5");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"pass\": true") != std::string::npos);
    CHECK(r.out.find("\"markov\": false") != std::string::npos);

    write_file("/tmp/bargain_cli_profile.json",
               "{\"sigma\": [1.0, 0.5333333333333333], \"p_g\": 0.6666666666666666}");
    r = run("verify --profile /tmp/bargain_cli_profile.json --T 2 --delta 0.9");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"pass\": true") != std::string::npos);

    write_file("/tmp/bargain_cli_bad.json", "{\"sigma\": [1.0, 0.9], \"p_g\": 0.6666666666666666}");
    r = run("verify --profile /tmp/bargain_cli_bad.json --T 2 --delta 0.9");
    CHECK(r.exit_code == 2);

    std::remove("/tmp/bargain_cli_profile.json");
    std::remove("/tmp/bargain_cli_bad.json");
    std::remove("/tmp/bargain_cli_grid.json");
}

TEST_CASE("sweep csv") {
    auto r = run("sweep --param delta --from 0.9 --to 0.95 --step 0.01 --T 2");
    CHECK(r.exit_code == 0);
    CHECK(r.out.rfind("param,sigma_T,pr_trade_1,pr_trade_2,pr_no_deal,e_date\n", 0) == 0);
    int lines = 0;
    for (char c : r.out)
        if (c == '\n') ++lines;
    CHECK(lines == 7);  // header + 6 grid rows
}

TEST_CASE("alt and simulate subcommands") {
    auto r = run("alt proposer-absent --delta 0.6");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"mixed\"") != std::string::npos);

    r = run("alt two-absent --delta 0.75");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("0.2928932") != std::string::npos);

    write_file("/tmp/bargain_cli_sim.json", "{\"sigma\": [1.0, 1.0], \"p_g\": 1.0}");
    r = run("simulate --profile /tmp/bargain_cli_sim.json --runs 1000 --seed 7 --delta 0.9");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"no_deal_count\": 0") != std::string::npos);
    auto again = run("simulate --profile /tmp/bargain_cli_sim.json --runs 1000 --seed 7 --delta 0.9 --threads 4");
    CHECK(again.out == r.out);  // scheduling cannot change the artifact
    r = run("simulate --profile /tmp/bargain_cli_sim.json --runs 1000 --seed 7 --delta 0.9 --csv");
    CHECK(r.out.rfind("date,count,frequency\n", 0) == 0);
    std::remove("/tmp/bargain_cli_sim.json");

    r = run("sequential-certify --T 2 --delta 0.9");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("\"certified\": true") != std::string::npos);

    r = run("sequential-certify --T 2 --delta 0.4");
    CHECK(r.exit_code == 2);

    r = run("exante-certify --T 2 --delta 0.4");
    CHECK(r.exit_code == 2);

    r = run("delay-stats --T 2 --delta 0.9");
    CHECK(r.exit_code == 0);
    CHECK(r.out.find("0.059259") != std::string::npos);

    r = run("no-such-command --T 2");
    CHECK(r.exit_code == 1);
}
