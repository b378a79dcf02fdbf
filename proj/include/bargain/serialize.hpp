#pragma once

#include <string>

#include <json.hpp>

#include "bargain/alt.hpp"
#include "bargain/equilibria.hpp"
#include "bargain/exante.hpp"
#include "bargain/general.hpp"
#include "bargain/montecarlo.hpp"
#include "bargain/oracle.hpp"

// JSON artifact layer. Every emitted object carries schema_version for
// forward compatibility.

namespace bargain {

inline constexpr int kSchemaVersion = 1;

nlohmann::json to_json(const EquilibriumProfile& p);
nlohmann::json to_json(const std::vector<EquilibriumProfile>& ps, const GameParams& params);
nlohmann::json to_json(const DelayStats& d);
nlohmann::json to_json(const DeviationReport& r);
nlohmann::json to_json(const OutcomeDistribution& d);
nlohmann::json to_json(const GeneralProfile& p);
nlohmann::json to_json(const GeneralCheckReport& r);
nlohmann::json to_json(const PuncturedWitness& w);
nlohmann::json to_json(const ProposerAbsentProfile& p);
nlohmann::json to_json(const TwoAbsentProfile& p);
nlohmann::json to_json(const SimStats& s);
nlohmann::json to_json(const EquivalenceReport& r);
nlohmann::json to_json(const SequentialCertificate& c);
nlohmann::json to_json(const GridSearchResult& r);

GeneralProfile general_profile_from_json(const nlohmann::json& j);

// Baseline profile file: {"sigma": [...], "p_g": x, "alpha_greedy": [...]?, "alpha_fair": [...]?}
struct BaselineProfileFile {
    ProposerPolicy sigma;
    double accept_greedy = 1.0;
    std::optional<std::vector<double>> alpha_greedy;
    std::optional<std::vector<double>> alpha_fair;
};
BaselineProfileFile baseline_profile_from_json(const nlohmann::json& j);
nlohmann::json to_json(const BaselineProfileFile& p);

// Offer-space file: a JSON numeric array, or whitespace/newline-separated numbers.
OfferSpace load_offer_space(const std::string& path);

nlohmann::json load_json_file(const std::string& path);

}  // namespace bargain
