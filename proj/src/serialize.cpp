#include "bargain/serialize.hpp"

#include <fstream>
#include <sstream>

namespace bargain {

using nlohmann::json;

namespace {

json versioned(const char* kind) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["kind"] = kind;
    return j;
}

json opt_vec(const std::optional<std::vector<double>>& v) {
    if (!v) return "off-path";
    return *v;
}

const char* kind_name(EquilibriumKind k) {
    switch (k) {
        case EquilibriumKind::Greedy: return "greedy";
        case EquilibriumKind::Fair: return "fair";
        case EquilibriumKind::Mixing: return "mixing";
    }
    return "?";
}

const char* alt_name(AltKind k) {
    switch (k) {
        case AltKind::Greedy: return "greedy";
        case AltKind::Fair: return "fair";
        case AltKind::Mixed: return "mixed";
    }
    return "?";
}

json distribution_json(const OfferDistribution& d) {
    json arr = json::array();
    for (auto [x, w] : d.atoms) arr.push_back(json{{"offer", x}, {"weight", w}});
    return arr;
}

OfferDistribution distribution_from(const json& j) {
    OfferDistribution d;
    for (const auto& e : j) d.atoms.emplace_back(e.at("offer").get<double>(), e.at("weight").get<double>());
    d.validate();
    return d;
}

}  // namespace

json to_json(const EquilibriumProfile& p) {
    json j = versioned("equilibrium_profile");
    j["class"] = kind_name(p.kind);
    j["sigma"] = p.sigma.greedy;
    j["p_g"] = p.accept_greedy;
    j["alpha_greedy"] = opt_vec(p.alpha_greedy);
    j["alpha_fair"] = opt_vec(p.alpha_fair);
    if (p.kind == EquilibriumKind::Mixing) j["residual"] = p.residual;
    if (p.kind == EquilibriumKind::Fair) j["p_g_bound"] = p.fair_accept_bound;
    return j;
}

json to_json(const std::vector<EquilibriumProfile>& ps, const GameParams& params) {
    json j = versioned("equilibria");
    j["pie"] = params.pie;
    j["horizon"] = params.horizon;
    j["discount"] = params.discount;
    json arr = json::array();
    for (const auto& p : ps) arr.push_back(to_json(p));
    j["profiles"] = arr;
    return j;
}

json to_json(const DelayStats& d) {
    json j = versioned("delay_stats");
    j["pr_trade_at"] = d.trade_at;
    j["pr_no_deal"] = d.no_deal;
    j["expected_date_given_deal"] = d.expected_date_given_deal;
    return j;
}

json to_json(const DeviationReport& r) {
    json j = versioned("deviation_report");
    j["max_proposer_gain"] = r.max_proposer_gain;
    j["max_respondent_gain"] = r.max_respondent_gain;
    j["max_proposer_slope"] = r.max_proposer_slope;
    j["max_respondent_slope"] = r.max_respondent_slope;
    j["belief_consistency_error"] = r.belief_consistency_error;
    j["tolerance"] = r.tolerance;
    j["pass"] = r.pass;
    return j;
}

json to_json(const OutcomeDistribution& d) {
    json j = versioned("outcome_distribution");
    j["trade_greedy"] = d.trade_greedy;
    j["trade_fair"] = d.trade_fair;
    j["pr_no_deal"] = d.no_deal;
    j["proposer_payoff"] = d.proposer_payoff;
    j["respondent_payoff"] = d.respondent_payoff;
    j["expected_date_given_deal"] = d.expected_date_given_deal();
    return j;
}

json to_json(const GeneralProfile& p) {
    json j = versioned("general_profile");
    j["sigma1"] = distribution_json(p.first);
    json s2;
    s2["default"] = distribution_json(p.second_default);
    json overrides = json::array();
    for (const auto& [x, d] : p.second_by_offer)
        overrides.push_back(json{{"after_offer", x}, {"distribution", distribution_json(d)}});
    s2["overrides"] = overrides;
    j["sigma2"] = s2;
    json accept;
    accept["atoms"] = json::array();
    for (auto [x, v] : p.accept_atoms) accept["atoms"].push_back(json{{"offer", x}, {"prob", v}});
    accept["accept_all_from"] = p.accept_all_from;
    j["accept"] = accept;
    json belief;
    belief["atoms"] = json::array();
    for (auto [x, v] : p.belief_atoms) belief["atoms"].push_back(json{{"offer", x}, {"alpha", v}});
    belief["offpath"] = p.offpath_belief;
    j["belief"] = belief;
    j["markov"] = p.is_markov();
    return j;
}

GeneralProfile general_profile_from_json(const json& j) {
    GeneralProfile p;
    p.first = distribution_from(j.at("sigma1"));
    p.second_default = distribution_from(j.at("sigma2").at("default"));
    for (const auto& e : j.at("sigma2").at("overrides"))
        p.second_by_offer[e.at("after_offer").get<double>()] =
            distribution_from(e.at("distribution"));
    for (const auto& e : j.at("accept").at("atoms"))
        p.accept_atoms[e.at("offer").get<double>()] = e.at("prob").get<double>();
    p.accept_all_from = j.at("accept").at("accept_all_from").get<double>();
    for (const auto& e : j.at("belief").at("atoms"))
        p.belief_atoms[e.at("offer").get<double>()] = e.at("alpha").get<double>();
    p.offpath_belief = j.at("belief").at("offpath").get<double>();
    return p;
}

json to_json(const GeneralCheckReport& r) {
    json j = versioned("general_check_report");
    j["max_t2_gain"] = r.max_t2_gain;
    j["max_t1_gain"] = r.max_t1_gain;
    j["max_respondent_residual"] = r.max_respondent_residual;
    j["belief_error"] = r.belief_error;
    j["immediate_agreement"] = r.immediate_agreement;
    j["delay"] = r.delay;
    j["markov"] = r.markov;
    j["tolerance"] = r.tolerance;
    j["pass"] = r.pass;
    return j;
}

json to_json(const PuncturedWitness& w) {
    json j = versioned("punctured_witness");
    j["anchor"] = w.anchor;
    j["direction"] = w.direction == GapDirection::Up ? "up" : "down";
    j["gap"] = json::array({w.gap_lo, w.gap_hi});
    return j;
}

json to_json(const ProposerAbsentProfile& p) {
    json j = versioned("proposer_absent_profile");
    j["class"] = alt_name(p.kind);
    j["phi"] = p.greedy_prob;
    j["q1"] = p.accept_first;
    j["q2"] = p.accept_last;
    j["alpha"] = p.belief_t1;
    j["delay_probability"] = p.delay_probability;
    return j;
}

json to_json(const TwoAbsentProfile& p) {
    json j = versioned("two_absent_profile");
    j["class"] = alt_name(p.kind);
    j["sigma"] = p.greedy_prob;
    j["p"] = p.accept_prob;
    j["gamma"] = p.gamma;
    j["alpha"] = p.belief_t1;
    if (p.kind == AltKind::Fair) j["p_bound"] = p.fair_accept_bound;
    if (p.kind == AltKind::Mixed) {
        j["residual_proposer"] = p.residual_proposer;
        j["residual_respondent"] = p.residual_respondent;
    }
    return j;
}

json to_json(const SimStats& s) {
    json j = versioned("sim_stats");
    j["runs"] = s.runs;
    j["trade_count"] = s.trade_count;
    j["no_deal_count"] = s.no_deal_count;
    j["frequencies"] = s.frequencies();
    j["proposer_payoff_mean"] = s.proposer_payoff_mean;
    j["respondent_payoff_mean"] = s.respondent_payoff_mean;
    j["mean_date_given_deal"] = s.mean_date_given_deal;
    return j;
}

json to_json(const EquivalenceReport& r) {
    json j = versioned("equivalence_report");
    j["mixing_exists"] = r.mixing_exists;
    j["sigma_T"] = r.sigma_last;
    j["stationary_p"] = r.stationary_p;
    j["second_difference"] = r.second_difference;
    j["concave_at_indifference"] = r.concave_at_indifference;
    j["global_argmax"] = r.global_argmax;
    j["global_matches"] = r.global_matches;
    j["pass"] = r.pass;
    return j;
}

json to_json(const SequentialCertificate& c) {
    json j = versioned("sequential_certificate");
    j["certified"] = c.certified;
    j["trivial"] = c.trivial;
    j["alpha1_gap"] = c.alpha1_gap;
    j["max_late_alpha"] = c.max_late_alpha;
    j["monotone_tail"] = c.monotone_tail;
    j["n_max"] = c.n_max;
    return j;
}

json to_json(const GridSearchResult& r) {
    json j = versioned("grid_search");
    j["step"] = r.step;
    j["tolerance"] = r.tolerance;
    json arr = json::array();
    for (const auto& c : r.clusters) {
        const char* name = c.label == ClusterLabel::Greedy   ? "greedy"
                           : c.label == ClusterLabel::Fair   ? "fair"
                           : c.label == ClusterLabel::Mixing ? "mixing"
                                                             : "unclassified";
        arr.push_back(json{{"label", name},
                           {"sigma_T_centroid", c.sigma_last_centroid},
                           {"p_centroid", c.accept_centroid},
                           {"cells", c.cells}});
    }
    j["clusters"] = arr;
    return j;
}

BaselineProfileFile baseline_profile_from_json(const json& j) {
    BaselineProfileFile p;
    p.sigma.greedy = j.at("sigma").get<std::vector<double>>();
    p.accept_greedy = j.at("p_g").get<double>();
    if (j.contains("alpha_greedy") && !j.at("alpha_greedy").is_string())
        p.alpha_greedy = j.at("alpha_greedy").get<std::vector<double>>();
    if (j.contains("alpha_fair") && !j.at("alpha_fair").is_string())
        p.alpha_fair = j.at("alpha_fair").get<std::vector<double>>();
    return p;
}

json to_json(const BaselineProfileFile& p) {
    json j = versioned("baseline_profile");
    j["sigma"] = p.sigma.greedy;
    j["p_g"] = p.accept_greedy;
    j["alpha_greedy"] = opt_vec(p.alpha_greedy);
    j["alpha_fair"] = opt_vec(p.alpha_fair);
    return j;
}

OfferSpace load_offer_space(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open offer file: " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    std::size_t pos = text.find_first_not_of(" \t\r\n");
    if (pos == std::string::npos) throw std::invalid_argument("offer file is empty: " + path);

    std::vector<double> offers;
    if (text[pos] == '[') {
        json j = json::parse(text);
        for (const auto& e : j) offers.push_back(e.get<double>());
    } else {
        std::istringstream is(text);
        double x;
        while (is >> x) offers.push_back(x);
        if (!is.eof()) throw std::invalid_argument("malformed offer file: " + path);
    }
    return OfferSpace::finite(std::move(offers));
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open file: " + path);
    return json::parse(in);
}

}  // namespace bargain
