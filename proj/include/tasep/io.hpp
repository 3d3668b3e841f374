#pragma once

// JSON and CSV forms of distributions, tallies and laws.
//
//   distribution: {"N": 3, "composition": [1,1,1],
//                  "entries": [{"state": "1*0", "p": "1/6"}, ...]}
//   tally:        {"1*0": 1234, ...}
//   law:          {"1": 0.56, ...}    (keys are decimal values)

#include "tasep/montecarlo.hpp"
#include "tasep/stationary.hpp"

#include <json.hpp>

#include <sstream>
#include <string>

namespace tasep {

using Json = nlohmann::ordered_json;

inline Json to_json(const ExactDistribution& d)
{
    Json entries = Json::array();
    for (const auto& [s, p] : d.entries) entries.push_back({{"state", s}, {"p", fraction_string(p)}});
    return {{"N", d.n}, {"composition", d.composition}, {"entries", std::move(entries)}};
}

inline ExactDistribution distribution_from_json(const Json& j)
{
    ExactDistribution d;
    d.n = j.at("N").get<std::size_t>();
    d.composition = j.at("composition").get<Composition>();
    for (const auto& e : j.at("entries")) {
        d.entries.emplace(e.at("state").get<std::string>(), parse_fraction(e.at("p").get<std::string>()));
    }
    return d;
}

inline Json to_json(const Tally& t)
{
    Json j = Json::object();
    for (const auto& [s, c] : t) j[s] = c;
    return j;
}

inline Json to_json(const Histogram& h)
{
    Json j = Json::object();
    for (const auto& [d, c] : h) j[std::to_string(d)] = c;
    return j;
}

inline Json to_json(const HittingLaw& law)
{
    Json probs = Json::object();
    for (std::size_t t = 1; t < law.prob.size(); ++t) probs[std::to_string(t)] = law.prob[t];
    return {{"law", std::move(probs)}, {"residual", law.residual}};
}

inline std::string to_csv(const ExactDistribution& d)
{
    std::ostringstream out;
    out << "state,p,p_float\n";
    for (const auto& [s, p] : d.entries) out << s << ',' << fraction_string(p) << ',' << p.get_d() << '\n';
    return out.str();
}

inline std::string to_csv(const Tally& t)
{
    std::ostringstream out;
    out << "state,count\n";
    for (const auto& [s, c] : t) out << s << ',' << c << '\n';
    return out.str();
}

inline std::string to_csv(const Histogram& h, const char* key = "value")
{
    std::ostringstream out;
    out << key << ",count\n";
    for (const auto& [d, c] : h) out << d << ',' << c << '\n';
    return out.str();
}

} // namespace tasep
