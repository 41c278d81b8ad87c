#pragma once

#include "qdx/assemble.hpp"

#include <json.hpp>

#include <string>

namespace qdx {

using Json = nlohmann::ordered_json;

std::string json_line(const Json& j); // single-line dump

Json rat_json(const Rat& r);          // {"num": "...", "den": "..."} strings
Json series_json(const SeriesExpr& s);
Json prime_json(const WeightedRing& R, const MonPrime& q);
Json additivity_json(const WeightedRing& R, const AdditivityReport& rep);
Json main_report_json(const MainReport& rep);
Json correspondence_json(const CorrespondenceReport& rep);
Json gate_json(const GateReport& rep);

std::string main_report_human(const MainReport& rep);
std::string additivity_human(const WeightedRing& R, const AdditivityReport& rep);
std::string correspondence_human(const CorrespondenceReport& rep);

} // namespace qdx
