// Stable text and JSON serializations of search, classification and
// verification reports. Field order is fixed and no volatile data (timings,
// hostnames) is included, so equal runs serialize identically.
#pragma once

#include <string>

#include "json.hpp"

#include "epat/classify.hpp"
#include "epat/search.hpp"

namespace epat {

std::string to_text(const SearchReport& rep);
std::string to_text(const ClassificationReport& rep);
std::string to_text(const TheoremReport& rep);

nlohmann::ordered_json to_json(const SearchReport& rep);
nlohmann::ordered_json to_json(const ClassificationReport& rep);
nlohmann::ordered_json to_json(const TheoremReport& rep);

}  // namespace epat
