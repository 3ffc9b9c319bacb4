#pragma once

#include <string>

#include "exhaustive_oracle.hpp"
#include "json.hpp"
#include "scalar_roots.hpp"
#include "stability_bounds.hpp"

namespace phistab {

using Json = nlohmann::ordered_json;

// Shortest representation that round-trips; empty for NaN.
std::string format_double(double value);

Json to_json(const BoundResult& result);
Json to_json(const SZDistribution& distribution);
Json to_json(const VerificationReport& report);
Json to_json(const RootResult& result);
Json to_json(const LemmaCheckReport& report);

}  // namespace phistab
