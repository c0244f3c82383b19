#pragma once

#include <json.hpp>

#include "krieger/classifier.hpp"
#include "krieger/cocycle.hpp"
#include "krieger/sampling.hpp"

namespace krieger::report {

using Json = nlohmann::ordered_json;

Json to_json(const Real& x);
Json to_json(const SummabilityVerdict& v);
Json to_json(const ClusterReport& r);
Json to_json(const GroupStructure& g);
Json to_json(const Evidence& e);
/// {label, lambda, certificate: {fired, warnings, evidence}}
Json to_json(const TypeVerdict& v);
Json to_json(const Witness& w);
Json to_json(const WitnessSearchResult& r);
Json to_json(const OracleHit& h);
Json to_json(const LatticeResult& l);
Json to_json(const RatioSetEstimate& e);

std::string word_string(const Word& w);

}  // namespace krieger::report
