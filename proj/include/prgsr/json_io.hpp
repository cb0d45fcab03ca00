#pragma once

#include "prgsr/ambiguity.hpp"
#include "prgsr/prospect.hpp"
#include "prgsr/worst_case.hpp"

#include "json.hpp"

namespace prgsr {

// JSON schemas (see README for the field-by-field contract):
//   Prospect        {"support":[...],"probs":[...]}
//   ValueFunction   {"breakpoints":[...],"slopes":[...],"intercepts":[...]}
//   Weighting       {"breakpoints":[...],"slopes":[...],"p_star_index":k}
//   AmbiguityModel  {"pairwise":[...],"ce":[...],"ce_weighting_minus":...,
//                    "ce_weighting_plus":...,"domain":...,"ball_minus":...,
//                    "ball_plus":...}
// Only the constant test-function envelope ("gtilde":"one") has a JSON
// representation; custom envelopes are a library-level feature.

nlohmann::json to_json(const Prospect& p);
Prospect prospect_from_json(const nlohmann::json& j);

nlohmann::json to_json(const ValueFunction& v);
ValueFunction value_function_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Weighting& w);
Weighting weighting_from_json(const nlohmann::json& j);

nlohmann::json to_json(const PairwiseRecord& r);
PairwiseRecord pairwise_from_json(const nlohmann::json& j);

nlohmann::json to_json(const CertaintyEquivalentRecord& r);
CertaintyEquivalentRecord ce_from_json(const nlohmann::json& j);

nlohmann::json to_json(const AmbiguityModel& m);
AmbiguityModel model_from_json(const nlohmann::json& j);

nlohmann::json to_json(const WorstCaseTuple& t);
WorstCaseTuple tuple_from_json(const nlohmann::json& j);

} // namespace prgsr
