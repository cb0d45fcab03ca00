#include "prgsr/json_io.hpp"

#include <cmath>
#include <stdexcept>

namespace prgsr {

using nlohmann::json;

json to_json(const Prospect& p) {
    return json{{"support", p.support}, {"probs", p.probs}};
}

Prospect prospect_from_json(const json& j) {
    return make_prospect(j.at("support").get<std::vector<double>>(),
                         j.at("probs").get<std::vector<double>>());
}

json to_json(const ValueFunction& v) {
    return json{{"breakpoints", v.breakpoints()},
                {"slopes", v.slopes()},
                {"intercepts", v.intercepts()}};
}

ValueFunction value_function_from_json(const json& j) {
    ValueFunction v = ValueFunction::from_slopes(
        j.at("breakpoints").get<std::vector<double>>(),
        j.at("slopes").get<std::vector<double>>(), -1.0);
    if (j.contains("intercepts")) {
        const auto given = j.at("intercepts").get<std::vector<double>>();
        if (given.size() != v.intercepts().size())
            throw std::invalid_argument("value function json: intercept count");
        for (std::size_t k = 0; k < given.size(); ++k)
            if (std::abs(given[k] - v.intercepts()[k]) > 1e-6)
                throw std::invalid_argument(
                    "value function json: intercepts inconsistent with v(0)=0");
    }
    return v;
}

json to_json(const Weighting& w) {
    return json{{"breakpoints", w.breakpoints()},
                {"slopes", w.slopes()},
                {"p_star_index", w.inflection()}};
}

Weighting weighting_from_json(const json& j) {
    return Weighting::from_slopes(
        j.at("breakpoints").get<std::vector<double>>(),
        j.at("slopes").get<std::vector<double>>(),
        j.at("p_star_index").get<std::size_t>());
}

json to_json(const PairwiseRecord& r) {
    return json{{"r1", r.r1},
                {"r2", r.r2},
                {"r3", r.r3},
                {"weight", r.weight},
                {"certain_preferred", r.certain_preferred},
                {"lottery_prob", r.lottery_prob}};
}

PairwiseRecord pairwise_from_json(const json& j) {
    PairwiseRecord r;
    r.r1 = j.at("r1").get<double>();
    r.r2 = j.at("r2").get<double>();
    r.r3 = j.at("r3").get<double>();
    r.weight = j.at("weight").get<double>();
    r.certain_preferred = j.at("certain_preferred").get<bool>();
    r.lottery_prob = j.value("lottery_prob", r.weight);
    return r;
}

json to_json(const CertaintyEquivalentRecord& r) {
    return json{{"payoff", r.payoff},
                {"win_prob", r.win_prob},
                {"lower", r.lower},
                {"upper", r.upper}};
}

CertaintyEquivalentRecord ce_from_json(const json& j) {
    CertaintyEquivalentRecord r;
    r.payoff = j.at("payoff").get<double>();
    r.win_prob = j.at("win_prob").get<double>();
    r.lower = j.at("lower").get<double>();
    r.upper = j.at("upper").get<double>();
    return r;
}

namespace {

json ball_to_json(const WeightingBall& b) {
    if (b.gtilde)
        throw std::invalid_argument(
            "json: only the unit test-function envelope is serializable");
    return json{{"center", to_json(b.center)},
                {"radius", b.radius},
                {"gtilde", "one"}};
}

WeightingBall ball_from_json(const json& j) {
    if (j.value("gtilde", "one") != std::string("one"))
        throw std::invalid_argument("json: unknown gtilde tag");
    return WeightingBall{weighting_from_json(j.at("center")),
                         j.at("radius").get<double>(),
                         {}};
}

} // namespace

json to_json(const AmbiguityModel& m) {
    json pairwise = json::array();
    for (const PairwiseRecord& r : m.pairwise) pairwise.push_back(to_json(r));
    json ce = json::array();
    for (const CertaintyEquivalentRecord& r : m.ce) ce.push_back(to_json(r));
    return json{{"pairwise", pairwise},
                {"ce", ce},
                {"ce_weighting_minus", to_json(m.ce_weighting_minus)},
                {"ce_weighting_plus", to_json(m.ce_weighting_plus)},
                {"domain",
                 {{"lo", m.domain.lo},
                  {"hi", m.domain.hi},
                  {"left_value", m.domain.left_value},
                  {"right_value", m.domain.right_value}}},
                {"ball_minus", ball_to_json(m.ball_minus)},
                {"ball_plus", ball_to_json(m.ball_plus)}};
}

AmbiguityModel model_from_json(const json& j) {
    AmbiguityModel m;
    for (const json& r : j.at("pairwise")) m.pairwise.push_back(pairwise_from_json(r));
    for (const json& r : j.at("ce")) m.ce.push_back(ce_from_json(r));
    m.ce_weighting_minus = weighting_from_json(j.at("ce_weighting_minus"));
    m.ce_weighting_plus = weighting_from_json(j.at("ce_weighting_plus"));
    const json& d = j.at("domain");
    m.domain = {d.at("lo").get<double>(), d.at("hi").get<double>(),
                d.at("left_value").get<double>(),
                d.at("right_value").get<double>()};
    m.ball_minus = ball_from_json(j.at("ball_minus"));
    m.ball_plus = ball_from_json(j.at("ball_plus"));
    m.validate();
    return m;
}

json to_json(const WorstCaseTuple& t) {
    return json{{"value", to_json(t.value)},
                {"w_minus", to_json(t.w_minus)},
                {"w_plus", to_json(t.w_plus)}};
}

WorstCaseTuple tuple_from_json(const json& j) {
    return WorstCaseTuple{value_function_from_json(j.at("value")),
                          weighting_from_json(j.at("w_minus")),
                          weighting_from_json(j.at("w_plus"))};
}

} // namespace prgsr
