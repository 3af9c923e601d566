#include "skt/scenario.hpp"

#include <algorithm>
#include <cmath>

#include "skt/errors.hpp"

namespace skt {

const char* scenario_name(Scenario s) {
    switch (s) {
        case Scenario::Extinction: return "Extinction";
        case Scenario::UnboundedGrowth: return "UnboundedGrowth";
        case Scenario::Coexistence: return "Coexistence";
    }
    return "?";
}

double case1_gamma(const SktParams& p) {
    return p.a1 + p.b2 - p.a2 * (1.0 + p.c1 - p.b2 * p.d12);
}

ScenarioReport classify_scenario(const SktParams& p) {
    if (!is_system23_shape(p))
        throw ShapeError("classify_scenario requires the canonical b1=d2=0 frame");
    if (p.a2 < 0.0)
        throw ShapeError("classify_scenario requires a2 >= 0");

    ScenarioReport r;
    r.gamma = case1_gamma(p);
    r.threshold = -p.a2;
    if (p.a2 * p.b2 != 0.0)
        r.d12_special = (p.a2 * p.c1 - p.a1 - p.b2) / (p.a2 * p.b2);

    const double margin = r.gamma + p.a2;
    const double tie = kScenarioTieEps * std::max({1.0, std::abs(r.gamma), std::abs(p.a2)});
    if (margin < -tie)
        r.classification = Scenario::Extinction;
    else if (margin > tie)
        r.classification = Scenario::UnboundedGrowth;
    else
        r.classification = Scenario::Coexistence;
    return r;
}

}  // namespace skt
