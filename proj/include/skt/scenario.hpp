#pragma once

#include <optional>

#include "skt/params.hpp"

namespace skt {

enum class Scenario { Extinction, UnboundedGrowth, Coexistence };

const char* scenario_name(Scenario s);

struct ScenarioReport {
    double gamma = 0;      // a1 + b2 - a2 (1 + c1 - b2 d12)
    double threshold = 0;  // -a2
    std::optional<double> d12_special;  // (a2 c1 - a1 - b2)/(a2 b2) when a2 b2 != 0
    Scenario classification = Scenario::Coexistence;
};

double case1_gamma(const SktParams& p);

/// Classifies the long-time competition outcome by the sign of gamma + a2.
/// Ties are resolved within a relative tolerance of 1e-12 (exact equality is
/// a measure-zero event in floating point). Requires the canonical b1=d2=0
/// frame with d1 = d21 = c2 = 1 and a2 >= 0; throws ShapeError otherwise.
ScenarioReport classify_scenario(const SktParams& p);

inline constexpr double kScenarioTieEps = 1e-12;

}  // namespace skt
