#pragma once

#include <array>
#include <span>

#include "leagueopt/league.hpp"

namespace leagueopt {

struct ClassificationMetrics {
    double accuracy = 0.0;
    double precision = 0.0;  // support-weighted average over the three classes
    double recall = 0.0;
    double f1 = 0.0;
};

struct ConfusionMatrix {
    // counts[truth][prediction], class order: home win, draw, away win
    std::array<std::array<long long, 3>, 3> counts{};

    void add(MatchOutcome truth, MatchOutcome predicted);
    long long total() const;
};

ClassificationMetrics weighted_metrics(const ConfusionMatrix&);

}  // namespace leagueopt
