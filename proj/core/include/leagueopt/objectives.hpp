#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "leagueopt/season_sim.hpp"

namespace leagueopt {

// Season objectives as disjoint bands of final ranks, ordered from most to
// least ambitious. Ranks below the last band (the relegation region in the
// 20-team catalog) belong to no objective: that mass is the residual.
enum class ObjectiveId : int {
    WinLeague = 0,
    ChampionsLeague = 1,
    EuropaLeague = 2,
    TopHalf = 3,
    AvoidRelegation = 4,
};

inline constexpr int kObjectiveCount = 5;

const char* objective_code(ObjectiveId);   // "o1".."o5"
const char* objective_label(ObjectiveId);
ObjectiveId objective_from_code(const std::string&);

struct ObjectiveBand {
    ObjectiveId id;
    int lo = 1;  // best rank in the band (inclusive)
    int hi = 1;  // worst rank in the band (inclusive)
};

// The 20-team catalog: o1=[1,1], o2=[2,4], o3=[5,7], o4=[8,10], o5=[11,17];
// ranks 18-20 are the relegation region outside every band. Other league
// sizes need explicit bands.
std::vector<ObjectiveBand> default_bands(int n_teams = 20);
std::vector<ObjectiveBand> make_bands(std::span<const std::pair<int, int>> intervals, int n_teams);

struct ObjectiveProbabilities {
    std::array<double, kObjectiveCount> p{};
    double residual = 0.0;  // mass on ranks outside every band

    double total() const {
        double t = residual;
        for (double v : p) t += v;
        return t;
    }
};

// Band mass from a rank-probability row (index i = rank i+1).
ObjectiveProbabilities band_probabilities(std::span<const double> rank_probabilities,
                                          std::span<const ObjectiveBand> bands);
ObjectiveProbabilities objective_probabilities(const PositionDistribution&, int team,
                                               std::span<const ObjectiveBand> bands);

struct MapObjective {
    ObjectiveId objective;
    bool at_risk = false;  // set when every band has zero mass (all mass in
                           // the relegation region); the least ambitious band
                           // is reported so the weekly trace stays total
};

// Maximum-a-posteriori band; exact ties go to the more ambitious band.
MapObjective map_objective(const ObjectiveProbabilities&);

// Finishing at or better than the band's worst rank meets the objective.
bool objective_met(ObjectiveId, int final_rank, std::span<const ObjectiveBand> bands);

// Percentage of teams whose week-n objective was met by the final table,
// per week. With the default 20-team bands the ceiling is 85%: the three
// relegated teams can never meet an objective.
std::vector<double> objective_accuracy_curve(
    const std::vector<std::vector<ObjectiveId>>& weekly_objectives,  // [week][team]
    std::span<const int> final_ranks, std::span<const ObjectiveBand> bands);

struct ObjectiveTraceRow {
    int week = 0;
    std::string team_id;
    MapObjective objective;
    ObjectiveProbabilities probs;
};

// CSV: week,team_id,objective,p_o1,p_o2,p_o3,p_o4,p_o5,residual
void write_objective_trace_csv(const std::string& path, std::span<const ObjectiveTraceRow>);

}  // namespace leagueopt
