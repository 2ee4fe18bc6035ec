#include "leagueopt/objectives.hpp"

#include <fstream>
#include <stdexcept>

#include "leagueopt/csv.hpp"

namespace leagueopt {

const char* objective_code(ObjectiveId id) {
    switch (id) {
        case ObjectiveId::WinLeague: return "o1";
        case ObjectiveId::ChampionsLeague: return "o2";
        case ObjectiveId::EuropaLeague: return "o3";
        case ObjectiveId::TopHalf: return "o4";
        case ObjectiveId::AvoidRelegation: return "o5";
    }
    return "?";
}

const char* objective_label(ObjectiveId id) {
    switch (id) {
        case ObjectiveId::WinLeague: return "win_league";
        case ObjectiveId::ChampionsLeague: return "champions_league";
        case ObjectiveId::EuropaLeague: return "europa_league";
        case ObjectiveId::TopHalf: return "top_half";
        case ObjectiveId::AvoidRelegation: return "avoid_relegation";
    }
    return "?";
}

ObjectiveId objective_from_code(const std::string& code) {
    for (int k = 0; k < kObjectiveCount; ++k) {
        ObjectiveId id = static_cast<ObjectiveId>(k);
        if (code == objective_code(id)) return id;
    }
    throw std::invalid_argument("unknown objective code '" + code + "'");
}

std::vector<ObjectiveBand> default_bands(int n_teams) {
    if (n_teams != 20) {
        throw std::invalid_argument(
            "default objective bands are defined for 20-team leagues; pass explicit bands for " +
            std::to_string(n_teams) + " teams");
    }
    return {
        {ObjectiveId::WinLeague, 1, 1},   {ObjectiveId::ChampionsLeague, 2, 4},
        {ObjectiveId::EuropaLeague, 5, 7}, {ObjectiveId::TopHalf, 8, 10},
        {ObjectiveId::AvoidRelegation, 11, 17},
    };
}

std::vector<ObjectiveBand> make_bands(std::span<const std::pair<int, int>> intervals,
                                      int n_teams) {
    if (static_cast<int>(intervals.size()) != kObjectiveCount) {
        throw std::invalid_argument("expected " + std::to_string(kObjectiveCount) + " bands");
    }
    std::vector<ObjectiveBand> bands;
    int prev_hi = 0;
    for (int k = 0; k < kObjectiveCount; ++k) {
        auto [lo, hi] = intervals[static_cast<std::size_t>(k)];
        if (lo < 1 || hi > n_teams || lo > hi || lo <= prev_hi) {
            throw std::invalid_argument("bands must be disjoint, ordered and within 1.." +
                                        std::to_string(n_teams));
        }
        bands.push_back(ObjectiveBand{static_cast<ObjectiveId>(k), lo, hi});
        prev_hi = hi;
    }
    return bands;
}

ObjectiveProbabilities band_probabilities(std::span<const double> rank_probabilities,
                                          std::span<const ObjectiveBand> bands) {
    ObjectiveProbabilities out;
    double assigned = 0.0;
    double total = 0.0;
    for (double v : rank_probabilities) total += v;
    for (const ObjectiveBand& band : bands) {
        if (band.hi > static_cast<int>(rank_probabilities.size())) {
            throw std::invalid_argument("band exceeds the rank row length");
        }
        double mass = 0.0;
        for (int rank = band.lo; rank <= band.hi; ++rank) {
            mass += rank_probabilities[static_cast<std::size_t>(rank - 1)];
        }
        out.p[static_cast<std::size_t>(band.id)] = mass;
        assigned += mass;
    }
    out.residual = total - assigned;
    if (out.residual < 0.0 && out.residual > -1e-12) out.residual = 0.0;
    return out;
}

ObjectiveProbabilities objective_probabilities(const PositionDistribution& d, int team,
                                               std::span<const ObjectiveBand> bands) {
    std::vector<double> row = d.row(team);
    return band_probabilities(row, bands);
}

MapObjective map_objective(const ObjectiveProbabilities& probs) {
    int best = -1;
    double best_p = 0.0;
    for (int k = 0; k < kObjectiveCount; ++k) {
        double v = probs.p[static_cast<std::size_t>(k)];
        if (v > best_p) {
            best_p = v;
            best = k;
        }
    }
    if (best < 0) {
        // Entire mass sits in the relegation region: report the least
        // ambitious objective, flagged.
        return MapObjective{ObjectiveId::AvoidRelegation, true};
    }
    return MapObjective{static_cast<ObjectiveId>(best), false};
}

bool objective_met(ObjectiveId id, int final_rank, std::span<const ObjectiveBand> bands) {
    for (const ObjectiveBand& band : bands) {
        if (band.id == id) return final_rank <= band.hi;
    }
    throw std::invalid_argument("objective not present in the band set");
}

std::vector<double> objective_accuracy_curve(
    const std::vector<std::vector<ObjectiveId>>& weekly_objectives,
    std::span<const int> final_ranks, std::span<const ObjectiveBand> bands) {
    std::vector<double> curve;
    curve.reserve(weekly_objectives.size());
    for (const std::vector<ObjectiveId>& week : weekly_objectives) {
        if (week.size() != final_ranks.size()) {
            throw std::invalid_argument("objective_accuracy_curve: team count mismatch");
        }
        int met = 0;
        for (std::size_t team = 0; team < week.size(); ++team) {
            if (objective_met(week[team], final_ranks[team], bands)) ++met;
        }
        curve.push_back(100.0 * static_cast<double>(met) / static_cast<double>(week.size()));
    }
    return curve;
}

void write_objective_trace_csv(const std::string& path,
                               std::span<const ObjectiveTraceRow> rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "week,team_id,objective,p_o1,p_o2,p_o3,p_o4,p_o5,residual\n";
    for (const ObjectiveTraceRow& row : rows) {
        out << row.week << ',' << row.team_id << ',' << objective_code(row.objective.objective);
        for (int k = 0; k < kObjectiveCount; ++k) {
            out << ',' << format_double(row.probs.p[static_cast<std::size_t>(k)], 12);
        }
        out << ',' << format_double(row.probs.residual, 12) << '\n';
    }
}

}  // namespace leagueopt
