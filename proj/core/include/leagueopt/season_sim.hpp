#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "leagueopt/league.hpp"
#include "leagueopt/outcome_model.hpp"

namespace leagueopt {

// A fixture-level outcome model: everything the season simulation needs to
// know about a remaining game. Adapters below reduce tactic-aware match
// predictors to this shape.
using FixturePredictor = std::function<OutcomeDistribution(const Fixture&)>;

struct SimulationConfig {
    int n_replicates = 100000;
    std::uint64_t base_seed = 0;
    int n_workers = 1;  // output is identical for any worker count
};

// Finishing-position distribution per team, stored as replicate counts so
// row and column sums are exact by construction: every replicate assigns
// each team exactly one rank.
class PositionDistribution {
public:
    PositionDistribution() = default;
    PositionDistribution(int n_teams, long long n_replicates);

    int team_count() const { return n_teams_; }
    long long replicates() const { return n_replicates_; }

    long long count(int team, int rank) const;        // rank is 1-based
    double probability(int team, int rank) const;
    std::vector<double> row(int team) const;          // probabilities over ranks 1..n

    long long row_count_sum(int team) const;
    long long column_count_sum(int rank) const;

    void add_ranks(std::span<const int> rank_per_team);  // one replicate
    void merge(const PositionDistribution& other);

private:
    int n_teams_ = 0;
    long long n_replicates_ = 0;
    std::vector<long long> counts_;  // [team][rank-1]
};

// One Monte-Carlo pass: samples every not-yet-played fixture once from the
// predictor, accumulates points on top of the completed results and ranks
// the final table with a replicate-derived tie seed.
StandingsTable sample_replicate(std::span<const Fixture> schedule,
                                std::span<const ResultRecord> completed,
                                const FixturePredictor& predictor,
                                std::uint64_t replicate_seed);

// Aggregates n_replicates independent replicates. Replicate seeds derive
// from (base_seed, replicate_index), so results are bit-identical for any
// worker count and any execution order.
PositionDistribution simulate_remaining(std::span<const Fixture> schedule,
                                        std::span<const ResultRecord> completed,
                                        const FixturePredictor& predictor,
                                        const SimulationConfig& config);

double expected_position(std::span<const double> rank_probabilities);
double expected_position(const PositionDistribution&, int team);
// Lowest (best) rank achieving the maximum probability.
int modal_position(std::span<const double> rank_probabilities);
int modal_position(const PositionDistribution&, int team);

// Mean over teams of |actual rank - predicted rank| for each game-week.
// Prediction uses the modal rank; pass use_expected for the expected-rank
// variant.
std::vector<double> position_difference_curve(std::span<const int> final_ranks,
                                              std::span<const PositionDistribution> weekly,
                                              bool use_expected = false);

// CSV: "# n_replicates=...,base_seed=..." then team_id,rank,probability.
void write_distribution_csv(const std::string& path, const League&, const PositionDistribution&,
                            std::uint64_t base_seed);

// Reduces a tactic-aware predictor to a FixturePredictor by averaging over
// tactic choices: a team with a fixed choice contributes just that action,
// anyone else is sampled uniformly from the catalog. The mixture is
// evaluated once per fixture.
FixturePredictor make_tactic_marginal_predictor(
    const League& league, const MatchPredictor& predictor, const TacticCatalog& catalog,
    std::vector<std::optional<TacticPair>> fixed_choices = {});

}  // namespace leagueopt
