#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "leagueopt/league.hpp"
#include "leagueopt/objectives.hpp"
#include "leagueopt/outcome_model.hpp"
#include "leagueopt/prior_knowledge.hpp"
#include "leagueopt/season_sim.hpp"
#include "leagueopt/synthetic.hpp"
#include "leagueopt/tactic_optimizer.hpp"

namespace leagueopt {

// Which outcome model feeds the weekly look-ahead simulation: strengths
// refit from the results seen so far (neutral prior until every team has
// played), or the generator's true strengths.
enum class PredictorMode { RefitWeekly, TrueStrengths };

struct ExperimentConfig {
    GeneratorParams generator;

    int n_replicates = 2000;  // weekly look-ahead replicates (desk scale; 100000 upstream)
    int n_workers = 1;        // never affects results, excluded from the config hash
    std::uint64_t base_seed = 0;
    int n_seeds = 20;

    PolicyThresholds thresholds;
    double expectimax_weight = 0.5;
    PredictorMode predictor_mode = PredictorMode::RefitWeekly;
    FitOptions fit{250, 0.2};
    DrawCredit draw_credit = DrawCredit::None;

    double exp3_smoothing = 8.0;  // Laplace pseudo-count per outcome class
    double exp3_blend = 1.0;      // exponent on the matchup tilt

    int inner_replicates = 12;        // paired season replicates per seed
    int optimizer_strength_rank = 15; // 1-based rank by true strength of the optimizing team

    void validate() const;
    std::string canonical_text() const;  // stable "key = value" rendering
    std::string hash() const;            // FNV-1a 64 of canonical_text, hex

    static ExperimentConfig from_file(const std::string& path);
    void apply(const std::string& key, const std::string& value);
};

struct ExperimentReport {
    std::string name;
    std::string config_hash;
    std::map<std::string, double> metrics;
};

// Reports produced under different configurations must never be compared.
void require_same_config(const ExperimentReport&, const ExperimentReport&);

// Weekly look-ahead accuracy: mean absolute rank error per game-week.
ExperimentReport run_experiment1(const ExperimentConfig&, const std::string& out_dir);
// Objective setting: percent of teams whose weekly objective was met.
ExperimentReport run_experiment2(const ExperimentConfig&, const std::string& out_dir);
// Outcome prediction with and without the matchup evidence.
ExperimentReport run_experiment3(const ExperimentConfig&, const std::string& out_dir);
// One optimizing team against a uniform field, paired seasons.
ExperimentReport run_experiment4(const ExperimentConfig&, const std::string& out_dir);
// Everyone optimizes; measures how far the edge cancels out.
ExperimentReport run_all_teams_arm(const ExperimentConfig&, const std::string& out_dir);

// ---- data ingestion ----

struct TacticRecord {
    Fixture fixture;
    TacticPair home_tactic;
    TacticPair away_tactic;
};

struct LeagueState {
    League league;
    std::vector<Fixture> schedule;
    std::vector<ResultRecord> results;
    std::vector<TacticRecord> tactics;
};

// Loads and cross-validates fixture/result/tactic files: duplicate fixtures,
// several games for one team in a week, out-of-range weeks, results or
// tactics for unscheduled games all fail with diagnostics. The tactics file
// needs the catalog its indices are checked against.
LeagueState ingest_data(const std::string& fixtures_csv,
                        const std::optional<std::string>& results_csv = std::nullopt,
                        const std::optional<std::string>& tactics_csv = std::nullopt,
                        const TacticCatalog* catalog = nullptr);

// ---- season orchestration (shared by the experiments, exposed for tests) ----

struct SeasonOptions {
    std::vector<bool> optimizers;  // per team; empty means nobody optimizes
    bool record_weekly = false;    // keep weekly distributions, objectives and traces
    int mcmc_replicates = 400;
    int n_workers = 1;
    PredictorMode predictor_mode = PredictorMode::TrueStrengths;
    FitOptions fit{250, 0.2};
    PolicyThresholds thresholds;
    double expectimax_weight = 0.5;
    DrawCredit draw_credit = DrawCredit::None;
    std::vector<ObjectiveBand> bands;  // empty: default_bands(n_teams)
};

struct SeasonResult {
    std::vector<ResultRecord> results;
    std::vector<TacticRecord> tactics;  // parallel to results
    StandingsTable final_table;
    std::vector<PositionDistribution> weekly;                 // record_weekly
    std::vector<std::vector<ObjectiveId>> weekly_objectives;  // record_weekly, [week][team]
    std::vector<ObjectiveTraceRow> objective_trace;           // record_weekly
    std::vector<DecisionLogRow> decisions;                    // optimizing teams
};

// Plays one season week by week against the generator: before each week the
// remaining games are simulated to set every tracked team's objective, an
// optimizing team picks its tactic from the policy- and weight-adjusted
// payoff tables, everyone else draws uniformly, and the realized results
// update both the standings and the matchup evidence.
SeasonResult run_season(const SyntheticLeague&, std::span<const Fixture> schedule,
                        const SeasonOptions&, std::uint64_t season_seed);

// Spearman rank correlation with average ranks for ties.
double spearman_correlation(std::span<const double> x, std::span<const double> y);

}  // namespace leagueopt
