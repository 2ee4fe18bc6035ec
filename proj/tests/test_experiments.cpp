#include "doctest.h"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "leagueopt/csv.hpp"
#include "leagueopt/experiments.hpp"

using namespace leagueopt;
namespace fs = std::filesystem;

namespace {

ExperimentConfig tiny_config() {
    ExperimentConfig config;
    config.generator.n_teams = 6;
    config.generator.effect_scale = 0.5;
    config.n_replicates = 60;
    config.n_seeds = 2;
    config.inner_replicates = 2;
    config.optimizer_strength_rank = 4;
    config.predictor_mode = PredictorMode::TrueStrengths;
    return config;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

void write_file(const fs::path& path, const std::string& text) {
    std::ofstream out(path);
    out << text;
}

}  // namespace

TEST_CASE("config files parse, unknown keys fail, and the hash ignores workers") {
    TempDir dir("leagueopt_config_test");
    fs::path cfg = dir.path / "run.cfg";
    write_file(cfg, "# comment line\nn_teams = 8\nn_replicates = 120\npredictor_mode = true\n");
    ExperimentConfig config = ExperimentConfig::from_file(cfg.string());
    CHECK(config.generator.n_teams == 8);
    CHECK(config.n_replicates == 120);
    CHECK(config.predictor_mode == PredictorMode::TrueStrengths);

    write_file(cfg, "no_such_key = 1\n");
    CHECK_THROWS_AS(ExperimentConfig::from_file(cfg.string()), ParseError);

    ExperimentConfig a = tiny_config();
    ExperimentConfig b = tiny_config();
    b.n_workers = 4;
    CHECK(a.hash() == b.hash());
    b.n_replicates += 1;
    CHECK(a.hash() != b.hash());
    CHECK(a.hash().size() == 16);
}

TEST_CASE("config validation rejects bad shapes") {
    ExperimentConfig config = tiny_config();
    config.generator.n_teams = 7;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    config = tiny_config();
    config.thresholds.on_track_low = 0.9;
    config.thresholds.on_track_high = 0.2;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
    config = tiny_config();
    config.optimizer_strength_rank = 99;
    CHECK_THROWS_AS(config.validate(), std::invalid_argument);
}

TEST_CASE("reports with different config hashes refuse comparison") {
    ExperimentReport a{"exp3", "aaaa", {}};
    ExperimentReport b{"exp3", "bbbb", {}};
    CHECK_THROWS_AS(require_same_config(a, b), std::invalid_argument);
    ExperimentReport c{"exp3", "aaaa", {}};
    CHECK_NOTHROW(require_same_config(a, c));
}

TEST_CASE("ingest accepts a full 20-team season") {
    TempDir dir("leagueopt_ingest_ok");
    std::vector<Team> teams;
    for (int i = 0; i < 20; ++i) {
        Team t;
        t.id = "T" + std::to_string(i + 1);
        t.name = t.id;
        teams.push_back(t);
    }
    League league{teams};
    std::vector<Fixture> schedule = generate_schedule(20, 17);
    fs::path fx = dir.path / "fixtures.csv";
    fs::path rs = dir.path / "results.csv";
    write_fixtures_csv(fx.string(), league, schedule);
    std::vector<ResultRecord> results;
    for (const Fixture& f : schedule) {
        if (f.week < 10) results.push_back({f, MatchOutcome::Draw});
    }
    write_results_csv(rs.string(), league, results);

    LeagueState state = ingest_data(fx.string(), rs.string());
    CHECK(state.schedule.size() == 380);
    CHECK(state.league.team_count() == 20);
    CHECK(state.results.size() == 200);
}

TEST_CASE("ingest rejects duplicates, unknown teams and bad weeks with diagnostics") {
    TempDir dir("leagueopt_ingest_bad");
    fs::path fx = dir.path / "fixtures.csv";

    write_file(fx, "week,home_id,away_id\n0,A,B\n1,B,A\n0,A,B\n");
    CHECK_THROWS_WITH_AS(ingest_data(fx.string()), doctest::Contains(":4:"), ValidationError);

    write_file(fx, "week,home_id,away_id\n0,A,B\n0,A,C\n");
    CHECK_THROWS_WITH_AS(ingest_data(fx.string()), doctest::Contains("two fixtures"),
                         ValidationError);

    write_file(fx, "week,home_id,away_id\n9,A,B\n");  // two teams: weeks 0..1 only
    CHECK_THROWS_WITH_AS(ingest_data(fx.string()), doctest::Contains("outside"), ValidationError);

    write_file(fx, "week,home_id,away_id\n0,A,B\n1,B,A\n");
    fs::path rs = dir.path / "results.csv";
    write_file(rs, "week,home_id,away_id,outcome\n0,B,A,H\n");
    CHECK_THROWS_WITH_AS(ingest_data(fx.string(), rs.string()),
                         doctest::Contains("unscheduled"), ValidationError);

    write_file(rs, "week,home_id,away_id,outcome\n0,A,B,H\n0,A,B,D\n");
    CHECK_THROWS_WITH_AS(ingest_data(fx.string(), rs.string()), doctest::Contains("duplicate"),
                         ValidationError);

    fs::path tc = dir.path / "tactics.csv";
    write_file(rs, "week,home_id,away_id,outcome\n0,A,B,H\n");
    write_file(tc,
               "week,home_id,away_id,home_style,home_formation,away_style,away_formation\n"
               "0,A,B,5,0,0,0\n");
    TacticCatalog catalog{2, 2};
    CHECK_THROWS_WITH_AS(ingest_data(fx.string(), rs.string(), tc.string(), &catalog),
                         doctest::Contains("catalog"), ValidationError);
    write_file(tc,
               "week,home_id,away_id,home_style,home_formation,away_style,away_formation\n"
               "0,A,B,1,0,0,1\n");
    LeagueState state = ingest_data(fx.string(), rs.string(), tc.string(), &catalog);
    CHECK(state.tactics.size() == 1);
    CHECK(state.tactics[0].home_tactic == TacticPair{1, 0});
}

TEST_CASE("a season run is deterministic and complete") {
    GeneratorParams params;
    params.n_teams = 6;
    SyntheticLeague world = make_synthetic_league(params);
    std::vector<Fixture> schedule = generate_schedule(6, 3);
    SeasonOptions opts;
    SeasonResult a = run_season(world, schedule, opts, 42);
    SeasonResult b = run_season(world, schedule, opts, 42);
    CHECK(a.results.size() == schedule.size());
    CHECK(a.tactics.size() == schedule.size());
    CHECK(a.final_table.points == b.final_table.points);
    CHECK(a.final_table.rank == b.final_table.rank);
    for (std::size_t i = 0; i < a.results.size(); ++i) {
        CHECK(a.results[i].outcome == b.results[i].outcome);
    }
    SeasonResult c = run_season(world, schedule, opts, 43);
    bool any_diff = false;
    for (std::size_t i = 0; i < a.results.size(); ++i) {
        if (a.results[i].outcome != c.results[i].outcome) any_diff = true;
    }
    CHECK(any_diff);
}

TEST_CASE("recording a season keeps weekly distributions and objectives") {
    GeneratorParams params;
    params.n_teams = 20;
    SyntheticLeague world = make_synthetic_league(params);
    std::vector<Fixture> schedule = generate_schedule(20, 5);
    SeasonOptions opts;
    opts.record_weekly = true;
    opts.mcmc_replicates = 40;
    opts.predictor_mode = PredictorMode::TrueStrengths;
    SeasonResult season = run_season(world, schedule, opts, 11);
    CHECK(season.weekly.size() == 38);
    CHECK(season.weekly_objectives.size() == 38);
    CHECK(season.objective_trace.size() == 38 * 20);
    for (const PositionDistribution& d : season.weekly) {
        CHECK(d.replicates() == 40);
        CHECK(d.team_count() == 20);
    }
}

TEST_CASE("an optimizing team logs one decision per week") {
    GeneratorParams params;
    params.n_teams = 6;
    SyntheticLeague world = make_synthetic_league(params);
    std::vector<Fixture> schedule = generate_schedule(6, 3);
    SeasonOptions opts;
    opts.optimizers.assign(6, false);
    opts.optimizers[2] = true;
    opts.mcmc_replicates = 30;
    opts.bands = make_bands(
        std::vector<std::pair<int, int>>{{1, 1}, {2, 2}, {3, 3}, {4, 4}, {5, 5}}, 6);
    SeasonResult season = run_season(world, schedule, opts, 19);
    CHECK(season.decisions.size() == 10);  // 2(n-1) weeks
    for (const DecisionLogRow& row : season.decisions) {
        CHECK(row.team_id == world.league.team(2).id);
    }
}

TEST_CASE("spearman correlation on known series") {
    std::vector<double> x{1, 2, 3, 4, 5};
    std::vector<double> inc{2, 4, 6, 8, 10};
    std::vector<double> dec{9, 7, 5, 3, 1};
    CHECK(spearman_correlation(x, inc) == doctest::Approx(1.0));
    CHECK(spearman_correlation(x, dec) == doctest::Approx(-1.0));
    std::vector<double> flat{1, 1, 1, 1, 1};
    CHECK(spearman_correlation(x, flat) == doctest::Approx(0.0));
}

TEST_CASE("experiment artifacts are written and reruns are byte-identical") {
    ExperimentConfig config = tiny_config();
    // 6-team leagues have no default objective bands; use a 20-team league
    // at very small scale for the weekly-objective experiments.
    config.generator.n_teams = 20;
    config.n_replicates = 30;
    config.n_seeds = 2;
    config.inner_replicates = 1;
    config.optimizer_strength_rank = 15;

    TempDir dir_a("leagueopt_exp_smoke_a");
    TempDir dir_b("leagueopt_exp_smoke_b");

    ExperimentReport r1 = run_experiment1(config, (dir_a.path / "exp1").string());
    CHECK(fs::exists(dir_a.path / "exp1" / "curve.csv"));
    CHECK(fs::exists(dir_a.path / "exp1" / "per_seed.csv"));
    CHECK(fs::exists(dir_a.path / "exp1" / "summary.json"));
    CHECK(fs::exists(dir_a.path / "exp1" / "ground_truth" / "seed_0.json"));
    CHECK(r1.metrics.count("early_mean_abs_error") == 1);
    CHECK(r1.metrics.count("spearman_week_vs_error") == 1);

    ExperimentReport r1b = run_experiment1(config, (dir_b.path / "exp1").string());
    require_same_config(r1, r1b);
    CHECK(slurp(dir_a.path / "exp1" / "curve.csv") == slurp(dir_b.path / "exp1" / "curve.csv"));
    CHECK(slurp(dir_a.path / "exp1" / "summary.json") ==
          slurp(dir_b.path / "exp1" / "summary.json"));

    ExperimentReport r2 = run_experiment2(config, (dir_a.path / "exp2").string());
    CHECK(fs::exists(dir_a.path / "exp2" / "accuracy.csv"));
    CHECK(fs::exists(dir_a.path / "exp2" / "objective_trace_seed0.csv"));
    CHECK(r2.metrics.at("oracle_pct") == doctest::Approx(85.0));
    CHECK(r2.metrics.at("map_max_pct") <= 85.0 + 1e-9);

    ExperimentReport r3 = run_experiment3(config, (dir_a.path / "exp3").string());
    CHECK(fs::exists(dir_a.path / "exp3" / "metrics.csv"));
    CHECK(r3.metrics.count("accuracy_with_p") == 1);

    ExperimentReport r4 = run_experiment4(config, (dir_a.path / "exp4").string());
    CHECK(fs::exists(dir_a.path / "exp4" / "improvement.csv"));
    CHECK(fs::exists(dir_a.path / "exp4" / "distribution.csv"));
    CHECK(fs::exists(dir_a.path / "exp4" / "decisions_seed0.csv"));
    CHECK(r4.metrics.count("mean_improvement") == 1);

    // worker count must not change any artifact
    ExperimentConfig parallel = config;
    parallel.n_workers = 3;
    ExperimentReport r4p = run_experiment4(parallel, (dir_b.path / "exp4").string());
    require_same_config(r4, r4p);
    CHECK(slurp(dir_a.path / "exp4" / "improvement.csv") ==
          slurp(dir_b.path / "exp4" / "improvement.csv"));
    CHECK(slurp(dir_a.path / "exp4" / "distribution.csv") ==
          slurp(dir_b.path / "exp4" / "distribution.csv"));
    CHECK(slurp(dir_a.path / "exp4" / "summary.json") ==
          slurp(dir_b.path / "exp4" / "summary.json"));
}

TEST_CASE("the all-teams arm reports shifts and the trivial no-optimizer case is null") {
    ExperimentConfig config = tiny_config();
    config.generator.n_teams = 20;
    config.n_replicates = 25;
    config.n_seeds = 1;
    config.inner_replicates = 1;
    config.optimizer_strength_rank = 14;
    TempDir dir("leagueopt_allteams_smoke");
    ExperimentReport r = run_all_teams_arm(config, (dir.path / "all").string());
    CHECK(fs::exists(dir.path / "all" / "shift.csv"));
    CHECK(r.metrics.count("mean_abs_shift") == 1);

    // nobody optimizing: identical seeds give identical tables, shift zero
    GeneratorParams params;
    params.n_teams = 6;
    SyntheticLeague world = make_synthetic_league(params);
    std::vector<Fixture> schedule = generate_schedule(6, 2);
    SeasonOptions opts;
    SeasonResult a = run_season(world, schedule, opts, 7);
    SeasonResult b = run_season(world, schedule, opts, 7);
    for (int t = 0; t < 6; ++t) {
        CHECK(a.final_table.rank[static_cast<std::size_t>(t)] ==
              b.final_table.rank[static_cast<std::size_t>(t)]);
    }
}
