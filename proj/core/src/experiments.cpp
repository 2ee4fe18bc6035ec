#include "leagueopt/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "json.hpp"
#include "leagueopt/csv.hpp"
#include "leagueopt/metrics.hpp"
#include "leagueopt/rng.hpp"

namespace leagueopt {

namespace {

// Stream tags for seed derivation; every random draw in the harness comes
// from (base or season seed, tag, indices...).
constexpr std::uint64_t kWorldTag = 0x10;
constexpr std::uint64_t kScheduleTag = 0x11;
constexpr std::uint64_t kSeasonTag = 0x12;
constexpr std::uint64_t kWeeklySimTag = 0x13;
constexpr std::uint64_t kTacticTag = 0x14;
constexpr std::uint64_t kOutcomeTag = 0x15;
constexpr std::uint64_t kFinalTieTag = 0x16;
constexpr std::uint64_t kRandomObjectiveTag = 0x17;
constexpr std::uint64_t kExp3Tag = 0x18;
constexpr std::uint64_t kExp4Tag = 0x19;

MatchOutcome sample_outcome(const OutcomeDistribution& d, double u) {
    if (u < d.p_home) return MatchOutcome::HomeWin;
    if (u < d.p_home + d.p_draw) return MatchOutcome::Draw;
    return MatchOutcome::AwayWin;
}

GameResult result_for(MatchOutcome outcome, Side side) {
    if (outcome == MatchOutcome::Draw) return GameResult::Draw;
    bool home_won = outcome == MatchOutcome::HomeWin;
    return (side == Side::Home) == home_won ? GameResult::Win : GameResult::Loss;
}

}  // namespace

// ---------------------------------------------------------------------------
// configuration
// ---------------------------------------------------------------------------

void ExperimentConfig::validate() const {
    if (generator.n_teams < 4 || generator.n_teams % 2 != 0) {
        throw std::invalid_argument("config: n_teams must be even and >= 4");
    }
    if (generator.n_styles < 1 || generator.n_formations < 1) {
        throw std::invalid_argument("config: tactic catalog must be non-empty");
    }
    if (n_replicates < 1) throw std::invalid_argument("config: n_replicates must be >= 1");
    if (n_seeds < 1) throw std::invalid_argument("config: n_seeds must be >= 1");
    if (inner_replicates < 1) throw std::invalid_argument("config: inner_replicates must be >= 1");
    if (thresholds.on_track_low < 0.0 || thresholds.on_track_high > 1.0 ||
        thresholds.on_track_low > thresholds.on_track_high) {
        throw std::invalid_argument("config: on-track thresholds must satisfy 0 <= low <= high <= 1");
    }
    if (expectimax_weight < 0.0 || expectimax_weight > 1.0) {
        throw std::invalid_argument("config: expectimax_weight must be in [0,1]");
    }
    if (optimizer_strength_rank < 1 || optimizer_strength_rank > generator.n_teams) {
        throw std::invalid_argument("config: optimizer_strength_rank outside the league");
    }
    if (exp3_smoothing <= 0.0) throw std::invalid_argument("config: exp3_smoothing must be > 0");
    if (fit.iterations < 1) throw std::invalid_argument("config: fit_iterations must be >= 1");
}

std::string ExperimentConfig::canonical_text() const {
    // n_workers is deliberately absent: worker count never changes results.
    std::ostringstream out;
    out << "base_seed = " << base_seed << '\n';
    out << "draw_credit = " << (draw_credit == DrawCredit::Half ? "half" : "none") << '\n';
    out << "draw_threshold = " << format_double_exact(generator.draw_threshold) << '\n';
    out << "effect_scale = " << format_double_exact(generator.effect_scale) << '\n';
    out << "effect_seed = " << generator.effect_seed << '\n';
    out << "exp3_blend = " << format_double_exact(exp3_blend) << '\n';
    out << "exp3_smoothing = " << format_double_exact(exp3_smoothing) << '\n';
    out << "expectimax_weight = " << format_double_exact(expectimax_weight) << '\n';
    out << "fit_iterations = " << fit.iterations << '\n';
    out << "fit_learning_rate = " << format_double_exact(fit.learning_rate) << '\n';
    out << "home_advantage = " << format_double_exact(generator.home_advantage) << '\n';
    out << "inner_replicates = " << inner_replicates << '\n';
    out << "n_formations = " << generator.n_formations << '\n';
    out << "n_replicates = " << n_replicates << '\n';
    out << "n_seeds = " << n_seeds << '\n';
    out << "n_styles = " << generator.n_styles << '\n';
    out << "n_teams = " << generator.n_teams << '\n';
    out << "on_track_high = " << format_double_exact(thresholds.on_track_high) << '\n';
    out << "on_track_low = " << format_double_exact(thresholds.on_track_low) << '\n';
    out << "optimizer_strength_rank = " << optimizer_strength_rank << '\n';
    out << "predictor_mode = "
        << (predictor_mode == PredictorMode::RefitWeekly ? "refit" : "true") << '\n';
    out << "strength_seed = " << generator.strength_seed << '\n';
    out << "strength_sigma = " << format_double_exact(generator.strength_sigma) << '\n';
    return out.str();
}

std::string ExperimentConfig::hash() const {
    std::string text = canonical_text();
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void ExperimentConfig::apply(const std::string& key, const std::string& value) {
    auto as_int = [&] { return std::stoi(value); };
    auto as_u64 = [&] { return static_cast<std::uint64_t>(std::stoull(value)); };
    auto as_double = [&] { return std::stod(value); };
    if (key == "n_teams") generator.n_teams = as_int();
    else if (key == "n_styles") generator.n_styles = as_int();
    else if (key == "n_formations") generator.n_formations = as_int();
    else if (key == "strength_sigma") generator.strength_sigma = as_double();
    else if (key == "home_advantage") generator.home_advantage = as_double();
    else if (key == "draw_threshold") generator.draw_threshold = as_double();
    else if (key == "effect_scale") generator.effect_scale = as_double();
    else if (key == "strength_seed") generator.strength_seed = as_u64();
    else if (key == "effect_seed") generator.effect_seed = as_u64();
    else if (key == "n_replicates") n_replicates = as_int();
    else if (key == "n_workers") n_workers = as_int();
    else if (key == "base_seed") base_seed = as_u64();
    else if (key == "n_seeds") n_seeds = as_int();
    else if (key == "on_track_low") thresholds.on_track_low = as_double();
    else if (key == "on_track_high") thresholds.on_track_high = as_double();
    else if (key == "expectimax_weight") expectimax_weight = as_double();
    else if (key == "fit_iterations") fit.iterations = as_int();
    else if (key == "fit_learning_rate") fit.learning_rate = as_double();
    else if (key == "exp3_smoothing") exp3_smoothing = as_double();
    else if (key == "exp3_blend") exp3_blend = as_double();
    else if (key == "inner_replicates") inner_replicates = as_int();
    else if (key == "optimizer_strength_rank") optimizer_strength_rank = as_int();
    else if (key == "predictor_mode") {
        if (value == "refit") predictor_mode = PredictorMode::RefitWeekly;
        else if (value == "true") predictor_mode = PredictorMode::TrueStrengths;
        else throw std::invalid_argument("config: predictor_mode must be 'refit' or 'true'");
    } else if (key == "draw_credit") {
        if (value == "none") draw_credit = DrawCredit::None;
        else if (value == "half") draw_credit = DrawCredit::Half;
        else throw std::invalid_argument("config: draw_credit must be 'none' or 'half'");
    } else {
        throw std::invalid_argument("config: unknown key '" + key + "'");
    }
}

ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    ExperimentConfig config;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        std::size_t hash_pos = line.find('#');
        if (hash_pos != std::string::npos) line = line.substr(0, hash_pos);
        auto strip = [](const std::string& s) {
            std::size_t b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos) return std::string();
            std::size_t e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        };
        std::string t = strip(line);
        if (t.empty()) continue;
        std::size_t eq = t.find('=');
        if (eq == std::string::npos) {
            throw ParseError(path + ":" + std::to_string(line_no) +
                             ": expected 'key = value', got '" + t + "'");
        }
        try {
            config.apply(strip(t.substr(0, eq)), strip(t.substr(eq + 1)));
        } catch (const std::invalid_argument& e) {
            throw ParseError(path + ":" + std::to_string(line_no) + ": " + e.what());
        }
    }
    config.validate();
    return config;
}

void require_same_config(const ExperimentReport& a, const ExperimentReport& b) {
    if (a.config_hash != b.config_hash) {
        throw std::invalid_argument("refusing to compare reports with different config hashes (" +
                                    a.config_hash + " vs " + b.config_hash + ")");
    }
}

// ---------------------------------------------------------------------------
// season orchestration
// ---------------------------------------------------------------------------

namespace {

FixturePredictor weekly_fixture_predictor(const SyntheticLeague& world,
                                          std::span<const ResultRecord> results,
                                          PredictorMode mode, const FitOptions& fit_options) {
    int n = world.league.team_count();
    if (mode == PredictorMode::TrueStrengths) {
        StrengthOnlyModel model = true_strength_model(world);
        return [model](const Fixture& f) { return model.predict_fixture(f.home, f.away); };
    }
    std::vector<int> games(static_cast<std::size_t>(n), 0);
    for (const ResultRecord& r : results) {
        games[static_cast<std::size_t>(r.fixture.home)] += 1;
        games[static_cast<std::size_t>(r.fixture.away)] += 1;
    }
    bool everyone_played =
        !results.empty() && std::all_of(games.begin(), games.end(), [](int g) { return g > 0; });
    if (!everyone_played) {
        // Neutral prior before a full week of evidence: equal strengths and a
        // cut point giving a near-uniform outcome split.
        StrengthOnlyModel model(std::vector<double>(static_cast<std::size_t>(n), 1.0), 0.0, 0.66);
        return [model](const Fixture& f) { return model.predict_fixture(f.home, f.away); };
    }
    StrengthFit fit = fit_strengths(n, results, fit_options);
    StrengthOnlyModel model(std::move(fit.strengths), fit.home_advantage, fit.draw_threshold);
    return [model](const Fixture& f) { return model.predict_fixture(f.home, f.away); };
}

ObjectiveId realized_band(int final_rank, std::span<const ObjectiveBand> bands) {
    for (const ObjectiveBand& band : bands) {
        if (final_rank >= band.lo && final_rank <= band.hi) return band.id;
    }
    return ObjectiveId::AvoidRelegation;  // relegation region: best hope already gone
}

}  // namespace

SeasonResult run_season(const SyntheticLeague& world, std::span<const Fixture> schedule,
                        const SeasonOptions& opts, std::uint64_t season_seed) {
    const League& league = world.league;
    int n = league.team_count();
    int n_pairs = world.catalog.n_pairs();
    if (!opts.optimizers.empty() && static_cast<int>(opts.optimizers.size()) != n) {
        throw std::invalid_argument("run_season: optimizers flag list must match the league");
    }
    bool any_optimizer =
        std::any_of(opts.optimizers.begin(), opts.optimizers.end(), [](bool b) { return b; });
    bool need_weekly_sim = opts.record_weekly || any_optimizer;

    int n_weeks = 0;
    for (const Fixture& f : schedule) n_weeks = std::max(n_weeks, f.week + 1);
    std::vector<std::vector<int>> week_fixtures(static_cast<std::size_t>(n_weeks));
    for (int i = 0; i < static_cast<int>(schedule.size()); ++i) {
        week_fixtures[static_cast<std::size_t>(schedule[static_cast<std::size_t>(i)].week)]
            .push_back(i);
    }

    std::vector<ObjectiveBand> bands = opts.bands;
    if (bands.empty() && need_weekly_sim) bands = default_bands(n);

    TrueMatchModel truth(world);
    StrengthOnlyModel agent_model = true_strength_model(world);

    std::vector<EvidenceCounts> evidence;
    if (any_optimizer) {
        evidence.assign(static_cast<std::size_t>(n), EvidenceCounts(n_pairs));
    }

    SeasonResult out;
    out.results.reserve(schedule.size());
    out.tactics.reserve(schedule.size());
    std::vector<double> belief = uniform_belief(n_pairs);

    for (int w = 0; w < n_weeks; ++w) {
        PositionDistribution weekly_d;
        if (need_weekly_sim) {
            FixturePredictor predictor = weekly_fixture_predictor(
                world, out.results, opts.predictor_mode, opts.fit);
            SimulationConfig sim_config;
            sim_config.n_replicates = opts.mcmc_replicates;
            sim_config.base_seed = derive_seed(season_seed, {kWeeklySimTag,
                                                             static_cast<std::uint64_t>(w)});
            sim_config.n_workers = opts.n_workers;
            weekly_d = simulate_remaining(schedule, out.results, predictor, sim_config);
            if (opts.record_weekly) {
                std::vector<ObjectiveId> week_objectives;
                week_objectives.reserve(static_cast<std::size_t>(n));
                for (int t = 0; t < n; ++t) {
                    ObjectiveProbabilities probs = objective_probabilities(weekly_d, t, bands);
                    MapObjective m = map_objective(probs);
                    week_objectives.push_back(m.objective);
                    out.objective_trace.push_back(
                        ObjectiveTraceRow{w, league.team(t).id, m, probs});
                }
                out.weekly.push_back(weekly_d);
                out.weekly_objectives.push_back(std::move(week_objectives));
            }
        }

        // Optimizing teams pick this week's tactic from the weight-adjusted
        // payoff tables before any game is played.
        const std::vector<int>& fixtures_this_week = week_fixtures[static_cast<std::size_t>(w)];
        std::vector<std::optional<TacticPair>> chosen_home(fixtures_this_week.size());
        std::vector<std::optional<TacticPair>> chosen_away(fixtures_this_week.size());
        if (any_optimizer) {
            for (int t = 0; t < n; ++t) {
                if (!opts.optimizers[static_cast<std::size_t>(t)]) continue;
                int local_index = -1;
                Side side = Side::Home;
                for (std::size_t k = 0; k < fixtures_this_week.size(); ++k) {
                    const Fixture& f =
                        schedule[static_cast<std::size_t>(fixtures_this_week[k])];
                    if (f.home == t) { local_index = static_cast<int>(k); side = Side::Home; break; }
                    if (f.away == t) { local_index = static_cast<int>(k); side = Side::Away; break; }
                }
                if (local_index < 0) continue;  // no game this week
                const Fixture& f =
                    schedule[static_cast<std::size_t>(fixtures_this_week[static_cast<std::size_t>(local_index)])];
                int opponent = side == Side::Home ? f.away : f.home;

                ObjectiveProbabilities probs = objective_probabilities(weekly_d, t, bands);
                MapObjective m = map_objective(probs);
                DecisionPolicy policy = select_policy(m.objective, probs, opts.thresholds);
                std::vector<PayoffTable> tables =
                    build_payoff_tables(league.team(t), league.team(opponent), side, agent_model,
                                        world.catalog, world.catalog);
                WeightMatrix weights =
                    compute_weights(evidence[static_cast<std::size_t>(t)], opts.draw_credit);
                TacticChoice choice = choose_tactic(tables, weights, policy, belief, side,
                                                    world.catalog, opts.expectimax_weight);
                if (side == Side::Home) {
                    chosen_home[static_cast<std::size_t>(local_index)] = choice.pair;
                } else {
                    chosen_away[static_cast<std::size_t>(local_index)] = choice.pair;
                }
                out.decisions.push_back(DecisionLogRow{w, league.team(t).id, policy, choice.pair,
                                                       choice.expected_payoff});
            }
        }

        // Play the week.
        for (std::size_t k = 0; k < fixtures_this_week.size(); ++k) {
            const Fixture& f = schedule[static_cast<std::size_t>(fixtures_this_week[k])];
            auto uniform_pair = [&](int side_tag) {
                Rng rng(derive_seed(season_seed,
                                    {kTacticTag, static_cast<std::uint64_t>(w),
                                     static_cast<std::uint64_t>(k),
                                     static_cast<std::uint64_t>(side_tag)}));
                return world.catalog.pair_at(rng.next_below(n_pairs));
            };
            TacticPair home_tac = chosen_home[k].has_value() ? *chosen_home[k] : uniform_pair(0);
            TacticPair away_tac = chosen_away[k].has_value() ? *chosen_away[k] : uniform_pair(1);
            MatchContext ctx{league.team(f.home), league.team(f.away), home_tac, away_tac};
            OutcomeDistribution dist = truth.predict(ctx);
            Rng outcome_rng(derive_seed(season_seed, {kOutcomeTag, static_cast<std::uint64_t>(w),
                                                      static_cast<std::uint64_t>(k)}));
            MatchOutcome outcome = sample_outcome(dist, outcome_rng.next_unit());
            out.results.push_back(ResultRecord{f, outcome});
            out.tactics.push_back(TacticRecord{f, home_tac, away_tac});

            if (any_optimizer) {
                int x = world.catalog.pair_index(home_tac);
                int y = world.catalog.pair_index(away_tac);
                for (int t = 0; t < n; ++t) {
                    if (!opts.optimizers[static_cast<std::size_t>(t)]) continue;
                    EvidenceCounts& counts = evidence[static_cast<std::size_t>(t)];
                    if (t == f.home) {
                        counts.add(GameObservation{ObservationSource::Played, x, y,
                                                   result_for(outcome, Side::Home)});
                    } else if (t == f.away) {
                        counts.add(GameObservation{ObservationSource::Played, y, x,
                                                   result_for(outcome, Side::Away)});
                    } else {
                        counts.add(GameObservation{ObservationSource::Observed, x, y,
                                                   result_for(outcome, Side::Home)});
                        counts.add(GameObservation{ObservationSource::Observed, y, x,
                                                   result_for(outcome, Side::Away)});
                    }
                }
            }
        }
    }

    out.final_table =
        compute_standings(n, out.results, derive_seed(season_seed, {kFinalTieTag}));
    return out;
}

double spearman_correlation(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("spearman_correlation: need two equal-length series");
    }
    auto ranks_of = [](std::span<const double> v) {
        std::size_t n = v.size();
        std::vector<int> order(n);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return v[static_cast<std::size_t>(a)] < v[static_cast<std::size_t>(b)]; });
        std::vector<double> ranks(n);
        std::size_t i = 0;
        while (i < n) {
            std::size_t j = i;
            while (j + 1 < n &&
                   v[static_cast<std::size_t>(order[j + 1])] ==
                       v[static_cast<std::size_t>(order[i])]) {
                ++j;
            }
            double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
            for (std::size_t k = i; k <= j; ++k) {
                ranks[static_cast<std::size_t>(order[k])] = avg;
            }
            i = j + 1;
        }
        return ranks;
    };
    std::vector<double> rx = ranks_of(x);
    std::vector<double> ry = ranks_of(y);
    double mx = std::accumulate(rx.begin(), rx.end(), 0.0) / static_cast<double>(rx.size());
    double my = std::accumulate(ry.begin(), ry.end(), 0.0) / static_cast<double>(ry.size());
    double cov = 0.0, vx = 0.0, vy = 0.0;
    for (std::size_t i = 0; i < rx.size(); ++i) {
        double dx = rx[i] - mx;
        double dy = ry[i] - my;
        cov += dx * dy;
        vx += dx * dx;
        vy += dy * dy;
    }
    if (vx == 0.0 || vy == 0.0) return 0.0;
    return cov / std::sqrt(vx * vy);
}

// ---------------------------------------------------------------------------
// experiment harness plumbing
// ---------------------------------------------------------------------------

namespace {

namespace fs = std::filesystem;

struct SeedWorld {
    SyntheticLeague world;
    std::vector<Fixture> schedule;
};

SeedWorld make_seed_world(const ExperimentConfig& config, int seed_index) {
    GeneratorParams params = config.generator;
    params.strength_seed = derive_seed(config.base_seed,
                                       {kWorldTag, static_cast<std::uint64_t>(seed_index)});
    // The effect table is shared across seeds (seeded by effect_seed alone),
    // so the learnable matchup structure is present in every paired seed.
    SeedWorld sw{make_synthetic_league(params), {}};
    sw.schedule = generate_schedule(
        params.n_teams,
        derive_seed(config.base_seed, {kScheduleTag, static_cast<std::uint64_t>(seed_index)}));
    return sw;
}

void persist_ground_truth(const std::string& out_dir, const ExperimentConfig& config) {
    fs::create_directories(fs::path(out_dir) / "ground_truth");
    for (int s = 0; s < config.n_seeds; ++s) {
        SeedWorld sw = make_seed_world(config, s);
        write_ground_truth_json(
            (fs::path(out_dir) / "ground_truth" / ("seed_" + std::to_string(s) + ".json"))
                .string(),
            sw.world);
    }
}

void write_summary(const std::string& out_dir, const ExperimentReport& report,
                   const ExperimentConfig& config) {
    nlohmann::ordered_json j;
    j["experiment"] = report.name;
    j["config_hash"] = report.config_hash;
    nlohmann::ordered_json metrics;
    for (const auto& [key, value] : report.metrics) metrics[key] = value;
    j["metrics"] = std::move(metrics);
    nlohmann::ordered_json cfg;
    std::istringstream text(config.canonical_text());
    std::string line;
    while (std::getline(text, line)) {
        std::size_t eq = line.find(" = ");
        cfg[line.substr(0, eq)] = line.substr(eq + 3);
    }
    j["config"] = std::move(cfg);
    std::ofstream out((fs::path(out_dir) / "summary.json").string());
    if (!out) throw std::runtime_error("cannot write summary.json under " + out_dir);
    out << j.dump(2) << '\n';
}

std::ofstream open_csv(const std::string& out_dir, const std::string& name,
                       const std::string& config_hash, const std::string& header) {
    std::ofstream out((fs::path(out_dir) / name).string());
    if (!out) throw std::runtime_error("cannot write " + name + " under " + out_dir);
    out << "# config_hash=" << config_hash << '\n';
    out << header << '\n';
    return out;
}

SeasonOptions base_season_options(const ExperimentConfig& config) {
    SeasonOptions opts;
    opts.mcmc_replicates = config.n_replicates;
    opts.n_workers = config.n_workers;
    opts.predictor_mode = config.predictor_mode;
    opts.fit = config.fit;
    opts.thresholds = config.thresholds;
    opts.expectimax_weight = config.expectimax_weight;
    opts.draw_credit = config.draw_credit;
    return opts;
}

int strength_ranked_team(const SyntheticLeague& world, int strength_rank) {
    std::vector<int> order(static_cast<std::size_t>(world.league.team_count()));
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        return world.league.team(a).attack_strength > world.league.team(b).attack_strength;
    });
    return order[static_cast<std::size_t>(strength_rank - 1)];
}

}  // namespace

// ---------------------------------------------------------------------------
// experiment 1: weekly look-ahead accuracy
// ---------------------------------------------------------------------------

ExperimentReport run_experiment1(const ExperimentConfig& config, const std::string& out_dir) {
    config.validate();
    fs::create_directories(out_dir);
    ExperimentReport report{"exp1", config.hash(), {}};

    int n_weeks = 2 * (config.generator.n_teams - 1);
    std::vector<double> mean_modal(static_cast<std::size_t>(n_weeks), 0.0);
    std::vector<double> mean_expected(static_cast<std::size_t>(n_weeks), 0.0);
    std::ofstream per_seed = open_csv(out_dir, "per_seed.csv", report.config_hash,
                                      "seed,week,abs_error_modal,abs_error_expected");

    for (int s = 0; s < config.n_seeds; ++s) {
        SeedWorld sw = make_seed_world(config, s);
        SeasonOptions opts = base_season_options(config);
        opts.record_weekly = true;
        SeasonResult season = run_season(
            sw.world, sw.schedule, opts,
            derive_seed(config.base_seed, {kSeasonTag, static_cast<std::uint64_t>(s)}));
        std::vector<double> modal =
            position_difference_curve(season.final_table.rank, season.weekly, false);
        std::vector<double> expected =
            position_difference_curve(season.final_table.rank, season.weekly, true);
        for (int w = 0; w < n_weeks; ++w) {
            mean_modal[static_cast<std::size_t>(w)] += modal[static_cast<std::size_t>(w)];
            mean_expected[static_cast<std::size_t>(w)] += expected[static_cast<std::size_t>(w)];
            per_seed << s << ',' << w << ',' << format_double(modal[static_cast<std::size_t>(w)], 12)
                     << ',' << format_double(expected[static_cast<std::size_t>(w)], 12) << '\n';
        }
    }
    for (double& v : mean_modal) v /= static_cast<double>(config.n_seeds);
    for (double& v : mean_expected) v /= static_cast<double>(config.n_seeds);

    std::ofstream curve = open_csv(out_dir, "curve.csv", report.config_hash,
                                   "week,mean_abs_error_modal,mean_abs_error_expected");
    std::vector<double> weeks(static_cast<std::size_t>(n_weeks));
    for (int w = 0; w < n_weeks; ++w) {
        weeks[static_cast<std::size_t>(w)] = static_cast<double>(w);
        curve << w << ',' << format_double(mean_modal[static_cast<std::size_t>(w)], 12) << ','
              << format_double(mean_expected[static_cast<std::size_t>(w)], 12) << '\n';
    }

    int early_end = std::min(n_weeks, 6);                 // weeks 0..5
    int late_begin = n_weeks > 30 ? 30 : (2 * n_weeks) / 3;  // weeks 30+ at full scale
    double early = 0.0, late = 0.0;
    for (int w = 0; w < early_end; ++w) early += mean_modal[static_cast<std::size_t>(w)];
    early /= static_cast<double>(early_end);
    for (int w = late_begin; w < n_weeks; ++w) late += mean_modal[static_cast<std::size_t>(w)];
    late /= static_cast<double>(n_weeks - late_begin);

    report.metrics["early_mean_abs_error"] = early;
    report.metrics["late_mean_abs_error"] = late;
    report.metrics["spearman_week_vs_error"] = spearman_correlation(weeks, mean_modal);
    report.metrics["final_week_abs_error"] = mean_modal.back();

    persist_ground_truth(out_dir, config);
    write_summary(out_dir, report, config);
    return report;
}

// ---------------------------------------------------------------------------
// experiment 2: objective-met accuracy
// ---------------------------------------------------------------------------

ExperimentReport run_experiment2(const ExperimentConfig& config, const std::string& out_dir) {
    config.validate();
    fs::create_directories(out_dir);
    ExperimentReport report{"exp2", config.hash(), {}};

    int n = config.generator.n_teams;
    int n_weeks = 2 * (n - 1);
    std::vector<ObjectiveBand> bands = default_bands(n);
    std::vector<double> map_mean(static_cast<std::size_t>(n_weeks), 0.0);
    std::vector<double> random_mean(static_cast<std::size_t>(n_weeks), 0.0);
    double oracle_pct = 0.0;
    double map_max = 0.0;
    std::ofstream per_seed = open_csv(out_dir, "per_seed.csv", report.config_hash,
                                      "seed,week,map_pct,random_pct");

    for (int s = 0; s < config.n_seeds; ++s) {
        SeedWorld sw = make_seed_world(config, s);
        SeasonOptions opts = base_season_options(config);
        opts.record_weekly = true;
        SeasonResult season = run_season(
            sw.world, sw.schedule, opts,
            derive_seed(config.base_seed, {kSeasonTag, static_cast<std::uint64_t>(s)}));

        std::vector<double> map_curve =
            objective_accuracy_curve(season.weekly_objectives, season.final_table.rank, bands);

        std::vector<std::vector<ObjectiveId>> random_objectives(
            static_cast<std::size_t>(n_weeks));
        for (int w = 0; w < n_weeks; ++w) {
            for (int t = 0; t < n; ++t) {
                Rng rng(derive_seed(config.base_seed,
                                    {kRandomObjectiveTag, static_cast<std::uint64_t>(s),
                                     static_cast<std::uint64_t>(w), static_cast<std::uint64_t>(t)}));
                random_objectives[static_cast<std::size_t>(w)].push_back(
                    static_cast<ObjectiveId>(rng.next_below(kObjectiveCount)));
            }
        }
        std::vector<double> random_curve =
            objective_accuracy_curve(random_objectives, season.final_table.rank, bands);

        // Perfect foresight: every team is assigned its realized band.
        std::vector<ObjectiveId> oracle_row;
        oracle_row.reserve(static_cast<std::size_t>(n));
        for (int t = 0; t < n; ++t) {
            oracle_row.push_back(
                realized_band(season.final_table.rank[static_cast<std::size_t>(t)], bands));
        }
        std::vector<double> oracle_curve = objective_accuracy_curve({oracle_row},
                                                                    season.final_table.rank, bands);
        oracle_pct += oracle_curve[0];

        for (int w = 0; w < n_weeks; ++w) {
            map_mean[static_cast<std::size_t>(w)] += map_curve[static_cast<std::size_t>(w)];
            random_mean[static_cast<std::size_t>(w)] += random_curve[static_cast<std::size_t>(w)];
            map_max = std::max(map_max, map_curve[static_cast<std::size_t>(w)]);
            per_seed << s << ',' << w << ','
                     << format_double(map_curve[static_cast<std::size_t>(w)], 12) << ','
                     << format_double(random_curve[static_cast<std::size_t>(w)], 12) << '\n';
        }
        if (s == 0) {
            write_objective_trace_csv((fs::path(out_dir) / "objective_trace_seed0.csv").string(),
                                      season.objective_trace);
        }
    }
    oracle_pct /= static_cast<double>(config.n_seeds);
    for (double& v : map_mean) v /= static_cast<double>(config.n_seeds);
    for (double& v : random_mean) v /= static_cast<double>(config.n_seeds);

    std::ofstream curve = open_csv(out_dir, "accuracy.csv", report.config_hash,
                                   "week,map_pct,random_pct,oracle_pct");
    double map_total = 0.0, random_total = 0.0;
    for (int w = 0; w < n_weeks; ++w) {
        map_total += map_mean[static_cast<std::size_t>(w)];
        random_total += random_mean[static_cast<std::size_t>(w)];
        curve << w << ',' << format_double(map_mean[static_cast<std::size_t>(w)], 12) << ','
              << format_double(random_mean[static_cast<std::size_t>(w)], 12) << ','
              << format_double(oracle_pct, 12) << '\n';
    }

    report.metrics["map_mean_pct"] = map_total / static_cast<double>(n_weeks);
    report.metrics["random_mean_pct"] = random_total / static_cast<double>(n_weeks);
    report.metrics["map_max_pct"] = map_max;
    report.metrics["map_final_pct"] = map_mean.back();
    report.metrics["oracle_pct"] = oracle_pct;

    persist_ground_truth(out_dir, config);
    write_summary(out_dir, report, config);
    return report;
}

// ---------------------------------------------------------------------------
// experiment 3: prediction with and without matchup evidence
// ---------------------------------------------------------------------------

namespace {

struct PairingEvidence {
    // actor-perspective outcome tallies per (our pair, opponent pair)
    EvidenceCounts counts;
    long long total_games = 0;
    long long total_wins = 0;
    long long total_draws = 0;

    explicit PairingEvidence(int n_pairs) : counts(n_pairs) {}

    void ingest(const TacticCatalog& catalog, const TacticRecord& rec, MatchOutcome outcome) {
        int x = catalog.pair_index(rec.home_tactic);
        int y = catalog.pair_index(rec.away_tactic);
        counts.add(GameObservation{ObservationSource::Observed, x, y,
                                   result_for(outcome, Side::Home)});
        counts.add(GameObservation{ObservationSource::Observed, y, x,
                                   result_for(outcome, Side::Away)});
        total_games += 2;
        total_wins += outcome == MatchOutcome::Draw ? 0 : 1;
        total_draws += outcome == MatchOutcome::Draw ? 2 : 0;
    }

    // Multiplicative tilt on (p_home, p_draw, p_away) from the smoothed
    // matchup outcome rates relative to the global rates. With no matchup
    // structure the two coincide and the tilt is flat.
    OutcomeDistribution adjust(const OutcomeDistribution& base, int home_pair, int away_pair,
                               double smoothing, double blend) const {
        const CellEvidence& cell = counts.at(home_pair, away_pair);
        double games = static_cast<double>(cell.observed_games);
        double wins = static_cast<double>(cell.observed_wins);
        double draws = static_cast<double>(cell.observed_draws);
        double losses = games - wins - draws;

        double g = static_cast<double>(total_games);
        double gw = static_cast<double>(total_wins);
        double gd = static_cast<double>(total_draws);
        double gl = g - gw - gd;

        auto rate = [&](double k, double tot) { return (k + smoothing) / (tot + 3.0 * smoothing); };
        double tilt_h = rate(wins, games) / rate(gw, g);
        double tilt_d = rate(draws, games) / rate(gd, g);
        double tilt_a = rate(losses, games) / rate(gl, g);

        double ph = base.p_home * std::pow(tilt_h, blend);
        double pd = base.p_draw * std::pow(tilt_d, blend);
        double pa = base.p_away * std::pow(tilt_a, blend);
        double z = ph + pd + pa;
        return OutcomeDistribution{ph / z, pd / z, pa / z};
    }
};

MatchOutcome argmax_outcome(const OutcomeDistribution& d) {
    if (d.p_home >= d.p_draw && d.p_home >= d.p_away) return MatchOutcome::HomeWin;
    if (d.p_away >= d.p_draw) return MatchOutcome::AwayWin;
    return MatchOutcome::Draw;
}

}  // namespace

ExperimentReport run_experiment3(const ExperimentConfig& config, const std::string& out_dir) {
    config.validate();
    fs::create_directories(out_dir);
    ExperimentReport report{"exp3", config.hash(), {}};

    std::ofstream per_seed = open_csv(
        out_dir, "per_seed.csv", report.config_hash,
        "seed,without_accuracy,with_accuracy,without_f1,with_f1");

    ConfusionMatrix total_without, total_with;
    int with_better = 0;
    double sum_without = 0.0, sum_with = 0.0, sum_abs_diff = 0.0;

    for (int s = 0; s < config.n_seeds; ++s) {
        SeedWorld sw = make_seed_world(config, s);
        SeasonOptions plain;  // uniform tactics, no weekly simulation
        SeasonResult train = run_season(
            sw.world, sw.schedule, plain,
            derive_seed(config.base_seed, {kExp3Tag, static_cast<std::uint64_t>(s), 0}));
        SeasonResult test = run_season(
            sw.world, sw.schedule, plain,
            derive_seed(config.base_seed, {kExp3Tag, static_cast<std::uint64_t>(s), 1}));

        PairingEvidence evidence(sw.world.catalog.n_pairs());
        for (std::size_t i = 0; i < train.results.size(); ++i) {
            evidence.ingest(sw.world.catalog, train.tactics[i], train.results[i].outcome);
        }

        StrengthOnlyModel base_model = true_strength_model(sw.world);
        ConfusionMatrix cm_without, cm_with;
        for (std::size_t i = 0; i < test.results.size(); ++i) {
            const Fixture& f = test.results[i].fixture;
            OutcomeDistribution base = base_model.predict_fixture(f.home, f.away);
            int x = sw.world.catalog.pair_index(test.tactics[i].home_tactic);
            int y = sw.world.catalog.pair_index(test.tactics[i].away_tactic);
            OutcomeDistribution adjusted =
                evidence.adjust(base, x, y, config.exp3_smoothing, config.exp3_blend);
            cm_without.add(test.results[i].outcome, argmax_outcome(base));
            cm_with.add(test.results[i].outcome, argmax_outcome(adjusted));
            total_without.add(test.results[i].outcome, argmax_outcome(base));
            total_with.add(test.results[i].outcome, argmax_outcome(adjusted));
        }
        ClassificationMetrics m_without = weighted_metrics(cm_without);
        ClassificationMetrics m_with = weighted_metrics(cm_with);
        if (m_with.accuracy > m_without.accuracy) ++with_better;
        sum_without += m_without.accuracy;
        sum_with += m_with.accuracy;
        sum_abs_diff += std::fabs(m_with.accuracy - m_without.accuracy);
        per_seed << s << ',' << format_double(m_without.accuracy, 12) << ','
                 << format_double(m_with.accuracy, 12) << ','
                 << format_double(m_without.f1, 12) << ',' << format_double(m_with.f1, 12)
                 << '\n';
    }

    ClassificationMetrics agg_without = weighted_metrics(total_without);
    ClassificationMetrics agg_with = weighted_metrics(total_with);
    std::ofstream metrics_csv = open_csv(out_dir, "metrics.csv", report.config_hash,
                                         "arm,accuracy,precision,recall,f1");
    auto emit = [&](const char* arm, const ClassificationMetrics& m) {
        metrics_csv << arm << ',' << format_double(m.accuracy, 12) << ','
                    << format_double(m.precision, 12) << ',' << format_double(m.recall, 12) << ','
                    << format_double(m.f1, 12) << '\n';
    };
    emit("without_p", agg_without);
    emit("with_p", agg_with);

    double n_seeds = static_cast<double>(config.n_seeds);
    report.metrics["accuracy_without_p"] = agg_without.accuracy;
    report.metrics["accuracy_with_p"] = agg_with.accuracy;
    report.metrics["f1_without_p"] = agg_without.f1;
    report.metrics["f1_with_p"] = agg_with.f1;
    report.metrics["seeds_with_p_better"] = static_cast<double>(with_better);
    report.metrics["mean_accuracy_without_p"] = sum_without / n_seeds;
    report.metrics["mean_accuracy_with_p"] = sum_with / n_seeds;
    report.metrics["mean_abs_accuracy_diff"] = sum_abs_diff / n_seeds;

    persist_ground_truth(out_dir, config);
    write_summary(out_dir, report, config);
    return report;
}

// ---------------------------------------------------------------------------
// experiment 4 and the all-teams arm
// ---------------------------------------------------------------------------

ExperimentReport run_experiment4(const ExperimentConfig& config, const std::string& out_dir) {
    config.validate();
    fs::create_directories(out_dir);
    ExperimentReport report{"exp4", config.hash(), {}};

    int n = config.generator.n_teams;
    std::ofstream improvement_csv = open_csv(
        out_dir, "improvement.csv", report.config_hash,
        "seed,target_team,baseline_mean_rank,optimized_mean_rank,improvement");
    std::vector<long long> baseline_hist(static_cast<std::size_t>(n), 0);
    std::vector<long long> optimized_hist(static_cast<std::size_t>(n), 0);

    double total_improvement = 0.0;
    int improved_seeds = 0;

    for (int s = 0; s < config.n_seeds; ++s) {
        SeedWorld sw = make_seed_world(config, s);
        int target = strength_ranked_team(sw.world, config.optimizer_strength_rank);

        double base_sum = 0.0, opt_sum = 0.0;
        for (int r = 0; r < config.inner_replicates; ++r) {
            std::uint64_t season_seed =
                derive_seed(config.base_seed, {kExp4Tag, static_cast<std::uint64_t>(s),
                                               static_cast<std::uint64_t>(r)});
            SeasonOptions baseline_opts;  // uniform field, no weekly simulation
            SeasonResult baseline = run_season(sw.world, sw.schedule, baseline_opts, season_seed);

            SeasonOptions opt_opts = base_season_options(config);
            opt_opts.optimizers.assign(static_cast<std::size_t>(n), false);
            opt_opts.optimizers[static_cast<std::size_t>(target)] = true;
            SeasonResult optimized = run_season(sw.world, sw.schedule, opt_opts, season_seed);

            int base_rank = baseline.final_table.rank[static_cast<std::size_t>(target)];
            int opt_rank = optimized.final_table.rank[static_cast<std::size_t>(target)];
            base_sum += static_cast<double>(base_rank);
            opt_sum += static_cast<double>(opt_rank);
            baseline_hist[static_cast<std::size_t>(base_rank - 1)] += 1;
            optimized_hist[static_cast<std::size_t>(opt_rank - 1)] += 1;

            if (s == 0 && r == 0) {
                write_decision_log_csv((fs::path(out_dir) / "decisions_seed0.csv").string(),
                                       optimized.decisions);
            }
        }
        double inner = static_cast<double>(config.inner_replicates);
        double base_mean = base_sum / inner;
        double opt_mean = opt_sum / inner;
        double improvement = base_mean - opt_mean;  // positive = finished higher
        total_improvement += improvement;
        if (improvement > 0.0) ++improved_seeds;
        improvement_csv << s << ',' << sw.world.league.team(target).id << ','
                        << format_double(base_mean, 12) << ',' << format_double(opt_mean, 12)
                        << ',' << format_double(improvement, 12) << '\n';
    }

    long long total_seasons =
        static_cast<long long>(config.n_seeds) * static_cast<long long>(config.inner_replicates);
    std::ofstream dist_csv = open_csv(out_dir, "distribution.csv", report.config_hash,
                                      "arm,rank,probability");
    for (int rank = 1; rank <= n; ++rank) {
        dist_csv << "baseline," << rank << ','
                 << format_double(static_cast<double>(
                                      baseline_hist[static_cast<std::size_t>(rank - 1)]) /
                                      static_cast<double>(total_seasons),
                                  12)
                 << '\n';
    }
    for (int rank = 1; rank <= n; ++rank) {
        dist_csv << "optimized," << rank << ','
                 << format_double(static_cast<double>(
                                      optimized_hist[static_cast<std::size_t>(rank - 1)]) /
                                      static_cast<double>(total_seasons),
                                  12)
                 << '\n';
    }

    double mean_base_rank = 0.0, mean_opt_rank = 0.0;
    for (int rank = 1; rank <= n; ++rank) {
        mean_base_rank += static_cast<double>(rank) *
                          static_cast<double>(baseline_hist[static_cast<std::size_t>(rank - 1)]);
        mean_opt_rank += static_cast<double>(rank) *
                         static_cast<double>(optimized_hist[static_cast<std::size_t>(rank - 1)]);
    }
    mean_base_rank /= static_cast<double>(total_seasons);
    mean_opt_rank /= static_cast<double>(total_seasons);

    report.metrics["mean_improvement"] = total_improvement / static_cast<double>(config.n_seeds);
    report.metrics["improved_seeds"] = static_cast<double>(improved_seeds);
    report.metrics["baseline_mean_expected_rank"] = mean_base_rank;
    report.metrics["optimized_mean_expected_rank"] = mean_opt_rank;

    persist_ground_truth(out_dir, config);
    write_summary(out_dir, report, config);
    return report;
}

ExperimentReport run_all_teams_arm(const ExperimentConfig& config, const std::string& out_dir) {
    config.validate();
    fs::create_directories(out_dir);
    ExperimentReport report{"all_teams", config.hash(), {}};

    int n = config.generator.n_teams;
    std::ofstream shift_csv = open_csv(out_dir, "shift.csv", report.config_hash,
                                       "seed,team,baseline_mean_rank,all_opt_mean_rank,shift");

    double mean_abs_shift_total = 0.0;
    double single_improvement_total = 0.0;
    double all_improvement_target_total = 0.0;

    for (int s = 0; s < config.n_seeds; ++s) {
        SeedWorld sw = make_seed_world(config, s);
        int target = strength_ranked_team(sw.world, config.optimizer_strength_rank);

        std::vector<double> base_rank_sum(static_cast<std::size_t>(n), 0.0);
        std::vector<double> all_rank_sum(static_cast<std::size_t>(n), 0.0);
        double single_rank_sum = 0.0;

        for (int r = 0; r < config.inner_replicates; ++r) {
            std::uint64_t season_seed =
                derive_seed(config.base_seed, {kExp4Tag, static_cast<std::uint64_t>(s),
                                               static_cast<std::uint64_t>(r)});
            SeasonOptions baseline_opts;
            SeasonResult baseline = run_season(sw.world, sw.schedule, baseline_opts, season_seed);

            SeasonOptions all_opts = base_season_options(config);
            all_opts.optimizers.assign(static_cast<std::size_t>(n), true);
            SeasonResult all_opt = run_season(sw.world, sw.schedule, all_opts, season_seed);

            SeasonOptions single_opts = base_season_options(config);
            single_opts.optimizers.assign(static_cast<std::size_t>(n), false);
            single_opts.optimizers[static_cast<std::size_t>(target)] = true;
            SeasonResult single = run_season(sw.world, sw.schedule, single_opts, season_seed);

            for (int t = 0; t < n; ++t) {
                base_rank_sum[static_cast<std::size_t>(t)] += static_cast<double>(
                    baseline.final_table.rank[static_cast<std::size_t>(t)]);
                all_rank_sum[static_cast<std::size_t>(t)] += static_cast<double>(
                    all_opt.final_table.rank[static_cast<std::size_t>(t)]);
            }
            single_rank_sum +=
                static_cast<double>(single.final_table.rank[static_cast<std::size_t>(target)]);
        }

        double inner = static_cast<double>(config.inner_replicates);
        double abs_shift = 0.0;
        for (int t = 0; t < n; ++t) {
            double base_mean = base_rank_sum[static_cast<std::size_t>(t)] / inner;
            double all_mean = all_rank_sum[static_cast<std::size_t>(t)] / inner;
            abs_shift += std::fabs(all_mean - base_mean);
            shift_csv << s << ',' << sw.world.league.team(t).id << ','
                      << format_double(base_mean, 12) << ',' << format_double(all_mean, 12) << ','
                      << format_double(all_mean - base_mean, 12) << '\n';
        }
        mean_abs_shift_total += abs_shift / static_cast<double>(n);

        double target_base_mean = base_rank_sum[static_cast<std::size_t>(target)] / inner;
        double target_all_mean = all_rank_sum[static_cast<std::size_t>(target)] / inner;
        single_improvement_total += target_base_mean - single_rank_sum / inner;
        all_improvement_target_total += target_base_mean - target_all_mean;
    }

    double n_seeds = static_cast<double>(config.n_seeds);
    report.metrics["mean_abs_shift"] = mean_abs_shift_total / n_seeds;
    report.metrics["single_optimizer_improvement"] = single_improvement_total / n_seeds;
    report.metrics["all_teams_target_improvement"] = all_improvement_target_total / n_seeds;

    persist_ground_truth(out_dir, config);
    write_summary(out_dir, report, config);
    return report;
}

// ---------------------------------------------------------------------------
// data ingestion
// ---------------------------------------------------------------------------

LeagueState ingest_data(const std::string& fixtures_csv,
                        const std::optional<std::string>& results_csv,
                        const std::optional<std::string>& tactics_csv,
                        const TacticCatalog* catalog) {
    FixtureFile ff = read_fixtures_csv(fixtures_csv);
    int n = ff.league.team_count();
    if (n < 2) {
        throw ValidationError(fixtures_csv + ": fewer than two teams in the fixture list");
    }
    int max_week = 2 * (n - 1) - 1;

    auto key_of = [](const Fixture& f) {
        return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(f.week)) << 40) ^
               (static_cast<std::uint64_t>(static_cast<std::uint32_t>(f.home)) << 20) ^
               static_cast<std::uint64_t>(static_cast<std::uint32_t>(f.away));
    };
    std::unordered_set<std::uint64_t> ordered_pairs;
    std::unordered_set<std::uint64_t> fixture_keys;
    std::unordered_set<std::uint64_t> team_weeks;
    for (std::size_t i = 0; i < ff.fixtures.size(); ++i) {
        const Fixture& f = ff.fixtures[i];
        int line = ff.lines[i];
        if (f.week > max_week) {
            throw ValidationError(fixtures_csv + ":" + std::to_string(line) + ": week " +
                                  std::to_string(f.week) + " is outside 0.." +
                                  std::to_string(max_week) + " for " + std::to_string(n) +
                                  " teams");
        }
        std::uint64_t pair_key = (static_cast<std::uint64_t>(f.home) << 20) ^
                                 static_cast<std::uint64_t>(static_cast<std::uint32_t>(f.away));
        if (!ordered_pairs.insert(pair_key).second) {
            throw ValidationError(fixtures_csv + ":" + std::to_string(line) +
                                  ": duplicate fixture " + ff.league.team(f.home).id + " vs " +
                                  ff.league.team(f.away).id);
        }
        fixture_keys.insert(key_of(f));
        for (int side_team : {f.home, f.away}) {
            std::uint64_t tw = (static_cast<std::uint64_t>(f.week) << 20) ^
                               static_cast<std::uint64_t>(side_team);
            if (!team_weeks.insert(tw).second) {
                throw ValidationError(fixtures_csv + ":" + std::to_string(line) + ": team '" +
                                      ff.league.team(side_team).id +
                                      "' has two fixtures in week " + std::to_string(f.week));
            }
        }
    }

    LeagueState state;
    state.league = std::move(ff.league);
    state.schedule = std::move(ff.fixtures);

    if (results_csv.has_value()) {
        state.results = read_results_csv(*results_csv, state.league);
        std::unordered_set<std::uint64_t> seen;
        for (const ResultRecord& r : state.results) {
            std::uint64_t key = key_of(r.fixture);
            if (fixture_keys.find(key) == fixture_keys.end()) {
                throw ValidationError(*results_csv + ": result for unscheduled fixture " +
                                      state.league.team(r.fixture.home).id + " vs " +
                                      state.league.team(r.fixture.away).id + " in week " +
                                      std::to_string(r.fixture.week));
            }
            if (!seen.insert(key).second) {
                throw ValidationError(*results_csv + ": duplicate result for fixture " +
                                      state.league.team(r.fixture.home).id + " vs " +
                                      state.league.team(r.fixture.away).id + " in week " +
                                      std::to_string(r.fixture.week));
            }
        }
    }

    if (tactics_csv.has_value()) {
        if (catalog == nullptr) {
            throw std::invalid_argument("ingest_data: a tactic catalog is required to load tactics");
        }
        std::vector<CsvRow> rows = read_csv_with_header(
            *tactics_csv, {"week", "home_id", "away_id", "home_style", "home_formation",
                           "away_style", "away_formation"});
        for (const CsvRow& row : rows) {
            TacticRecord rec;
            rec.fixture.week = parse_int_field(row, 0, *tactics_csv);
            int home = state.league.find(row.fields[1]);
            int away = state.league.find(row.fields[2]);
            if (home < 0 || away < 0) {
                throw ValidationError(*tactics_csv + ":" + std::to_string(row.line) +
                                      ": unknown team id '" +
                                      (home < 0 ? row.fields[1] : row.fields[2]) + "'");
            }
            rec.fixture.home = home;
            rec.fixture.away = away;
            if (fixture_keys.find(key_of(rec.fixture)) == fixture_keys.end()) {
                throw ValidationError(*tactics_csv + ":" + std::to_string(row.line) +
                                      ": tactics for unscheduled fixture");
            }
            rec.home_tactic = TacticPair{parse_int_field(row, 3, *tactics_csv),
                                         parse_int_field(row, 4, *tactics_csv)};
            rec.away_tactic = TacticPair{parse_int_field(row, 5, *tactics_csv),
                                         parse_int_field(row, 6, *tactics_csv)};
            if (!catalog->contains(rec.home_tactic) || !catalog->contains(rec.away_tactic)) {
                throw ValidationError(*tactics_csv + ":" + std::to_string(row.line) +
                                      ": tactic indices outside the declared catalog");
            }
            state.tactics.push_back(rec);
        }
    }
    return state;
}

}  // namespace leagueopt
