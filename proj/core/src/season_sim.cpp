#include "leagueopt/season_sim.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>
#include <thread>
#include <unordered_map>
#include <unordered_set>

#include "leagueopt/csv.hpp"
#include "leagueopt/rng.hpp"

namespace leagueopt {

namespace {

constexpr std::uint64_t kReplicateStream = 0x5EA5ull;

std::uint64_t fixture_key(const Fixture& f) {
    return (static_cast<std::uint64_t>(static_cast<std::uint32_t>(f.week)) << 40) ^
           (static_cast<std::uint64_t>(static_cast<std::uint32_t>(f.home)) << 20) ^
           static_cast<std::uint64_t>(static_cast<std::uint32_t>(f.away));
}

int infer_team_count(std::span<const Fixture> schedule) {
    int n = 0;
    for (const Fixture& f : schedule) {
        n = std::max(n, std::max(f.home, f.away) + 1);
    }
    return n;
}

struct SimPlan {
    int n_teams = 0;
    std::vector<int> base_points;             // from completed results
    std::vector<const Fixture*> remaining;    // schedule order
    std::vector<OutcomeDistribution> dists;   // parallel to remaining
};

SimPlan build_plan(std::span<const Fixture> schedule, std::span<const ResultRecord> completed,
                   const FixturePredictor& predictor) {
    SimPlan plan;
    plan.n_teams = infer_team_count(schedule);
    plan.base_points.assign(static_cast<std::size_t>(plan.n_teams), 0);

    std::unordered_map<std::uint64_t, const Fixture*> scheduled;
    scheduled.reserve(schedule.size());
    for (const Fixture& f : schedule) {
        if (!scheduled.emplace(fixture_key(f), &f).second) {
            throw ValidationError("schedule contains a duplicate fixture (week " +
                                  std::to_string(f.week) + ")");
        }
    }
    std::unordered_set<std::uint64_t> played;
    played.reserve(completed.size());
    for (const ResultRecord& r : completed) {
        std::uint64_t key = fixture_key(r.fixture);
        if (scheduled.find(key) == scheduled.end()) {
            throw ValidationError("result for unscheduled fixture: week " +
                                  std::to_string(r.fixture.week) + ", teams " +
                                  std::to_string(r.fixture.home) + " vs " +
                                  std::to_string(r.fixture.away));
        }
        if (!played.insert(key).second) {
            throw ValidationError("duplicate result for fixture: week " +
                                  std::to_string(r.fixture.week) + ", teams " +
                                  std::to_string(r.fixture.home) + " vs " +
                                  std::to_string(r.fixture.away));
        }
        plan.base_points[static_cast<std::size_t>(r.fixture.home)] +=
            points_for(r.outcome, Side::Home);
        plan.base_points[static_cast<std::size_t>(r.fixture.away)] +=
            points_for(r.outcome, Side::Away);
    }
    for (const Fixture& f : schedule) {
        if (played.find(fixture_key(f)) == played.end()) {
            plan.remaining.push_back(&f);
        }
    }
    plan.dists.reserve(plan.remaining.size());
    for (const Fixture* f : plan.remaining) {
        OutcomeDistribution d = predictor(*f);
        if (!d.valid(1e-6)) {
            throw std::invalid_argument("predictor returned an invalid distribution for week " +
                                        std::to_string(f->week));
        }
        plan.dists.push_back(d);
    }
    return plan;
}

MatchOutcome sample_outcome(const OutcomeDistribution& d, double u) {
    if (u < d.p_home) return MatchOutcome::HomeWin;
    if (u < d.p_home + d.p_draw) return MatchOutcome::Draw;
    return MatchOutcome::AwayWin;
}

std::vector<int> run_replicate(const SimPlan& plan, std::uint64_t replicate_seed,
                               std::vector<int>& points_scratch) {
    points_scratch = plan.base_points;
    Rng rng(replicate_seed);
    for (std::size_t i = 0; i < plan.remaining.size(); ++i) {
        const Fixture& f = *plan.remaining[i];
        MatchOutcome o = sample_outcome(plan.dists[i], rng.next_unit());
        points_scratch[static_cast<std::size_t>(f.home)] += points_for(o, Side::Home);
        points_scratch[static_cast<std::size_t>(f.away)] += points_for(o, Side::Away);
    }
    return rank_table(points_scratch, rng.next_u64());
}

}  // namespace

PositionDistribution::PositionDistribution(int n_teams, long long n_replicates)
    : n_teams_(n_teams), n_replicates_(n_replicates) {
    counts_.assign(static_cast<std::size_t>(n_teams) * static_cast<std::size_t>(n_teams), 0);
}

long long PositionDistribution::count(int team, int rank) const {
    if (team < 0 || team >= n_teams_ || rank < 1 || rank > n_teams_) {
        throw std::out_of_range("PositionDistribution::count: team or rank out of range");
    }
    return counts_[static_cast<std::size_t>(team) * static_cast<std::size_t>(n_teams_) +
                   static_cast<std::size_t>(rank - 1)];
}

double PositionDistribution::probability(int team, int rank) const {
    return static_cast<double>(count(team, rank)) / static_cast<double>(n_replicates_);
}

std::vector<double> PositionDistribution::row(int team) const {
    std::vector<double> r(static_cast<std::size_t>(n_teams_));
    for (int rank = 1; rank <= n_teams_; ++rank) {
        r[static_cast<std::size_t>(rank - 1)] = probability(team, rank);
    }
    return r;
}

long long PositionDistribution::row_count_sum(int team) const {
    long long s = 0;
    for (int rank = 1; rank <= n_teams_; ++rank) s += count(team, rank);
    return s;
}

long long PositionDistribution::column_count_sum(int rank) const {
    long long s = 0;
    for (int team = 0; team < n_teams_; ++team) s += count(team, rank);
    return s;
}

void PositionDistribution::add_ranks(std::span<const int> rank_per_team) {
    if (static_cast<int>(rank_per_team.size()) != n_teams_) {
        throw std::invalid_argument("add_ranks: wrong team count");
    }
    for (int team = 0; team < n_teams_; ++team) {
        int rank = rank_per_team[static_cast<std::size_t>(team)];
        counts_[static_cast<std::size_t>(team) * static_cast<std::size_t>(n_teams_) +
                static_cast<std::size_t>(rank - 1)] += 1;
    }
}

void PositionDistribution::merge(const PositionDistribution& other) {
    if (other.n_teams_ != n_teams_) {
        throw std::invalid_argument("merge: mismatched team counts");
    }
    for (std::size_t i = 0; i < counts_.size(); ++i) counts_[i] += other.counts_[i];
}

StandingsTable sample_replicate(std::span<const Fixture> schedule,
                                std::span<const ResultRecord> completed,
                                const FixturePredictor& predictor,
                                std::uint64_t replicate_seed) {
    SimPlan plan = build_plan(schedule, completed, predictor);
    std::vector<int> points;
    std::vector<int> ranks = run_replicate(plan, replicate_seed, points);
    StandingsTable table;
    table.points = std::move(points);
    table.played.assign(static_cast<std::size_t>(plan.n_teams), 0);
    for (const Fixture& f : schedule) {
        table.played[static_cast<std::size_t>(f.home)] += 1;
        table.played[static_cast<std::size_t>(f.away)] += 1;
    }
    table.rank = std::move(ranks);
    return table;
}

PositionDistribution simulate_remaining(std::span<const Fixture> schedule,
                                        std::span<const ResultRecord> completed,
                                        const FixturePredictor& predictor,
                                        const SimulationConfig& config) {
    if (config.n_replicates < 1) {
        throw std::invalid_argument("simulate_remaining: n_replicates must be >= 1");
    }
    SimPlan plan = build_plan(schedule, completed, predictor);

    int workers = std::max(1, config.n_workers);
    auto worker_counts = [&](int begin, int end) {
        PositionDistribution local(plan.n_teams, 0);
        std::vector<int> points;
        for (int i = begin; i < end; ++i) {
            std::uint64_t seed = derive_seed(config.base_seed,
                                             {kReplicateStream, static_cast<std::uint64_t>(i)});
            std::vector<int> ranks = run_replicate(plan, seed, points);
            local.add_ranks(ranks);
        }
        return local;
    };

    PositionDistribution total(plan.n_teams, config.n_replicates);
    if (workers == 1) {
        total.merge(worker_counts(0, config.n_replicates));
    } else {
        std::vector<PositionDistribution> partials(static_cast<std::size_t>(workers));
        std::vector<std::thread> threads;
        int chunk = (config.n_replicates + workers - 1) / workers;
        for (int w = 0; w < workers; ++w) {
            int begin = w * chunk;
            int end = std::min(config.n_replicates, begin + chunk);
            if (begin >= end) break;
            threads.emplace_back([&, w, begin, end] {
                partials[static_cast<std::size_t>(w)] = worker_counts(begin, end);
            });
        }
        for (std::thread& t : threads) t.join();
        for (const PositionDistribution& p : partials) {
            if (p.team_count() == plan.n_teams) total.merge(p);
        }
    }
    return total;
}

double expected_position(std::span<const double> rank_probabilities) {
    double e = 0.0;
    for (std::size_t i = 0; i < rank_probabilities.size(); ++i) {
        e += static_cast<double>(i + 1) * rank_probabilities[i];
    }
    return e;
}

double expected_position(const PositionDistribution& d, int team) {
    std::vector<double> r = d.row(team);
    return expected_position(r);
}

int modal_position(std::span<const double> rank_probabilities) {
    if (rank_probabilities.empty()) {
        throw std::invalid_argument("modal_position: empty row");
    }
    int best = 1;
    double best_p = rank_probabilities[0];
    for (std::size_t i = 1; i < rank_probabilities.size(); ++i) {
        if (rank_probabilities[i] > best_p) {
            best_p = rank_probabilities[i];
            best = static_cast<int>(i + 1);
        }
    }
    return best;
}

int modal_position(const PositionDistribution& d, int team) {
    std::vector<double> r = d.row(team);
    return modal_position(r);
}

std::vector<double> position_difference_curve(std::span<const int> final_ranks,
                                              std::span<const PositionDistribution> weekly,
                                              bool use_expected) {
    std::vector<double> curve;
    curve.reserve(weekly.size());
    for (const PositionDistribution& d : weekly) {
        if (d.team_count() != static_cast<int>(final_ranks.size())) {
            throw std::invalid_argument("position_difference_curve: team count mismatch");
        }
        double total = 0.0;
        for (int team = 0; team < d.team_count(); ++team) {
            double predicted = use_expected ? expected_position(d, team)
                                            : static_cast<double>(modal_position(d, team));
            total += std::fabs(static_cast<double>(final_ranks[static_cast<std::size_t>(team)]) -
                               predicted);
        }
        curve.push_back(total / static_cast<double>(d.team_count()));
    }
    return curve;
}

void write_distribution_csv(const std::string& path, const League& league,
                            const PositionDistribution& d, std::uint64_t base_seed) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "# n_replicates=" << d.replicates() << ",base_seed=" << base_seed << '\n';
    out << "team_id,rank,probability\n";
    for (int team = 0; team < d.team_count(); ++team) {
        for (int rank = 1; rank <= d.team_count(); ++rank) {
            out << league.team(team).id << ',' << rank << ','
                << format_double(d.probability(team, rank), 12) << '\n';
        }
    }
}

FixturePredictor make_tactic_marginal_predictor(
    const League& league, const MatchPredictor& predictor, const TacticCatalog& catalog,
    std::vector<std::optional<TacticPair>> fixed_choices) {
    if (!fixed_choices.empty() &&
        static_cast<int>(fixed_choices.size()) != league.team_count()) {
        throw std::invalid_argument("fixed_choices must be empty or one entry per team");
    }
    return [&league, &predictor, catalog,
            fixed = std::move(fixed_choices)](const Fixture& f) -> OutcomeDistribution {
        auto actions_for = [&](int team) -> std::vector<TacticPair> {
            if (!fixed.empty() && fixed[static_cast<std::size_t>(team)].has_value()) {
                return {*fixed[static_cast<std::size_t>(team)]};
            }
            std::vector<TacticPair> all;
            all.reserve(static_cast<std::size_t>(catalog.n_pairs()));
            for (int i = 0; i < catalog.n_pairs(); ++i) all.push_back(catalog.pair_at(i));
            return all;
        };
        std::vector<TacticPair> home_actions = actions_for(f.home);
        std::vector<TacticPair> away_actions = actions_for(f.away);
        double ph = 0.0, pd = 0.0, pa = 0.0;
        for (const TacticPair& ht : home_actions) {
            for (const TacticPair& at : away_actions) {
                MatchContext ctx{league.team(f.home), league.team(f.away), ht, at};
                OutcomeDistribution d = predictor.predict(ctx);
                ph += d.p_home;
                pd += d.p_draw;
                pa += d.p_away;
            }
        }
        double n = static_cast<double>(home_actions.size() * away_actions.size());
        return OutcomeDistribution{ph / n, pd / n, pa / n};
    };
}

}  // namespace leagueopt
