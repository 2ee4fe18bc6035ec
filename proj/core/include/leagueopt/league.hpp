#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace leagueopt {

enum class MatchOutcome { HomeWin, Draw, AwayWin };
enum class Side { Home, Away };

const char* outcome_code(MatchOutcome);          // "H", "D", "A"
MatchOutcome outcome_from_code(const std::string&);

struct Team {
    std::string id;
    std::string name;
    double attack_strength = 1.0;
    double defence_strength = 1.0;
    double home_advantage = 0.0;
};

// Immutable roster with id -> index lookup. All other types refer to teams
// by their index in this roster.
class League {
public:
    League() = default;
    explicit League(std::vector<Team> teams);

    int team_count() const { return static_cast<int>(teams_.size()); }
    const Team& team(int index) const;
    std::span<const Team> teams() const { return teams_; }
    int index_of(const std::string& id) const;       // throws on unknown id
    int find(const std::string& id) const;           // -1 on unknown id

private:
    std::vector<Team> teams_;
    std::unordered_map<std::string, int> by_id_;
};

struct Fixture {
    int week = 0;
    int home = 0;
    int away = 0;

    friend bool operator==(const Fixture&, const Fixture&) = default;
};

struct ResultRecord {
    Fixture fixture;
    MatchOutcome outcome = MatchOutcome::Draw;
};

struct StandingsTable {
    std::vector<int> points;
    std::vector<int> played;
    std::vector<int> rank;  // 1-based; permutation of 1..n_teams
};

// League points for one side of a completed game: win 3, draw 1, loss 0.
int points_for(MatchOutcome result, Side side);

// Double round-robin over an even number of teams: 2(n-1) weeks, one game
// per team per week, every ordered (home, away) pair exactly once. Built
// with the circle method on a seed-shuffled team order; the second half
// mirrors the first with venues swapped.
std::vector<Fixture> generate_schedule(int n_teams, std::uint64_t seed);

// Ranks teams by points (descending). Ties are broken by a uniform random
// permutation drawn from tie_break_seed, so tie uncertainty propagates into
// simulated position distributions instead of favouring roster order.
std::vector<int> rank_table(std::span<const int> points, std::uint64_t tie_break_seed);

StandingsTable compute_standings(int n_teams, std::span<const ResultRecord> results,
                                 std::uint64_t tie_break_seed);

// ---- fixture / result files ----
// fixtures: header "week,home_id,away_id"
// results:  header "week,home_id,away_id,outcome" with outcome in {H,D,A}

struct FixtureFile {
    League league;  // roster inferred from the fixture list, in order of first appearance
    std::vector<Fixture> fixtures;
    std::vector<int> lines;  // source line per fixture, for diagnostics
};

FixtureFile read_fixtures_csv(const std::string& path);
std::vector<ResultRecord> read_results_csv(const std::string& path, const League&);
void write_fixtures_csv(const std::string& path, const League&, std::span<const Fixture>);
void write_results_csv(const std::string& path, const League&, std::span<const ResultRecord>);

}  // namespace leagueopt
