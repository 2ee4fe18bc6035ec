#include "leagueopt/league.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <stdexcept>

#include "leagueopt/csv.hpp"
#include "leagueopt/rng.hpp"

namespace leagueopt {

const char* outcome_code(MatchOutcome o) {
    switch (o) {
        case MatchOutcome::HomeWin: return "H";
        case MatchOutcome::Draw: return "D";
        case MatchOutcome::AwayWin: return "A";
    }
    return "?";
}

MatchOutcome outcome_from_code(const std::string& s) {
    if (s == "H") return MatchOutcome::HomeWin;
    if (s == "D") return MatchOutcome::Draw;
    if (s == "A") return MatchOutcome::AwayWin;
    throw std::invalid_argument("unknown outcome code '" + s + "' (expected H, D or A)");
}

League::League(std::vector<Team> teams) : teams_(std::move(teams)) {
    for (int i = 0; i < static_cast<int>(teams_.size()); ++i) {
        const Team& t = teams_[static_cast<std::size_t>(i)];
        if (t.id.empty()) {
            throw std::invalid_argument("team at index " + std::to_string(i) + " has an empty id");
        }
        if (t.attack_strength <= 0.0 || t.defence_strength <= 0.0) {
            throw std::invalid_argument("team '" + t.id + "' has non-positive strength");
        }
        if (t.home_advantage < 0.0) {
            throw std::invalid_argument("team '" + t.id + "' has negative home advantage");
        }
        if (!by_id_.emplace(t.id, i).second) {
            throw std::invalid_argument("duplicate team id '" + t.id + "'");
        }
    }
}

const Team& League::team(int index) const {
    if (index < 0 || index >= team_count()) {
        throw std::out_of_range("team index " + std::to_string(index) + " out of range");
    }
    return teams_[static_cast<std::size_t>(index)];
}

int League::index_of(const std::string& id) const {
    int i = find(id);
    if (i < 0) {
        throw std::invalid_argument("unknown team id '" + id + "'");
    }
    return i;
}

int League::find(const std::string& id) const {
    auto it = by_id_.find(id);
    return it == by_id_.end() ? -1 : it->second;
}

int points_for(MatchOutcome result, Side side) {
    if (result == MatchOutcome::Draw) return 1;
    bool home_won = result == MatchOutcome::HomeWin;
    bool we_won = (side == Side::Home) == home_won;
    return we_won ? 3 : 0;
}

std::vector<Fixture> generate_schedule(int n_teams, std::uint64_t seed) {
    if (n_teams < 2 || n_teams % 2 != 0) {
        throw std::invalid_argument("schedule requires an even team count >= 2, got " +
                                    std::to_string(n_teams));
    }
    std::vector<int> order(static_cast<std::size_t>(n_teams));
    std::iota(order.begin(), order.end(), 0);
    Rng rng(derive_seed(seed, {0x5C11ull}));
    shuffle_indices(order.data(), n_teams, rng);

    // Circle method: order[0] stays fixed, the rest rotate one slot per round.
    int rounds = n_teams - 1;
    int half = n_teams / 2;
    std::vector<Fixture> fixtures;
    fixtures.reserve(static_cast<std::size_t>(n_teams) * static_cast<std::size_t>(rounds));
    for (int r = 0; r < rounds; ++r) {
        std::vector<int> line(static_cast<std::size_t>(n_teams));
        line[0] = order[0];
        for (int k = 1; k < n_teams; ++k) {
            int rotated = 1 + ((k - 1 + r) % (n_teams - 1));
            line[static_cast<std::size_t>(k)] = order[static_cast<std::size_t>(rotated)];
        }
        for (int i = 0; i < half; ++i) {
            int a = line[static_cast<std::size_t>(i)];
            int b = line[static_cast<std::size_t>(n_teams - 1 - i)];
            bool a_home = ((r + i) % 2) == 0;
            Fixture f;
            f.week = r;
            f.home = a_home ? a : b;
            f.away = a_home ? b : a;
            fixtures.push_back(f);
        }
    }
    // Mirror with swapped venues; each ordered pair then appears exactly once.
    std::size_t first_half = fixtures.size();
    for (std::size_t i = 0; i < first_half; ++i) {
        Fixture f = fixtures[i];
        fixtures.push_back(Fixture{f.week + rounds, f.away, f.home});
    }
    return fixtures;
}

std::vector<int> rank_table(std::span<const int> points, std::uint64_t tie_break_seed) {
    int n = static_cast<int>(points.size());
    std::vector<int> priority(static_cast<std::size_t>(n));
    std::iota(priority.begin(), priority.end(), 0);
    Rng rng(derive_seed(tie_break_seed, {0x71Eull}));
    shuffle_indices(priority.data(), n, rng);
    // priority[i] is team i's position in a random permutation; among equal
    // points, lower priority ranks first.
    std::vector<int> slot(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) slot[static_cast<std::size_t>(priority[static_cast<std::size_t>(i)])] = i;

    std::vector<int> teams(static_cast<std::size_t>(n));
    std::iota(teams.begin(), teams.end(), 0);
    std::sort(teams.begin(), teams.end(), [&](int a, int b) {
        if (points[static_cast<std::size_t>(a)] != points[static_cast<std::size_t>(b)]) {
            return points[static_cast<std::size_t>(a)] > points[static_cast<std::size_t>(b)];
        }
        return slot[static_cast<std::size_t>(a)] < slot[static_cast<std::size_t>(b)];
    });
    std::vector<int> rank(static_cast<std::size_t>(n));
    for (int pos = 0; pos < n; ++pos) {
        rank[static_cast<std::size_t>(teams[static_cast<std::size_t>(pos)])] = pos + 1;
    }
    return rank;
}

StandingsTable compute_standings(int n_teams, std::span<const ResultRecord> results,
                                 std::uint64_t tie_break_seed) {
    StandingsTable table;
    table.points.assign(static_cast<std::size_t>(n_teams), 0);
    table.played.assign(static_cast<std::size_t>(n_teams), 0);
    for (const ResultRecord& r : results) {
        if (r.fixture.home < 0 || r.fixture.home >= n_teams || r.fixture.away < 0 ||
            r.fixture.away >= n_teams) {
            throw std::out_of_range("result references a team index outside the league");
        }
        table.points[static_cast<std::size_t>(r.fixture.home)] += points_for(r.outcome, Side::Home);
        table.points[static_cast<std::size_t>(r.fixture.away)] += points_for(r.outcome, Side::Away);
        table.played[static_cast<std::size_t>(r.fixture.home)] += 1;
        table.played[static_cast<std::size_t>(r.fixture.away)] += 1;
    }
    table.rank = rank_table(table.points, tie_break_seed);
    return table;
}

FixtureFile read_fixtures_csv(const std::string& path) {
    std::vector<CsvRow> rows = read_csv_with_header(path, {"week", "home_id", "away_id"});
    std::vector<Team> teams;
    std::unordered_map<std::string, int> index;
    auto intern = [&](const std::string& id) {
        auto it = index.find(id);
        if (it != index.end()) return it->second;
        int i = static_cast<int>(teams.size());
        Team t;
        t.id = id;
        t.name = id;
        index.emplace(id, i);
        teams.push_back(std::move(t));
        return i;
    };
    std::vector<Fixture> fixtures;
    std::vector<int> lines;
    for (const CsvRow& row : rows) {
        Fixture f;
        f.week = parse_int_field(row, 0, path);
        f.home = intern(row.fields[1]);
        f.away = intern(row.fields[2]);
        if (f.home == f.away) {
            throw ValidationError(path + ":" + std::to_string(row.line) +
                                  ": fixture pits team '" + row.fields[1] + "' against itself");
        }
        if (f.week < 0) {
            throw ValidationError(path + ":" + std::to_string(row.line) + ": negative week");
        }
        fixtures.push_back(f);
        lines.push_back(row.line);
    }
    return FixtureFile{League(std::move(teams)), std::move(fixtures), std::move(lines)};
}

std::vector<ResultRecord> read_results_csv(const std::string& path, const League& league) {
    std::vector<CsvRow> rows =
        read_csv_with_header(path, {"week", "home_id", "away_id", "outcome"});
    std::vector<ResultRecord> results;
    for (const CsvRow& row : rows) {
        ResultRecord r;
        r.fixture.week = parse_int_field(row, 0, path);
        int home = league.find(row.fields[1]);
        int away = league.find(row.fields[2]);
        if (home < 0 || away < 0) {
            throw ValidationError(path + ":" + std::to_string(row.line) + ": unknown team id '" +
                                  (home < 0 ? row.fields[1] : row.fields[2]) + "'");
        }
        r.fixture.home = home;
        r.fixture.away = away;
        try {
            r.outcome = outcome_from_code(row.fields[3]);
        } catch (const std::invalid_argument& e) {
            throw ParseError(path + ":" + std::to_string(row.line) + ": " + e.what());
        }
        results.push_back(r);
    }
    return results;
}

void write_fixtures_csv(const std::string& path, const League& league,
                        std::span<const Fixture> fixtures) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "week,home_id,away_id\n";
    for (const Fixture& f : fixtures) {
        out << f.week << ',' << league.team(f.home).id << ',' << league.team(f.away).id << '\n';
    }
}

void write_results_csv(const std::string& path, const League& league,
                       std::span<const ResultRecord> results) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "week,home_id,away_id,outcome\n";
    for (const ResultRecord& r : results) {
        out << r.fixture.week << ',' << league.team(r.fixture.home).id << ','
            << league.team(r.fixture.away).id << ',' << outcome_code(r.outcome) << '\n';
    }
}

}  // namespace leagueopt
