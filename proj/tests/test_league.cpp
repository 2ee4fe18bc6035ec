#include "doctest.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>

#include "leagueopt/csv.hpp"
#include "leagueopt/league.hpp"

using namespace leagueopt;

namespace {

std::vector<Team> make_teams(int n) {
    std::vector<Team> teams;
    for (int i = 0; i < n; ++i) {
        Team t;
        t.id = "T" + std::to_string(i + 1);
        t.name = t.id;
        teams.push_back(t);
    }
    return teams;
}

}  // namespace

TEST_CASE("points: win three, draw one, loss zero") {
    CHECK(points_for(MatchOutcome::HomeWin, Side::Home) == 3);
    CHECK(points_for(MatchOutcome::Draw, Side::Away) == 1);
    CHECK(points_for(MatchOutcome::Draw, Side::Home) == 1);
    CHECK(points_for(MatchOutcome::HomeWin, Side::Away) == 0);
    CHECK(points_for(MatchOutcome::AwayWin, Side::Home) == 0);
    CHECK(points_for(MatchOutcome::AwayWin, Side::Away) == 3);
}

TEST_CASE("schedule: 20 teams give 380 fixtures over 38 weeks") {
    std::vector<Fixture> fixtures = generate_schedule(20, 42);
    CHECK(fixtures.size() == 380);
    int max_week = 0;
    for (const Fixture& f : fixtures) max_week = std::max(max_week, f.week);
    CHECK(max_week == 37);
}

TEST_CASE("schedule: smallest league") {
    std::vector<Fixture> fixtures = generate_schedule(2, 0);
    REQUIRE(fixtures.size() == 2);
    CHECK(fixtures[0].week == 0);
    CHECK(fixtures[1].week == 1);
    CHECK(fixtures[0].home == fixtures[1].away);
    CHECK(fixtures[0].away == fixtures[1].home);
}

TEST_CASE("schedule: odd team counts are rejected") {
    CHECK_THROWS_AS(generate_schedule(5, 0), std::invalid_argument);
    CHECK_THROWS_AS(generate_schedule(0, 0), std::invalid_argument);
}

TEST_CASE("schedule: structural properties across sizes and seeds") {
    for (int n : {4, 6, 8}) {
        for (std::uint64_t seed : {0ull, 1ull, 99ull}) {
            std::vector<Fixture> fixtures = generate_schedule(n, seed);
            CHECK(static_cast<int>(fixtures.size()) == n * (n - 1));

            // one fixture per team per week, n/2 fixtures per week
            std::map<int, std::set<int>> teams_by_week;
            std::map<int, int> fixtures_by_week;
            std::set<std::pair<int, int>> ordered_pairs;
            for (const Fixture& f : fixtures) {
                CHECK(f.home != f.away);
                CHECK(teams_by_week[f.week].insert(f.home).second);
                CHECK(teams_by_week[f.week].insert(f.away).second);
                fixtures_by_week[f.week] += 1;
                CHECK(ordered_pairs.insert({f.home, f.away}).second);
            }
            CHECK(static_cast<int>(fixtures_by_week.size()) == 2 * (n - 1));
            for (const auto& [week, count] : fixtures_by_week) CHECK(count == n / 2);
            // every ordered pair covered exactly once
            CHECK(static_cast<int>(ordered_pairs.size()) == n * (n - 1));
        }
    }
}

TEST_CASE("schedule: four teams play three home and three away games") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        std::vector<Fixture> fixtures = generate_schedule(4, seed);
        std::vector<int> home(4, 0), away(4, 0);
        for (const Fixture& f : fixtures) {
            home[static_cast<std::size_t>(f.home)] += 1;
            away[static_cast<std::size_t>(f.away)] += 1;
        }
        for (int t = 0; t < 4; ++t) {
            CHECK(home[static_cast<std::size_t>(t)] == 3);
            CHECK(away[static_cast<std::size_t>(t)] == 3);
        }
    }
}

TEST_CASE("rank_table: forced order except the tied pair") {
    std::vector<int> points{10, 7, 7, 1};  // A, B, C, D
    for (std::uint64_t seed : {0ull, 7ull, 123ull}) {
        std::vector<int> rank = rank_table(points, seed);
        CHECK(rank[0] == 1);
        CHECK(rank[3] == 4);
        std::set<int> mid{rank[1], rank[2]};
        CHECK(mid == std::set<int>{2, 3});
    }
}

TEST_CASE("rank_table: equal points reach multiple permutations across seeds") {
    std::vector<int> points{5, 5, 5};
    std::set<std::vector<int>> seen;
    for (std::uint64_t seed = 0; seed < 1000; ++seed) {
        seen.insert(rank_table(points, seed));
    }
    CHECK(seen.size() >= 2);
}

TEST_CASE("rank_table: strictly decreasing points ignore the seed") {
    std::vector<int> points{30, 20, 10, 5};
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        std::vector<int> rank = rank_table(points, seed);
        CHECK(rank == std::vector<int>{1, 2, 3, 4});
    }
}

TEST_CASE("rank_table: invariant under adding a constant to all points") {
    std::vector<int> points{12, 7, 7, 3, 0};
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        std::vector<int> shifted = points;
        for (int& p : shifted) p += 11;
        CHECK(rank_table(points, seed) == rank_table(shifted, seed));
    }
}

TEST_CASE("standings: total points bookkeeping") {
    int n = 4;
    std::vector<Fixture> fixtures = generate_schedule(n, 3);
    // all home wins: total = 3 * n(n-1)
    std::vector<ResultRecord> results;
    for (const Fixture& f : fixtures) results.push_back({f, MatchOutcome::HomeWin});
    StandingsTable table = compute_standings(n, results, 0);
    int total = 0;
    for (int p : table.points) total += p;
    CHECK(total == 3 * n * (n - 1));
    std::vector<int> sorted_ranks = table.rank;
    std::sort(sorted_ranks.begin(), sorted_ranks.end());
    CHECK(sorted_ranks == std::vector<int>{1, 2, 3, 4});

    // draws award two points per game
    std::vector<ResultRecord> draws;
    for (const Fixture& f : fixtures) draws.push_back({f, MatchOutcome::Draw});
    StandingsTable drawn = compute_standings(n, draws, 0);
    total = 0;
    for (int p : drawn.points) total += p;
    CHECK(total == 2 * n * (n - 1));
    for (int t = 0; t < n; ++t) CHECK(drawn.played[static_cast<std::size_t>(t)] == 2 * (n - 1));
}

TEST_CASE("league: duplicate ids and bad strengths are rejected") {
    std::vector<Team> teams = make_teams(2);
    teams[1].id = teams[0].id;
    CHECK_THROWS_AS(League(teams), std::invalid_argument);

    teams = make_teams(2);
    teams[0].attack_strength = 0.0;
    CHECK_THROWS_AS(League(teams), std::invalid_argument);

    teams = make_teams(2);
    CHECK_THROWS_AS(League(teams).index_of("missing"), std::invalid_argument);
}

TEST_CASE("fixture and result files round-trip") {
    League league{make_teams(4)};
    std::vector<Fixture> fixtures = generate_schedule(4, 5);
    std::string fpath = "test_fixtures_tmp.csv";
    std::string rpath = "test_results_tmp.csv";
    write_fixtures_csv(fpath, league, fixtures);
    FixtureFile loaded = read_fixtures_csv(fpath);
    REQUIRE(loaded.fixtures.size() == fixtures.size());
    CHECK(loaded.league.team_count() == 4);
    for (std::size_t i = 0; i < fixtures.size(); ++i) {
        CHECK(loaded.league.team(loaded.fixtures[i].home).id == league.team(fixtures[i].home).id);
        CHECK(loaded.fixtures[i].week == fixtures[i].week);
    }

    std::vector<ResultRecord> results;
    for (std::size_t i = 0; i < fixtures.size(); ++i) {
        results.push_back({fixtures[i], i % 3 == 0 ? MatchOutcome::Draw : MatchOutcome::HomeWin});
    }
    write_results_csv(rpath, league, results);
    std::vector<ResultRecord> loaded_results = read_results_csv(rpath, league);
    REQUIRE(loaded_results.size() == results.size());
    CHECK(loaded_results[0].outcome == results[0].outcome);

    std::remove(fpath.c_str());
    std::remove(rpath.c_str());
}

TEST_CASE("fixture file errors carry the line number") {
    std::string path = "test_bad_fixtures_tmp.csv";
    {
        std::ofstream out(path);
        out << "week,home_id,away_id\n0,A,B\n1,C,C\n";
    }
    CHECK_THROWS_WITH_AS(read_fixtures_csv(path), doctest::Contains(":3:"), ValidationError);
    {
        std::ofstream out(path);
        out << "week,home\n";
    }
    CHECK_THROWS_AS(read_fixtures_csv(path), ParseError);
    {
        std::ofstream out(path);
        out << "week,home_id,away_id\nx,A,B\n";
    }
    CHECK_THROWS_WITH_AS(read_fixtures_csv(path), doctest::Contains(":2:"), ParseError);
    std::remove(path.c_str());
}

TEST_CASE("result file rejects unknown teams and outcome codes") {
    League league{make_teams(2)};
    std::string path = "test_bad_results_tmp.csv";
    {
        std::ofstream out(path);
        out << "week,home_id,away_id,outcome\n0,T1,T9,H\n";
    }
    CHECK_THROWS_AS(read_results_csv(path, league), ValidationError);
    {
        std::ofstream out(path);
        out << "week,home_id,away_id,outcome\n0,T1,T2,W\n";
    }
    CHECK_THROWS_AS(read_results_csv(path, league), ParseError);
    std::remove(path.c_str());
}
