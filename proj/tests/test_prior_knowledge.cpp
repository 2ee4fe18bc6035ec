#include "doctest.h"

#include <cstdio>
#include <fstream>

#include "leagueopt/prior_knowledge.hpp"
#include "leagueopt/rng.hpp"

using namespace leagueopt;

TEST_CASE("fresh weights are exactly one everywhere") {
    WeightMatrix m = init_weights(4);
    REQUIRE(m.n == 4);
    for (int x = 0; x < 4; ++x) {
        for (int y = 0; y < 4; ++y) CHECK(m.at(x, y) == 1.0);
    }
    CHECK_THROWS_AS(init_weights(0), std::invalid_argument);
}

TEST_CASE("recording observations updates only the matching cell and source") {
    EvidenceCounts counts(4);
    counts.add(GameObservation{ObservationSource::Played, 2, 3, GameResult::Win});
    CHECK(counts.at(2, 3).played_games == 1);
    CHECK(counts.at(2, 3).played_wins == 1);
    CHECK(counts.at(2, 3).observed_games == 0);
    CHECK(counts.at(3, 2).played_games == 0);

    counts.add(GameObservation{ObservationSource::Observed, 2, 3, GameResult::Loss});
    CHECK(counts.at(2, 3).observed_games == 1);
    CHECK(counts.at(2, 3).observed_wins == 0);

    // draws count as games without wins
    counts.add(GameObservation{ObservationSource::Played, 2, 3, GameResult::Draw});
    CHECK(counts.at(2, 3).played_games == 2);
    CHECK(counts.at(2, 3).played_wins == 1);
    CHECK(counts.at(2, 3).played_draws == 1);

    CHECK_THROWS_AS(counts.add(GameObservation{ObservationSource::Played, 4, 0, GameResult::Win}),
                    std::out_of_range);
}

TEST_CASE("record_observation is a pure update") {
    EvidenceCounts counts(2);
    EvidenceCounts updated =
        record_observation(counts, GameObservation{ObservationSource::Played, 0, 1, GameResult::Win});
    CHECK(counts.at(0, 1).played_games == 0);
    CHECK(updated.at(0, 1).played_games == 1);
}

TEST_CASE("weight formula: averaged fractions, single-source fallback, no-evidence one") {
    CellEvidence both;
    both.played_games = 3;
    both.played_wins = 2;
    both.observed_games = 5;
    both.observed_wins = 1;
    CHECK(compute_weight(both) == doctest::Approx(13.0 / 30.0).epsilon(1e-12));

    CellEvidence none;
    CHECK(compute_weight(none) == 1.0);

    CellEvidence hopeless;
    hopeless.played_games = 4;
    hopeless.observed_games = 6;
    CHECK(compute_weight(hopeless) == 0.0);

    CellEvidence played_only;
    played_only.played_games = 4;
    played_only.played_wins = 3;
    CHECK(compute_weight(played_only) == doctest::Approx(0.75));

    CellEvidence observed_only;
    observed_only.observed_games = 10;
    observed_only.observed_wins = 4;
    CHECK(compute_weight(observed_only) == doctest::Approx(0.4));
}

TEST_CASE("optional half credit for draws") {
    CellEvidence c;
    c.played_games = 4;
    c.played_wins = 1;
    c.played_draws = 2;
    CHECK(compute_weight(c, DrawCredit::None) == doctest::Approx(0.25));
    CHECK(compute_weight(c, DrawCredit::Half) == doctest::Approx(0.5));
}

TEST_CASE("weights stay in the unit interval whenever evidence exists") {
    Rng rng(61);
    for (int i = 0; i < 500; ++i) {
        CellEvidence c;
        c.played_games = rng.next_below(10);
        c.played_wins = c.played_games > 0 ? rng.next_below(c.played_games + 1) : 0;
        c.observed_games = rng.next_below(10);
        c.observed_wins = c.observed_games > 0 ? rng.next_below(c.observed_games + 1) : 0;
        double w = compute_weight(c);
        if (c.played_games == 0 && c.observed_games == 0) {
            CHECK(w == 1.0);
        } else {
            CHECK(w >= 0.0);
            CHECK(w <= 1.0);
        }
    }
}

TEST_CASE("weights move the right way with new wins and losses") {
    EvidenceCounts counts(2);
    for (int i = 0; i < 3; ++i) {
        counts.add(GameObservation{ObservationSource::Played, 0, 1,
                                   i % 2 == 0 ? GameResult::Win : GameResult::Loss});
    }
    double before = compute_weight(counts.at(0, 1));
    EvidenceCounts with_win =
        record_observation(counts, GameObservation{ObservationSource::Played, 0, 1, GameResult::Win});
    EvidenceCounts with_loss =
        record_observation(counts, GameObservation{ObservationSource::Played, 0, 1, GameResult::Loss});
    CHECK(compute_weight(with_win.at(0, 1)) >= before);
    CHECK(compute_weight(with_loss.at(0, 1)) <= before);
}

TEST_CASE("identical evidence streams give identical weights") {
    EvidenceCounts counts(3);
    auto feed = [&](int x, int y) {
        counts.add(GameObservation{ObservationSource::Played, x, y, GameResult::Win});
        counts.add(GameObservation{ObservationSource::Observed, x, y, GameResult::Draw});
        counts.add(GameObservation{ObservationSource::Observed, x, y, GameResult::Loss});
    };
    feed(0, 1);
    feed(2, 0);
    CHECK(compute_weight(counts.at(0, 1)) == compute_weight(counts.at(2, 0)));
}

TEST_CASE("applying weights scales payoffs and zero knocks an action out") {
    WeightMatrix m = init_weights(3);
    std::vector<double> payoffs{0.5, 0.8, 0.3};
    std::vector<double> unchanged = apply_weights(payoffs, m, 1);
    CHECK(unchanged == payoffs);

    m.at(1, 2) = 0.0;
    std::vector<double> weighted = apply_weights(payoffs, m, 2);
    CHECK(weighted[1] == 0.0);
    CHECK(weighted[0] == doctest::Approx(0.5));

    // uniform positive scaling keeps the argmax action
    WeightMatrix scaled = init_weights(3);
    for (double& w : scaled.w) w = 0.37;
    std::vector<double> s = apply_weights(payoffs, scaled, 0);
    auto argmax = [](const std::vector<double>& v) {
        return static_cast<int>(std::max_element(v.begin(), v.end()) - v.begin());
    };
    CHECK(argmax(s) == argmax(payoffs));

    CHECK_THROWS_AS(apply_weights(std::vector<double>{1.0, 2.0}, m, 0), std::invalid_argument);
}

TEST_CASE("weights export format") {
    EvidenceCounts counts(2);
    counts.add(GameObservation{ObservationSource::Played, 0, 1, GameResult::Win});
    std::string path = "test_weights_tmp.csv";
    write_weights_csv(path, counts);
    std::ifstream in(path);
    std::string header, row;
    std::getline(in, header);
    CHECK(header ==
          "our_pair,opp_pair,weight,played_games,played_wins,observed_games,observed_wins");
    std::getline(in, row);
    CHECK(row == "0,0,1,0,0,0,0");
    std::getline(in, row);
    CHECK(row == "0,1,1,1,1,0,0");
    std::remove(path.c_str());
}
