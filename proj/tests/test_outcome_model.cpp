#include "doctest.h"

#include <cmath>
#include <cstdio>

#include "leagueopt/outcome_model.hpp"
#include "leagueopt/rng.hpp"

using namespace leagueopt;

namespace {

Team make_team(const std::string& id, double attack, double defence, double home_adv) {
    Team t;
    t.id = id;
    t.name = id;
    t.attack_strength = attack;
    t.defence_strength = defence;
    t.home_advantage = home_adv;
    return t;
}

MatchContext random_context(Rng& rng, const TacticCatalog& catalog, double home_adv) {
    MatchContext ctx;
    ctx.home = make_team("H", 0.5 + rng.next_unit(), 0.5 + rng.next_unit(), home_adv);
    ctx.away = make_team("A", 0.5 + rng.next_unit(), 0.5 + rng.next_unit(), home_adv);
    ctx.home_tactic = TacticPair{rng.next_below(catalog.n_styles),
                                 rng.next_below(catalog.n_formations)};
    ctx.away_tactic = TacticPair{rng.next_below(catalog.n_styles),
                                 rng.next_below(catalog.n_formations)};
    return ctx;
}

ClassifierParams random_params(Rng& rng, const TacticCatalog& catalog) {
    ClassifierParams p = zero_classifier(catalog);
    for (double& w : p.win_weights) w = rng.next_normal();
    for (double& w : p.draw_weights) w = rng.next_normal();
    p.win_bias = rng.next_normal();
    p.draw_bias = rng.next_normal();
    return p;
}

}  // namespace

TEST_CASE("zero parameters predict the uniform distribution") {
    TacticCatalog catalog{2, 2};
    ClassifierParams params = zero_classifier(catalog);
    Rng rng(11);
    MatchContext ctx = random_context(rng, catalog, 0.3);
    OutcomeDistribution d = predict_outcome(ctx, params);
    CHECK(d.p_home == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(d.p_draw == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
    CHECK(d.p_away == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("predictions always form a probability distribution") {
    TacticCatalog catalog{3, 2};
    Rng rng(17);
    for (int i = 0; i < 200; ++i) {
        ClassifierParams params = random_params(rng, catalog);
        MatchContext ctx = random_context(rng, catalog, rng.next_unit());
        OutcomeDistribution d = predict_outcome(ctx, params);
        CHECK(d.valid(1e-9));
    }
}

TEST_CASE("swapping home and away with zero home advantage swaps the win probabilities") {
    TacticCatalog catalog{3, 2};
    Rng rng(23);
    for (int i = 0; i < 200; ++i) {
        ClassifierParams params = random_params(rng, catalog);
        MatchContext ctx = random_context(rng, catalog, 0.0);
        OutcomeDistribution d = predict_outcome(ctx, params);
        OutcomeDistribution s = predict_outcome(swapped(ctx), params);
        CHECK(d.p_home == doctest::Approx(s.p_away).epsilon(1e-12));
        CHECK(d.p_away == doctest::Approx(s.p_home).epsilon(1e-12));
        CHECK(d.p_draw == doctest::Approx(s.p_draw).epsilon(1e-12));
    }
}

TEST_CASE("initial loss on zero parameters is ln 3 per example") {
    TacticCatalog catalog{2, 2};
    ClassifierParams params = zero_classifier(catalog);
    Rng rng(31);
    std::vector<TrainingExample> examples;
    for (int i = 0; i < 12; ++i) {
        examples.push_back({random_context(rng, catalog, 0.2),
                            static_cast<MatchOutcome>(i % 3)});
    }
    CHECK(cross_entropy_loss(params, examples) ==
          doctest::Approx(std::log(3.0)).epsilon(1e-12));
}

TEST_CASE("analytic gradient matches central finite differences") {
    TacticCatalog catalog{2, 2};
    Rng rng(37);
    for (int trial = 0; trial < 5; ++trial) {
        ClassifierParams params = random_params(rng, catalog);
        std::vector<TrainingExample> examples;
        for (int i = 0; i < 6; ++i) {
            examples.push_back({random_context(rng, catalog, rng.next_unit()),
                                static_cast<MatchOutcome>(rng.next_below(3))});
        }
        std::vector<double> analytic = loss_gradient(params, examples);
        std::vector<double> flat = flatten(params);
        double h = 1e-6;
        for (std::size_t i = 0; i < flat.size(); ++i) {
            std::vector<double> plus = flat, minus = flat;
            plus[i] += h;
            minus[i] -= h;
            double fp = cross_entropy_loss(unflatten(catalog, plus), examples);
            double fm = cross_entropy_loss(unflatten(catalog, minus), examples);
            double numeric = (fp - fm) / (2.0 * h);
            double denom = std::max(1e-8, std::fabs(analytic[i]) + std::fabs(numeric));
            CHECK(std::fabs(analytic[i] - numeric) / denom < 1e-5);
        }
    }
}

TEST_CASE("training fits a separable three-class toy set perfectly") {
    TacticCatalog catalog{3, 2};
    // Home style fully determines the result: style 0 home wins, style 1
    // draws, style 2 away wins.
    std::vector<TrainingExample> examples;
    Rng rng(41);
    for (int i = 0; i < 30; ++i) {
        int style = i % 3;
        MatchContext ctx = random_context(rng, catalog, 0.0);
        ctx.home_tactic.style = style;
        ctx.away_tactic.style = (style + 1) % 3;
        examples.push_back({ctx, static_cast<MatchOutcome>(style)});
    }
    ClassifierParams params = zero_classifier(catalog);
    TrainOptions options;
    options.epochs = 800;
    options.learning_rate = 0.25;
    options.seed = 7;
    TrainReport report = train_classifier(params, examples, options);
    CHECK(training_accuracy(params, examples) == doctest::Approx(1.0));
    CHECK(report.epoch_loss.back() <= report.epoch_loss.front());
    CHECK(report.epoch_loss.back() < report.initial_loss);
}

TEST_CASE("training requires every class to be present") {
    TacticCatalog catalog{2, 2};
    Rng rng(43);
    std::vector<TrainingExample> examples;
    for (int i = 0; i < 10; ++i) {
        examples.push_back({random_context(rng, catalog, 0.1), MatchOutcome::HomeWin});
    }
    ClassifierParams params = zero_classifier(catalog);
    CHECK_THROWS_AS(train_classifier(params, examples, TrainOptions{}), std::invalid_argument);
    examples.clear();
    CHECK_THROWS_AS(train_classifier(params, examples, TrainOptions{}), std::invalid_argument);
}

TEST_CASE("higher home attack never lowers the home win probability of a fitted model") {
    TacticCatalog catalog{2, 2};
    // Train on data where the stronger side wins more often.
    Rng rng(47);
    std::vector<TrainingExample> examples;
    for (int i = 0; i < 400; ++i) {
        MatchContext ctx = random_context(rng, catalog, 0.0);
        double edge = (ctx.home.attack_strength - ctx.away.defence_strength) -
                      (ctx.away.attack_strength - ctx.home.defence_strength);
        double u = rng.next_unit();
        OutcomeDistribution d = ordered_outcome_probs(edge, 0.1, 0.5);
        MatchOutcome label = u < d.p_home
                                 ? MatchOutcome::HomeWin
                                 : (u < d.p_home + d.p_draw ? MatchOutcome::Draw
                                                            : MatchOutcome::AwayWin);
        examples.push_back({ctx, label});
    }
    ClassifierParams params = zero_classifier(catalog);
    TrainOptions options;
    options.epochs = 60;
    options.learning_rate = 0.05;
    options.seed = 3;
    train_classifier(params, examples, options);

    MatchContext probe = random_context(rng, catalog, 0.0);
    double last = -1.0;
    for (double attack = 0.5; attack <= 2.5; attack += 0.1) {
        probe.home.attack_strength = attack;
        double p = predict_outcome(probe, params).p_home;
        CHECK(p >= last - 1e-12);
        last = p;
    }
}

TEST_CASE("classifier parameters round-trip bit-exactly through the text format") {
    TacticCatalog catalog{4, 3};
    Rng rng(53);
    ClassifierParams params = random_params(rng, catalog);
    std::string path = "test_classifier_tmp.txt";
    save_classifier(path, params);
    ClassifierParams loaded = load_classifier(path);
    CHECK(loaded.catalog == params.catalog);
    CHECK(loaded.win_bias == params.win_bias);
    CHECK(loaded.draw_bias == params.draw_bias);
    for (std::size_t i = 0; i < params.win_weights.size(); ++i) {
        CHECK(loaded.win_weights[i] == params.win_weights[i]);
        CHECK(loaded.draw_weights[i] == params.draw_weights[i]);
    }
    std::remove(path.c_str());
}

TEST_CASE("strength fitting: symmetric results give equal strengths") {
    // Two teams, four meetings, every outcome mirrored.
    std::vector<ResultRecord> results{
        {{0, 0, 1}, MatchOutcome::HomeWin}, {{1, 1, 0}, MatchOutcome::HomeWin},
        {{2, 0, 1}, MatchOutcome::AwayWin}, {{3, 1, 0}, MatchOutcome::AwayWin},
    };
    StrengthFit fit = fit_strengths(2, results, FitOptions{400, 0.2});
    CHECK(fit.strengths[0] == doctest::Approx(fit.strengths[1]).epsilon(1e-6));
    CHECK(fit.strengths[0] > 0.0);
    CHECK(fit.draw_threshold > 0.0);
}

TEST_CASE("strength fitting: the team that wins everything gets the top strength") {
    std::vector<Fixture> fixtures = generate_schedule(4, 9);
    std::vector<ResultRecord> results;
    for (const Fixture& f : fixtures) {
        MatchOutcome o;
        if (f.home == 0) o = MatchOutcome::HomeWin;
        else if (f.away == 0) o = MatchOutcome::AwayWin;
        else o = f.week % 2 == 0 ? MatchOutcome::HomeWin : MatchOutcome::Draw;
        results.push_back({f, o});
    }
    StrengthFit fit = fit_strengths(4, results, FitOptions{400, 0.2});
    for (int t = 1; t < 4; ++t) {
        CHECK(fit.strengths[0] > fit.strengths[static_cast<std::size_t>(t)]);
    }
}

TEST_CASE("strength fitting: degenerate inputs fail loudly") {
    CHECK_THROWS_AS(fit_strengths(2, {}, FitOptions{}), std::invalid_argument);
    std::vector<ResultRecord> results{{{0, 0, 1}, MatchOutcome::Draw}};
    // team 2 never plays
    CHECK_THROWS_WITH_AS(fit_strengths(3, results, FitOptions{}), doctest::Contains("2"),
                         std::invalid_argument);
}

TEST_CASE("ordered outcome probabilities are symmetric and valid") {
    OutcomeDistribution d = ordered_outcome_probs(0.0, 0.0, 0.5);
    CHECK(d.valid(1e-12));
    CHECK(d.p_home == doctest::Approx(d.p_away).epsilon(1e-12));
    OutcomeDistribution strong = ordered_outcome_probs(3.0, 0.0, 0.5);
    CHECK(strong.p_home > 0.9);
}
