#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "leagueopt/league.hpp"
#include "leagueopt/tactics.hpp"

namespace leagueopt {

struct OutcomeDistribution {
    double p_home = 1.0 / 3.0;
    double p_draw = 1.0 / 3.0;
    double p_away = 1.0 / 3.0;

    double p_win(Side s) const { return s == Side::Home ? p_home : p_away; }
    double p_loss(Side s) const { return s == Side::Home ? p_away : p_home; }
    bool valid(double tol = 1e-9) const;
};

struct MatchContext {
    Team home;
    Team away;
    TacticPair home_tactic;
    TacticPair away_tactic;
};

// The same match seen from the other bench: teams and tactic choices trade
// places. Used both by the feature encoding and by symmetry tests.
MatchContext swapped(const MatchContext& ctx);

class MatchPredictor {
public:
    virtual ~MatchPredictor() = default;
    virtual OutcomeDistribution predict(const MatchContext& ctx) const = 0;
};

// ---------------------------------------------------------------------------
// Multinomial softmax classifier over {home win, draw, away win}.
//
// Features are encoded per side: one-hot own style and formation, one-hot
// opponent style and formation, (own attack - opp defence),
// (opp attack - own defence), and a venue term (+home_advantage for the home
// view, -home_advantage for the away view). Win scores for the two sides
// share one weight vector applied to the two views; the draw score sees the
// average of the views. With equal home advantages the encoding makes
// swapping the teams swap p_home and p_away identically, for any parameters.
// ---------------------------------------------------------------------------

struct TrainingExample {
    MatchContext ctx;
    MatchOutcome label = MatchOutcome::Draw;
};

int feature_dim(const TacticCatalog&);
std::vector<double> encode_side_features(const MatchContext&, Side, const TacticCatalog&);

struct ClassifierParams {
    TacticCatalog catalog;
    std::vector<double> win_weights;   // length feature_dim(catalog)
    std::vector<double> draw_weights;  // length feature_dim(catalog)
    double win_bias = 0.0;
    double draw_bias = 0.0;

    int parameter_count() const { return 2 * static_cast<int>(win_weights.size()) + 2; }
};

ClassifierParams zero_classifier(const TacticCatalog&);

// Flat views used by the finite-difference gradient check: layout is
// [win_weights | draw_weights | win_bias | draw_bias].
std::vector<double> flatten(const ClassifierParams&);
ClassifierParams unflatten(const TacticCatalog&, std::span<const double> flat);

OutcomeDistribution predict_outcome(const MatchContext&, const ClassifierParams&);

// Mean categorical cross-entropy over the examples.
double cross_entropy_loss(const ClassifierParams&, std::span<const TrainingExample>);
// Analytic gradient of cross_entropy_loss in the flat layout above.
std::vector<double> loss_gradient(const ClassifierParams&, std::span<const TrainingExample>);

struct TrainOptions {
    int epochs = 200;
    double learning_rate = 0.05;
    std::uint64_t seed = 0;
};

struct TrainReport {
    double initial_loss = 0.0;
    std::vector<double> epoch_loss;  // loss after each completed epoch
};

// Stochastic gradient descent on the cross-entropy loss, one example at a
// time, order reshuffled per epoch. Requires at least one example of each
// class.
TrainReport train_classifier(ClassifierParams&, std::span<const TrainingExample>,
                             const TrainOptions&);

double training_accuracy(const ClassifierParams&, std::span<const TrainingExample>);

class ClassifierPredictor : public MatchPredictor {
public:
    explicit ClassifierPredictor(ClassifierParams params) : params_(std::move(params)) {}
    OutcomeDistribution predict(const MatchContext& ctx) const override {
        return predict_outcome(ctx, params_);
    }
    const ClassifierParams& params() const { return params_; }

private:
    ClassifierParams params_;
};

// key = value text format, versioned; doubles rendered with 17 significant
// digits so save/load round-trips bit-exactly.
void save_classifier(const std::string& path, const ClassifierParams&);
ClassifierParams load_classifier(const std::string& path);

// ---------------------------------------------------------------------------
// Team strength fitting from results only (no goals anywhere in the model):
// an ordered-logit likelihood on {home win, draw, away win} driven by the
// strength difference plus a shared home advantage. Strengths are optimized
// through a softplus reparametrization so the returned values stay strictly
// positive and can be stored on Team records.
// ---------------------------------------------------------------------------

struct StrengthFit {
    std::vector<double> strengths;  // one per team, > 0
    double home_advantage = 0.0;
    double draw_threshold = 0.0;  // > 0
};

struct FitOptions {
    int iterations = 300;
    double learning_rate = 0.2;
};

StrengthFit fit_strengths(int n_teams, std::span<const ResultRecord> results,
                          const FitOptions& = {});

// P(home win / draw / away win) for latent edge = strength difference +
// home advantage under the ordered-logit link with symmetric cut points at
// +-draw_threshold.
OutcomeDistribution ordered_outcome_probs(double strength_diff, double home_advantage,
                                          double draw_threshold);

}  // namespace leagueopt
