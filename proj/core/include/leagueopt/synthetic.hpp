#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "leagueopt/league.hpp"
#include "leagueopt/outcome_model.hpp"
#include "leagueopt/tactics.hpp"

namespace leagueopt {

// Ground-truth generator for desk-scale leagues. Team strengths are drawn
// from a seeded log-normal; tactic-pair interaction effects come from a
// seeded antisymmetric table so a matchup edge for one side is exactly the
// other side's deficit. Generator parameters are always persisted alongside
// experiment outputs so recovery can be measured.
struct GeneratorParams {
    int n_teams = 20;
    int n_styles = 2;
    int n_formations = 2;
    double strength_sigma = 0.5;    // sd of log strength
    double home_advantage = 0.25;   // shared latent home edge
    double draw_threshold = 0.5;    // ordered-logit cut point
    double effect_scale = 0.3;      // magnitude of tactic interaction effects
    std::uint64_t strength_seed = 1;
    std::uint64_t effect_seed = 7;
};

struct SyntheticLeague {
    League league;               // attack = defence = true strength
    TacticCatalog catalog;
    std::vector<double> effects;  // [our_pair][opp_pair], antisymmetric
    GeneratorParams params;

    double effect(int our_pair, int opponent_pair) const;
};

SyntheticLeague make_synthetic_league(const GeneratorParams&);

// The generating process itself: ordered-logit outcome probabilities on the
// strength difference, home advantage and the tactic matchup effect.
class TrueMatchModel : public MatchPredictor {
public:
    explicit TrueMatchModel(const SyntheticLeague& world) : world_(&world) {}
    OutcomeDistribution predict(const MatchContext& ctx) const override;

private:
    const SyntheticLeague* world_;
};

// Same strengths, blind to tactics. This is what an optimizing team's
// payoff model knows before any matchup evidence is collected.
class StrengthOnlyModel : public MatchPredictor {
public:
    StrengthOnlyModel(std::vector<double> strengths, double home_advantage,
                      double draw_threshold)
        : strengths_(std::move(strengths)),
          home_advantage_(home_advantage),
          draw_threshold_(draw_threshold) {}

    OutcomeDistribution predict(const MatchContext& ctx) const override;
    OutcomeDistribution predict_fixture(int home_team, int away_team) const;

    double strength(int team) const { return strengths_[static_cast<std::size_t>(team)]; }
    double home_advantage() const { return home_advantage_; }
    double draw_threshold() const { return draw_threshold_; }

private:
    std::vector<double> strengths_;
    double home_advantage_ = 0.0;
    double draw_threshold_ = 0.5;
};

StrengthOnlyModel true_strength_model(const SyntheticLeague&);

void write_ground_truth_json(const std::string& path, const SyntheticLeague&);

}  // namespace leagueopt
