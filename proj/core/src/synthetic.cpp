#include "leagueopt/synthetic.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include "json.hpp"
#include "leagueopt/rng.hpp"

namespace leagueopt {

double SyntheticLeague::effect(int our_pair, int opponent_pair) const {
    int n = catalog.n_pairs();
    if (our_pair < 0 || our_pair >= n || opponent_pair < 0 || opponent_pair >= n) {
        throw std::out_of_range("SyntheticLeague::effect: pair index out of range");
    }
    return effects[static_cast<std::size_t>(our_pair) * static_cast<std::size_t>(n) +
                   static_cast<std::size_t>(opponent_pair)];
}

SyntheticLeague make_synthetic_league(const GeneratorParams& params) {
    if (params.n_teams < 2 || params.n_teams % 2 != 0) {
        throw std::invalid_argument("synthetic league needs an even team count >= 2");
    }
    if (params.n_styles < 1 || params.n_formations < 1) {
        throw std::invalid_argument("synthetic league needs non-empty tactic catalogs");
    }
    SyntheticLeague world;
    world.params = params;
    world.catalog = TacticCatalog{params.n_styles, params.n_formations};

    Rng strength_rng(derive_seed(params.strength_seed, {0x57ull}));
    std::vector<Team> teams;
    teams.reserve(static_cast<std::size_t>(params.n_teams));
    for (int t = 0; t < params.n_teams; ++t) {
        Team team;
        team.id = "T" + std::to_string(t + 1);
        team.name = "Team " + std::to_string(t + 1);
        double s = std::exp(params.strength_sigma * strength_rng.next_normal());
        team.attack_strength = s;
        team.defence_strength = s;
        team.home_advantage = params.home_advantage;
        teams.push_back(std::move(team));
    }
    world.league = League(std::move(teams));

    // Antisymmetric matchup table: a per-pair quality difference plus a
    // skew-noise term, so some actions are better on average while matchups
    // stay zero-sum (one side's edge is the other's deficit).
    int n = world.catalog.n_pairs();
    Rng effect_rng(derive_seed(params.effect_seed, {0xEFFull}));
    std::vector<double> quality(static_cast<std::size_t>(n));
    for (double& q : quality) q = effect_rng.next_normal();
    std::vector<double> noise(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
    for (int x = 0; x < n; ++x) {
        for (int y = x + 1; y < n; ++y) {
            double c = 0.4 * effect_rng.next_normal();
            noise[static_cast<std::size_t>(x) * static_cast<std::size_t>(n) +
                  static_cast<std::size_t>(y)] = c;
            noise[static_cast<std::size_t>(y) * static_cast<std::size_t>(n) +
                  static_cast<std::size_t>(x)] = -c;
        }
    }
    world.effects.assign(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            world.effects[static_cast<std::size_t>(x) * static_cast<std::size_t>(n) +
                          static_cast<std::size_t>(y)] =
                params.effect_scale *
                (quality[static_cast<std::size_t>(x)] - quality[static_cast<std::size_t>(y)] +
                 noise[static_cast<std::size_t>(x) * static_cast<std::size_t>(n) +
                       static_cast<std::size_t>(y)]);
        }
    }
    return world;
}

OutcomeDistribution TrueMatchModel::predict(const MatchContext& ctx) const {
    const TacticCatalog& catalog = world_->catalog;
    int x = catalog.pair_index(ctx.home_tactic);
    int y = catalog.pair_index(ctx.away_tactic);
    double diff = ctx.home.attack_strength - ctx.away.defence_strength;
    double eta = diff + ctx.home.home_advantage + world_->effect(x, y);
    return ordered_outcome_probs(eta, 0.0, world_->params.draw_threshold);
}

OutcomeDistribution StrengthOnlyModel::predict(const MatchContext& ctx) const {
    double diff = ctx.home.attack_strength - ctx.away.defence_strength;
    return ordered_outcome_probs(diff, ctx.home.home_advantage, draw_threshold_);
}

OutcomeDistribution StrengthOnlyModel::predict_fixture(int home_team, int away_team) const {
    double diff = strength(home_team) - strength(away_team);
    return ordered_outcome_probs(diff, home_advantage_, draw_threshold_);
}

StrengthOnlyModel true_strength_model(const SyntheticLeague& world) {
    std::vector<double> strengths;
    strengths.reserve(static_cast<std::size_t>(world.league.team_count()));
    for (const Team& t : world.league.teams()) strengths.push_back(t.attack_strength);
    return StrengthOnlyModel(std::move(strengths), world.params.home_advantage,
                             world.params.draw_threshold);
}

void write_ground_truth_json(const std::string& path, const SyntheticLeague& world) {
    nlohmann::ordered_json j;
    j["n_teams"] = world.params.n_teams;
    j["n_styles"] = world.params.n_styles;
    j["n_formations"] = world.params.n_formations;
    j["strength_sigma"] = world.params.strength_sigma;
    j["home_advantage"] = world.params.home_advantage;
    j["draw_threshold"] = world.params.draw_threshold;
    j["effect_scale"] = world.params.effect_scale;
    j["strength_seed"] = world.params.strength_seed;
    j["effect_seed"] = world.params.effect_seed;
    nlohmann::ordered_json teams = nlohmann::ordered_json::array();
    for (const Team& t : world.league.teams()) {
        teams.push_back({{"id", t.id}, {"strength", t.attack_strength}});
    }
    j["teams"] = std::move(teams);
    j["effects"] = world.effects;
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << '\n';
}

}  // namespace leagueopt
