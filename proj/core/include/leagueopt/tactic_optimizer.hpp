#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "leagueopt/objectives.hpp"
#include "leagueopt/outcome_model.hpp"
#include "leagueopt/prior_knowledge.hpp"
#include "leagueopt/tactics.hpp"

namespace leagueopt {

// Pre-match stance, chosen from how the week's objective is tracking:
// BestResponse maximises our win probability, Spiteful minimises the
// opponent's, Expectimax blends the two.
enum class DecisionPolicy { BestResponse, Spiteful, Expectimax };
const char* policy_name(DecisionPolicy);

enum class InMatchPolicy { Aggressive, Reserved };
enum class ScoreLine { Losing = 0, Drawing = 1, Winning = 2 };

struct ScoreState {
    ScoreLine line = ScoreLine::Drawing;
    int decision_point = 0;  // 0-based index into the match's decision points
};

// Outcome distributions for every one of our actions against one fixed
// opponent action. Rows are formations, columns styles; the flat action
// index matches TacticCatalog::pair_index.
struct PayoffTable {
    TacticPair opponent_action;
    int n_styles = 0;
    int n_formations = 0;
    std::vector<OutcomeDistribution> cells;  // indexed by our pair index

    const OutcomeDistribution& cell(int formation, int style) const;
    const OutcomeDistribution& cell_by_pair(int pair_index) const;
};

// One table per opponent action, in opponent pair-index order.
std::vector<PayoffTable> build_payoff_tables(const Team& us, const Team& them, Side our_side,
                                             const MatchPredictor&, const TacticCatalog& ours,
                                             const TacticCatalog& theirs);

// BestResponse: p(our win). Spiteful: 1 - p(opponent win). Expectimax:
// convex blend, expectimax_weight on the BestResponse term.
double scalar_payoff(const OutcomeDistribution&, DecisionPolicy, Side our_side,
                     double expectimax_weight = 0.5);

struct PolicyThresholds {
    double on_track_low = 0.4;
    double on_track_high = 0.75;
};

// Behind the objective (p < low) -> BestResponse; comfortably ahead
// (p > high) -> Spiteful; otherwise on track -> Expectimax.
DecisionPolicy select_policy(ObjectiveId current_objective, const ObjectiveProbabilities&,
                             const PolicyThresholds& = {});

struct TacticChoice {
    TacticPair pair;
    int pair_index = 0;
    double expected_payoff = 0.0;
};

std::vector<double> uniform_belief(int n_actions);

// argmax over our actions of sum_y belief(y) * weight(x, y) * scalar(cell);
// ties break to the lowest action index.
TacticChoice choose_tactic(std::span<const PayoffTable> tables, const WeightMatrix&,
                           DecisionPolicy, std::span<const double> opponent_belief,
                           Side our_side, const TacticCatalog& ours,
                           double expectimax_weight = 0.5);

// Aggressive pushes for a better score line; Reserved protects the current
// one. When drawing, the call rests on whether a point keeps the objective
// alive: p_objective_given_draw at or above the threshold settles for it.
InMatchPolicy in_match_policy(ScoreLine, double p_objective_given_draw,
                              double reserve_threshold = 0.5);

// ---------------------------------------------------------------------------
// Coarse in-match chain over {Losing, Drawing, Winning} from our side's
// perspective. The kickoff state is drawn from the pre-match outcome
// distribution; each decision point applies a lazy Metropolis step whose
// stationary distribution is exactly that tendency, so with no policy (or
// delta 0) the terminal marginal equals the pre-match model at every
// decision count. Policies then tilt single steps: Aggressive moves delta
// probability onto the upward transition, Reserved onto staying put.
// ---------------------------------------------------------------------------

struct InMatchConfig {
    int decision_points = 3;        // minute-30/60/80 buckets
    double aggression_delta = 0.05;
    double volatility = 0.3;        // probability a decision point perturbs the state at all
    double p_objective_given_draw = 0.5;
    double reserve_threshold = 0.5;
    bool policy_enabled = true;
};

// Next-state probabilities {Losing, Drawing, Winning} for one decision point.
std::array<double, 3> decision_step_kernel(ScoreLine current,
                                           const std::array<double, 3>& tendency,
                                           std::optional<InMatchPolicy> policy, double delta,
                                           double volatility);

MatchOutcome simulate_match_with_decisions(const OutcomeDistribution& pre_match, Side our_side,
                                           const InMatchConfig&, std::uint64_t seed);
MatchOutcome simulate_match_with_decisions(const MatchContext&, const MatchPredictor&,
                                           Side our_side, const InMatchConfig&,
                                           std::uint64_t seed);

struct DecisionLogRow {
    int week = 0;
    std::string team_id;
    DecisionPolicy policy = DecisionPolicy::Expectimax;
    TacticPair tactic;
    double expected_payoff = 0.0;
};

// CSV: week,team_id,policy,our_style,our_formation,expected_payoff
void write_decision_log_csv(const std::string& path, std::span<const DecisionLogRow>);

}  // namespace leagueopt
