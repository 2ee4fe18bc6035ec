#include "leagueopt/tactic_optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "leagueopt/csv.hpp"
#include "leagueopt/rng.hpp"

namespace leagueopt {

const char* policy_name(DecisionPolicy p) {
    switch (p) {
        case DecisionPolicy::BestResponse: return "best_response";
        case DecisionPolicy::Spiteful: return "spiteful";
        case DecisionPolicy::Expectimax: return "expectimax";
    }
    return "?";
}

const OutcomeDistribution& PayoffTable::cell(int formation, int style) const {
    if (formation < 0 || formation >= n_formations || style < 0 || style >= n_styles) {
        throw std::out_of_range("PayoffTable::cell out of range");
    }
    return cells[static_cast<std::size_t>(style * n_formations + formation)];
}

const OutcomeDistribution& PayoffTable::cell_by_pair(int pair_index) const {
    if (pair_index < 0 || pair_index >= static_cast<int>(cells.size())) {
        throw std::out_of_range("PayoffTable::cell_by_pair out of range");
    }
    return cells[static_cast<std::size_t>(pair_index)];
}

std::vector<PayoffTable> build_payoff_tables(const Team& us, const Team& them, Side our_side,
                                             const MatchPredictor& predictor,
                                             const TacticCatalog& ours,
                                             const TacticCatalog& theirs) {
    if (ours.n_pairs() < 1 || theirs.n_pairs() < 1) {
        throw std::invalid_argument("build_payoff_tables: empty tactic catalog");
    }
    std::vector<PayoffTable> tables;
    tables.reserve(static_cast<std::size_t>(theirs.n_pairs()));
    for (int y = 0; y < theirs.n_pairs(); ++y) {
        PayoffTable table;
        table.opponent_action = theirs.pair_at(y);
        table.n_styles = ours.n_styles;
        table.n_formations = ours.n_formations;
        table.cells.reserve(static_cast<std::size_t>(ours.n_pairs()));
        for (int x = 0; x < ours.n_pairs(); ++x) {
            TacticPair our_action = ours.pair_at(x);
            MatchContext ctx;
            if (our_side == Side::Home) {
                ctx = MatchContext{us, them, our_action, table.opponent_action};
            } else {
                ctx = MatchContext{them, us, table.opponent_action, our_action};
            }
            table.cells.push_back(predictor.predict(ctx));
        }
        tables.push_back(std::move(table));
    }
    return tables;
}

double scalar_payoff(const OutcomeDistribution& cell, DecisionPolicy policy, Side our_side,
                     double expectimax_weight) {
    double best_response = cell.p_win(our_side);
    double spiteful = 1.0 - cell.p_loss(our_side);
    switch (policy) {
        case DecisionPolicy::BestResponse: return best_response;
        case DecisionPolicy::Spiteful: return spiteful;
        case DecisionPolicy::Expectimax:
            return expectimax_weight * best_response + (1.0 - expectimax_weight) * spiteful;
    }
    return 0.0;
}

DecisionPolicy select_policy(ObjectiveId current_objective, const ObjectiveProbabilities& probs,
                             const PolicyThresholds& thresholds) {
    double p = probs.p[static_cast<std::size_t>(current_objective)];
    if (p < thresholds.on_track_low) return DecisionPolicy::BestResponse;
    if (p > thresholds.on_track_high) return DecisionPolicy::Spiteful;
    return DecisionPolicy::Expectimax;
}

std::vector<double> uniform_belief(int n_actions) {
    if (n_actions < 1) throw std::invalid_argument("uniform_belief: empty action space");
    return std::vector<double>(static_cast<std::size_t>(n_actions),
                               1.0 / static_cast<double>(n_actions));
}

TacticChoice choose_tactic(std::span<const PayoffTable> tables, const WeightMatrix& weights,
                           DecisionPolicy policy, std::span<const double> opponent_belief,
                           Side our_side, const TacticCatalog& ours, double expectimax_weight) {
    if (tables.empty() || ours.n_pairs() < 1) {
        throw std::invalid_argument("choose_tactic: empty payoff tables or catalog");
    }
    if (opponent_belief.size() != tables.size()) {
        throw std::invalid_argument("choose_tactic: belief length does not match table count");
    }
    int n_actions = ours.n_pairs();
    if (weights.n != n_actions) {
        throw std::invalid_argument("choose_tactic: weight matrix does not match our catalog");
    }
    int best = 0;
    double best_value = -1.0;
    for (int x = 0; x < n_actions; ++x) {
        double value = 0.0;
        for (std::size_t y = 0; y < tables.size(); ++y) {
            double scalar =
                scalar_payoff(tables[y].cell_by_pair(x), policy, our_side, expectimax_weight);
            value += opponent_belief[y] * weights.at(x, static_cast<int>(y)) * scalar;
        }
        if (value > best_value) {
            best_value = value;
            best = x;
        }
    }
    return TacticChoice{ours.pair_at(best), best, best_value};
}

InMatchPolicy in_match_policy(ScoreLine line, double p_objective_given_draw,
                              double reserve_threshold) {
    switch (line) {
        case ScoreLine::Losing: return InMatchPolicy::Aggressive;
        case ScoreLine::Winning: return InMatchPolicy::Reserved;
        case ScoreLine::Drawing:
            return p_objective_given_draw >= reserve_threshold ? InMatchPolicy::Reserved
                                                               : InMatchPolicy::Aggressive;
    }
    return InMatchPolicy::Reserved;
}

std::array<double, 3> decision_step_kernel(ScoreLine current,
                                           const std::array<double, 3>& tendency,
                                           std::optional<InMatchPolicy> policy, double delta,
                                           double volatility) {
    int s = static_cast<int>(current);
    // Lazy Metropolis step targeting the tendency: propose an adjacent state
    // with probability volatility/2 each and accept with min(1, q_t/q_s).
    std::array<double, 3> row{0.0, 0.0, 0.0};
    double qs = tendency[static_cast<std::size_t>(s)];
    auto accept = [&](int t) {
        double qt = tendency[static_cast<std::size_t>(t)];
        if (qs <= 0.0) return 1.0;
        return std::min(1.0, qt / qs);
    };
    double up = s < 2 ? 0.5 * volatility * accept(s + 1) : 0.0;
    double down = s > 0 ? 0.5 * volatility * accept(s - 1) : 0.0;
    row[static_cast<std::size_t>(s)] = 1.0 - up - down;
    if (s < 2) row[static_cast<std::size_t>(s + 1)] = up;
    if (s > 0) row[static_cast<std::size_t>(s - 1)] = down;

    if (policy.has_value() && delta > 0.0) {
        if (*policy == InMatchPolicy::Aggressive) {
            // Push delta onto the move toward Winning; from Winning that
            // means holding the state. Take mass from staying first, then
            // from the downward move.
            int target = std::min(s + 1, 2);
            double need = delta;
            double from_stay = std::min(need, row[static_cast<std::size_t>(s)]);
            if (target == s) from_stay = 0.0;
            row[static_cast<std::size_t>(s)] -= from_stay;
            need -= from_stay;
            if (need > 0.0 && s > 0) {
                double from_down = std::min(need, row[static_cast<std::size_t>(s - 1)]);
                row[static_cast<std::size_t>(s - 1)] -= from_down;
                need -= from_down;
            }
            row[static_cast<std::size_t>(target)] += delta - need;
        } else {
            // Reserved: move delta from both transitions onto staying put.
            double movable = (s < 2 ? row[static_cast<std::size_t>(s + 1)] : 0.0) +
                             (s > 0 ? row[static_cast<std::size_t>(s - 1)] : 0.0);
            double take = std::min(delta, movable);
            if (movable > 0.0) {
                double scale = (movable - take) / movable;
                if (s < 2) row[static_cast<std::size_t>(s + 1)] *= scale;
                if (s > 0) row[static_cast<std::size_t>(s - 1)] *= scale;
                row[static_cast<std::size_t>(s)] += take;
            }
        }
    }
    // Renormalize against drift from the clamps above.
    double total = row[0] + row[1] + row[2];
    for (double& v : row) v /= total;
    return row;
}

namespace {

ScoreLine sample_line(const std::array<double, 3>& probs, double u) {
    if (u < probs[0]) return ScoreLine::Losing;
    if (u < probs[0] + probs[1]) return ScoreLine::Drawing;
    return ScoreLine::Winning;
}

}  // namespace

MatchOutcome simulate_match_with_decisions(const OutcomeDistribution& pre_match, Side our_side,
                                           const InMatchConfig& config, std::uint64_t seed) {
    if (config.decision_points < 0) {
        throw std::invalid_argument("simulate_match_with_decisions: negative decision points");
    }
    std::array<double, 3> tendency{pre_match.p_loss(our_side), pre_match.p_draw,
                                   pre_match.p_win(our_side)};
    Rng rng(seed);
    ScoreLine line = sample_line(tendency, rng.next_unit());
    for (int k = 0; k < config.decision_points; ++k) {
        std::optional<InMatchPolicy> policy;
        if (config.policy_enabled) {
            policy = in_match_policy(line, config.p_objective_given_draw,
                                     config.reserve_threshold);
        }
        std::array<double, 3> row = decision_step_kernel(line, tendency, policy,
                                                         config.aggression_delta,
                                                         config.volatility);
        line = sample_line(row, rng.next_unit());
    }
    bool we_are_home = our_side == Side::Home;
    switch (line) {
        case ScoreLine::Winning: return we_are_home ? MatchOutcome::HomeWin : MatchOutcome::AwayWin;
        case ScoreLine::Losing: return we_are_home ? MatchOutcome::AwayWin : MatchOutcome::HomeWin;
        case ScoreLine::Drawing: return MatchOutcome::Draw;
    }
    return MatchOutcome::Draw;
}

MatchOutcome simulate_match_with_decisions(const MatchContext& ctx,
                                           const MatchPredictor& predictor, Side our_side,
                                           const InMatchConfig& config, std::uint64_t seed) {
    return simulate_match_with_decisions(predictor.predict(ctx), our_side, config, seed);
}

void write_decision_log_csv(const std::string& path, std::span<const DecisionLogRow> rows) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "week,team_id,policy,our_style,our_formation,expected_payoff\n";
    for (const DecisionLogRow& row : rows) {
        out << row.week << ',' << row.team_id << ',' << policy_name(row.policy) << ','
            << row.tactic.style << ',' << row.tactic.formation << ','
            << format_double(row.expected_payoff, 12) << '\n';
    }
}

}  // namespace leagueopt
