#pragma once

#include <span>
#include <string>
#include <vector>

namespace leagueopt {

enum class ObservationSource { Played, Observed };
enum class GameResult { Win, Draw, Loss };

// One game seen from one side's perspective: the actor used pair x against
// an opponent using pair y. A game watched from the stands yields two of
// these, one per side. The result is kept three-valued so draws can be
// credited either way (see DrawCredit); `won()` is the plain reading.
struct GameObservation {
    ObservationSource source = ObservationSource::Observed;
    int our_pair = 0;
    int opponent_pair = 0;
    GameResult result = GameResult::Loss;

    bool won() const { return result == GameResult::Win; }
};

struct CellEvidence {
    int played_games = 0;
    int played_wins = 0;
    int played_draws = 0;
    int observed_games = 0;
    int observed_wins = 0;
    int observed_draws = 0;
};

class EvidenceCounts {
public:
    EvidenceCounts() = default;
    explicit EvidenceCounts(int n_pairs);

    int pair_count() const { return n_pairs_; }
    const CellEvidence& at(int our_pair, int opponent_pair) const;
    void add(const GameObservation&);

private:
    CellEvidence& cell(int x, int y);
    int n_pairs_ = 0;
    std::vector<CellEvidence> cells_;
};

// Pure form of EvidenceCounts::add.
EvidenceCounts record_observation(EvidenceCounts counts, const GameObservation&);

// How draws enter the win fractions: not at all (default), or as half a win.
enum class DrawCredit { None, Half };

// Effectiveness of pair x against pair y: the mean of the played and
// observed win fractions when both sources have games, the single available
// fraction when only one does, and the no-evidence value 1 otherwise.
double compute_weight(const CellEvidence&, DrawCredit = DrawCredit::None);

struct WeightMatrix {
    int n = 0;
    std::vector<double> w;  // row-major [our_pair][opponent_pair]

    double at(int our_pair, int opponent_pair) const;
    double& at(int our_pair, int opponent_pair);
};

WeightMatrix init_weights(int n_pairs);  // all entries exactly 1
WeightMatrix compute_weights(const EvidenceCounts&, DrawCredit = DrawCredit::None);

// Scales each action's scalar payoff by its weight against the given
// opponent pair. A zero weight zeroes the action out entirely.
std::vector<double> apply_weights(std::span<const double> payoffs, const WeightMatrix&,
                                  int opponent_pair);

// CSV: our_pair,opp_pair,weight,played_games,played_wins,observed_games,observed_wins
void write_weights_csv(const std::string& path, const EvidenceCounts&,
                       DrawCredit = DrawCredit::None);

}  // namespace leagueopt
