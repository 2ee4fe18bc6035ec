#include "leagueopt/prior_knowledge.hpp"

#include <fstream>
#include <stdexcept>

#include "leagueopt/csv.hpp"

namespace leagueopt {

EvidenceCounts::EvidenceCounts(int n_pairs) : n_pairs_(n_pairs) {
    if (n_pairs < 1) {
        throw std::invalid_argument("EvidenceCounts: need at least one tactic pair");
    }
    cells_.assign(static_cast<std::size_t>(n_pairs) * static_cast<std::size_t>(n_pairs), {});
}

const CellEvidence& EvidenceCounts::at(int our_pair, int opponent_pair) const {
    if (our_pair < 0 || our_pair >= n_pairs_ || opponent_pair < 0 || opponent_pair >= n_pairs_) {
        throw std::out_of_range("EvidenceCounts: pair index out of range");
    }
    return cells_[static_cast<std::size_t>(our_pair) * static_cast<std::size_t>(n_pairs_) +
                  static_cast<std::size_t>(opponent_pair)];
}

CellEvidence& EvidenceCounts::cell(int x, int y) {
    return const_cast<CellEvidence&>(at(x, y));
}

void EvidenceCounts::add(const GameObservation& obs) {
    CellEvidence& c = cell(obs.our_pair, obs.opponent_pair);
    if (obs.source == ObservationSource::Played) {
        c.played_games += 1;
        if (obs.result == GameResult::Win) c.played_wins += 1;
        if (obs.result == GameResult::Draw) c.played_draws += 1;
    } else {
        c.observed_games += 1;
        if (obs.result == GameResult::Win) c.observed_wins += 1;
        if (obs.result == GameResult::Draw) c.observed_draws += 1;
    }
}

EvidenceCounts record_observation(EvidenceCounts counts, const GameObservation& obs) {
    counts.add(obs);
    return counts;
}

double compute_weight(const CellEvidence& c, DrawCredit credit) {
    double draw_value = credit == DrawCredit::Half ? 0.5 : 0.0;
    double played = static_cast<double>(c.played_games);
    double observed = static_cast<double>(c.observed_games);
    double played_frac = 0.0;
    double observed_frac = 0.0;
    if (played > 0.0) {
        played_frac =
            (static_cast<double>(c.played_wins) + draw_value * c.played_draws) / played;
    }
    if (observed > 0.0) {
        observed_frac =
            (static_cast<double>(c.observed_wins) + draw_value * c.observed_draws) / observed;
    }
    if (played > 0.0 && observed > 0.0) return (played_frac + observed_frac) / 2.0;
    if (played > 0.0) return played_frac;
    if (observed > 0.0) return observed_frac;
    return 1.0;
}

double WeightMatrix::at(int our_pair, int opponent_pair) const {
    if (our_pair < 0 || our_pair >= n || opponent_pair < 0 || opponent_pair >= n) {
        throw std::out_of_range("WeightMatrix: pair index out of range");
    }
    return w[static_cast<std::size_t>(our_pair) * static_cast<std::size_t>(n) +
             static_cast<std::size_t>(opponent_pair)];
}

double& WeightMatrix::at(int our_pair, int opponent_pair) {
    if (our_pair < 0 || our_pair >= n || opponent_pair < 0 || opponent_pair >= n) {
        throw std::out_of_range("WeightMatrix: pair index out of range");
    }
    return w[static_cast<std::size_t>(our_pair) * static_cast<std::size_t>(n) +
             static_cast<std::size_t>(opponent_pair)];
}

WeightMatrix init_weights(int n_pairs) {
    if (n_pairs < 1) {
        throw std::invalid_argument("init_weights: need at least one tactic pair");
    }
    WeightMatrix m;
    m.n = n_pairs;
    m.w.assign(static_cast<std::size_t>(n_pairs) * static_cast<std::size_t>(n_pairs), 1.0);
    return m;
}

WeightMatrix compute_weights(const EvidenceCounts& counts, DrawCredit credit) {
    WeightMatrix m = init_weights(counts.pair_count());
    for (int x = 0; x < counts.pair_count(); ++x) {
        for (int y = 0; y < counts.pair_count(); ++y) {
            m.at(x, y) = compute_weight(counts.at(x, y), credit);
        }
    }
    return m;
}

std::vector<double> apply_weights(std::span<const double> payoffs, const WeightMatrix& matrix,
                                  int opponent_pair) {
    if (static_cast<int>(payoffs.size()) != matrix.n) {
        throw std::invalid_argument("apply_weights: payoff count " +
                                    std::to_string(payoffs.size()) +
                                    " does not match weight matrix size " +
                                    std::to_string(matrix.n));
    }
    std::vector<double> weighted(payoffs.size());
    for (int x = 0; x < matrix.n; ++x) {
        weighted[static_cast<std::size_t>(x)] =
            payoffs[static_cast<std::size_t>(x)] * matrix.at(x, opponent_pair);
    }
    return weighted;
}

void write_weights_csv(const std::string& path, const EvidenceCounts& counts,
                       DrawCredit credit) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "our_pair,opp_pair,weight,played_games,played_wins,observed_games,observed_wins\n";
    for (int x = 0; x < counts.pair_count(); ++x) {
        for (int y = 0; y < counts.pair_count(); ++y) {
            const CellEvidence& c = counts.at(x, y);
            out << x << ',' << y << ',' << format_double(compute_weight(c, credit), 12) << ','
                << c.played_games << ',' << c.played_wins << ',' << c.observed_games << ','
                << c.observed_wins << '\n';
        }
    }
}

}  // namespace leagueopt
