#pragma once

#include <stdexcept>
#include <string>

namespace leagueopt {

struct TacticPair {
    int style = 0;
    int formation = 0;

    friend bool operator==(const TacticPair&, const TacticPair&) = default;
};

// The declared action space: styles x formations. A style/formation pair is
// flattened to a single index (style-major) wherever a weight matrix or
// payoff table needs one.
struct TacticCatalog {
    int n_styles = 1;
    int n_formations = 1;

    int n_pairs() const { return n_styles * n_formations; }

    bool contains(const TacticPair& p) const {
        return p.style >= 0 && p.style < n_styles && p.formation >= 0 &&
               p.formation < n_formations;
    }

    void require(const TacticPair& p) const {
        if (!contains(p)) {
            throw std::out_of_range("tactic pair (style " + std::to_string(p.style) +
                                    ", formation " + std::to_string(p.formation) +
                                    ") outside catalog " + std::to_string(n_styles) + "x" +
                                    std::to_string(n_formations));
        }
    }

    int pair_index(const TacticPair& p) const {
        require(p);
        return p.style * n_formations + p.formation;
    }

    TacticPair pair_at(int index) const {
        if (index < 0 || index >= n_pairs()) {
            throw std::out_of_range("pair index " + std::to_string(index) + " outside catalog");
        }
        return TacticPair{index / n_formations, index % n_formations};
    }

    friend bool operator==(const TacticCatalog&, const TacticCatalog&) = default;
};

}  // namespace leagueopt
