#include "leagueopt/metrics.hpp"

namespace leagueopt {

namespace {

int class_index(MatchOutcome o) {
    switch (o) {
        case MatchOutcome::HomeWin: return 0;
        case MatchOutcome::Draw: return 1;
        case MatchOutcome::AwayWin: return 2;
    }
    return 1;
}

}  // namespace

void ConfusionMatrix::add(MatchOutcome truth, MatchOutcome predicted) {
    counts[static_cast<std::size_t>(class_index(truth))]
          [static_cast<std::size_t>(class_index(predicted))] += 1;
}

long long ConfusionMatrix::total() const {
    long long t = 0;
    for (const auto& row : counts) {
        for (long long c : row) t += c;
    }
    return t;
}

ClassificationMetrics weighted_metrics(const ConfusionMatrix& cm) {
    ClassificationMetrics m;
    long long total = cm.total();
    if (total == 0) return m;

    long long correct = 0;
    for (int k = 0; k < 3; ++k) {
        correct += cm.counts[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
    }
    m.accuracy = static_cast<double>(correct) / static_cast<double>(total);

    for (int k = 0; k < 3; ++k) {
        long long tp = cm.counts[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
        long long support = 0;   // truth == k
        long long predicted = 0; // prediction == k
        for (int j = 0; j < 3; ++j) {
            support += cm.counts[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
            predicted += cm.counts[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
        }
        double prec = predicted > 0 ? static_cast<double>(tp) / static_cast<double>(predicted) : 0.0;
        double rec = support > 0 ? static_cast<double>(tp) / static_cast<double>(support) : 0.0;
        double f1 = (prec + rec) > 0.0 ? 2.0 * prec * rec / (prec + rec) : 0.0;
        double weight = static_cast<double>(support) / static_cast<double>(total);
        m.precision += weight * prec;
        m.recall += weight * rec;
        m.f1 += weight * f1;
    }
    return m;
}

}  // namespace leagueopt
