#include "leagueopt/outcome_model.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "leagueopt/csv.hpp"
#include "leagueopt/rng.hpp"

namespace leagueopt {

bool OutcomeDistribution::valid(double tol) const {
    auto in_range = [](double p) { return p >= 0.0 && p <= 1.0; };
    return in_range(p_home) && in_range(p_draw) && in_range(p_away) &&
           std::fabs(p_home + p_draw + p_away - 1.0) <= tol;
}

MatchContext swapped(const MatchContext& ctx) {
    return MatchContext{ctx.away, ctx.home, ctx.away_tactic, ctx.home_tactic};
}

int feature_dim(const TacticCatalog& catalog) {
    return 2 * (catalog.n_styles + catalog.n_formations) + 3;
}

std::vector<double> encode_side_features(const MatchContext& ctx, Side side,
                                         const TacticCatalog& catalog) {
    catalog.require(ctx.home_tactic);
    catalog.require(ctx.away_tactic);
    const Team& own = side == Side::Home ? ctx.home : ctx.away;
    const Team& opp = side == Side::Home ? ctx.away : ctx.home;
    const TacticPair& own_t = side == Side::Home ? ctx.home_tactic : ctx.away_tactic;
    const TacticPair& opp_t = side == Side::Home ? ctx.away_tactic : ctx.home_tactic;

    std::vector<double> x(static_cast<std::size_t>(feature_dim(catalog)), 0.0);
    int off = 0;
    x[static_cast<std::size_t>(off + own_t.style)] = 1.0;
    off += catalog.n_styles;
    x[static_cast<std::size_t>(off + own_t.formation)] = 1.0;
    off += catalog.n_formations;
    x[static_cast<std::size_t>(off + opp_t.style)] = 1.0;
    off += catalog.n_styles;
    x[static_cast<std::size_t>(off + opp_t.formation)] = 1.0;
    off += catalog.n_formations;
    x[static_cast<std::size_t>(off++)] = own.attack_strength - opp.defence_strength;
    x[static_cast<std::size_t>(off++)] = opp.attack_strength - own.defence_strength;
    // The venue term is the actual home side's advantage, signed by view.
    x[static_cast<std::size_t>(off++)] =
        side == Side::Home ? ctx.home.home_advantage : -ctx.home.home_advantage;
    return x;
}

ClassifierParams zero_classifier(const TacticCatalog& catalog) {
    ClassifierParams p;
    p.catalog = catalog;
    p.win_weights.assign(static_cast<std::size_t>(feature_dim(catalog)), 0.0);
    p.draw_weights.assign(static_cast<std::size_t>(feature_dim(catalog)), 0.0);
    return p;
}

std::vector<double> flatten(const ClassifierParams& p) {
    std::vector<double> flat;
    flat.reserve(static_cast<std::size_t>(p.parameter_count()));
    flat.insert(flat.end(), p.win_weights.begin(), p.win_weights.end());
    flat.insert(flat.end(), p.draw_weights.begin(), p.draw_weights.end());
    flat.push_back(p.win_bias);
    flat.push_back(p.draw_bias);
    return flat;
}

ClassifierParams unflatten(const TacticCatalog& catalog, std::span<const double> flat) {
    std::size_t d = static_cast<std::size_t>(feature_dim(catalog));
    if (flat.size() != 2 * d + 2) {
        throw std::invalid_argument("flat parameter vector has wrong length");
    }
    ClassifierParams p;
    p.catalog = catalog;
    p.win_weights.assign(flat.begin(), flat.begin() + static_cast<std::ptrdiff_t>(d));
    p.draw_weights.assign(flat.begin() + static_cast<std::ptrdiff_t>(d),
                          flat.begin() + static_cast<std::ptrdiff_t>(2 * d));
    p.win_bias = flat[2 * d];
    p.draw_bias = flat[2 * d + 1];
    return p;
}

namespace {

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

struct Scores {
    // class order: home win, draw, away win
    std::array<double, 3> s;
    std::array<double, 3> p;
};

Scores class_scores(const MatchContext& ctx, const ClassifierParams& params,
                    std::vector<double>* home_view, std::vector<double>* away_view) {
    std::vector<double> xh = encode_side_features(ctx, Side::Home, params.catalog);
    std::vector<double> xa = encode_side_features(ctx, Side::Away, params.catalog);
    Scores out;
    out.s[0] = dot(params.win_weights, xh) + params.win_bias;
    out.s[2] = dot(params.win_weights, xa) + params.win_bias;
    double mid = 0.0;
    for (std::size_t i = 0; i < xh.size(); ++i) {
        mid += params.draw_weights[i] * 0.5 * (xh[i] + xa[i]);
    }
    out.s[1] = mid + params.draw_bias;

    double m = std::max({out.s[0], out.s[1], out.s[2]});
    double z = 0.0;
    for (int k = 0; k < 3; ++k) {
        out.p[static_cast<std::size_t>(k)] = std::exp(out.s[static_cast<std::size_t>(k)] - m);
        z += out.p[static_cast<std::size_t>(k)];
    }
    for (int k = 0; k < 3; ++k) out.p[static_cast<std::size_t>(k)] /= z;
    if (home_view) *home_view = std::move(xh);
    if (away_view) *away_view = std::move(xa);
    return out;
}

int class_of(MatchOutcome o) {
    switch (o) {
        case MatchOutcome::HomeWin: return 0;
        case MatchOutcome::Draw: return 1;
        case MatchOutcome::AwayWin: return 2;
    }
    return 1;
}

// Accumulates d(loss)/d(params) for one example, scaled by `scale`, into the
// flat layout [win_weights | draw_weights | win_bias | draw_bias].
void accumulate_example_gradient(const ClassifierParams& params, const TrainingExample& ex,
                                 double scale, std::span<double> grad) {
    std::vector<double> xh, xa;
    Scores sc = class_scores(ex.ctx, params, &xh, &xa);
    int label = class_of(ex.label);
    std::array<double, 3> g;
    for (int k = 0; k < 3; ++k) {
        g[static_cast<std::size_t>(k)] =
            sc.p[static_cast<std::size_t>(k)] - (k == label ? 1.0 : 0.0);
    }
    std::size_t d = xh.size();
    for (std::size_t i = 0; i < d; ++i) {
        grad[i] += scale * (g[0] * xh[i] + g[2] * xa[i]);
        grad[d + i] += scale * g[1] * 0.5 * (xh[i] + xa[i]);
    }
    grad[2 * d] += scale * (g[0] + g[2]);
    grad[2 * d + 1] += scale * g[1];
}

}  // namespace

OutcomeDistribution predict_outcome(const MatchContext& ctx, const ClassifierParams& params) {
    Scores sc = class_scores(ctx, params, nullptr, nullptr);
    return OutcomeDistribution{sc.p[0], sc.p[1], sc.p[2]};
}

double cross_entropy_loss(const ClassifierParams& params,
                          std::span<const TrainingExample> examples) {
    if (examples.empty()) {
        throw std::invalid_argument("cross_entropy_loss: no examples");
    }
    double total = 0.0;
    for (const TrainingExample& ex : examples) {
        Scores sc = class_scores(ex.ctx, params, nullptr, nullptr);
        double p = sc.p[static_cast<std::size_t>(class_of(ex.label))];
        total += -std::log(std::max(p, 1e-300));
    }
    return total / static_cast<double>(examples.size());
}

std::vector<double> loss_gradient(const ClassifierParams& params,
                                  std::span<const TrainingExample> examples) {
    if (examples.empty()) {
        throw std::invalid_argument("loss_gradient: no examples");
    }
    std::vector<double> grad(static_cast<std::size_t>(params.parameter_count()), 0.0);
    double scale = 1.0 / static_cast<double>(examples.size());
    for (const TrainingExample& ex : examples) {
        accumulate_example_gradient(params, ex, scale, grad);
    }
    return grad;
}

TrainReport train_classifier(ClassifierParams& params, std::span<const TrainingExample> examples,
                             const TrainOptions& options) {
    if (examples.empty()) {
        throw std::invalid_argument("train_classifier: no examples");
    }
    std::array<int, 3> class_counts{0, 0, 0};
    for (const TrainingExample& ex : examples) {
        class_counts[static_cast<std::size_t>(class_of(ex.label))] += 1;
    }
    for (int k = 0; k < 3; ++k) {
        if (class_counts[static_cast<std::size_t>(k)] == 0) {
            static const char* names[3] = {"home win", "draw", "away win"};
            throw std::invalid_argument(std::string("train_classifier: class '") + names[k] +
                                        "' absent from the training data");
        }
    }
    if (options.epochs < 1) {
        throw std::invalid_argument("train_classifier: epochs must be >= 1");
    }

    TrainReport report;
    report.initial_loss = cross_entropy_loss(params, examples);

    std::vector<int> order(examples.size());
    std::iota(order.begin(), order.end(), 0);
    std::vector<double> grad(static_cast<std::size_t>(params.parameter_count()));
    std::size_t d = params.win_weights.size();

    for (int epoch = 0; epoch < options.epochs; ++epoch) {
        Rng rng(derive_seed(options.seed, {0x5DCull, static_cast<std::uint64_t>(epoch)}));
        shuffle_indices(order.data(), static_cast<int>(order.size()), rng);
        for (int idx : order) {
            std::fill(grad.begin(), grad.end(), 0.0);
            accumulate_example_gradient(params, examples[static_cast<std::size_t>(idx)], 1.0,
                                        grad);
            for (std::size_t i = 0; i < d; ++i) {
                params.win_weights[i] -= options.learning_rate * grad[i];
                params.draw_weights[i] -= options.learning_rate * grad[d + i];
            }
            params.win_bias -= options.learning_rate * grad[2 * d];
            params.draw_bias -= options.learning_rate * grad[2 * d + 1];
        }
        report.epoch_loss.push_back(cross_entropy_loss(params, examples));
    }
    return report;
}

double training_accuracy(const ClassifierParams& params,
                         std::span<const TrainingExample> examples) {
    if (examples.empty()) return 0.0;
    int correct = 0;
    for (const TrainingExample& ex : examples) {
        OutcomeDistribution d = predict_outcome(ex.ctx, params);
        std::array<double, 3> p{d.p_home, d.p_draw, d.p_away};
        int best = static_cast<int>(std::max_element(p.begin(), p.end()) - p.begin());
        if (best == class_of(ex.label)) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(examples.size());
}

// ---- serialization ----

namespace {

void write_vector(std::ostream& out, const char* key, std::span<const double> v) {
    out << key << " =";
    for (double x : v) out << ' ' << format_double_exact(x);
    out << '\n';
}

std::vector<double> parse_vector(const std::string& value) {
    std::istringstream in(value);
    std::vector<double> v;
    std::string tok;
    while (in >> tok) {
        char* end = nullptr;
        double x = std::strtod(tok.c_str(), &end);
        if (end != tok.c_str() + tok.size()) {
            throw std::runtime_error("bad number in parameter file: '" + tok + "'");
        }
        v.push_back(x);
    }
    return v;
}

}  // namespace

void save_classifier(const std::string& path, const ClassifierParams& params) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "format = leagueopt-classifier\n";
    out << "version = 1\n";
    out << "n_styles = " << params.catalog.n_styles << '\n';
    out << "n_formations = " << params.catalog.n_formations << '\n';
    out << "win_bias = " << format_double_exact(params.win_bias) << '\n';
    out << "draw_bias = " << format_double_exact(params.draw_bias) << '\n';
    write_vector(out, "win_weights", params.win_weights);
    write_vector(out, "draw_weights", params.draw_weights);
}

ClassifierParams load_classifier(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::string line;
    std::vector<std::pair<std::string, std::string>> kv;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error(path + ": expected 'key = value' line, got '" + line + "'");
        }
        auto strip = [](std::string s) {
            std::size_t b = s.find_first_not_of(" \t");
            std::size_t e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        kv.emplace_back(strip(line.substr(0, eq)), strip(line.substr(eq + 1)));
    }
    auto get = [&](const std::string& key) -> const std::string& {
        for (const auto& [k, v] : kv) {
            if (k == key) return v;
        }
        throw std::runtime_error(path + ": missing key '" + key + "'");
    };
    if (get("format") != "leagueopt-classifier") {
        throw std::runtime_error(path + ": not a classifier parameter file");
    }
    if (get("version") != "1") {
        throw std::runtime_error(path + ": unsupported version " + get("version"));
    }
    ClassifierParams p;
    p.catalog.n_styles = std::stoi(get("n_styles"));
    p.catalog.n_formations = std::stoi(get("n_formations"));
    p.win_bias = std::strtod(get("win_bias").c_str(), nullptr);
    p.draw_bias = std::strtod(get("draw_bias").c_str(), nullptr);
    p.win_weights = parse_vector(get("win_weights"));
    p.draw_weights = parse_vector(get("draw_weights"));
    std::size_t d = static_cast<std::size_t>(feature_dim(p.catalog));
    if (p.win_weights.size() != d || p.draw_weights.size() != d) {
        throw std::runtime_error(path + ": weight vector length does not match the catalog");
    }
    return p;
}

// ---- strength fitting ----

namespace {

double sigmoid(double x) {
    if (x >= 0.0) {
        double e = std::exp(-x);
        return 1.0 / (1.0 + e);
    }
    double e = std::exp(x);
    return e / (1.0 + e);
}

double softplus(double x) {
    if (x > 30.0) return x;
    return std::log1p(std::exp(x));
}

}  // namespace

OutcomeDistribution ordered_outcome_probs(double strength_diff, double home_advantage,
                                          double draw_threshold) {
    double eta = strength_diff + home_advantage;
    double c = draw_threshold;
    OutcomeDistribution d;
    d.p_home = sigmoid(eta - c);
    d.p_away = sigmoid(-eta - c);
    d.p_draw = 1.0 - d.p_home - d.p_away;
    if (d.p_draw < 0.0) d.p_draw = 0.0;
    return d;
}

StrengthFit fit_strengths(int n_teams, std::span<const ResultRecord> results,
                          const FitOptions& options) {
    if (results.empty()) {
        throw std::invalid_argument("fit_strengths: empty result list");
    }
    std::vector<int> games(static_cast<std::size_t>(n_teams), 0);
    for (const ResultRecord& r : results) {
        if (r.fixture.home < 0 || r.fixture.home >= n_teams || r.fixture.away < 0 ||
            r.fixture.away >= n_teams) {
            throw std::out_of_range("fit_strengths: result references an unknown team index");
        }
        games[static_cast<std::size_t>(r.fixture.home)] += 1;
        games[static_cast<std::size_t>(r.fixture.away)] += 1;
    }
    std::string missing;
    for (int t = 0; t < n_teams; ++t) {
        if (games[static_cast<std::size_t>(t)] == 0) {
            if (!missing.empty()) missing += ", ";
            missing += std::to_string(t);
        }
    }
    if (!missing.empty()) {
        throw std::invalid_argument("fit_strengths: teams with no completed games: " + missing);
    }

    // Latent parameters: z (per team, strength = softplus(z)), gamma (home
    // advantage), zc (draw threshold = softplus(zc)). Gradient ascent on the
    // ordered-logit log-likelihood. softplus(0.5413) ~ 1, the no-evidence
    // strength.
    std::vector<double> z(static_cast<std::size_t>(n_teams), 0.54132485461292392);
    double gamma = 0.1;
    double zc = 0.0;  // softplus(0) = ln 2 ~ 0.69

    double lr = options.learning_rate / static_cast<double>(results.size());
    std::vector<double> grad_z(static_cast<std::size_t>(n_teams));
    for (int it = 0; it < options.iterations; ++it) {
        std::fill(grad_z.begin(), grad_z.end(), 0.0);
        double grad_gamma = 0.0;
        double grad_zc = 0.0;
        double c = softplus(zc);
        double dc_dzc = sigmoid(zc);
        for (const ResultRecord& r : results) {
            std::size_t h = static_cast<std::size_t>(r.fixture.home);
            std::size_t a = static_cast<std::size_t>(r.fixture.away);
            double sh = softplus(z[h]);
            double sa = softplus(z[a]);
            double eta = sh - sa + gamma;
            double ph = sigmoid(eta - c);
            double pa = sigmoid(-eta - c);
            double dl_deta = 0.0;  // d log p / d eta
            double dl_dc = 0.0;    // d log p / d c
            switch (r.outcome) {
                case MatchOutcome::HomeWin:
                    dl_deta = 1.0 - ph;
                    dl_dc = -(1.0 - ph);
                    break;
                case MatchOutcome::AwayWin:
                    dl_deta = -(1.0 - pa);
                    dl_dc = -(1.0 - pa);
                    break;
                case MatchOutcome::Draw: {
                    double pd = std::max(1.0 - ph - pa, 1e-12);
                    double sh_prime = ph * (1.0 - ph);
                    double sa_prime = pa * (1.0 - pa);
                    dl_deta = (-sh_prime + sa_prime) / pd;
                    dl_dc = (sh_prime + sa_prime) / pd;
                    break;
                }
            }
            grad_z[h] += dl_deta * sigmoid(z[h]);
            grad_z[a] -= dl_deta * sigmoid(z[a]);
            grad_gamma += dl_deta;
            grad_zc += dl_dc * dc_dzc;
        }
        for (std::size_t t = 0; t < z.size(); ++t) z[t] += lr * grad_z[t];
        gamma += lr * grad_gamma;
        zc += lr * grad_zc;
    }

    StrengthFit fit;
    fit.strengths.resize(static_cast<std::size_t>(n_teams));
    for (int t = 0; t < n_teams; ++t) {
        fit.strengths[static_cast<std::size_t>(t)] = softplus(z[static_cast<std::size_t>(t)]);
    }
    fit.home_advantage = gamma;
    fit.draw_threshold = softplus(zc);
    return fit;
}

}  // namespace leagueopt
