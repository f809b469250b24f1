#include "fbl/norm.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "fbl/errors.hpp"
#include "fbl/parallel.hpp"
#include "fbl/random.hpp"
#include "fbl/sampling.hpp"

namespace fbl {

double norm_lower_bound(const Evaluator& f, const WitnessTuple& witness, double tol, std::size_t limit) {
    if (witness.functionals.empty()) return 0.0;
    if (witness.mode != AdmissibilityMode::exact)
        throw inadmissible_witness(witness.dual_ball_sup);  // a stochastic supremum certifies nothing
    const double sup = dual_ball_sup(witness.functionals, limit);
    if (sup > 1.0 + tol) throw inadmissible_witness(sup);
    double total = 0.0;
    for (const auto& x : witness.functionals) total += std::fabs(f(x));
    return total;
}

std::string fingerprint(const WitnessTuple& witness) {
    std::vector<std::string> rows;
    rows.reserve(witness.functionals.size());
    for (const auto& x : witness.functionals) {
        std::string row;
        for (const auto& [id, value] : x.entries()) {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.12f", value);
            row += id.to_string() + ":" + buf + ",";
        }
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end());
    std::string out;
    for (const auto& r : rows) out += r + "|";
    return out;
}

namespace {

/// Scores dense tuples over a fixed list of columns.
class TupleScorer {
public:
    TupleScorer(const Evaluator& f, std::vector<GeneratorId> columns)
        : f_(f), columns_(std::move(columns)), cube_(f.ambient().space == Space::cube) {}

    Eigen::Index width() const { return static_cast<Eigen::Index>(columns_.size()); }

    /// |f(row)|, evaluated on row / max|row| and rescaled (positive
    /// homogeneity), so cube rows never leave [-1,1]^A.
    double row_value(const Eigen::RowVectorXd& row, std::uint64_t& evaluations) const {
        const double peak = row.size() ? row.cwiseAbs().maxCoeff() : 0.0;
        if (peak == 0.0) return 0.0;
        ++evaluations;
        return peak * std::fabs(f_(to_functional(row / peak)));
    }

    double admissibility(const Eigen::MatrixXd& x) const {
        return cube_ ? coordinate_admissibility_dense(x) : ball_sup_dense(x);
    }

    SparseFunctional to_functional(const Eigen::RowVectorXd& row) const {
        std::vector<SparseFunctional::Entry> entries;
        for (Eigen::Index j = 0; j < row.size(); ++j)
            if (row(j) != 0.0) entries.emplace_back(columns_[static_cast<std::size_t>(j)], row(j));
        return SparseFunctional(f_.ambient(), std::move(entries));
    }

private:
    const Evaluator& f_;
    std::vector<GeneratorId> columns_;
    bool cube_;
};

struct Candidate {
    double score = 0.0;
    Eigen::MatrixXd x;
    std::uint64_t evaluations = 0;
};

/// Normalizes x to admissibility 1 and returns its score.
double normalize(const TupleScorer& scorer, Eigen::MatrixXd& x, Eigen::VectorXd& values) {
    const double adm = scorer.admissibility(x);
    if (!(adm > 0.0)) return 0.0;
    x /= adm;
    values /= adm;
    return values.sum();
}

Candidate score_tuple(const TupleScorer& scorer, Eigen::MatrixXd x) {
    Candidate c;
    Eigen::VectorXd values(x.rows());
    for (Eigen::Index i = 0; i < x.rows(); ++i) values(i) = scorer.row_value(x.row(i), c.evaluations);
    c.score = normalize(scorer, x, values);
    c.x = std::move(x);
    return c;
}

Candidate ascend(const TupleScorer& scorer, Eigen::MatrixXd x, std::size_t steps, Rng& rng, double initial_step = 0.3) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> normal;
    auto pick = [&](std::size_t n) { return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng); };
    auto coin = [&] { return (rng() & 1ULL) ? -1.0 : 1.0; };

    Candidate c;
    const Eigen::Index rows = x.rows();
    const Eigen::Index cols = x.cols();
    Eigen::VectorXd values(rows);
    for (Eigen::Index i = 0; i < rows; ++i) values(i) = scorer.row_value(x.row(i), c.evaluations);
    double score = normalize(scorer, x, values);

    double step = initial_step;
    int failures = 0;
    std::vector<Eigen::Index> nonzero;
    std::vector<Eigen::Index> zero;
    for (std::size_t s = 0; s < steps; ++s) {
        const auto i = static_cast<Eigen::Index>(pick(static_cast<std::size_t>(rows)));
        Eigen::RowVectorXd row = x.row(i);
        nonzero.clear();
        zero.clear();
        for (Eigen::Index j = 0; j < cols; ++j) (row(j) != 0.0 ? nonzero : zero).push_back(j);
        const double peak = row.cwiseAbs().maxCoeff();

        if (nonzero.empty()) {
            row(static_cast<Eigen::Index>(pick(static_cast<std::size_t>(cols)))) = coin() * unit(rng);
        } else {
            const double move = unit(rng);
            const Eigen::Index j = nonzero[pick(nonzero.size())];
            if (move < 0.30) {
                row(j) *= 1.0 + step * (2.0 * unit(rng) - 1.0);
            } else if (move < 0.45 && !zero.empty()) {
                row(zero[pick(zero.size())]) = coin() * step * peak * unit(rng);
            } else if (move < 0.55 && nonzero.size() > 1) {
                row(j) = 0.0;
            } else if (move < 0.65) {
                row(j) = -row(j);
            } else if (move < 0.90) {
                if (unit(rng) < 0.3) {
                    for (Eigen::Index k = 0; k < cols; ++k) row(k) += step * peak * normal(rng);
                } else {
                    for (auto k : nonzero) row(k) += step * peak * normal(rng);
                }
            } else {
                row *= 1.0 + step * (2.0 * unit(rng) - 1.0);
            }
        }

        Eigen::MatrixXd trial = x;
        trial.row(i) = row;
        Eigen::VectorXd trial_values = values;
        trial_values(i) = scorer.row_value(row, c.evaluations);
        const double trial_score = normalize(scorer, trial, trial_values);
        if (trial_score >= score) {
            if (trial_score > score) {
                step = std::min(step * 1.5, 2.0);
                failures = 0;
            } else {
                ++failures;
            }
            x = std::move(trial);
            values = std::move(trial_values);
            score = trial_score;
        } else {
            ++failures;
        }
        if (failures >= 16) {
            step *= 0.5;
            failures = 0;
            if (step < 1e-10) step = 0.3;
        }
    }
    c.score = score;
    c.x = std::move(x);
    return c;
}

/// Drops rows, then single entries, whenever that costs at most rounding
/// (1e-12 relative per removal).
Candidate simplify(const TupleScorer& scorer, const Candidate& start) {
    Candidate best = start;
    best.evaluations = 0;
    auto keeps = [&](const Candidate& c) { return c.score >= best.score - 1e-12 * std::max(1.0, best.score); };
    for (Eigen::Index i = best.x.rows(); i-- > 0 && best.x.rows() > 1;) {
        Eigen::MatrixXd trial(best.x.rows() - 1, best.x.cols());
        trial << best.x.topRows(i), best.x.bottomRows(best.x.rows() - i - 1);
        auto c = score_tuple(scorer, std::move(trial));
        best.evaluations += c.evaluations;
        if (keeps(c)) {
            c.evaluations = best.evaluations;
            best = std::move(c);
        }
    }
    for (Eigen::Index i = 0; i < best.x.rows(); ++i) {
        for (Eigen::Index j = 0; j < best.x.cols(); ++j) {
            if (best.x(i, j) == 0.0) continue;
            Eigen::MatrixXd trial = best.x;
            trial(i, j) = 0.0;
            if (trial.row(i).isZero(0)) continue;
            auto c = score_tuple(scorer, std::move(trial));
            best.evaluations += c.evaluations;
            if (keeps(c)) {
                c.evaluations = best.evaluations;
                best = std::move(c);
            }
        }
    }
    return best;
}

std::vector<Eigen::MatrixXd> seed_tuples(Eigen::Index m, std::size_t max_tuple) {
    std::vector<Eigen::MatrixXd> seeds;
    for (Eigen::Index j = 0; j < m; ++j) {
        for (double s : {1.0, -1.0}) {
            Eigen::MatrixXd x = Eigen::MatrixXd::Zero(1, m);
            x(0, j) = s;
            seeds.push_back(x);
        }
    }
    for (Eigen::Index j = 0; j < m; ++j) {
        for (Eigen::Index k = j + 1; k < m; ++k) {
            for (double sj : {1.0, -1.0}) {
                for (double sk : {1.0, -1.0}) {
                    Eigen::MatrixXd combo = Eigen::MatrixXd::Zero(1, m);
                    combo(0, j) = sj;
                    combo(0, k) = sk;
                    seeds.push_back(combo);
                    if (max_tuple >= 2) {
                        Eigen::MatrixXd pair = Eigen::MatrixXd::Zero(2, m);
                        pair(0, j) = sj;
                        pair(1, k) = sk;
                        seeds.push_back(pair);
                    }
                }
            }
        }
    }
    if (m > 2 && static_cast<std::size_t>(m) <= max_tuple) {
        seeds.push_back(Eigen::MatrixXd::Identity(m, m));
        seeds.push_back(-Eigen::MatrixXd::Identity(m, m));
    }
    return seeds;
}

Eigen::MatrixXd random_start(const TupleScorer& scorer, Ambient ambient, const std::vector<GeneratorId>& columns,
                             std::size_t rows, const std::vector<Candidate>& elite, Rng& rng) {
    Eigen::MatrixXd x = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(rows), scorer.width());
    std::size_t filled = 0;
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    if (!elite.empty() && unit(rng) < 0.5) {
        const auto& seed = elite[std::uniform_int_distribution<std::size_t>(0, elite.size() - 1)(rng)].x;
        if (static_cast<std::size_t>(seed.rows()) <= rows) {
            x.topRows(seed.rows()) = seed;
            filled = static_cast<std::size_t>(seed.rows());
        }
    }
    const double weight = filled ? 0.1 : 1.0;
    for (std::size_t i = filled; i < rows; ++i) {
        const auto f = random_functional(ambient, columns, rng, 3);
        for (const auto& [id, value] : f.entries()) {
            const auto col = std::lower_bound(columns.begin(), columns.end(), id) - columns.begin();
            x(static_cast<Eigen::Index>(i), col) = weight * value;
        }
    }
    return x;
}

WitnessTuple to_witness(const TupleScorer& scorer, const Eigen::MatrixXd& x, std::size_t limit) {
    std::vector<SparseFunctional> rows;
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        auto f = scorer.to_functional(x.row(i));
        if (!f.is_zero()) rows.push_back(std::move(f));
    }
    if (rows.empty()) return WitnessTuple{};
    return scale_to_admissible(std::move(rows), limit);
}

}  // namespace

NormEstimate norm_search(const Evaluator& f, const SearchOptions& options) {
    const SearchBudget& budget = options.budget;
    if (budget.restarts < 1 || budget.steps < 1 || budget.max_tuple < 1)
        throw precondition_error("norm_search needs a budget of at least one restart, step and tuple row");

    std::vector<GeneratorId> columns = f.support_hint();
    for (const auto& id : options.extra_coordinates) {
        if (!f.ambient().accepts(id)) throw domain_error("extra coordinate " + id.to_string() + " is foreign to " + f.name());
        columns.push_back(id);
    }
    std::sort(columns.begin(), columns.end());
    columns.erase(std::unique(columns.begin(), columns.end()), columns.end());

    NormEstimate estimate;
    if (columns.empty()) return estimate;
    if (f.ambient().space == Space::dual && columns.size() > options.enumeration_limit)
        throw enumeration_limit_exceeded(columns.size(), options.enumeration_limit);

    const TupleScorer scorer(f, columns);
    const auto m = scorer.width();

    std::vector<Candidate> scored;
    for (auto& s : seed_tuples(m, budget.max_tuple)) scored.push_back(score_tuple(scorer, std::move(s)));
    for (const auto& c : scored) estimate.evaluations_used += c.evaluations;

    // Elite seeds feed half of the restarts; stable order keeps this deterministic.
    std::vector<Candidate> elite = scored;
    std::stable_sort(elite.begin(), elite.end(), [](const Candidate& a, const Candidate& b) { return a.score > b.score; });
    if (elite.size() > 16) elite.resize(16);

    const std::size_t slots = budget.max_tuple * budget.restarts;
    std::vector<Candidate> results(slots);
    parallel_for(slots, options.threads, [&](std::size_t slot) {
        const std::size_t rows = slot / budget.restarts + 1;
        const std::size_t restart = slot % budget.restarts;
        Rng rng = make_stream(options.seed, {rows, restart});
        auto start = random_start(scorer, f.ambient(), columns, rows, elite, rng);
        results[slot] = ascend(scorer, std::move(start), budget.steps, rng);
    });

    // Deterministic merge: seeds first, then slots in index order; equal
    // scores go to the lexicographically smaller fingerprint.
    const Candidate* best = nullptr;
    std::string best_print;
    for (const auto& c : results) estimate.evaluations_used += c.evaluations;
    auto consider = [&](const Candidate& c) {
        if (best == nullptr || c.score > best->score) {
            best = &c;
            best_print.clear();
        } else if (c.score == best->score) {
            if (best_print.empty()) best_print = fingerprint(to_witness(scorer, best->x, options.enumeration_limit));
            auto print = fingerprint(to_witness(scorer, c.x, options.enumeration_limit));
            if (print < best_print) {
                best = &c;
                best_print = std::move(print);
            }
        }
    };
    for (const auto& c : scored) consider(c);
    for (const auto& c : results) consider(c);

    // Refine the winner with small steps before simplifying it.
    Rng refine_rng = make_stream(options.seed, {0x7ef1ULL});
    Candidate refined = ascend(scorer, best->x, 4 * budget.steps, refine_rng, 1e-3);
    estimate.evaluations_used += refined.evaluations;
    if (refined.score < best->score) refined = *best;
    Candidate polished = simplify(scorer, refined);
    estimate.evaluations_used += polished.evaluations;
    estimate.best_witness = to_witness(scorer, polished.x, options.enumeration_limit);
    estimate.lower_bound = norm_lower_bound(f, estimate.best_witness, kAdmissibilityTolerance, options.enumeration_limit);
    return estimate;
}

std::optional<UpperCertificate> DominanceReport::certificate() const {
    if (violated) return std::nullopt;
    return UpperCertificate{CertificateKind::dominance,
                            "0 <= f <= g on " + std::to_string(samples_checked) + " samples (" + label + ")"};
}

DominanceReport dominance_upper_bound(const Evaluator& f, const Evaluator& g, double g_norm_bound,
                                      std::size_t samples, std::uint64_t seed, double tol) {
    if (samples < 1) throw precondition_error("dominance sampling needs at least one sample");
    if (!(f.ambient() == g.ambient())) throw domain_error("dominance needs f and g on the same ambient");

    std::vector<GeneratorId> universe = f.support_hint();
    universe.insert(universe.end(), g.support_hint().begin(), g.support_hint().end());
    std::sort(universe.begin(), universe.end());
    universe.erase(std::unique(universe.begin(), universe.end()), universe.end());
    if (f.ambient().keys == KeyKind::index) {
        const std::uint32_t top = universe.empty() ? 0 : universe.back().index();
        universe.emplace_back(top + 1);
        universe.emplace_back(top + 2);
    }

    DominanceReport report;
    report.asserted_bound = g_norm_bound;
    Rng rng = make_stream(seed, {0xd0ULL});
    for (std::size_t s = 0; s < samples; ++s) {
        auto x = random_functional(f.ambient(), universe, rng, 8);
        const double fv = f(x);
        const double gv = g(x);
        ++report.samples_checked;
        if (fv < -tol || fv > gv + tol) {
            report.violated = true;
            report.violation = DominanceViolation{std::move(x), fv, gv};
            break;
        }
    }
    return report;
}

}  // namespace fbl
