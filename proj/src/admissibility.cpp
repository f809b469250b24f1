#include "fbl/admissibility.hpp"

#include <algorithm>
#include <cmath>

#include "fbl/errors.hpp"
#include "fbl/parallel.hpp"
#include "fbl/random.hpp"

namespace fbl {

namespace {

void require_common_ambient(const std::vector<SparseFunctional>& tuple) {
    for (const auto& f : tuple)
        if (!(f.ambient() == tuple.front().ambient()))
            throw domain_error("tuple mixes ambients " + tuple.front().ambient().to_string() + " and " +
                               f.ambient().to_string());
}

void require_space(const std::vector<SparseFunctional>& tuple, Space space, const char* op) {
    require_common_ambient(tuple);
    if (!tuple.empty() && tuple.front().ambient().space != space)
        throw domain_error(std::string(op) + " does not apply to ambient " + tuple.front().ambient().to_string());
}

/// Steepest single-flip ascent from `signs`; returns the local maximum.
double climb(const Eigen::MatrixXd& x, Eigen::VectorXd signs) {
    Eigen::VectorXd products = x * signs;
    double value = products.cwiseAbs().sum();
    while (true) {
        Eigen::Index best_flip = -1;
        double best = value;
        for (Eigen::Index j = 0; j < x.cols(); ++j) {
            const double candidate = (products - (2.0 * signs(j)) * x.col(j)).cwiseAbs().sum();
            if (candidate > best) {
                best = candidate;
                best_flip = j;
            }
        }
        if (best_flip < 0) return value;
        signs(best_flip) = -signs(best_flip);
        products.noalias() = x * signs;
        const double recomputed = products.cwiseAbs().sum();
        if (!(recomputed > value)) return value;
        value = recomputed;
    }
}

}  // namespace

DenseTuple densify(const std::vector<SparseFunctional>& tuple) {
    DenseTuple out;
    out.columns = joint_support(tuple);
    out.values = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(tuple.size()),
                                       static_cast<Eigen::Index>(out.columns.size()));
    for (std::size_t i = 0; i < tuple.size(); ++i) {
        for (const auto& [id, value] : tuple[i].entries()) {
            const auto col = std::lower_bound(out.columns.begin(), out.columns.end(), id) - out.columns.begin();
            out.values(static_cast<Eigen::Index>(i), col) = value;
        }
    }
    return out;
}

double coordinate_admissibility(const std::vector<SparseFunctional>& tuple) {
    require_space(tuple, Space::cube, "coordinate_admissibility");
    return coordinate_admissibility_dense(densify(tuple).values);
}

double ball_sup_exact(const std::vector<SparseFunctional>& tuple, std::size_t limit) {
    require_space(tuple, Space::dual, "ball_sup_exact");
    const auto dense = densify(tuple);
    if (dense.columns.size() > limit) throw enumeration_limit_exceeded(dense.columns.size(), limit);
    return ball_sup_dense(dense.values);
}

double ball_sup_search(const std::vector<SparseFunctional>& tuple, std::size_t budget, std::uint64_t seed,
                       unsigned threads) {
    if (budget < 1) throw precondition_error("ball_sup_search needs budget >= 1");
    require_space(tuple, Space::dual, "ball_sup_search");
    const auto dense = densify(tuple);
    const Eigen::MatrixXd& x = dense.values;
    const Eigen::Index m = x.cols();
    if (x.rows() == 0 || m == 0) return 0.0;

    Eigen::Index heaviest = 0;
    x.cwiseAbs().rowwise().sum().maxCoeff(&heaviest);

    // Restart r >= 1 starts from class (a * (r - 1) + b) mod 2^(m-1): an affine
    // bijection for odd a, so the first 2^(m-1) restarts visit every class.
    Rng schedule = make_stream(seed, {0x5167ULL});
    const std::uint64_t stride = schedule() | 1ULL;
    const std::uint64_t offset = schedule();
    const bool enumerable = m - 1 < 63;
    const std::uint64_t mask = enumerable ? (std::uint64_t{1} << (m - 1)) - 1 : 0;

    std::vector<double> results(budget, 0.0);
    parallel_for(budget, threads, [&](std::size_t r) {
        Eigen::VectorXd signs = Eigen::VectorXd::Ones(m);
        if (r == 0) {
            for (Eigen::Index j = 0; j < m; ++j) signs(j) = x(heaviest, j) < 0.0 ? -1.0 : 1.0;
        } else if (enumerable) {
            const std::uint64_t cls = (stride * (r - 1) + offset) & mask;
            for (Eigen::Index j = 1; j < m; ++j) signs(j) = ((cls >> (j - 1)) & 1ULL) ? -1.0 : 1.0;
        } else {
            Rng rng = make_stream(seed, {0x5167ULL, r});
            for (Eigen::Index j = 1; j < m; ++j) signs(j) = (rng() & 1ULL) ? -1.0 : 1.0;
        }
        results[r] = climb(x, std::move(signs));
    });
    return *std::max_element(results.begin(), results.end());
}

double dual_ball_sup(const std::vector<SparseFunctional>& tuple, std::size_t limit) {
    if (tuple.empty()) return 0.0;
    require_common_ambient(tuple);
    return tuple.front().ambient().space == Space::cube ? coordinate_admissibility(tuple)
                                                        : ball_sup_exact(tuple, limit);
}

ClaimCheck claim_check(const std::vector<SparseFunctional>& tuple, const std::vector<std::uint32_t>& picks,
                       double tol) {
    if (picks.size() != tuple.size())
        throw precondition_error("claim_check needs one picked coordinate per functional");
    ClaimCheck out;
    for (std::size_t i = 0; i < tuple.size(); ++i) out.lhs += std::fabs(tuple[i].at(picks[i]));
    out.rhs = ball_sup_exact(tuple);
    out.holds = out.lhs <= out.rhs + tol;
    return out;
}

WitnessTuple scale_to_admissible(std::vector<SparseFunctional> tuple, std::size_t limit) {
    if (std::all_of(tuple.begin(), tuple.end(), [](const auto& f) { return f.is_zero(); }))
        throw degenerate_input("cannot scale an all-zero tuple to admissibility");
    require_common_ambient(tuple);

    WitnessTuple out;
    double sup = 0.0;
    const bool dual = tuple.front().ambient().space == Space::dual;
    if (dual && joint_support(tuple).size() > limit) {
        out.mode = AdmissibilityMode::stochastic_lower;
        sup = ball_sup_search(tuple, 256, 0);
    } else {
        sup = dual_ball_sup(tuple, limit);
    }
    out.scale_factor = 1.0 / std::max(1.0, sup);
    if (out.scale_factor != 1.0)
        for (auto& f : tuple) f = f.scaled(out.scale_factor);
    out.dual_ball_sup = out.mode == AdmissibilityMode::exact ? dual_ball_sup(tuple, limit) : sup * out.scale_factor;
    out.functionals = std::move(tuple);
    return out;
}

WitnessTuple make_witness(std::vector<SparseFunctional> tuple, std::size_t limit) {
    WitnessTuple out;
    out.dual_ball_sup = dual_ball_sup(tuple, limit);
    out.functionals = std::move(tuple);
    return out;
}

}  // namespace fbl
