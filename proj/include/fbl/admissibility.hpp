#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "fbl/errors.hpp"
#include "fbl/functional.hpp"

namespace fbl {

/// A tuple is admissible when its dual-ball supremum is at most 1 + this.
inline constexpr double kAdmissibilityTolerance = 1e-9;
/// Largest joint support the exhaustive sign oracle accepts (2^19 sign classes).
inline constexpr std::size_t kExactEnumerationLimit = 20;

enum class AdmissibilityMode { exact, stochastic_lower };

/// Functionals of one ambient together with their dual-ball supremum.
struct WitnessTuple {
    std::vector<SparseFunctional> functionals;
    double dual_ball_sup = 0.0;
    AdmissibilityMode mode = AdmissibilityMode::exact;
    /// Factor applied by scale_to_admissible (1 when untouched).
    double scale_factor = 1.0;

    bool admissible(double tol = kAdmissibilityTolerance) const {
        return mode == AdmissibilityMode::exact && dual_ball_sup <= 1.0 + tol;
    }
};

/// Dense view of a tuple: one row per functional, one column per generator of
/// the joint support.
struct DenseTuple {
    Eigen::MatrixXd values;
    std::vector<GeneratorId> columns;
};

DenseTuple densify(const std::vector<SparseFunctional>& tuple);

/// max over columns of the column's absolute sum.
template <typename Derived>
typename Derived::Scalar coordinate_admissibility_dense(const Eigen::MatrixBase<Derived>& tuple) {
    using Scalar = typename Derived::Scalar;
    if (tuple.rows() == 0 || tuple.cols() == 0) return Scalar(0);
    return tuple.cwiseAbs().colwise().sum().maxCoeff();
}

/// sup over x in the c0 unit ball of sum_i |<row_i, x>|, which for finitely
/// supported rows is attained at a sign vector. Signs are enumerated in Gray
/// order with the first nonzero column pinned to +1 (eps and -eps agree); the
/// running products are recomputed from scratch periodically so rounding does
/// not accumulate. Zero columns are dropped first.
template <typename Derived>
typename Derived::Scalar ball_sup_dense(const Eigen::MatrixBase<Derived>& tuple) {
    using Scalar = typename Derived::Scalar;
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

    std::vector<Eigen::Index> live;
    for (Eigen::Index j = 0; j < tuple.cols(); ++j)
        if (!tuple.col(j).isZero(0)) live.push_back(j);
    if (tuple.rows() == 0 || live.empty()) return Scalar(0);

    const auto m = static_cast<Eigen::Index>(live.size());
    if (m > 62) throw enumeration_limit_exceeded(live.size(), 62);
    Matrix x(tuple.rows(), m);
    for (Eigen::Index j = 0; j < m; ++j) x.col(j) = tuple.col(live[static_cast<std::size_t>(j)]);

    Vector signs = Vector::Ones(m);
    Vector products = x * signs;
    Scalar best = products.cwiseAbs().sum();
    const std::uint64_t classes = std::uint64_t{1} << (m - 1);
    constexpr std::uint64_t kResync = 1024;
    for (std::uint64_t k = 1; k < classes; ++k) {
        const auto bit = static_cast<Eigen::Index>(__builtin_ctzll(k)) + 1;
        signs(bit) = -signs(bit);
        if (k % kResync == 0) products.noalias() = x * signs;
        else products += (Scalar(2) * signs(bit)) * x.col(bit);
        const Scalar value = products.cwiseAbs().sum();
        if (value > best) best = value;
    }
    return best;
}

/// max over generators a of sum_i |x_i*(a)|: the admissibility oracle of the
/// free lattice over a set. Throws domain_error on mixed ambients.
double coordinate_admissibility(const std::vector<SparseFunctional>& tuple);

/// Exact c0-ball supremum by sign enumeration on the joint support. Throws
/// enumeration_limit_exceeded above `limit` coordinates.
double ball_sup_exact(const std::vector<SparseFunctional>& tuple, std::size_t limit = kExactEnumerationLimit);

/// Lower bound on the same supremum by steepest-ascent single sign flips.
/// Restart 0 copies the signs of the heaviest functional; restart r >= 1
/// starts from a seeded permutation of the sign classes, so `budget` restarts
/// beyond 2^(m-1) cover every class. Nondecreasing in budget for a fixed seed.
double ball_sup_search(const std::vector<SparseFunctional>& tuple, std::size_t budget, std::uint64_t seed,
                       unsigned threads = 0);

/// Dispatches to the oracle of the tuple's ambient (exact only).
double dual_ball_sup(const std::vector<SparseFunctional>& tuple, std::size_t limit = kExactEnumerationLimit);

struct ClaimCheck {
    double lhs = 0.0;
    double rhs = 0.0;
    bool holds = false;
};

/// lhs = sum_i |x_i*(picks_i)|, rhs = ball_sup_exact(tuple); holds when
/// lhs <= rhs + tol.
ClaimCheck claim_check(const std::vector<SparseFunctional>& tuple, const std::vector<std::uint32_t>& picks,
                       double tol = kAdmissibilityTolerance);

/// Divides every functional by max(1, dual_ball_sup). Dual tuples whose joint
/// support exceeds `limit` fall back to ball_sup_search and are marked
/// stochastic_lower. Throws degenerate_input for an all-zero tuple.
WitnessTuple scale_to_admissible(std::vector<SparseFunctional> tuple, std::size_t limit = kExactEnumerationLimit);

/// Recomputes the supremum of an existing tuple with the exact oracle.
WitnessTuple make_witness(std::vector<SparseFunctional> tuple, std::size_t limit = kExactEnumerationLimit);

}  // namespace fbl
