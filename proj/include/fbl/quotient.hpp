#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <utility>
#include <variant>
#include <vector>

#include <Eigen/Dense>

#include "fbl/expr.hpp"
#include "fbl/functional.hpp"
#include "fbl/generator.hpp"

namespace fbl {

/// 1 when B is contained in A, else 0.
int chi(const SubsetGenerator& a, const SubsetGenerator& b);

/// The point (chi_A({n}))_A of the cube over finite subsets of {1..N}: value
/// 1 at A when n is in A. Evaluated lazily; the 2^N - 1 coordinates are never
/// stored.
class PhiPoint {
public:
    /// Throws precondition_error unless 1 <= n <= truncation.
    PhiPoint(std::uint32_t n, std::uint32_t truncation);

    std::uint32_t n() const noexcept { return n_; }
    std::uint32_t truncation() const noexcept { return truncation_; }

    /// Throws domain_error for index ids and for subsets reaching past the
    /// truncation.
    double operator()(const GeneratorId& id) const;

    /// The values on `ids` as a cube functional (zeros dropped).
    SparseFunctional restrict_to(const DependencySet& ids) const;

private:
    std::uint32_t n_;
    std::uint32_t truncation_;
};

PhiPoint phi_point(std::uint32_t n, std::uint32_t truncation);

/// Component n-1 is eval(e, phi_point(n)) for n = 1..n_max. Throws
/// domain_error when e has index generators or subsets beyond the truncation.
Eigen::VectorXd phi_apply(const LatticeExpr& e, std::uint32_t n_max, std::uint32_t truncation);

/// x = sum_j lambda_j 1_{A_j} over a strictly increasing chain A_1 < A_2 < ...
struct Decomposition {
    std::vector<std::pair<double, SubsetGenerator>> terms;
    Eigen::VectorXd source;

    /// sum_j lambda_j 1_{A_j}, sized like the source.
    Eigen::VectorXd reconstruct() const;
};

/// Orders the support of x by nonincreasing value (lowest index first on
/// ties), takes A_i as the first i coordinates and lambda_i as the drop to the
/// next value. Zero lambdas are kept. Throws precondition_error on a negative
/// or non-finite coordinate.
Decomposition greedy_decompose(const Eigen::VectorXd& x);

/// Evaluation point of a family member: an explicit cube functional or a
/// lazy point of the quotient.
using CubePoint = std::variant<SparseFunctional, PhiPoint>;

double eval(const LatticeExpr& e, const CubePoint& point);

struct FamilyMember {
    LatticeExpr f;
    CubePoint point;
};

struct WitnessSelection {
    /// 1-based positions in the family, strictly increasing.
    std::vector<std::size_t> indices;
    std::vector<DependencySet> supports;
    std::vector<SparseFunctional> witnesses;
    /// f_{n_k}(y_k*).
    std::vector<double> values;
    double eps = 0.0;

    /// sum_{k <= m} f_{n_k}(y_k*).
    double partial_sum(std::size_t m) const;
};

/// 1 + the largest element of the union of F (1 for an empty F).
std::uint32_t vanishing_index(const std::vector<SubsetGenerator>& family);

/// First family position after `after` whose point is 0 on every id of F.
std::optional<std::size_t> find_vanishing_member(const std::vector<FamilyMember>& family, const DependencySet& ids,
                                                 std::size_t after);

/// Builds `length` members of the subsequence: n_1 is the first member, F_k
/// the dependency support of f_{n_k}, n_{k+1} the first later member whose
/// point vanishes on F_1 u ... u F_k, and y_k* the point of n_k restricted to
/// F_k. Each chosen member must satisfy f_n(x_n*) = 1 within 1e-9
/// (precondition_error otherwise). Throws truncation_exhausted when no
/// vanishing member is left.
WitnessSelection select_subsequence(const std::vector<FamilyMember>& family, double eps, std::size_t length);

/// First m with m - eps > bound, given norms of the partial sums bounded by
/// `bound`; such an m contradicts the existence of the bound.
std::optional<std::size_t> first_contradiction(const WitnessSelection& selection, double bound);

}  // namespace fbl
