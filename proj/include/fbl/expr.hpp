#pragma once

#include <cmath>
#include <concepts>
#include <cstddef>
#include <memory>
#include <optional>

#include "fbl/errors.hpp"
#include "fbl/generator.hpp"

namespace fbl {

enum class NodeKind { generator, scale, add, sup, inf, abs };

/// Immutable vector-lattice expression over free generators.
///
/// Expressions are values: copies share structure and nothing is ever
/// mutated, so evaluation is safe from any number of threads. The six node
/// kinds generate the free vector lattice; `pos(e)` is sugar for
/// `sup(e, scale(0, e))` and shares the subtree `e`.
class LatticeExpr {
public:
    NodeKind kind() const noexcept;

    /// Valid for generator nodes only.
    const GeneratorId& generator() const;
    /// Valid for scale nodes only.
    double coefficient() const;
    /// The child of scale/abs nodes.
    const LatticeExpr& child() const;
    const LatticeExpr& left() const;
    const LatticeExpr& right() const;

    /// Identity of the underlying node (structural sharing).
    bool same_node(const LatticeExpr& other) const noexcept { return node_ == other.node_; }

    friend LatticeExpr gen(GeneratorId id);
    friend LatticeExpr scale(double coefficient, LatticeExpr child);
    friend LatticeExpr add(LatticeExpr left, LatticeExpr right);
    friend LatticeExpr sup(LatticeExpr left, LatticeExpr right);
    friend LatticeExpr inf(LatticeExpr left, LatticeExpr right);
    friend LatticeExpr abs(LatticeExpr child);

private:
    struct Node;
    explicit LatticeExpr(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    std::shared_ptr<const Node> node_;
};

struct LatticeExpr::Node {
    NodeKind kind;
    std::optional<GeneratorId> id;
    double coefficient = 0.0;
    std::optional<LatticeExpr> first;
    std::optional<LatticeExpr> second;
};

inline NodeKind LatticeExpr::kind() const noexcept { return node_->kind; }

LatticeExpr gen(GeneratorId id);
inline LatticeExpr gen(std::uint32_t index) { return gen(GeneratorId(index)); }
inline LatticeExpr gen(SubsetGenerator subset) { return gen(GeneratorId(std::move(subset))); }
LatticeExpr scale(double coefficient, LatticeExpr child);
LatticeExpr add(LatticeExpr left, LatticeExpr right);
LatticeExpr sup(LatticeExpr left, LatticeExpr right);
LatticeExpr inf(LatticeExpr left, LatticeExpr right);
LatticeExpr abs(LatticeExpr child);
/// Positive part, expanded to `sup(e, scale(0, e))`.
LatticeExpr pos(LatticeExpr child);

/// True when `e` has the exact shape produced by pos().
bool is_pos_sugar(const LatticeExpr& e);

inline LatticeExpr operator+(LatticeExpr a, LatticeExpr b) { return add(std::move(a), std::move(b)); }
inline LatticeExpr operator*(double c, LatticeExpr e) { return scale(c, std::move(e)); }
inline LatticeExpr operator-(LatticeExpr e) { return scale(-1.0, std::move(e)); }
inline LatticeExpr operator-(LatticeExpr a, LatticeExpr b) { return add(std::move(a), scale(-1.0, std::move(b))); }

/// A point is anything that returns the value of a functional at a generator.
/// It is expected to throw domain_error for generator ids it cannot resolve.
template <typename P>
concept CoordinatePoint = requires(const P& p, const GeneratorId& id) {
    { p(id) } -> std::convertible_to<double>;
};

/// Pointwise evaluation: generators read coordinates of the point, the linear
/// and lattice nodes act pointwise.
template <CoordinatePoint Point>
double eval(const LatticeExpr& e, const Point& point) {
    switch (e.kind()) {
        case NodeKind::generator:
            return static_cast<double>(point(e.generator()));
        case NodeKind::scale:
            return e.coefficient() * eval(e.child(), point);
        case NodeKind::add:
            return eval(e.left(), point) + eval(e.right(), point);
        case NodeKind::sup:
            return std::fmax(eval(e.left(), point), eval(e.right(), point));
        case NodeKind::inf:
            return std::fmin(eval(e.left(), point), eval(e.right(), point));
        case NodeKind::abs:
            return std::fabs(eval(e.child(), point));
    }
    return 0.0;
}

/// Exactly the generator ids occurring in the tree.
DependencySet dependency_support(const LatticeExpr& e);

std::size_t depth(const LatticeExpr& e);

/// |eval(e, lambda * point) - lambda * eval(e, point)|. lambda must be > 0.
template <CoordinatePoint Point>
double check_positive_homogeneity(const LatticeExpr& e, const Point& point, double lambda) {
    if (!(lambda > 0.0)) throw precondition_error("positive homogeneity needs lambda > 0");
    auto scaled = [&](const GeneratorId& id) { return lambda * static_cast<double>(point(id)); };
    return std::fabs(eval(e, scaled) - lambda * eval(e, point));
}

}  // namespace fbl
