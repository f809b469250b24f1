#include "fbl/expr.hpp"

#include <algorithm>

namespace fbl {

const GeneratorId& LatticeExpr::generator() const {
    if (node_->kind != NodeKind::generator) throw precondition_error("not a generator node");
    return *node_->id;
}

double LatticeExpr::coefficient() const {
    if (node_->kind != NodeKind::scale) throw precondition_error("not a scale node");
    return node_->coefficient;
}

const LatticeExpr& LatticeExpr::child() const {
    if (node_->kind != NodeKind::scale && node_->kind != NodeKind::abs)
        throw precondition_error("node has no single child");
    return *node_->first;
}

const LatticeExpr& LatticeExpr::left() const {
    if (!node_->second) throw precondition_error("node is not binary");
    return *node_->first;
}

const LatticeExpr& LatticeExpr::right() const {
    if (!node_->second) throw precondition_error("node is not binary");
    return *node_->second;
}

LatticeExpr gen(GeneratorId id) {
    return LatticeExpr(std::make_shared<const LatticeExpr::Node>(
        LatticeExpr::Node{NodeKind::generator, std::move(id), 0.0, std::nullopt, std::nullopt}));
}

LatticeExpr scale(double coefficient, LatticeExpr child) {
    return LatticeExpr(std::make_shared<const LatticeExpr::Node>(
        LatticeExpr::Node{NodeKind::scale, std::nullopt, coefficient, std::move(child), std::nullopt}));
}

LatticeExpr add(LatticeExpr left, LatticeExpr right) {
    return LatticeExpr(std::make_shared<const LatticeExpr::Node>(
        LatticeExpr::Node{NodeKind::add, std::nullopt, 0.0, std::move(left), std::move(right)}));
}

LatticeExpr sup(LatticeExpr left, LatticeExpr right) {
    return LatticeExpr(std::make_shared<const LatticeExpr::Node>(
        LatticeExpr::Node{NodeKind::sup, std::nullopt, 0.0, std::move(left), std::move(right)}));
}

LatticeExpr inf(LatticeExpr left, LatticeExpr right) {
    return LatticeExpr(std::make_shared<const LatticeExpr::Node>(
        LatticeExpr::Node{NodeKind::inf, std::nullopt, 0.0, std::move(left), std::move(right)}));
}

LatticeExpr abs(LatticeExpr child) {
    return LatticeExpr(std::make_shared<const LatticeExpr::Node>(
        LatticeExpr::Node{NodeKind::abs, std::nullopt, 0.0, std::move(child), std::nullopt}));
}

LatticeExpr pos(LatticeExpr child) {
    auto zero = scale(0.0, child);
    return sup(std::move(child), std::move(zero));
}

bool is_pos_sugar(const LatticeExpr& e) {
    if (e.kind() != NodeKind::sup) return false;
    const auto& r = e.right();
    return r.kind() == NodeKind::scale && r.coefficient() == 0.0 && !std::signbit(r.coefficient()) &&
           r.child().same_node(e.left());
}

namespace {

void collect(const LatticeExpr& e, DependencySet& out) {
    switch (e.kind()) {
        case NodeKind::generator:
            out.insert(e.generator());
            return;
        case NodeKind::scale:
        case NodeKind::abs:
            collect(e.child(), out);
            return;
        default:
            collect(e.left(), out);
            collect(e.right(), out);
    }
}

}  // namespace

DependencySet dependency_support(const LatticeExpr& e) {
    DependencySet out;
    collect(e, out);
    return out;
}

std::size_t depth(const LatticeExpr& e) {
    switch (e.kind()) {
        case NodeKind::generator:
            return 1;
        case NodeKind::scale:
        case NodeKind::abs:
            return 1 + depth(e.child());
        default:
            return 1 + std::max(depth(e.left()), depth(e.right()));
    }
}

}  // namespace fbl
