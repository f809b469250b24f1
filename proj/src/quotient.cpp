#include "fbl/quotient.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "fbl/errors.hpp"

namespace fbl {

int chi(const SubsetGenerator& a, const SubsetGenerator& b) { return b.is_subset_of(a) ? 1 : 0; }

PhiPoint::PhiPoint(std::uint32_t n, std::uint32_t truncation) : n_(n), truncation_(truncation) {
    if (n < 1 || n > truncation)
        throw precondition_error("quotient point " + std::to_string(n) + " lies outside 1.." +
                                 std::to_string(truncation));
}

double PhiPoint::operator()(const GeneratorId& id) const {
    if (!id.is_subset()) throw domain_error("generator " + id.to_string() + " is not a subset of the naturals");
    const auto& subset = id.subset();
    if (subset.max_element() > truncation_)
        throw domain_error("generator " + id.to_string() + " exceeds truncation " + std::to_string(truncation_));
    return subset.contains(n_) ? 1.0 : 0.0;
}

SparseFunctional PhiPoint::restrict_to(const DependencySet& ids) const {
    std::vector<SparseFunctional::Entry> entries;
    for (const auto& id : ids) entries.emplace_back(id, (*this)(id));
    return SparseFunctional(Ambient::cube(KeyKind::subset), std::move(entries));
}

PhiPoint phi_point(std::uint32_t n, std::uint32_t truncation) { return PhiPoint(n, truncation); }

Eigen::VectorXd phi_apply(const LatticeExpr& e, std::uint32_t n_max, std::uint32_t truncation) {
    if (n_max > truncation)
        throw precondition_error("cannot apply the quotient past truncation " + std::to_string(truncation));
    for (const auto& id : dependency_support(e)) {
        if (!id.is_subset()) throw domain_error("generator " + id.to_string() + " is not a subset of the naturals");
        if (id.subset().max_element() > truncation)
            throw domain_error("truncation " + std::to_string(truncation) + " is too small for generator " +
                               id.to_string());
    }
    Eigen::VectorXd out(n_max);
    for (std::uint32_t n = 1; n <= n_max; ++n) out(n - 1) = eval(e, PhiPoint(n, truncation));
    return out;
}

Eigen::VectorXd Decomposition::reconstruct() const {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(source.size());
    for (const auto& [lambda, subset] : terms)
        for (auto n : subset.elements()) out(n - 1) += lambda;
    return out;
}

Decomposition greedy_decompose(const Eigen::VectorXd& x) {
    std::vector<std::uint32_t> order;
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        if (!std::isfinite(x(i)) || x(i) < 0.0)
            throw precondition_error("greedy decomposition needs a nonnegative vector; coordinate " +
                                     std::to_string(i + 1) + " is " + std::to_string(x(i)));
        if (x(i) > 0.0) order.push_back(static_cast<std::uint32_t>(i + 1));
    }
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return x(a - 1) > x(b - 1); });

    Decomposition out;
    out.source = x;
    std::vector<std::uint32_t> chain;
    for (std::size_t i = 0; i < order.size(); ++i) {
        chain.push_back(order[i]);
        const double next = i + 1 < order.size() ? x(order[i + 1] - 1) : 0.0;
        out.terms.emplace_back(x(order[i] - 1) - next, SubsetGenerator(chain));
    }
    return out;
}

double eval(const LatticeExpr& e, const CubePoint& point) {
    return std::visit([&](const auto& p) { return eval(e, p); }, point);
}

double WitnessSelection::partial_sum(std::size_t m) const {
    if (m > values.size()) throw precondition_error("selection has only " + std::to_string(values.size()) + " terms");
    return std::accumulate(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(m), 0.0);
}

std::uint32_t vanishing_index(const std::vector<SubsetGenerator>& family) {
    std::uint32_t top = 0;
    for (const auto& s : family) top = std::max(top, s.max_element());
    return top + 1;
}

namespace {

double value_at(const CubePoint& point, const GeneratorId& id) {
    return std::visit([&](const auto& p) { return p(id); }, point);
}

SparseFunctional restrict_point(const CubePoint& point, const DependencySet& ids) {
    if (const auto* phi = std::get_if<PhiPoint>(&point)) return phi->restrict_to(ids);
    const auto& x = std::get<SparseFunctional>(point);
    std::vector<SparseFunctional::Entry> entries;
    for (const auto& id : ids) entries.emplace_back(id, x(id));
    return SparseFunctional(x.ambient(), std::move(entries));
}

}  // namespace

std::optional<std::size_t> find_vanishing_member(const std::vector<FamilyMember>& family, const DependencySet& ids,
                                                 std::size_t after) {
    for (std::size_t pos = after + 1; pos <= family.size(); ++pos) {
        const auto& point = family[pos - 1].point;
        if (std::all_of(ids.begin(), ids.end(), [&](const auto& id) { return value_at(point, id) == 0.0; }))
            return pos;
    }
    return std::nullopt;
}

WitnessSelection select_subsequence(const std::vector<FamilyMember>& family, double eps, std::size_t length) {
    if (!(eps > 0.0)) throw precondition_error("eps must be positive");
    if (family.empty()) throw truncation_exhausted("empty family");

    WitnessSelection out;
    out.eps = eps;
    DependencySet seen;
    std::size_t next = 1;
    while (out.indices.size() < length) {
        if (!out.indices.empty()) {
            const auto found = find_vanishing_member(family, seen, out.indices.back());
            if (!found)
                throw truncation_exhausted("no family member after position " + std::to_string(out.indices.back()) +
                                           " vanishes on the supports chosen so far");
            next = *found;
        }
        const auto& member = family[next - 1];
        const double at_point = eval(member.f, member.point);
        if (std::fabs(at_point - 1.0) > 1e-9)
            throw precondition_error("family member " + std::to_string(next) + " takes value " +
                                     std::to_string(at_point) + " at its point, expected 1");

        // The member depends only on its support, so agreeing there is enough.
        auto support = dependency_support(member.f);
        auto witness = restrict_point(member.point, support);
        out.values.push_back(eval(member.f, witness));
        out.indices.push_back(next);
        seen.insert(support.begin(), support.end());
        out.supports.push_back(std::move(support));
        out.witnesses.push_back(std::move(witness));
    }
    return out;
}

std::optional<std::size_t> first_contradiction(const WitnessSelection& selection, double bound) {
    for (std::size_t m = 1; m <= selection.indices.size(); ++m)
        if (static_cast<double>(m) - selection.eps > bound) return m;
    return std::nullopt;
}

}  // namespace fbl
