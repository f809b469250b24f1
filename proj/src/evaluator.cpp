#include "fbl/evaluator.hpp"

#include <algorithm>
#include <cmath>

#include "fbl/errors.hpp"
#include "fbl/expr_io.hpp"
#include "fbl/sexpr.hpp"

namespace fbl {

Evaluator::Evaluator(std::string name, Ambient ambient, std::vector<GeneratorId> support_hint, Function fn)
    : name_(std::move(name)), ambient_(ambient), support_hint_(std::move(support_hint)), fn_(std::move(fn)) {
    std::sort(support_hint_.begin(), support_hint_.end());
    support_hint_.erase(std::unique(support_hint_.begin(), support_hint_.end()), support_hint_.end());
    for (const auto& id : support_hint_)
        if (!ambient_.accepts(id))
            throw domain_error("generator " + id.to_string() + " does not belong to ambient " + ambient_.to_string());
}

double Evaluator::operator()(const SparseFunctional& point) const {
    if (!(point.ambient() == ambient_))
        throw domain_error(name_ + " lives on " + ambient_.to_string() + ", got a " + point.ambient().to_string() +
                           " functional");
    return fn_(point);
}

Evaluator to_evaluator(const LatticeExpr& e, Space space) {
    const auto deps = dependency_support(e);
    const bool subsets = !deps.empty() && deps.begin()->is_subset();
    if (subsets && space == Space::dual) throw domain_error("subset generators have no meaning in the dual of c0");
    if (std::any_of(deps.begin(), deps.end(), [&](const GeneratorId& id) { return id.is_subset() != subsets; }))
        throw domain_error("expression mixes index and subset generators");
    const Ambient ambient{space, subsets ? KeyKind::subset : KeyKind::index};
    return Evaluator(to_string(e), ambient, std::vector<GeneratorId>(deps.begin(), deps.end()),
                     [e](const SparseFunctional& x) { return eval(e, x); });
}

Evaluator zero_evaluator(Ambient ambient) {
    return Evaluator("0", ambient, {}, [](const SparseFunctional&) { return 0.0; });
}

namespace {

std::vector<GeneratorId> merged_hint(const Evaluator& a, const Evaluator& b) {
    if (!(a.ambient() == b.ambient()))
        throw domain_error("cannot combine " + a.name() + " and " + b.name() + ": different ambients");
    auto hint = a.support_hint();
    hint.insert(hint.end(), b.support_hint().begin(), b.support_hint().end());
    return hint;
}

template <typename Op>
Evaluator binary(const char* head, const Evaluator& a, const Evaluator& b, Op op) {
    auto hint = merged_hint(a, b);
    return Evaluator("(" + std::string(head) + " " + a.name() + " " + b.name() + ")", a.ambient(), std::move(hint),
                     [a, b, op](const SparseFunctional& x) { return op(a(x), b(x)); });
}

}  // namespace

Evaluator operator+(const Evaluator& a, const Evaluator& b) {
    return binary("add", a, b, [](double u, double v) { return u + v; });
}

Evaluator operator-(const Evaluator& a, const Evaluator& b) { return a + (-1.0) * b; }

Evaluator operator*(double c, const Evaluator& a) {
    return Evaluator("(scale " + format_real(c) + " " + a.name() + ")", a.ambient(), a.support_hint(),
                     [c, a](const SparseFunctional& x) { return c * a(x); });
}

Evaluator sup(const Evaluator& a, const Evaluator& b) {
    return binary("sup", a, b, [](double u, double v) { return std::fmax(u, v); });
}

Evaluator inf(const Evaluator& a, const Evaluator& b) {
    return binary("inf", a, b, [](double u, double v) { return std::fmin(u, v); });
}

Evaluator abs(const Evaluator& a) {
    return Evaluator("(abs " + a.name() + ")", a.ambient(), a.support_hint(),
                     [a](const SparseFunctional& x) { return std::fabs(a(x)); });
}

Evaluator pos(const Evaluator& a) {
    return Evaluator("(pos " + a.name() + ")", a.ambient(), a.support_hint(),
                     [a](const SparseFunctional& x) { return std::fmax(a(x), 0.0); });
}

}  // namespace fbl
