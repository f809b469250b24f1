#pragma once

#include <functional>
#include <string>
#include <vector>

#include "fbl/expr.hpp"
#include "fbl/functional.hpp"

namespace fbl {

/// A positively homogeneous function on the functionals of one ambient,
/// together with the coordinates a norm search should explore.
///
/// Expressions convert to evaluators; the c0 family f_n, h_k and u(x), which
/// are not finite lattice expressions, are evaluators built directly. The
/// wrapped function must be pure.
class Evaluator {
public:
    using Function = std::function<double(const SparseFunctional&)>;

    Evaluator(std::string name, Ambient ambient, std::vector<GeneratorId> support_hint, Function fn);

    /// Throws domain_error when the point lives in another ambient.
    double operator()(const SparseFunctional& point) const;

    const std::string& name() const noexcept { return name_; }
    const Ambient& ambient() const noexcept { return ambient_; }
    const std::vector<GeneratorId>& support_hint() const noexcept { return support_hint_; }

private:
    std::string name_;
    Ambient ambient_;
    std::vector<GeneratorId> support_hint_;
    Function fn_;
};

/// Evaluates `e` on functionals of the given space; the key kind is taken
/// from the expression's generators. The hint is dependency_support(e).
Evaluator to_evaluator(const LatticeExpr& e, Space space);

Evaluator zero_evaluator(Ambient ambient);

Evaluator operator+(const Evaluator& a, const Evaluator& b);
Evaluator operator-(const Evaluator& a, const Evaluator& b);
Evaluator operator*(double c, const Evaluator& a);
Evaluator sup(const Evaluator& a, const Evaluator& b);
Evaluator inf(const Evaluator& a, const Evaluator& b);
Evaluator abs(const Evaluator& a);
Evaluator pos(const Evaluator& a);

}  // namespace fbl
