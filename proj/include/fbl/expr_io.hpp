#pragma once

#include <string>
#include <string_view>

#include "fbl/expr.hpp"
#include "fbl/sexpr.hpp"

namespace fbl {

/// Prefix-term form: `(gen 3)`, `(gen {1,3})`, `(scale 0.5 e)`, `(add e e)`,
/// `(sup e e)`, `(inf e e)`, `(abs e)`, `(pos e)`. Reals use the shortest
/// round-trip decimal, so parse(to_string(e)) prints identically.
std::string to_string(const LatticeExpr& e);

/// Accepts the printed form; `add`, `sup` and `inf` also take more than two
/// operands and fold to the left.
LatticeExpr parse_expr(std::string_view text);
LatticeExpr expr_from_sexpr(const SExpr& term);

}  // namespace fbl
