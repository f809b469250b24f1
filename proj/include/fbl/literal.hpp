#pragma once

#include <string_view>

#include "fbl/embedding.hpp"
#include "fbl/evaluator.hpp"

namespace fbl {

/// Parses an evaluator literal: the expression forms of parse_expr, where any
/// operand may also be one of the named members of the c0 family, `f:<n>`,
/// `h:<n>:<k>` or `u:[<index>:<value>,...]`. Named members live on the dual
/// space; asking for them on the cube is a domain_error. Throws parse_error
/// with the offending position, and precondition_error for indices outside
/// the truncation.
Evaluator parse_evaluator(std::string_view text, Space space, const ParamConfig& cfg);

}  // namespace fbl
