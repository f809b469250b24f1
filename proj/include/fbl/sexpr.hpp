#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace fbl {

/// Parenthesized prefix term as read from text: an atom or a list.
///
/// Atoms run until whitespace or a parenthesis; braces `{...}` and brackets
/// `[...]` are kept inside the atom so that subset literals and vector
/// literals survive as single tokens.
struct SExpr {
    bool is_list = false;
    std::string atom;
    std::vector<SExpr> items;
    std::size_t position = 0;
};

/// Reads exactly one term; trailing non-space input is an error.
SExpr read_sexpr(std::string_view text);

/// Shortest decimal form that parses back to the same double.
std::string format_real(double value);

/// Strict decimal parse of a whole token; throws parse_error at `position`.
double parse_real(std::string_view token, std::size_t position);

}  // namespace fbl
