#include "fbl/literal.hpp"

#include <charconv>

#include "fbl/errors.hpp"
#include "fbl/expr_io.hpp"
#include "fbl/sexpr.hpp"
#include "fbl/vector_literal.hpp"

namespace fbl {

namespace {

std::uint32_t parse_count(std::string_view text, std::size_t position) {
    std::uint32_t value = 0;
    const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
    if (ec != std::errc() || ptr != text.data() + text.size() || value == 0)
        throw parse_error("expected a positive integer, got '" + std::string(text) + "'", position);
    return value;
}

Evaluator named_member(const SExpr& term, Space space, const ParamConfig& cfg) {
    const std::string& a = term.atom;
    const auto at = term.position;
    Evaluator out = [&] {
        if (a.rfind("f:", 0) == 0) return f_evaluator(parse_count(std::string_view(a).substr(2), at + 2), cfg);
        if (a.rfind("h:", 0) == 0) {
            const auto rest = std::string_view(a).substr(2);
            const auto colon = rest.find(':');
            if (colon == std::string_view::npos) throw parse_error("expected h:<n>:<k>", at);
            return h_evaluator(parse_count(rest.substr(0, colon), at + 2),
                               parse_count(rest.substr(colon + 1), at + 3 + colon), cfg);
        }
        if (a.rfind("u:[", 0) == 0 && a.back() == ']') {
            const auto body = std::string_view(a).substr(3, a.size() - 4);
            try {
                return u_evaluator(parse_vector_literal(body), cfg);
            } catch (const parse_error& err) {
                throw parse_error("bad vector in u:[...]", at + 3 + err.position());
            }
        }
        throw parse_error("unknown evaluator '" + a + "'", at);
    }();
    if (space != Space::dual) throw domain_error("evaluator " + out.name() + " lives on the dual space");
    return out;
}

Evaluator build(const SExpr& term, Space space, const ParamConfig& cfg) {
    if (!term.is_list) return named_member(term, space, cfg);
    if (term.items.empty() || term.items.front().is_list) throw parse_error("expected an operator", term.position);
    const std::string& head = term.items.front().atom;
    const auto arity = term.items.size() - 1;
    auto operand = [&](std::size_t i) { return build(term.items[i], space, cfg); };
    if (head == "gen") return to_evaluator(expr_from_sexpr(term), space);
    if (head == "scale") {
        if (arity != 2 || term.items[1].is_list) throw parse_error("expected (scale <real> <e>)", term.position);
        return parse_real(term.items[1].atom, term.items[1].position) * operand(2);
    }
    if (head == "abs" || head == "pos") {
        if (arity != 1) throw parse_error("expected (" + head + " <e>)", term.position);
        return head == "abs" ? abs(operand(1)) : pos(operand(1));
    }
    if (head == "add" || head == "sup" || head == "inf") {
        if (arity < 2) throw parse_error("expected at least two operands for " + head, term.position);
        Evaluator acc = operand(1);
        for (std::size_t i = 2; i <= arity; ++i) {
            if (head == "add") acc = acc + operand(i);
            else if (head == "sup") acc = sup(acc, operand(i));
            else acc = inf(acc, operand(i));
        }
        return acc;
    }
    throw parse_error("unknown operator '" + head + "'", term.items.front().position);
}

}  // namespace

Evaluator parse_evaluator(std::string_view text, Space space, const ParamConfig& cfg) {
    return build(read_sexpr(text), space, cfg);
}

}  // namespace fbl
