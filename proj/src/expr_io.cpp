#include "fbl/expr_io.hpp"

#include "fbl/errors.hpp"

namespace fbl {

namespace {

void print(const LatticeExpr& e, std::string& out) {
    if (is_pos_sugar(e)) {
        out += "(pos ";
        print(e.left(), out);
        out += ')';
        return;
    }
    switch (e.kind()) {
        case NodeKind::generator:
            out += "(gen " + e.generator().to_string() + ")";
            return;
        case NodeKind::scale:
            out += "(scale " + format_real(e.coefficient()) + " ";
            print(e.child(), out);
            out += ')';
            return;
        case NodeKind::abs:
            out += "(abs ";
            print(e.child(), out);
            out += ')';
            return;
        case NodeKind::add:
            out += "(add ";
            break;
        case NodeKind::sup:
            out += "(sup ";
            break;
        case NodeKind::inf:
            out += "(inf ";
            break;
    }
    print(e.left(), out);
    out += ' ';
    print(e.right(), out);
    out += ')';
}

const std::string& head_of(const SExpr& term) {
    if (!term.is_list) throw parse_error("expected a parenthesized term, got '" + term.atom + "'", term.position);
    if (term.items.empty() || term.items.front().is_list)
        throw parse_error("term must start with an operator name", term.position);
    return term.items.front().atom;
}

void expect_arity(const SExpr& term, std::size_t operands) {
    if (term.items.size() != operands + 1)
        throw parse_error("'" + term.items.front().atom + "' takes " + std::to_string(operands) + " operand(s)",
                          term.position);
}

}  // namespace

std::string to_string(const LatticeExpr& e) {
    std::string out;
    print(e, out);
    return out;
}

LatticeExpr expr_from_sexpr(const SExpr& term) {
    const std::string& head = head_of(term);
    if (head == "gen") {
        expect_arity(term, 1);
        const SExpr& arg = term.items[1];
        if (arg.is_list) throw parse_error("generator id must be an atom", arg.position);
        try {
            return gen(parse_generator_id(arg.atom));
        } catch (const parse_error& err) {
            throw parse_error(std::string("bad generator id '") + arg.atom + "'", arg.position);
        }
    }
    if (head == "scale") {
        expect_arity(term, 2);
        const SExpr& c = term.items[1];
        if (c.is_list) throw parse_error("scale coefficient must be a real", c.position);
        return scale(parse_real(c.atom, c.position), expr_from_sexpr(term.items[2]));
    }
    if (head == "abs" || head == "pos") {
        expect_arity(term, 1);
        auto child = expr_from_sexpr(term.items[1]);
        return head == "abs" ? abs(std::move(child)) : pos(std::move(child));
    }
    if (head == "add" || head == "sup" || head == "inf") {
        if (term.items.size() < 3) throw parse_error("'" + head + "' takes at least 2 operands", term.position);
        auto acc = expr_from_sexpr(term.items[1]);
        for (std::size_t i = 2; i < term.items.size(); ++i) {
            auto next = expr_from_sexpr(term.items[i]);
            if (head == "add") acc = add(std::move(acc), std::move(next));
            else if (head == "sup") acc = sup(std::move(acc), std::move(next));
            else acc = inf(std::move(acc), std::move(next));
        }
        return acc;
    }
    throw parse_error("unknown operator '" + head + "'", term.items.front().position);
}

LatticeExpr parse_expr(std::string_view text) { return expr_from_sexpr(read_sexpr(text)); }

}  // namespace fbl
